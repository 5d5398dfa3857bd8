#pragma once

#include <stdexcept>
#include <string>

namespace tcaudit {

// Base class for every error the toolkit raises on invalid input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { public: using Error::Error; };
class HermiticityError : public Error { public: using Error::Error; };
class SectorParityError : public Error { public: using Error::Error; };
class EmptySectorError : public Error { public: using Error::Error; };
class SizeError : public Error { public: using Error::Error; };
class DegenerateBlockError : public Error { public: using Error::Error; };
class ParameterError : public Error { public: using Error::Error; };
// Solver non-convergence or a failed internal consistency check.
class NumericalError : public Error { public: using Error::Error; };

// Raised when a Bogoliubov coefficient would need sqrt(omega^2 - g^2 n) with
// a non-positive argument. Carries the first offending occupation.
class DomainSingularError : public Error {
public:
    DomainSingularError(const std::string& what, int occupation)
        : Error(what), occupation_(occupation) {}
    int occupation() const noexcept { return occupation_; }

private:
    int occupation_;
};

} // namespace tcaudit
