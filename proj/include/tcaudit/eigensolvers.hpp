#pragma once

#include "tcaudit/fock.hpp"

#include <span>
#include <vector>

namespace tcaudit {

inline constexpr double default_tolerance = 1e-12;

struct EigenSystem {
    std::size_t dim = 0;
    std::vector<double> values;   // ascending
    std::vector<Complex> vectors; // row-major; column k is the eigenvector of values[k]

    Complex component(std::size_t row, std::size_t k) const { return vectors[row * dim + k]; }
};

// Cyclic complex Jacobi. Throws HermiticityError when
// max|m - m^dag| > tol * max(1, max|m_ij|).
EigenSystem eigh_dense(const OperatorMatrix& m, double tol = default_tolerance);
std::vector<double> eigvalsh_dense(const OperatorMatrix& m, double tol = default_tolerance);

// Implicit-shift QL on a real symmetric tridiagonal matrix. tol is the
// relative deflation threshold for off-diagonal entries.
std::vector<double> eig_tridiagonal(std::span<const double> diag,
                                    std::span<const double> offdiag,
                                    double tol = default_tolerance);

} // namespace tcaudit
