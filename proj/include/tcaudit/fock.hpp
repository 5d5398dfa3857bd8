#pragma once

// Truncated Fock-space linear algebra.
//
// Operators are dense complex matrices that carry the occupation labels of
// their basis. Multi-mode labels come from tensor products and are used by
// residual_norm to identify (and optionally discard) the states sitting at
// the truncation edge of any mode.

#include "tcaudit/errors.hpp"

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tcaudit {

using Complex = std::complex<double>;

class FockCutoff {
public:
    explicit FockCutoff(int n_max);

    int n_max() const noexcept { return n_max_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(n_max_) + 1; }

    auto operator<=>(const FockCutoff&) const = default;

private:
    int n_max_;
};

// Occupation numbers of one basis vector, one entry per mode.
struct OccupationState {
    std::vector<int> occupations;

    auto operator<=>(const OccupationState&) const = default;
    std::string to_string() const;
};

struct NormReport {
    double frobenius = 0.0;
    double spectral = 0.0;
};

class OperatorMatrix {
public:
    // Zero matrix on the given basis. Labels must be duplicate-free.
    explicit OperatorMatrix(std::vector<OccupationState> labels);
    OperatorMatrix(std::vector<OccupationState> labels, std::vector<Complex> entries);

    // Single-mode basis |0>..|dim-1>.
    static OperatorMatrix zeros(std::size_t dim);
    static OperatorMatrix from_entries(std::size_t dim, std::vector<Complex> entries);
    static OperatorMatrix identity(std::vector<OccupationState> labels);

    std::size_t dim() const noexcept { return labels_.size(); }
    std::size_t modes() const noexcept;

    Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim() + col]; }
    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim() + col]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<Complex> entries() noexcept { return entries_; }
    const std::vector<OccupationState>& labels() const noexcept { return labels_; }

    OperatorMatrix adjoint() const;
    double max_abs() const;
    double frobenius() const;

    OperatorMatrix& operator+=(const OperatorMatrix& rhs);
    OperatorMatrix& operator-=(const OperatorMatrix& rhs);
    OperatorMatrix& operator*=(Complex scale);

private:
    std::vector<OccupationState> labels_;
    std::vector<Complex> entries_;
};

OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs);
OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs);
OperatorMatrix operator*(Complex scale, OperatorMatrix m);
// Matrix product; result keeps the labels of the left operand.
OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

std::vector<OccupationState> single_mode_labels(FockCutoff cutoff);

OperatorMatrix annihilation_matrix(FockCutoff cutoff);
OperatorMatrix creation_matrix(FockCutoff cutoff);
OperatorMatrix number_matrix(FockCutoff cutoff);
// One-sided shift E = sum_n |n><n+1|, the polar phase factor of a = E sqrt(n).
OperatorMatrix lowering_phase_matrix(FockCutoff cutoff);
OperatorMatrix diagonal_matrix(FockCutoff cutoff, std::span<const double> diagonal);

// Kronecker product; labels are concatenated occupations in row-major order.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

// a*b - b*a.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Norms of (m - target) on the subblock whose states keep every mode at least
// drop_edge_rows below that mode's highest occupation.
NormReport residual_norm(const OperatorMatrix& m, const OperatorMatrix& target,
                         std::size_t drop_edge_rows);

// Indices of the states kept by residual_norm.
std::vector<std::size_t> interior_states(const std::vector<OccupationState>& labels,
                                         std::size_t drop_edge_rows);

} // namespace tcaudit
