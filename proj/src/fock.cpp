#include "tcaudit/fock.hpp"

#include "tcaudit/eigensolvers.hpp"
#include "tcaudit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tcaudit {

FockCutoff::FockCutoff(int n_max) : n_max_(n_max)
{
    if (n_max < 0)
        throw ParameterError("Fock cutoff must be non-negative, got " + std::to_string(n_max));
}

std::string OccupationState::to_string() const
{
    std::string out = "|";
    for (std::size_t i = 0; i < occupations.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(occupations[i]);
    }
    return out + ">";
}

namespace {

void check_labels(const std::vector<OccupationState>& labels)
{
    if (labels.empty())
        throw DimensionError("operator basis must be non-empty");
    const std::size_t modes = labels.front().occupations.size();
    for (const auto& label : labels)
        if (label.occupations.size() != modes)
            throw DimensionError("basis labels have inconsistent mode counts");
    std::vector<OccupationState> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionError("basis labels must be duplicate-free");
}

void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* what)
{
    if (a.dim() != b.dim())
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()) + ")");
}

std::vector<OccupationState> index_labels(std::size_t dim)
{
    std::vector<OccupationState> labels(dim);
    for (std::size_t i = 0; i < dim; ++i)
        labels[i].occupations = {static_cast<int>(i)};
    return labels;
}

} // namespace

OperatorMatrix::OperatorMatrix(std::vector<OccupationState> labels)
    : labels_(std::move(labels))
{
    check_labels(labels_);
    entries_.assign(labels_.size() * labels_.size(), Complex{});
}

OperatorMatrix::OperatorMatrix(std::vector<OccupationState> labels, std::vector<Complex> entries)
    : labels_(std::move(labels)), entries_(std::move(entries))
{
    check_labels(labels_);
    if (entries_.size() != labels_.size() * labels_.size())
        throw DimensionError("entry count does not match basis dimension squared");
}

OperatorMatrix OperatorMatrix::zeros(std::size_t dim)
{
    return OperatorMatrix(index_labels(dim));
}

OperatorMatrix OperatorMatrix::from_entries(std::size_t dim, std::vector<Complex> entries)
{
    return OperatorMatrix(index_labels(dim), std::move(entries));
}

OperatorMatrix OperatorMatrix::identity(std::vector<OccupationState> labels)
{
    OperatorMatrix m(std::move(labels));
    for (std::size_t i = 0; i < m.dim(); ++i)
        m(i, i) = 1.0;
    return m;
}

std::size_t OperatorMatrix::modes() const noexcept
{
    return labels_.front().occupations.size();
}

OperatorMatrix OperatorMatrix::adjoint() const
{
    OperatorMatrix out(labels_);
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

double OperatorMatrix::max_abs() const
{
    double best = 0.0;
    for (const auto& z : entries_)
        best = std::max(best, std::abs(z));
    return best;
}

double OperatorMatrix::frobenius() const
{
    double sum = 0.0;
    for (const auto& z : entries_)
        sum += std::norm(z);
    return std::sqrt(sum);
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs)
{
    require_same_dim(*this, rhs, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += rhs.entries_[i];
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs)
{
    require_same_dim(*this, rhs, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= rhs.entries_[i];
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex scale)
{
    for (auto& z : entries_)
        z *= scale;
    return *this;
}

OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
OperatorMatrix operator*(Complex scale, OperatorMatrix m) { return m *= scale; }

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs)
{
    require_same_dim(lhs, rhs, "operator*");
    OperatorMatrix out(lhs.labels());
    kernels::matmul_parallel(lhs.entries(), rhs.entries(), out.entries(), lhs.dim());
    return out;
}

std::vector<OccupationState> single_mode_labels(FockCutoff cutoff)
{
    return index_labels(cutoff.dim());
}

OperatorMatrix annihilation_matrix(FockCutoff cutoff)
{
    OperatorMatrix a(single_mode_labels(cutoff));
    for (int n = 1; n <= cutoff.n_max(); ++n)
        a(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)) = std::sqrt(static_cast<double>(n));
    return a;
}

OperatorMatrix creation_matrix(FockCutoff cutoff)
{
    return annihilation_matrix(cutoff).adjoint();
}

OperatorMatrix number_matrix(FockCutoff cutoff)
{
    // Equal to creation * annihilation up to the rounding of sqrt(n)^2.
    OperatorMatrix n_op(single_mode_labels(cutoff));
    for (std::size_t n = 0; n < cutoff.dim(); ++n)
        n_op(n, n) = static_cast<double>(n);
    return n_op;
}

OperatorMatrix lowering_phase_matrix(FockCutoff cutoff)
{
    OperatorMatrix e(single_mode_labels(cutoff));
    for (std::size_t n = 0; n + 1 < cutoff.dim(); ++n)
        e(n, n + 1) = 1.0;
    return e;
}

OperatorMatrix diagonal_matrix(FockCutoff cutoff, std::span<const double> diagonal)
{
    if (diagonal.size() != cutoff.dim())
        throw DimensionError("diagonal length does not match cutoff dimension");
    OperatorMatrix d(single_mode_labels(cutoff));
    for (std::size_t n = 0; n < diagonal.size(); ++n)
        d(n, n) = diagonal[n];
    return d;
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b)
{
    std::vector<OccupationState> labels;
    labels.reserve(a.dim() * b.dim());
    for (const auto& la : a.labels()) {
        for (const auto& lb : b.labels()) {
            OccupationState joined = la;
            joined.occupations.insert(joined.occupations.end(), lb.occupations.begin(),
                                      lb.occupations.end());
            labels.push_back(std::move(joined));
        }
    }
    OperatorMatrix out(std::move(labels));
    kernels::kron_parallel(a.entries(), a.dim(), b.entries(), b.dim(), out.entries());
    return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b)
{
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

std::vector<std::size_t> interior_states(const std::vector<OccupationState>& labels,
                                         std::size_t drop_edge_rows)
{
    const std::size_t modes = labels.front().occupations.size();
    std::vector<int> highest(modes, 0);
    for (const auto& label : labels)
        for (std::size_t k = 0; k < modes; ++k)
            highest[k] = std::max(highest[k], label.occupations[k]);

    const auto drop = static_cast<long long>(drop_edge_rows);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        bool inside = true;
        for (std::size_t k = 0; k < modes && inside; ++k)
            inside = labels[i].occupations[k] <= static_cast<long long>(highest[k]) - drop;
        if (inside)
            kept.push_back(i);
    }
    return kept;
}

NormReport residual_norm(const OperatorMatrix& m, const OperatorMatrix& target,
                         std::size_t drop_edge_rows)
{
    require_same_dim(m, target, "residual_norm");
    if (drop_edge_rows >= m.dim())
        throw DimensionError("drop_edge_rows must be smaller than the dimension");

    const auto kept = interior_states(m.labels(), drop_edge_rows);
    if (kept.empty())
        return {};

    const std::size_t k = kept.size();
    std::vector<Complex> diff(k * k);
    double sum = 0.0;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            const Complex z = m(kept[r], kept[c]) - target(kept[r], kept[c]);
            diff[r * k + c] = z;
            sum += std::norm(z);
        }

    NormReport report;
    report.frobenius = std::sqrt(sum);
    if (report.frobenius == 0.0)
        return report;

    // Largest singular value from the Gram matrix diff^dag diff.
    auto d = OperatorMatrix::from_entries(k, std::move(diff));
    const auto gram = d.adjoint() * d;
    const auto values = eigvalsh_dense(gram);
    report.spectral = std::min(std::sqrt(std::max(values.back(), 0.0)), report.frobenius);
    return report;
}

} // namespace tcaudit
