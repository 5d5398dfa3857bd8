#include "tcaudit/bogoliubov_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace tcaudit::audit {

std::string_view to_string(PhaseRealization phase)
{
    switch (phase) {
    case PhaseRealization::susskind_glogower: return "susskind_glogower";
    case PhaseRealization::adjoint_variant: return "adjoint_variant";
    }
    return "unknown";
}

std::string_view to_string(CouplingPower power)
{
    switch (power) {
    case CouplingPower::paper_g_squared: return "paper_g_squared";
    case CouplingPower::corrected_g: return "corrected_g";
    }
    return "unknown";
}

std::string_view to_string(Mapping mapping)
{
    switch (mapping) {
    case Mapping::naive_identification: return "naive_identification";
    case Mapping::best_assignment: return "best_assignment";
    }
    return "unknown";
}

PhaseRealization parse_phase(std::string_view text)
{
    if (text == "susskind_glogower")
        return PhaseRealization::susskind_glogower;
    if (text == "adjoint_variant")
        return PhaseRealization::adjoint_variant;
    throw ParameterError("unknown phase realization '" + std::string(text) + "'");
}

CouplingPower parse_power(std::string_view text)
{
    if (text == "paper_g_squared")
        return CouplingPower::paper_g_squared;
    if (text == "corrected_g")
        return CouplingPower::corrected_g;
    throw ParameterError("unknown coupling power '" + std::string(text) + "'");
}

namespace {

int power_exponent(CouplingPower power)
{
    return power == CouplingPower::paper_g_squared ? 2 : 1;
}

// w^2 - g^2 n for n = 0..n_max, after the domain check.
std::vector<double> gaps(const tc::ModelParams& params, FockCutoff cutoff)
{
    check_domain(params, cutoff);
    std::vector<double> out(cutoff.dim());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = params.omega * params.omega - params.g * params.g * static_cast<double>(n);
    return out;
}

OperatorMatrix s_operator(const tc::ModelParams& params, FockCutoff cutoff)
{
    const auto denom = gaps(params, cutoff);
    std::vector<double> diag(cutoff.dim());
    for (std::size_t n = 0; n < diag.size(); ++n)
        diag[n] = std::sqrt(static_cast<double>(n) / denom[n]);
    return diagonal_matrix(cutoff, diag);
}

OperatorMatrix identity_on(FockCutoff cutoff)
{
    return OperatorMatrix::identity(single_mode_labels(cutoff));
}

NormReport max_norms(const NormReport& x, const NormReport& y)
{
    return {std::max(x.frobenius, y.frobenius), std::max(x.spectral, y.spectral)};
}

std::size_t checked_product_dim(const CompositeCutoffs& cutoffs)
{
    const std::size_t dim = cutoffs.a.dim() * cutoffs.f.dim() * cutoffs.d.dim();
    if (dim > max_product_dim)
        throw SizeError("a (x) f (x) d product dimension " + std::to_string(dim) +
                        " exceeds the limit of " + std::to_string(max_product_dim));
    return dim;
}

// b = u (x) f (x) 1 + v (x) 1 (x) d^dag and c = u (x) 1 (x) d + v (x) f^dag (x) 1.
CommutatorDefects composed_defects(const OperatorMatrix& u, const OperatorMatrix& v,
                                   const CompositeCutoffs& cutoffs, std::size_t drop_edge)
{
    const auto f = annihilation_matrix(cutoffs.f);
    const auto d = annihilation_matrix(cutoffs.d);
    const auto i_f = identity_on(cutoffs.f);
    const auto i_d = identity_on(cutoffs.d);

    const auto b = tensor(tensor(u, f), i_d) + tensor(tensor(v, i_f), d.adjoint());
    const auto c = tensor(tensor(u, i_f), d) + tensor(tensor(v, f.adjoint()), i_d);
    const auto one = OperatorMatrix::identity(b.labels());

    return {residual_norm(commutator(b, b.adjoint()), one, drop_edge),
            residual_norm(commutator(c, c.adjoint()), one, drop_edge)};
}

} // namespace

void check_domain(const tc::ModelParams& params, FockCutoff cutoff)
{
    params.validate();
    const double w2 = params.omega * params.omega;
    const double g2 = params.g * params.g;
    for (int n = 0; n <= cutoff.n_max(); ++n)
        if (w2 - g2 * n <= 0.0)
            throw DomainSingularError("omega^2 - g^2 n is not positive at n = " + std::to_string(n) +
                                          " (g^2 n_max >= omega^2); the claimed diagonal form has "
                                          "imaginary frequency there",
                                      n);
}

OperatorMatrix phase_operator(FockCutoff cutoff, PhaseRealization phase)
{
    auto e = lowering_phase_matrix(cutoff);
    return phase == PhaseRealization::susskind_glogower ? e : e.adjoint();
}

OperatorMatrix u_operator(const tc::ModelParams& params, FockCutoff cutoff,
                          const BogoliubovConvention&)
{
    const auto denom = gaps(params, cutoff);
    std::vector<double> diag(cutoff.dim());
    for (std::size_t n = 0; n < diag.size(); ++n)
        diag[n] = params.omega / std::sqrt(denom[n]);
    return diagonal_matrix(cutoff, diag);
}

OperatorMatrix v_operator(const tc::ModelParams& params, FockCutoff cutoff,
                          const BogoliubovConvention& convention)
{
    const auto denom = gaps(params, cutoff);
    const double prefactor = std::pow(params.g, power_exponent(convention.power));
    std::vector<double> diag(cutoff.dim());
    for (std::size_t n = 0; n < diag.size(); ++n)
        diag[n] = prefactor * std::sqrt(static_cast<double>(n)) / std::sqrt(denom[n]);
    return phase_operator(cutoff, convention.phase) * diagonal_matrix(cutoff, diag);
}

UnitarityForms unitarity_forms(const tc::ModelParams& params, FockCutoff cutoff,
                               const BogoliubovConvention& convention)
{
    const auto u = u_operator(params, cutoff, convention);
    const auto v = v_operator(params, cutoff, convention);
    auto direct = u * u.adjoint() - v * v.adjoint();

    const auto p = phase_operator(cutoff, convention.phase);
    const auto pd = p.adjoint();
    const auto s = s_operator(params, cutoff);
    const auto ps = commutator(p, s);
    const double g2 = params.g * params.g;
    const double g2p = std::pow(params.g, 2 * power_exponent(convention.power));

    auto form = OperatorMatrix::identity(single_mode_labels(cutoff));
    form += Complex{g2} * (s * s);
    form -= Complex{g2p} * (ps * s * pd + s * ps * pd + s * s * p * pd);
    return {std::move(direct), std::move(form)};
}

NormReport unitarity_residual(const tc::ModelParams& params, FockCutoff cutoff,
                              const BogoliubovConvention& convention, std::size_t drop_edge)
{
    const auto forms = unitarity_forms(params, cutoff, convention);
    const double agreement = (forms.direct - forms.commutator_form).max_abs();
    if (agreement > form_agreement_tolerance)
        throw NumericalError("direct and commutator forms of u u^dag - v v^dag disagree by " +
                    std::to_string(agreement));
    return residual_norm(forms.direct, OperatorMatrix::identity(forms.direct.labels()), drop_edge);
}

NormReport scalar_unitarity_residual(const ScalarBogoliubov& scalar, FockCutoff cutoff,
                                     std::size_t drop_edge)
{
    const auto one = identity_on(cutoff);
    const auto u = Complex{std::cosh(scalar.r)} * one;
    const auto v = std::polar(std::sinh(scalar.r), -scalar.theta) * one;
    return residual_norm(u * u.adjoint() - v * v.adjoint(), one, drop_edge);
}

CommutatorDefects composed_mode_commutator(const tc::ModelParams& params,
                                           const CompositeCutoffs& cutoffs,
                                           const BogoliubovConvention& convention,
                                           std::size_t drop_edge)
{
    checked_product_dim(cutoffs);
    return composed_defects(u_operator(params, cutoffs.a, convention),
                            v_operator(params, cutoffs.a, convention), cutoffs, drop_edge);
}

CommutatorDefects scalar_mode_commutator(const ScalarBogoliubov& scalar,
                                         const CompositeCutoffs& cutoffs, std::size_t drop_edge)
{
    checked_product_dim(cutoffs);
    const auto one = identity_on(cutoffs.a);
    return composed_defects(Complex{std::cosh(scalar.r)} * one,
                            std::polar(std::sinh(scalar.r), -scalar.theta) * one, cutoffs,
                            drop_edge);
}

double claimed_energy(int n_a, int n_f, int n_d, const tc::ModelParams& params)
{
    params.validate();
    if (n_a < 0 || n_f < 0 || n_d < 0)
        throw ParameterError("occupations must be non-negative");
    const double radicand = params.omega * params.omega - params.g * params.g * n_a;
    if (radicand <= 0.0)
        throw DomainSingularError("claimed energy undefined: omega^2 - g^2 n_a <= 0 at n_a = " +
                                      std::to_string(n_a),
                                  n_a);
    return std::sqrt(radicand) * (n_f + n_d + 1) + params.effective_omega1() * n_a - params.omega;
}

std::vector<ClaimedLevel> claimed_sector_levels(const tc::ModelParams& params, tc::SectorKey key)
{
    const auto basis = tc::enumerate_sector(key);
    if (basis.dim() == 0)
        throw EmptySectorError("sector " + key.to_string() + " is empty (lambda + j < 0)");
    std::vector<ClaimedLevel> levels;
    levels.reserve(basis.dim());
    for (const auto& s : basis.states)
        levels.push_back({s.n_a, s.n_b, s.n_c, claimed_energy(s.n_a, s.n_b, s.n_c, params)});
    std::sort(levels.begin(), levels.end(), [](const ClaimedLevel& x, const ClaimedLevel& y) {
        return std::tie(x.energy, x.n_a, x.n_f, x.n_d) < std::tie(y.energy, y.n_a, y.n_f, y.n_d);
    });
    return levels;
}

std::vector<std::size_t> hungarian_assignment(std::span<const double> cost, std::size_t n)
{
    if (cost.size() != n * n)
        throw DimensionError("cost matrix must be n x n");
    if (n == 0)
        return {};

    // Potentials formulation, 1-based with a virtual column 0.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row_pot(n + 1, 0.0), col_pot(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t col = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[col] = true;
            const std::size_t row = match[col];
            double delta = inf;
            std::size_t next = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double reduced = cost[(row - 1) * n + (j - 1)] - row_pot[row] - col_pot[j];
                if (reduced < min_slack[j]) {
                    min_slack[j] = reduced;
                    way[j] = col;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    next = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    row_pot[match[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col = next;
        } while (match[col] != 0);
        do {
            const std::size_t prev = way[col];
            match[col] = match[prev];
            col = prev;
        } while (col != 0);
    }

    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= n; ++j)
        assignment[match[j] - 1] = j - 1;
    return assignment;
}

ClaimedComparison compare_claimed_vs_exact(const tc::ModelParams& params, tc::SectorKey key,
                                           Mapping mapping, double tol)
{
    const auto claimed = claimed_sector_levels(params, key);
    const auto exact = tc::sector_spectrum(params, key, tol);
    const std::size_t n = exact.size();

    std::vector<std::size_t> partner(n);
    if (mapping == Mapping::naive_identification) {
        for (std::size_t i = 0; i < n; ++i)
            partner[i] = i;
    } else {
        std::vector<double> cost(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cost[i * n + j] = std::abs(claimed[i].energy - exact[j]);
        partner = hungarian_assignment(cost, n);
    }

    ClaimedComparison out{key, mapping, 0.0, 0.0, 0.0, {}};
    const double claimed_floor = claimed.front().energy;
    const double exact_floor = exact.front();
    out.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = exact[partner[i]];
        const double dev = std::abs(claimed[i].energy - e);
        out.rows.push_back({claimed[i], e, dev});
        out.max_abs_deviation = std::max(out.max_abs_deviation, dev);
        out.total_cost += dev;
        out.offset_free_deviation =
            std::max(out.offset_free_deviation,
                     std::abs((claimed[i].energy - claimed_floor) - (e - exact_floor)));
    }
    return out;
}

AuditReport run_audit(const tc::ModelParams& params, const BogoliubovConvention& convention,
                      const CompositeCutoffs& cutoffs, std::size_t drop_edge,
                      const std::vector<tc::SectorKey>& sectors, const ScalarBogoliubov& scalar,
                      double tol)
{
    check_domain(params, cutoffs.a);
    checked_product_dim(cutoffs);

    AuditReport report;
    report.params = params;
    report.convention = convention;
    report.cutoffs = cutoffs;
    report.drop_edge = drop_edge;

    const auto forms = unitarity_forms(params, cutoffs.a, convention);
    report.commutator_form_agreement = (forms.direct - forms.commutator_form).max_abs();
    report.unitarity_residual = unitarity_residual(params, cutoffs.a, convention, drop_edge);

    const auto defects = composed_mode_commutator(params, cutoffs, convention, drop_edge);
    report.commutator_defect_b = defects.b;
    report.commutator_defect_c = defects.c;

    const auto scalar_defects = scalar_mode_commutator(scalar, cutoffs, drop_edge);
    report.scalar_control_defect =
        max_norms(scalar_unitarity_residual(scalar, cutoffs.a, drop_edge),
                  max_norms(scalar_defects.b, scalar_defects.c));

    for (const auto& key : sectors)
        for (const auto mapping : {Mapping::naive_identification, Mapping::best_assignment})
            report.claimed_vs_exact.push_back(compare_claimed_vs_exact(params, key, mapping, tol));
    return report;
}

} // namespace tcaudit::audit
