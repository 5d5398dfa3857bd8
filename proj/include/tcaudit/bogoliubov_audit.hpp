#pragma once

// Audit of the operator-valued Bogoliubov transformation
//   b = u f + v d^dag,   c = u d + v f^dag,
// with u = w / sqrt(w^2 - g^2 n_a) and v = P g^p sqrt(n_a) / sqrt(w^2 - g^2 n_a),
// where P realizes sqrt(a / a^dag) and p is the coupling power.
//
// Because u and v are functions of mode-a operators that do not commute with
// each other, u u^dag - v v^dag is not the identity and b, c are not bosons.
// Scalar coefficients (cosh r, e^{-i theta} sinh r) are the control: they
// must pass every check that the operator-valued coefficients fail.

#include "tcaudit/fock.hpp"
#include "tcaudit/tavis_cummings.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tcaudit::audit {

enum class PhaseRealization {
    susskind_glogower, // P = E = sum |n><n+1|
    adjoint_variant,   // P = E^dag
};

enum class CouplingPower {
    paper_g_squared, // p = 2
    corrected_g,     // p = 1
};

struct BogoliubovConvention {
    PhaseRealization phase = PhaseRealization::susskind_glogower;
    CouplingPower power = CouplingPower::paper_g_squared;
};

std::string_view to_string(PhaseRealization phase);
std::string_view to_string(CouplingPower power);
PhaseRealization parse_phase(std::string_view text);
CouplingPower parse_power(std::string_view text);

// Throws DomainSingularError when g^2 n_max >= omega^2.
void check_domain(const tc::ModelParams& params, FockCutoff cutoff);

OperatorMatrix u_operator(const tc::ModelParams& params, FockCutoff cutoff,
                          const BogoliubovConvention& convention);
OperatorMatrix v_operator(const tc::ModelParams& params, FockCutoff cutoff,
                          const BogoliubovConvention& convention);
OperatorMatrix phase_operator(FockCutoff cutoff, PhaseRealization phase);

// u u^dag - v v^dag computed directly and through the commutator expansion
//   1 + g^2 S^2 - g^{2p} ([P,S] S P^dag + S [P,S] P^dag + S^2 P P^dag),
// S = sqrt(n / (w^2 - g^2 n)).
struct UnitarityForms {
    OperatorMatrix direct;
    OperatorMatrix commutator_form;
};
UnitarityForms unitarity_forms(const tc::ModelParams& params, FockCutoff cutoff,
                               const BogoliubovConvention& convention);

inline constexpr double form_agreement_tolerance = 1e-12;

// Norms of u u^dag - v v^dag - 1 away from the truncation edge. Throws if the
// direct and commutator forms disagree beyond form_agreement_tolerance.
NormReport unitarity_residual(const tc::ModelParams& params, FockCutoff cutoff,
                              const BogoliubovConvention& convention, std::size_t drop_edge);

struct ScalarBogoliubov {
    double r = 0.3;
    double theta = 0.7;
};

NormReport scalar_unitarity_residual(const ScalarBogoliubov& scalar, FockCutoff cutoff,
                                     std::size_t drop_edge);

struct CommutatorDefects {
    NormReport b;
    NormReport c;
};

struct CompositeCutoffs {
    FockCutoff a{8};
    FockCutoff f{4};
    FockCutoff d{4};
};

inline constexpr std::size_t max_product_dim = 100000;

// ||[b, b^dag] - 1|| and ||[c, c^dag] - 1|| on the a (x) f (x) d space.
CommutatorDefects composed_mode_commutator(const tc::ModelParams& params,
                                           const CompositeCutoffs& cutoffs,
                                           const BogoliubovConvention& convention,
                                           std::size_t drop_edge);
CommutatorDefects scalar_mode_commutator(const ScalarBogoliubov& scalar,
                                         const CompositeCutoffs& cutoffs, std::size_t drop_edge);

// E' = sqrt(w^2 - g^2 n_a)(n_f + n_d + 1) + w1 n_a - w.
double claimed_energy(int n_a, int n_f, int n_d, const tc::ModelParams& params);

enum class Mapping { naive_identification, best_assignment };
std::string_view to_string(Mapping mapping);

struct ClaimedLevel {
    int n_a = 0;
    int n_f = 0;
    int n_d = 0;
    double energy = 0.0;
};

struct ComparisonRow {
    ClaimedLevel claimed;
    double exact = 0.0;
    double deviation = 0.0; // |claimed - exact|
};

struct ClaimedComparison {
    tc::SectorKey key;
    Mapping mapping = Mapping::naive_identification;
    double max_abs_deviation = 0.0;
    double total_cost = 0.0;
    // Same pairing after shifting each spectrum so its lowest level is zero.
    double offset_free_deviation = 0.0;
    std::vector<ComparisonRow> rows;
};

// Claimed levels of a sector with (n_f, n_d) := (n_b, n_c), ascending by
// energy with (n_a, n_f, n_d) tiebreak.
std::vector<ClaimedLevel> claimed_sector_levels(const tc::ModelParams& params, tc::SectorKey key);

ClaimedComparison compare_claimed_vs_exact(const tc::ModelParams& params, tc::SectorKey key,
                                           Mapping mapping, double tol = default_tolerance);

// Minimum-cost perfect matching on a square row-major cost matrix.
// Returns assignment[row] = column.
std::vector<std::size_t> hungarian_assignment(std::span<const double> cost, std::size_t n);

struct AuditReport {
    tc::ModelParams params;
    BogoliubovConvention convention;
    CompositeCutoffs cutoffs;
    std::size_t drop_edge = 1;
    NormReport unitarity_residual;
    double commutator_form_agreement = 0.0;
    NormReport commutator_defect_b;
    NormReport commutator_defect_c;
    NormReport scalar_control_defect;
    std::vector<ClaimedComparison> claimed_vs_exact;
};

inline constexpr double scalar_control_tolerance = 1e-10;

AuditReport run_audit(const tc::ModelParams& params, const BogoliubovConvention& convention,
                      const CompositeCutoffs& cutoffs, std::size_t drop_edge,
                      const std::vector<tc::SectorKey>& sectors,
                      const ScalarBogoliubov& scalar = {}, double tol = default_tolerance);

} // namespace tcaudit::audit
