#include "tcaudit/bogoliubov_audit.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace tcaudit;
using namespace tcaudit::audit;
using tc::ModelParams;

namespace {

const BogoliubovConvention squared{PhaseRealization::susskind_glogower, CouplingPower::paper_g_squared};
const BogoliubovConvention corrected{PhaseRealization::susskind_glogower, CouplingPower::corrected_g};

// Diagonal of u u^dag - v v^dag - 1 written out entry by entry. u is
// diagonal and v has one nonzero per column, so both products are diagonal.
std::vector<double> residual_diagonal_oracle(double omega, double g, int n_max, int power, bool raising)
{
    std::vector<double> u(n_max + 1), v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double den = omega * omega - g * g * n;
        u[n] = omega / std::sqrt(den);
        v[n] = std::pow(g, power) * std::sqrt(n / den);
    }
    std::vector<double> r(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double vv = 0.0;
        if (!raising && n < n_max)
            vv = v[n + 1] * v[n + 1]; // row n of E D holds D_{n+1}
        if (raising && n > 0)
            vv = v[n - 1] * v[n - 1];
        r[n] = u[n] * u[n] - vv - 1.0;
    }
    return r;
}

double frobenius_of_first(const std::vector<double>& r, std::size_t count)
{
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        s += r[i] * r[i];
    return std::sqrt(s);
}

double max_abs_of_first(const std::vector<double>& r, std::size_t count)
{
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        m = std::max(m, std::abs(r[i]));
    return m;
}

double brute_force_best_max(const std::vector<double>& claimed, const std::vector<double>& exact,
                            double* best_total)
{
    std::vector<std::size_t> perm(exact.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = INFINITY, best_max = INFINITY;
    do {
        double total = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const double d = std::abs(claimed[i] - exact[perm[i]]);
            total += d;
            worst = std::max(worst, d);
        }
        if (total < best) {
            best = total;
            best_max = worst;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    *best_total = best;
    return best_max;
}

} // namespace

TEST(Convention, NamesRoundTrip)
{
    for (auto p : {PhaseRealization::susskind_glogower, PhaseRealization::adjoint_variant})
        EXPECT_EQ(parse_phase(to_string(p)), p);
    for (auto p : {CouplingPower::paper_g_squared, CouplingPower::corrected_g})
        EXPECT_EQ(parse_power(to_string(p)), p);
    EXPECT_THROW(parse_phase("polar"), ParameterError);
    EXPECT_THROW(parse_power("g_cubed"), ParameterError);
}

TEST(UOperator, Examples)
{
    const FockCutoff cut(8);
    const auto id = u_operator({1.0, 0.0, {}}, cut, squared);
    EXPECT_EQ((id - OperatorMatrix::identity(id.labels())).max_abs(), 0.0);

    const auto u = u_operator({1.0, 0.1, {}}, cut, squared);
    EXPECT_NEAR(u(1, 1).real(), 1.0 / std::sqrt(0.99), 1e-15);
    EXPECT_NEAR(u(1, 1).real(), 1.00503782, 5e-9);
    for (double w : {0.3, 1.0, 7.0})
        EXPECT_EQ(u_operator({w, 0.04, {}}, cut, squared)(0, 0), Complex(1.0));
}

TEST(VOperator, Examples)
{
    const FockCutoff cut(8);
    EXPECT_EQ(v_operator({1.0, 0.0, {}}, cut, squared).max_abs(), 0.0);
    const ModelParams p{1.0, 0.1, {}};
    EXPECT_NEAR(v_operator(p, cut, squared)(0, 1).real(), 0.01 / std::sqrt(0.99), 1e-16);
    EXPECT_NEAR(v_operator(p, cut, squared)(0, 1).real(), 0.01005038, 5e-9);
    EXPECT_NEAR(v_operator(p, cut, corrected)(0, 1).real(), 0.10050378, 5e-9);

    // Raising variant puts D_n at (n+1, n).
    const BogoliubovConvention raise{PhaseRealization::adjoint_variant, CouplingPower::corrected_g};
    const auto v = v_operator(p, cut, raise);
    EXPECT_NEAR(v(2, 1).real(), 0.1 / std::sqrt(0.99), 1e-16);
    EXPECT_EQ(v(0, 1), Complex{});
}

TEST(Domain, SingularCoefficientsAreRefused)
{
    try {
        u_operator({1.0, 0.5, {}}, FockCutoff(8), squared);
        FAIL() << "expected DomainSingularError";
    } catch (const DomainSingularError& e) {
        EXPECT_EQ(e.occupation(), 4);
    }
    EXPECT_THROW(v_operator({1.0, 1.0, {}}, FockCutoff(1), squared), DomainSingularError);
    EXPECT_NO_THROW(check_domain({1.0, 0.5, {}}, FockCutoff(3)));
    EXPECT_THROW(claimed_energy(100, 0, 0, {1.0, 0.1, {}}), DomainSingularError);
}

TEST(UnitarityResidual, UncoupledIsExactlyZero)
{
    for (const auto& conv : {squared, corrected}) {
        const auto r = unitarity_residual({1.0, 0.0, {}}, FockCutoff(8), conv, 1);
        EXPECT_EQ(r.frobenius, 0.0);
        EXPECT_EQ(r.spectral, 0.0);
    }
}

TEST(UnitarityResidual, MatchesEntrywiseOracle)
{
    for (int power : {1, 2})
        for (bool raising : {false, true})
            for (int n_max : {3, 8, 16}) {
                const BogoliubovConvention conv{
                    raising ? PhaseRealization::adjoint_variant : PhaseRealization::susskind_glogower,
                    power == 2 ? CouplingPower::paper_g_squared : CouplingPower::corrected_g};
                const auto r = unitarity_residual({1.0, 0.1, {}}, FockCutoff(n_max), conv, 1);
                const auto oracle = residual_diagonal_oracle(1.0, 0.1, n_max, power, raising);
                EXPECT_NEAR(r.frobenius, frobenius_of_first(oracle, n_max), 1e-13);
                EXPECT_NEAR(r.spectral, max_abs_of_first(oracle, n_max), 1e-12);
            }
}

TEST(UnitarityResidual, FrozenDenseReferenceValues)
{
    // Independent dense 9x9 and 17x17 evaluation, drop_edge = 1.
    const ModelParams p{1.0, 0.1, {}};
    const auto p8 = unitarity_residual(p, FockCutoff(8), squared, 1);
    EXPECT_GT(p8.frobenius, 1e-8);
    EXPECT_NEAR(p8.frobenius, 0.12386547072009714, 1e-12);
    EXPECT_NEAR(p8.spectral, 0.07439925198690989, 1e-12);
    const auto c8 = unitarity_residual(p, FockCutoff(8), corrected, 1);
    EXPECT_NEAR(c8.frobenius, 0.030778837282624004, 1e-12);
    EXPECT_NEAR(c8.spectral, 0.011687704534829257, 1e-12);
    EXPECT_NEAR(unitarity_residual(p, FockCutoff(16), squared, 1).frobenius, 0.39464609872377177, 1e-12);
    EXPECT_NEAR(unitarity_residual(p, FockCutoff(16), corrected, 1).frobenius, 0.04785934218804056, 1e-12);
}

TEST(UnitarityResidual, TwoFormsAgree)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> omega(0.5, 2.0), frac(0.0, 0.95);
    for (int trial = 0; trial < 40; ++trial) {
        const int n_max = 1 + trial % 12;
        const double w = omega(rng);
        const double g = w * std::sqrt(frac(rng) / n_max);
        const BogoliubovConvention conv{
            trial % 2 ? PhaseRealization::adjoint_variant : PhaseRealization::susskind_glogower,
            trial % 3 ? CouplingPower::paper_g_squared : CouplingPower::corrected_g};
        const auto forms = unitarity_forms({w, g, {}}, FockCutoff(n_max), conv);
        EXPECT_LE((forms.direct - forms.commutator_form).max_abs(), form_agreement_tolerance);
        EXPECT_NO_THROW(unitarity_residual({w, g, {}}, FockCutoff(n_max), conv, 1));
    }
}

TEST(UnitarityResidual, NondecreasingInCoupling)
{
    for (const auto& conv : {squared, corrected}) {
        double previous = 0.0;
        for (int step = 0; step <= 5; ++step) {
            const double g = 0.02 * step;
            const double now = unitarity_residual({1.0, g, {}}, FockCutoff(8), conv, 1).frobenius;
            EXPECT_GE(now, previous) << "g=" << g;
            previous = now;
        }
    }
}

TEST(ScalarControl, ResidualsVanish)
{
    for (const ScalarBogoliubov s : {ScalarBogoliubov{}, ScalarBogoliubov{1.1, -2.0}, ScalarBogoliubov{0.0, 0.0}}) {
        const auto r = scalar_unitarity_residual(s, FockCutoff(8), 1);
        EXPECT_LE(r.frobenius, 1e-15 * 3 * (1 + std::cosh(2 * s.r)));
        const auto d = scalar_mode_commutator(s, CompositeCutoffs{FockCutoff(6), FockCutoff(4), FockCutoff(4)}, 1);
        EXPECT_LE(d.b.frobenius, 1e-12 * std::cosh(2 * s.r));
        EXPECT_LE(d.c.frobenius, 1e-12 * std::cosh(2 * s.r));
    }
    EXPECT_LE(scalar_unitarity_residual({}, FockCutoff(8), 1).frobenius, 1e-15);
}

TEST(ComposedModes, DefectsPresentForCouplingAbsentWithout)
{
    const CompositeCutoffs cut{FockCutoff(6), FockCutoff(4), FockCutoff(4)};
    const auto free = composed_mode_commutator({1.0, 0.0, {}}, cut, squared, 1);
    // b = f exactly; what is left is rounding in sqrt(n)^2.
    EXPECT_LE(free.b.frobenius, 1e-13);
    EXPECT_LE(free.c.frobenius, 1e-13);
    for (const auto& conv : {squared, corrected}) {
        const auto d = composed_mode_commutator({1.0, 0.1, {}}, cut, conv, 1);
        EXPECT_GT(d.b.frobenius, 1e-8);
        EXPECT_GT(d.c.frobenius, 1e-8);
        EXPECT_LE(d.b.spectral, d.b.frobenius);
    }
}

TEST(ComposedModes, OracleOnTheVacuumOfFAndD)
{
    // On |n_a, 0, 0> the diagonal of [b, b^dag] is u_n^2 (from f f^dag)
    // minus (v^dag v)_nn (from d d^dag); cross terms carry f (x) d and vanish.
    const CompositeCutoffs cut{FockCutoff(5), FockCutoff(3), FockCutoff(3)};
    const ModelParams p{1.0, 0.12, {}};
    const auto u = u_operator(p, cut.a, squared), v = v_operator(p, cut.a, squared);
    const auto f = annihilation_matrix(cut.f), d = annihilation_matrix(cut.d);
    const auto i_f = OperatorMatrix::identity(single_mode_labels(cut.f));
    const auto i_d = OperatorMatrix::identity(single_mode_labels(cut.d));
    const auto b = tensor(tensor(u, f), i_d) + tensor(tensor(v, i_f), d.adjoint());
    const auto comm = commutator(b, b.adjoint());
    for (std::size_t i = 0; i < comm.dim(); ++i) {
        const auto& o = comm.labels()[i].occupations;
        if (o[1] != 0 || o[2] != 0)
            continue;
        // corrected_g would make this exactly 1 here; the g^2 power does not.
        const double den = 1.0 - 0.0144 * o[0];
        const double expected = 1.0 / den - 0.0144 * 0.0144 * o[0] / den;
        EXPECT_NEAR(comm(i, i).real(), expected, 1e-13) << o[0];
    }
}

TEST(ComposedModes, SizeLimit)
{
    const CompositeCutoffs huge{FockCutoff(99), FockCutoff(40), FockCutoff(40)};
    EXPECT_THROW(composed_mode_commutator({1.0, 0.01, {}}, huge, squared, 1), SizeError);
    EXPECT_THROW(scalar_mode_commutator({}, huge, 1), SizeError);
}

TEST(ClaimedEnergy, Examples)
{
    EXPECT_EQ(claimed_energy(0, 0, 0, {1.0, 0.3, {}}), 0.0);
    EXPECT_NEAR(claimed_energy(1, 1, 0, {1.0, 0.1, {}}), 2 * std::sqrt(0.99), 1e-15);
    EXPECT_NEAR(claimed_energy(1, 1, 0, {1.0, 0.1, {}}), 1.98997487, 5e-9);
    for (int a = 0; a < 4; ++a)
        for (int f = 0; f < 4; ++f)
            for (int d = 0; d < 4; ++d)
                EXPECT_NEAR(claimed_energy(a, f, d, {1.5, 0.0, 0.7}), 1.5 * (f + d) + 0.7 * a, 1e-14);
    EXPECT_THROW(claimed_energy(-1, 0, 0, {1.0, 0.1, {}}), ParameterError);
}

TEST(ClaimedVsExact, HalfSpinExample)
{
    const ModelParams p{1.0, 0.1, {}};
    const auto levels = claimed_sector_levels(p, {1, 1});
    ASSERT_EQ(levels.size(), 2u);
    EXPECT_NEAR(levels[0].energy, std::sqrt(0.99), 1e-15);
    EXPECT_NEAR(levels[1].energy, 2.0, 1e-15);

    const double expected = 0.5 * (std::sqrt(1.04) - 1.0);
    for (auto mapping : {Mapping::naive_identification, Mapping::best_assignment}) {
        const auto cmp = compare_claimed_vs_exact(p, {1, 1}, mapping);
        EXPECT_NEAR(cmp.max_abs_deviation, expected, 1e-13);
        EXPECT_NEAR(cmp.max_abs_deviation, 0.00990, 5e-6);
        EXPECT_GT(cmp.max_abs_deviation, 1e-3);
    }
}

TEST(ClaimedVsExact, UncoupledAgreesAndWeakCouplingConverges)
{
    for (int two_j = 0; two_j <= 6; ++two_j)
        for (int total = 0; total <= 8; ++total) {
            const tc::SectorKey key{two_j, 2 * total - two_j};
            EXPECT_LE(compare_claimed_vs_exact({1.0, 0.0, {}}, key, Mapping::naive_identification).max_abs_deviation,
                      1e-13);
            EXPECT_LT(compare_claimed_vs_exact({1.0, 1e-6, {}}, key, Mapping::naive_identification).max_abs_deviation,
                      1e-6);
        }
}

TEST(ClaimedVsExact, BestAssignmentNeverWorseInTotalCost)
{
    const ModelParams p{1.0, 0.07, {}};
    for (int two_j = 1; two_j <= 6; ++two_j)
        for (int total = 1; total <= 7; ++total) {
            const tc::SectorKey key{two_j, 2 * total - two_j};
            const auto naive = compare_claimed_vs_exact(p, key, Mapping::naive_identification);
            const auto best = compare_claimed_vs_exact(p, key, Mapping::best_assignment);
            EXPECT_LE(best.total_cost, naive.total_cost + 1e-12);
            EXPECT_EQ(best.rows.size(), enumerate_sector(key).dim());

            std::vector<double> claimed, exact = tc::sector_spectrum(p, key);
            for (const auto& row : best.rows)
                claimed.push_back(row.claimed.energy);
            if (exact.size() <= 7) {
                double brute_total = 0.0;
                brute_force_best_max(claimed, exact, &brute_total);
                EXPECT_NEAR(best.total_cost, brute_total, 1e-12);
            }
        }
}

TEST(Hungarian, MatchesPermutationSearch)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(0.0, 10.0);
    for (std::size_t n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> cost(n * n);
            for (auto& c : cost)
                c = uni(rng);
            if (trial == 0)
                std::fill(cost.begin(), cost.end(), 1.0); // all ties
            const auto assign = hungarian_assignment(cost, n);
            std::vector<std::size_t> seen(assign);
            std::sort(seen.begin(), seen.end());
            for (std::size_t i = 0; i < n; ++i)
                ASSERT_EQ(seen[i], i);
            double got = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                got += cost[i * n + assign[i]];

            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            double best = INFINITY;
            do {
                double total = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    total += cost[i * n + perm[i]];
                best = std::min(best, total);
            } while (std::next_permutation(perm.begin(), perm.end()));
            EXPECT_NEAR(got, best, 1e-12);
        }
    EXPECT_TRUE(hungarian_assignment({}, 0).empty());
    const std::vector<double> bad(3);
    EXPECT_THROW(hungarian_assignment(bad, 2), DimensionError);
}

TEST(RunAudit, AssemblesEveryQuantity)
{
    const std::vector<tc::SectorKey> sectors{{1, 1}, {2, 2}};
    const auto rep = run_audit({1.0, 0.1, {}}, squared, CompositeCutoffs{FockCutoff(6), FockCutoff(4), FockCutoff(4)}, 1,
                               sectors);
    EXPECT_LE(rep.scalar_control_defect.frobenius, scalar_control_tolerance);
    EXPECT_LE(rep.commutator_form_agreement, form_agreement_tolerance);
    EXPECT_GT(rep.unitarity_residual.frobenius, 1e-8);
    EXPECT_GT(rep.commutator_defect_b.frobenius, 1e-8);
    EXPECT_GT(rep.commutator_defect_c.frobenius, 1e-8);
    ASSERT_EQ(rep.claimed_vs_exact.size(), 4u);
    EXPECT_EQ(rep.claimed_vs_exact[0].mapping, Mapping::naive_identification);
    EXPECT_EQ(rep.claimed_vs_exact[1].mapping, Mapping::best_assignment);
    EXPECT_THROW(run_audit({1.0, 0.5, {}}, squared, {}, 1, sectors), DomainSingularError);
}
