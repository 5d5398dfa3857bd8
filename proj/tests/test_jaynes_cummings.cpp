#include "tcaudit/jaynes_cummings.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tcaudit;
using namespace tcaudit::jc;

namespace {

JcParams at(double delta, double g, int k, double omega = 1.0)
{
    return JcParams::from_detuning(delta, omega, g, k);
}

// Eigenvalues of a real symmetric 2x2 by the quadratic formula.
std::pair<double, double> quadratic_pair(const Matrix2& m)
{
    const double mean = 0.5 * (m[0][0] + m[1][1]);
    const double half = std::sqrt(0.25 * (m[0][0] - m[1][1]) * (m[0][0] - m[1][1]) + m[0][1] * m[0][1]);
    return {mean + half, mean - half};
}

} // namespace

TEST(JcParams, DetuningAndValidation)
{
    const auto p = at(0.25, 0.3, 2, 1.5);
    EXPECT_DOUBLE_EQ(p.delta(), 0.25);
    EXPECT_DOUBLE_EQ(p.omega0, 3.5);
    EXPECT_THROW(jc_block(at(0.0, 1.0, 0), 0), ParameterError);
    EXPECT_THROW(jc_block(at(0.0, -1.0, 1), 0), ParameterError);
    EXPECT_THROW(jc_block(at(0.0, 1.0, 1), -1), ParameterError);
}

TEST(JcBlock, Examples)
{
    const auto b = jc_block(at(0.0, 1.0, 2), 0);
    EXPECT_NEAR(b.matrix[0][1], std::sqrt(2.0), 1e-15);
    EXPECT_EQ(b.matrix[0][1], b.matrix[1][0]);
    EXPECT_NEAR(b.e_plus, 1.41421356, 5e-9);
    EXPECT_NEAR(b.e_minus, -1.41421356, 5e-9);

    const auto free = jc_block(at(0.7, 0.0, 3), 5);
    EXPECT_DOUBLE_EQ(free.e_plus, 0.7);
    EXPECT_DOUBLE_EQ(free.e_minus, -0.7);

    const auto vac = jc_block(at(0.4, 0.3, 1), 0);
    EXPECT_NEAR(vac.rabi, std::sqrt(0.16 + 0.09), 1e-15);
}

TEST(JcBlock, EigenvaluesAreTracelessPair)
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 20; n += 4)
            for (double delta : {-2.0, 0.0, 1.3}) {
                const auto b = jc_block(at(delta, 0.6, k), n);
                const double d = at(delta, 0.6, k).delta();
                EXPECT_EQ(b.e_plus, -b.e_minus);
                EXPECT_EQ(b.matrix[0][0], d);
                EXPECT_EQ(b.matrix[1][1], -d);
                const auto [hi, lo] = quadratic_pair(b.matrix);
                EXPECT_NEAR(hi, b.e_plus, 1e-12 * (1 + b.rabi));
                EXPECT_NEAR(lo, b.e_minus, 1e-12 * (1 + b.rabi));
                EXPECT_NEAR(b.rabi, rabi_energy(at(delta, 0.6, k), n), 1e-15 * (1 + b.rabi));
            }
}

TEST(PhotonProduct, FallingFactorial)
{
    EXPECT_EQ(photon_product(0, 2), 2.0);
    EXPECT_EQ(photon_product(3, 3), 4.0 * 5 * 6);
    EXPECT_EQ(photon_product(7, 1), 8.0);
}

TEST(Displacement, Examples)
{
    const double r = 1.0 / std::sqrt(2.0);
    const auto bal = displacement_matrix(at(0.0, 1.0, 1), 3);
    for (const auto& row : bal)
        for (double x : row)
            EXPECT_NEAR(std::abs(x), r, 1e-15);

    const auto id = displacement_matrix(at(1.5, 0.0, 2), 4);
    EXPECT_EQ(id[0][0], 1.0);
    EXPECT_EQ(id[1][1], 1.0);
    EXPECT_EQ(id[0][1], 0.0);
    EXPECT_EQ(id[1][0], 0.0);

    const auto d = displacement_matrix(at(3.0, 4.0 / std::sqrt(2.0), 2), 0);
    EXPECT_NEAR(d[0][0], std::sqrt(0.8), 1e-15);
    EXPECT_NEAR(d[1][0], std::sqrt(0.2), 1e-15);
    EXPECT_NEAR(d[0][0], 0.89443, 5e-6);
    EXPECT_NEAR(d[1][0], 0.44721, 5e-6);
    EXPECT_EQ(d[1][1], d[0][0]);
    EXPECT_EQ(d[0][1], -d[1][0]);

    EXPECT_THROW(displacement_matrix(at(0.0, 0.0, 1), 0), DegenerateBlockError);
}

TEST(Verification, HandExample)
{
    const auto v = verify_block_diagonalization(at(0.0, 1.0, 2), 0);
    const double s = std::sqrt(2.0);
    // Either ordering of the diagonal is a valid diagonalization.
    EXPECT_NEAR(std::abs(v.rotated[0][0]), s, 1e-14);
    EXPECT_NEAR(v.rotated[0][0] + v.rotated[1][1], 0.0, 1e-14);
    EXPECT_LE(v.off_diagonal.frobenius, 1e-14);
    EXPECT_LE(v.orthogonality.frobenius, 1e-14);

    const auto free = verify_block_diagonalization(at(0.0, 0.0, 1), 2);
    EXPECT_EQ(free.off_diagonal.frobenius, 0.0);
    EXPECT_EQ(free.orthogonality.frobenius, 0.0);
}

TEST(Verification, WholeGrid)
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 50; ++n)
            for (int i = 0; i <= 20; ++i)
                for (int j = 1; j <= 20; ++j) {
                    const double delta = -5.0 + 0.5 * i;
                    const double g = 0.1 * j;
                    const auto p = at(delta, g, k);
                    const auto v = verify_block_diagonalization(p, n);
                    ASSERT_LE(v.orthogonality.frobenius, 1e-14) << k << " " << n << " " << delta << " " << g;
                    const double e = rabi_energy(p, n);
                    ASSERT_LE(v.off_diagonal.frobenius, 1e-12 * e) << k << " " << n << " " << delta << " " << g;
                    // D^T H D = diag(E, -E) with +E first.
                    ASSERT_NEAR(v.rotated[0][0], e, 1e-12 * e);
                    ASSERT_NEAR(v.rotated[1][1], -e, 1e-12 * e);
                }
}

TEST(LadderEnergies, Examples)
{
    const auto l = e20_eigenvalues(at(0.0, 1.0, 2), 0);
    EXPECT_NEAR(l.plus, 1 + std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(l.minus, 1 - std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(l.plus, 2.41421, 5e-6);
    EXPECT_NEAR(l.minus, -0.41421, 5e-6);

    const auto deg = e20_eigenvalues(at(0.0, 0.0, 2, 1.7), 3);
    EXPECT_EQ(deg.plus, 1.7 * 4);
    EXPECT_EQ(deg.minus, 1.7 * 4);
}

TEST(LadderEnergies, GapIsTwiceRabi)
{
    for (int n = 0; n <= 30; ++n)
        for (double delta : {-1.0, 0.0, 0.3, 4.0}) {
            const auto p = at(delta, 0.45, 2);
            const auto l = e20_eigenvalues(p, n);
            EXPECT_NEAR(l.plus - l.minus, 2 * jc_block(p, n).rabi, 1e-12);
        }
}

TEST(LadderEnergies, OtherKBehindFlag)
{
    EXPECT_THROW(e20_eigenvalues(at(0.0, 1.0, 1), 0), ParameterError);
    EXPECT_THROW(e20_eigenvalues(at(0.0, 1.0, 3), 0), ParameterError);
    const auto l = e20_eigenvalues(at(0.2, 1.0, 3), 1, true);
    EXPECT_NEAR(l.plus - l.minus, 2 * std::sqrt(0.04 + 24.0), 1e-12);
}

TEST(FullJc, UncoupledIsDiagonalDelta)
{
    const auto h = full_jc_truncated(at(0.8, 0.0, 2), FockCutoff(5));
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j) {
            const double atom = h.labels()[i].occupations[0] == 1 ? 0.8 : -0.8;
            EXPECT_EQ(h(i, j), Complex(i == j ? atom : 0.0));
        }
}

TEST(FullJc, ContainsTwoPhotonBlockEnergies)
{
    auto dense = eigvalsh_dense(full_jc_truncated(at(0.0, 1.0, 2), FockCutoff(10)));
    for (int n = 0; n + 2 <= 10; ++n) {
        const double e = std::sqrt(double(n + 1) * (n + 2));
        EXPECT_TRUE(testkit::remove_submultiset(dense, {e, -e}, 1e-10)) << n;
    }
}

TEST(FullJc, SpectrumIsBlockUnion)
{
    for (int k = 1; k <= 3; ++k)
        for (int n_max : {0, 1, 2, 5, 9})
            for (double delta : {-0.6, 0.0, 0.35}) {
                const auto p = at(delta, 0.8, k);
                const FockCutoff cut(n_max);
                const auto dense = eigvalsh_dense(full_jc_truncated(p, cut));
                EXPECT_LE(testkit::max_sorted_difference(dense, block_spectrum_union(p, cut)), 1e-10)
                    << "k=" << k << " n_max=" << n_max << " delta=" << delta;
            }
}
