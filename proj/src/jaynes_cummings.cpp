#include "tcaudit/jaynes_cummings.hpp"

#include <algorithm>
#include <cmath>

namespace tcaudit::jc {

JcParams JcParams::from_detuning(double delta, double omega, double g, int k)
{
    return {2.0 * (delta + omega), omega, g, k};
}

void JcParams::validate() const
{
    if (k < 1)
        throw ParameterError("photon number k must be at least 1");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw ParameterError("coupling g must be non-negative and finite");
    if (!std::isfinite(omega0) || !std::isfinite(omega))
        throw ParameterError("frequencies must be finite");
}

double photon_product(int n, int k)
{
    if (n < 0)
        throw ParameterError("block index n must be non-negative");
    double product = 1.0;
    for (int i = 1; i <= k; ++i)
        product *= static_cast<double>(n + i);
    return product;
}

namespace {

double coupling(const JcParams& params, int n)
{
    return params.g * std::sqrt(photon_product(n, params.k));
}

} // namespace

double rabi_energy(const JcParams& params, int n)
{
    params.validate();
    return std::hypot(params.delta(), coupling(params, n));
}

JcBlock jc_block(const JcParams& params, int n)
{
    params.validate();
    const double delta = params.delta();
    const double x = coupling(params, n);
    JcBlock block;
    block.n = n;
    block.matrix = {{{delta, x}, {x, -delta}}};
    block.rabi = std::hypot(delta, x);
    block.e_plus = block.rabi;
    block.e_minus = -block.rabi;
    return block;
}

Matrix2 displacement_matrix(const JcParams& params, int n)
{
    params.validate();
    const double delta = params.delta();
    const double x = coupling(params, n);
    const double e = std::hypot(delta, x);
    if (e == 0.0)
        throw DegenerateBlockError("block n = " + std::to_string(n) +
                                   " has zero Rabi energy (Delta = 0 and no coupling)");

    // 1 -+ Delta/E without cancellation: the small one equals x^2 / (E (E + |Delta|)).
    const double small = x * x / (e * (e + std::abs(delta)));
    const double large = 1.0 + std::abs(delta) / e;
    const double one_plus = delta >= 0.0 ? large : small;
    const double one_minus = delta >= 0.0 ? small : large;
    const double cp = std::sqrt(0.5 * one_plus);
    const double cm = std::sqrt(0.5 * one_minus);
    return {{{cp, -cm}, {cm, cp}}};
}

namespace {

Matrix2 multiply(const Matrix2& a, const Matrix2& b)
{
    Matrix2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return out;
}

Matrix2 transpose(const Matrix2& a)
{
    return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}};
}

// Norms of a real symmetric 2x2 matrix.
NormReport symmetric_norms(double a, double b, double d)
{
    const double frob = std::sqrt(a * a + 2.0 * b * b + d * d);
    const double spectral = std::abs(0.5 * (a + d)) + std::hypot(0.5 * (a - d), b);
    return {frob, std::min(spectral, frob)};
}

} // namespace

BlockVerification verify_block_diagonalization(const JcParams& params, int n)
{
    const auto block = jc_block(params, n);
    Matrix2 dmat{{{1.0, 0.0}, {0.0, 1.0}}};
    if (block.rabi > 0.0)
        dmat = displacement_matrix(params, n);

    const auto dt = transpose(dmat);
    const auto gram = multiply(dt, dmat);
    const auto rotated = multiply(dt, multiply(block.matrix, dmat));

    BlockVerification out;
    out.orthogonality = symmetric_norms(gram[0][0] - 1.0, 0.5 * (gram[0][1] + gram[1][0]),
                                        gram[1][1] - 1.0);
    out.off_diagonal = {std::hypot(rotated[0][1], rotated[1][0]),
                        std::max(std::abs(rotated[0][1]), std::abs(rotated[1][0]))};
    out.rotated = rotated;
    return out;
}

E20Levels e20_eigenvalues(const JcParams& params, int n, bool allow_general_k)
{
    params.validate();
    if (params.k != 2 && !allow_general_k)
        throw ParameterError("the closed-form ladder energies are stated for k = 2; pass "
                             "allow_general_k to use the k-photon generalization");
    const double split = std::sqrt(params.delta() * params.delta() +
                                   params.g * params.g * photon_product(n, params.k));
    const double centre = params.omega * (n + 1);
    return {centre + split, centre - split};
}

OperatorMatrix full_jc_truncated(const JcParams& params, FockCutoff cutoff)
{
    params.validate();
    const FockCutoff atom(1);
    auto sigma_z = OperatorMatrix(single_mode_labels(atom));
    sigma_z(0, 0) = -1.0;
    sigma_z(1, 1) = 1.0;
    auto sigma_plus = OperatorMatrix(single_mode_labels(atom));
    sigma_plus(1, 0) = 1.0;

    const auto a = annihilation_matrix(cutoff);
    auto a_k = OperatorMatrix::identity(a.labels());
    for (int i = 0; i < params.k; ++i)
        a_k = a_k * a;

    auto h = Complex{params.delta()} *
             tensor(sigma_z, OperatorMatrix::identity(single_mode_labels(cutoff)));
    h += Complex{params.g} * (tensor(sigma_plus, a_k) + tensor(sigma_plus.adjoint(), a_k.adjoint()));
    return h;
}

std::vector<double> block_spectrum_union(const JcParams& params, FockCutoff cutoff)
{
    params.validate();
    const int n_max = cutoff.n_max();
    const double delta = params.delta();
    std::vector<double> values;
    values.reserve(2 * cutoff.dim());
    for (int n = 0; n + params.k <= n_max; ++n) {
        const auto block = jc_block(params, n);
        values.push_back(block.e_plus);
        values.push_back(block.e_minus);
    }
    for (int m = 0; m < std::min(params.k, n_max + 1); ++m)
        values.push_back(-delta);
    for (int n = std::max(0, n_max - params.k + 1); n <= n_max; ++n)
        values.push_back(delta);
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace tcaudit::jc
