#include "tcaudit/tavis_cummings.hpp"

#include "tcaudit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tcaudit::tc {

void ModelParams::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ParameterError("omega must be a positive finite number");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw ParameterError("coupling g must be non-negative and finite");
    if (omega1 && !std::isfinite(*omega1))
        throw ParameterError("omega1 must be finite");
}

int SectorKey::lambda_plus_j() const
{
    if ((two_j + two_lambda) % 2 != 0)
        throw SectorParityError("sector " + to_string() +
                                ": 2j + 2lambda must be even (n_a + n_b = 2j forces matching parity)");
    return (two_j + two_lambda) / 2;
}

void SectorKey::validate() const
{
    if (two_j < 0)
        throw ParameterError("two_j must be non-negative");
    (void)lambda_plus_j();
}

std::string SectorKey::to_string() const
{
    return "(2j=" + std::to_string(two_j) + ", 2lambda=" + std::to_string(two_lambda) + ")";
}

SectorBasis enumerate_sector(SectorKey key)
{
    key.validate();
    SectorBasis basis{key, {}};
    const int total = key.lambda_plus_j();
    if (total < 0)
        return basis;
    const int top = std::min(key.two_j, total);
    basis.states.reserve(static_cast<std::size_t>(top) + 1);
    for (int n_a = 0; n_a <= top; ++n_a)
        basis.states.push_back({n_a, key.two_j - n_a, total - n_a});
    return basis;
}

namespace {

std::vector<double> chain_couplings(const SectorBasis& basis, double g)
{
    std::vector<double> off;
    if (basis.dim() > 1)
        off.reserve(basis.dim() - 1);
    // <n_a+1, n_b-1, n_c-1| a^dag b c |n_a, n_b, n_c> = sqrt((n_a+1) n_b n_c)
    for (std::size_t i = 0; i + 1 < basis.dim(); ++i) {
        const auto& s = basis.states[i];
        off.push_back(g * std::sqrt(static_cast<double>(s.n_a + 1) * s.n_b * s.n_c));
    }
    return off;
}

SectorBasis nonempty_basis(SectorKey key)
{
    auto basis = enumerate_sector(key);
    if (basis.dim() == 0)
        throw EmptySectorError("sector " + key.to_string() + " is empty (lambda + j < 0)");
    return basis;
}

} // namespace

TridiagonalHamiltonian sector_hamiltonian(const ModelParams& params, SectorKey key)
{
    params.validate();
    const auto basis = nonempty_basis(key);
    TridiagonalHamiltonian h{key, {}, chain_couplings(basis, params.g)};
    h.diag.reserve(basis.dim());
    for (const auto& s : basis.states)
        h.diag.push_back(params.omega * (s.n_a + s.n_b + s.n_c));
    return h;
}

std::vector<double> sector_spectrum(const ModelParams& params, SectorKey key, double tol)
{
    const auto h = sector_hamiltonian(params, key);
    return eig_tridiagonal(h.diag, h.offdiag, tol);
}

TridiagonalHamiltonian spin_sector_hamiltonian(const ModelParams& params, SectorKey key)
{
    params.validate();
    const auto basis = nonempty_basis(key);
    // w (n_c + m) with m = n_a - j is w*lambda on every state of the sector.
    const double level = params.omega * 0.5 * key.two_lambda;
    return {key, std::vector<double>(basis.dim(), level), chain_couplings(basis, params.g)};
}

std::vector<double> spin_sector_spectrum(const ModelParams& params, SectorKey key, double tol)
{
    const auto h = spin_sector_hamiltonian(params, key);
    return eig_tridiagonal(h.diag, h.offdiag, tol);
}

namespace {

OperatorMatrix identity_on(FockCutoff cutoff)
{
    return OperatorMatrix::identity(single_mode_labels(cutoff));
}

OperatorMatrix triple(const OperatorMatrix& a, const OperatorMatrix& b, const OperatorMatrix& c)
{
    return tensor(tensor(a, b), c);
}

} // namespace

OperatorMatrix full_hamiltonian_truncated(const ModelParams& params, const ModeCutoffs& cutoffs)
{
    params.validate();
    const auto& [ca, cb, cc] = cutoffs;
    const auto ia = identity_on(ca), ib = identity_on(cb), ic = identity_on(cc);

    auto h = params.omega * (triple(number_matrix(ca), ib, ic) + triple(ia, number_matrix(cb), ic) +
                             triple(ia, ib, number_matrix(cc)));
    if (params.g != 0.0) {
        auto hop = triple(creation_matrix(ca), annihilation_matrix(cb), annihilation_matrix(cc));
        hop += triple(annihilation_matrix(ca), creation_matrix(cb), creation_matrix(cc));
        h += params.g * hop;
    }
    return h;
}

OperatorMatrix spin_length_charge(const ModeCutoffs& cutoffs)
{
    const auto& [ca, cb, cc] = cutoffs;
    const auto ic = identity_on(cc);
    return triple(number_matrix(ca), identity_on(cb), ic) +
           triple(identity_on(ca), number_matrix(cb), ic);
}

OperatorMatrix lambda_charge(const ModeCutoffs& cutoffs)
{
    const auto& [ca, cb, cc] = cutoffs;
    const auto ia = identity_on(ca), ib = identity_on(cb);
    auto half_difference = triple(number_matrix(ca), ib, identity_on(cc)) -
                           triple(ia, number_matrix(cb), identity_on(cc));
    return triple(ia, ib, number_matrix(cc)) + Complex{0.5} * half_difference;
}

namespace {

// Spin-(two_j/2) matrices indexed by i = j + m.
OperatorMatrix spin_raising(int two_j)
{
    OperatorMatrix jp(single_mode_labels(FockCutoff(two_j)));
    for (int i = 0; i < two_j; ++i)
        jp(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) =
            std::sqrt(static_cast<double>(two_j - i) * (i + 1));
    return jp;
}

OperatorMatrix spin_z(int two_j)
{
    OperatorMatrix jz(single_mode_labels(FockCutoff(two_j)));
    for (int i = 0; i <= two_j; ++i)
        jz(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = i - 0.5 * two_j;
    return jz;
}

} // namespace

OperatorMatrix spin_picture_hamiltonian(const ModelParams& params, int two_j, FockCutoff cutoff_c)
{
    params.validate();
    if (two_j < 0)
        throw ParameterError("two_j must be non-negative");
    const auto spin_id = identity_on(FockCutoff(two_j));
    const auto jp = spin_raising(two_j);
    auto h = params.omega * (tensor(spin_id, number_matrix(cutoff_c)) +
                             tensor(spin_z(two_j), identity_on(cutoff_c)));
    if (params.g != 0.0) {
        auto hop = tensor(jp, annihilation_matrix(cutoff_c)) +
                   tensor(jp.adjoint(), creation_matrix(cutoff_c));
        h += params.g * hop;
    }
    return h;
}

OperatorMatrix spin_picture_lambda(int two_j, FockCutoff cutoff_c)
{
    if (two_j < 0)
        throw ParameterError("two_j must be non-negative");
    return tensor(identity_on(FockCutoff(two_j)), number_matrix(cutoff_c)) +
           tensor(spin_z(two_j), identity_on(cutoff_c));
}

std::vector<SectorKey> sectors_within(const ModeCutoffs& cutoffs)
{
    const int max_a = cutoffs[0].n_max(), max_b = cutoffs[1].n_max(), max_c = cutoffs[2].n_max();
    std::vector<SectorKey> keys;
    // Highest n_b and n_c occur at n_a = 0; highest n_a is min(2j, lambda + j).
    for (int two_j = 0; two_j <= max_b; ++two_j)
        for (int total = 0; total <= max_c; ++total)
            if (std::min(two_j, total) <= max_a)
                keys.push_back({two_j, 2 * total - two_j});
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<SectorSpectrum> sector_spectra_serial(const ModelParams& params,
                                                  const std::vector<SectorKey>& keys, double tol)
{
    std::vector<SectorSpectrum> out;
    out.reserve(keys.size());
    for (const auto& key : keys)
        out.push_back({key, sector_spectrum(params, key, tol)});
    return out;
}

std::vector<SectorSpectrum> sector_spectra(const ModelParams& params,
                                           const std::vector<SectorKey>& keys, double tol)
{
    params.validate();
    for (const auto& key : keys)
        if (enumerate_sector(key).dim() == 0)
            throw EmptySectorError("sector " + key.to_string() + " is empty (lambda + j < 0)");

    std::vector<SectorSpectrum> out(keys.size());
    kernels::parallel_for(keys.size(), [&](std::size_t i) {
        out[i] = {keys[i], sector_spectrum(params, keys[i], tol)};
    });
    return out;
}

std::vector<SectorSpectrum> truncated_block_spectra(const ModelParams& params,
                                                    const ModeCutoffs& cutoffs, double tol)
{
    const auto h = full_hamiltonian_truncated(params, cutoffs);
    std::map<SectorKey, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        const auto& occ = h.labels()[i].occupations;
        const int two_j = occ[0] + occ[1];
        blocks[{two_j, 2 * occ[2] + occ[0] - occ[1]}].push_back(i);
    }

    std::vector<std::pair<SectorKey, std::vector<std::size_t>>> ordered(blocks.begin(), blocks.end());
    std::vector<SectorSpectrum> out(ordered.size());
    kernels::parallel_for(ordered.size(), [&](std::size_t b) {
        const auto& [key, indices] = ordered[b];
        const std::size_t k = indices.size();
        std::vector<Complex> block(k * k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                block[r * k + c] = h(indices[r], indices[c]);
        out[b] = {key, eigvalsh_dense(OperatorMatrix::from_entries(k, std::move(block)), tol)};
    });
    return out;
}

} // namespace tcaudit::tc
