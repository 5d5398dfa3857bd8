#pragma once

// Tavis-Cummings model at resonance, in the collective-spin picture
//   H_TC = w c^dag c + w J_z + g (c J+ + c^dag J-)
// and in the three-boson (Schwinger) picture
//   H = w a^dag a + w b^dag b + w c^dag c + g (a^dag b c + a b^dag c^dag).
//
// Both conserve n_a + n_b = 2j and Lambda = n_c + (n_a - n_b)/2 = lambda, so
// each (j, lambda) sector is a real symmetric tridiagonal chain indexed by n_a.
// Half-integers are carried as doubled integers.

#include "tcaudit/eigensolvers.hpp"
#include "tcaudit/fock.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace tcaudit::tc {

struct ModelParams {
    double omega = 1.0;
    double g = 0.0;
    std::optional<double> omega1; // defaults to omega

    double effective_omega1() const { return omega1.value_or(omega); }
    void validate() const;
};

struct SectorKey {
    int two_j = 0;
    int two_lambda = 0;

    // lambda + j; throws SectorParityError when two_j + two_lambda is odd.
    int lambda_plus_j() const;
    void validate() const;
    std::string to_string() const;

    auto operator<=>(const SectorKey&) const = default;
};

struct SectorState {
    int n_a = 0;
    int n_b = 0;
    int n_c = 0;

    auto operator<=>(const SectorState&) const = default;
};

struct SectorBasis {
    SectorKey key;
    std::vector<SectorState> states; // ascending n_a

    std::size_t dim() const noexcept { return states.size(); }
};

struct TridiagonalHamiltonian {
    SectorKey key;
    std::vector<double> diag;
    std::vector<double> offdiag;
};

struct SectorSpectrum {
    SectorKey key;
    std::vector<double> energies; // ascending
};

using ModeCutoffs = std::array<FockCutoff, 3>;

SectorBasis enumerate_sector(SectorKey key);

// Sector block of the three-boson Hamiltonian.
TridiagonalHamiltonian sector_hamiltonian(const ModelParams& params, SectorKey key);
std::vector<double> sector_spectrum(const ModelParams& params, SectorKey key,
                                    double tol = default_tolerance);

// Sector block of the collective-spin Hamiltonian on the same chain of states.
// Same couplings as sector_hamiltonian, constant diagonal w*lambda.
TridiagonalHamiltonian spin_sector_hamiltonian(const ModelParams& params, SectorKey key);
std::vector<double> spin_sector_spectrum(const ModelParams& params, SectorKey key,
                                         double tol = default_tolerance);

// Dense three-boson Hamiltonian on the (n_a, n_b, n_c) product basis.
OperatorMatrix full_hamiltonian_truncated(const ModelParams& params, const ModeCutoffs& cutoffs);
// n_a + n_b and n_c + (n_a - n_b)/2 on the same basis.
OperatorMatrix spin_length_charge(const ModeCutoffs& cutoffs);
OperatorMatrix lambda_charge(const ModeCutoffs& cutoffs);

// Dense collective-spin Hamiltonian on |m> (x) |n_c>, m = -j..j. Labels are
// (j + m, n_c).
OperatorMatrix spin_picture_hamiltonian(const ModelParams& params, int two_j, FockCutoff cutoff_c);
// Lambda = c^dag c + J_z on the spin-picture basis.
OperatorMatrix spin_picture_lambda(int two_j, FockCutoff cutoff_c);

// Sectors whose every state lies inside the cutoff box, sorted by key.
std::vector<SectorKey> sectors_within(const ModeCutoffs& cutoffs);

// Spectra of many sectors. The parallel version distributes sectors over
// OpenMP threads; output order always follows the input keys.
std::vector<SectorSpectrum> sector_spectra_serial(const ModelParams& params,
                                                  const std::vector<SectorKey>& keys,
                                                  double tol = default_tolerance);
std::vector<SectorSpectrum> sector_spectra(const ModelParams& params,
                                           const std::vector<SectorKey>& keys,
                                           double tol = default_tolerance);

// Dense-builds the truncated Hamiltonian, splits it into charge blocks
// (including sectors cut by the box) and diagonalizes each block densely.
std::vector<SectorSpectrum> truncated_block_spectra(const ModelParams& params,
                                                    const ModeCutoffs& cutoffs,
                                                    double tol = default_tolerance);

} // namespace tcaudit::tc
