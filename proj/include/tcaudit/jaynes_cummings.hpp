#pragma once

// k-photon Jaynes-Cummings model in the interaction picture,
//   H_I = Delta sigma_z + g (sigma_+ a^k + sigma_- (a^dag)^k),  Delta = w0/2 - w,
// which splits into 2x2 blocks on {|n, e>, |n+k, g>}. The block is written
// with +Delta in the top-left entry so that the rotation
//   D = [[c+, -c-], [c-, c+]],  c+- = sqrt(1 +- Delta/E) / sqrt(2)
// diagonalizes it to diag(+E, -E), E = sqrt(Delta^2 + g^2 (n+1)...(n+k)).

#include "tcaudit/eigensolvers.hpp"
#include "tcaudit/fock.hpp"

#include <array>
#include <utility>

namespace tcaudit::jc {

struct JcParams {
    double omega0 = 2.0; // atomic transition frequency
    double omega = 1.0;  // field frequency
    double g = 0.0;
    int k = 1;

    static JcParams from_detuning(double delta, double omega, double g, int k);
    double delta() const noexcept { return 0.5 * omega0 - omega; }
    void validate() const;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct JcBlock {
    int n = 0;
    Matrix2 matrix{};
    double e_plus = 0.0;
    double e_minus = 0.0;
    double rabi = 0.0;
};

// (n+1)(n+2)...(n+k)
double photon_product(int n, int k);
double rabi_energy(const JcParams& params, int n);

JcBlock jc_block(const JcParams& params, int n);

// Throws DegenerateBlockError when E = 0.
Matrix2 displacement_matrix(const JcParams& params, int n);

struct BlockVerification {
    NormReport orthogonality;  // D^T D - 1
    NormReport off_diagonal;   // off-diagonal part of D^T H D
    Matrix2 rotated{};         // D^T H D
};

// Uses D = 1 for a degenerate (E = 0) block, which is already diagonal.
BlockVerification verify_block_diagonalization(const JcParams& params, int n);

struct E20Levels {
    double plus = 0.0;
    double minus = 0.0;
};

// w(n+1) +- sqrt(Delta^2 + g^2 (n+1)(n+2)), reading Omega as Delta. Other k
// use the same shape with the k-fold product and require allow_general_k.
E20Levels e20_eigenvalues(const JcParams& params, int n, bool allow_general_k = false);

// H_I on {|g>, |e>} (x) Fock(cutoff). Labels are (atom, n) with atom 0 = g.
OperatorMatrix full_jc_truncated(const JcParams& params, FockCutoff cutoff);

// Eigenvalues predicted block by block for full_jc_truncated: +-E for every
// block with n + k <= n_max, -Delta for the k unpaired ground states and
// +Delta for excited states whose partner is beyond the cutoff.
std::vector<double> block_spectrum_union(const JcParams& params, FockCutoff cutoff);

} // namespace tcaudit::jc
