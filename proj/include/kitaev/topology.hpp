#pragma once

#include <optional>
#include <span>

#include "kitaev/model.hpp"

namespace kitaev {

struct TransferMatrixResult {
  int nu = 0;               // 1 topological, 0 trivial
  double log_lambda = 0.0;  // ln|lambda_2|, the larger eigenvalue of the product
  bool critical = false;    // |ln|lambda_2|| < 1e-6: sign undecided
};

/// Z2 index of the nearest-neighbour chain from the zero-mode recursion
/// psi_{j+1} = D_j (psi_j, psi_{j-1}), D_j = [[mu_j / (t + d), (d - t) / (t + d)], [1, 0]]
/// with hopping t = J/2 and pairing d = Delta/2. The product over all sites is
/// accumulated with per-step norm rescaling; nu = (1 - sgn ln|lambda_2|) / 2. A product
/// that vanishes exactly (nilpotent D_j at Delta = J, mu_j = 0) gives ln|lambda_2| = -inf, nu = 1.
/// Throws std::invalid_argument if Delta + J == 0.
TransferMatrixResult transfer_matrix_invariant(std::span<const double> mu_values, double Delta,
                                               double J);

/// f_alpha(k) = sum_{l=1}^{cutoff} sin(k l) / l^alpha, or sin k for nearest neighbour.
double pairing_form_factor(double k, PairingExponent alpha, int cutoff);

/// Berry phase of the lower band of H(k) = (-J cos k - mu) tau_z + Delta f_alpha(k) tau_y,
/// in units of pi, on the grid k_n = (n + 1/2) 2 pi / n_k. The connection is taken
/// in the single-valued gauge, so the result equals minus the winding of the
/// vector (-J cos k - mu, Delta f_alpha(k)) over the Brillouin zone. For alpha < 1
/// the path is cut open at the k = 0 singularity and closed off with its limits
/// k -> 0+ and k -> 2pi-, where the pairing dominates; the result is then a half
/// integer. Short-range topological chains with Delta > 0 give +1.
/// Throws std::invalid_argument for odd n_k or n_k < 64, std::domain_error if the
/// gap closes on the grid (|E(k)| < 1e-8).
double berry_winding(double J, double Delta, double mu, PairingExponent alpha, int n_k = 512);

/// Gauge-invariant closed Wilson loop of the lower band on the same grid, as a
/// phase in units of pi in [0, 2). Only meaningful without the k = 0 singularity.
double wilson_loop_phase(double J, double Delta, double mu, PairingExponent alpha, int n_k = 512);

struct PfaffianSigns {
  std::optional<int> zeta;  // sign Pf M(0) Pf M(pi); absent when alpha < 1
  int zeta_tilde = 1;       // sign Pf M(pi)
};

/// Pfaffian signs at the self-conjugate momenta, where the pairing drops out and
/// Pf M(k) reduces to the kinetic term -J cos k - mu.
/// Throws std::domain_error at a gapless point.
PfaffianSigns pfaffian_sign(double J, double Delta, double mu, PairingExponent alpha);

struct TopoResult {
  std::optional<TransferMatrixResult> transfer;  // nearest neighbour only
  std::optional<double> berry_winding;           // homogeneous, gapped
  std::optional<PfaffianSigns> pfaffian;         // homogeneous, gapped
};

/// Every index that is defined for the given chain; undefined ones stay empty.
TopoResult topological_indices(const ChainSpec& chain, int n_k = 512);

}  // namespace kitaev
