#pragma once

#include <Eigen/Dense>

#include "kitaev/model.hpp"

namespace kitaev {

/// Bogoliubov rotation of a quadratic Hamiltonian.
///
/// Rows of Phi and Psi are the modes phi_k, psi_k with
/// A + B = sum_k Lambda_k phi_k^T psi_k, and G_lm = <(a+_l - a_l)(a+_l + a_m)>
/// of the quasiparticle vacuum is G = -Psi^T Phi.
struct BdgSolution {
  Eigen::VectorXd Lambda;  // ascending, >= 0
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd Psi;
  Eigen::MatrixXd G;
  Boundary boundary = Boundary::Open;

  int size() const { return static_cast<int>(Lambda.size()); }
  /// Vacuum energy, 1/2 (Tr A - sum Lambda).
  double ground_energy(const CouplingMatrices& c) const;
};

struct ElwResult {
  int ell_left = 0;
  int ell_right = 0;
  int delta_ell = 0;
  double normalized_width = 0.0;
};

/// SVD of A + B. Throws std::invalid_argument on non-finite or mis-shaped input.
BdgSolution diagonalize(const CouplingMatrices& c, Boundary boundary = Boundary::Open);

/// Convenience: build_couplings + diagonalize.
BdgSolution solve_chain(const ChainSpec& chain);

/// delta E = Lambda_0.
double mass_gap(const BdgSolution& sol);

/// Weight of the lowest quasiparticle mode on each site,
/// (phi_0(l)^2 + psi_0(l)^2) / 2, normalized to one.
Eigen::VectorXd lowest_mode_profile(const BdgSolution& sol);

/// Edge-localization width from a site probability profile (sums to one).
/// Throws std::invalid_argument unless 0 < C < 1/2.
ElwResult edge_localization_width(const Eigen::VectorXd& profile, double C);

/// Edge-localization width of the lowest quasiparticle mode. Open chains only;
/// throws std::logic_error on a closed-chain solution.
ElwResult edge_localization_width(const BdgSolution& sol, double C = 0.45);

}  // namespace kitaev
