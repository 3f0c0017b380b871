#include "kitaev/bdg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace kitaev {

double BdgSolution::ground_energy(const CouplingMatrices& c) const {
  return 0.5 * (c.A.trace() - Lambda.sum());
}

BdgSolution diagonalize(const CouplingMatrices& c, Boundary boundary) {
  const Eigen::Index L = c.A.rows();
  if (L == 0 || c.A.cols() != L || c.B.rows() != L || c.B.cols() != L)
    throw std::invalid_argument("coupling matrices must be square and of equal size");
  if (!c.A.allFinite() || !c.B.allFinite())
    throw std::invalid_argument("coupling matrices contain non-finite entries");

  constexpr double kGaugeThreshold = 1e-10;
  const Eigen::MatrixXd M = c.A + c.B;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();  // descending
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();

  BdgSolution sol;
  sol.boundary = boundary;
  sol.Lambda.resize(L);
  sol.Phi.resize(L, L);
  sol.Psi.resize(L, L);
  for (Eigen::Index k = 0; k < L; ++k) {
    const Eigen::Index src = L - 1 - k;
    sol.Lambda(k) = std::max(s(src), 0.0);
    Eigen::VectorXd phi = U.col(src);
    Eigen::VectorXd psi = V.col(src);
    // first entry of phi_k above roundoff is positive
    for (Eigen::Index i = 0; i < L; ++i) {
      if (std::abs(phi(i)) > kGaugeThreshold) {
        if (phi(i) < 0.0) {
          phi = -phi;
          psi = -psi;
        }
        break;
      }
    }
    sol.Phi.row(k) = phi.transpose();
    sol.Psi.row(k) = psi.transpose();
  }
  sol.G.noalias() = -sol.Psi.transpose() * sol.Phi;
  return sol;
}

BdgSolution solve_chain(const ChainSpec& chain) {
  return diagonalize(build_couplings(chain), chain.boundary);
}

double mass_gap(const BdgSolution& sol) {
  if (sol.Lambda.size() == 0) throw std::invalid_argument("empty solution");
  return sol.Lambda(0);
}

Eigen::VectorXd lowest_mode_profile(const BdgSolution& sol) {
  Eigen::VectorXd w =
      0.5 * (sol.Phi.row(0).array().square() + sol.Psi.row(0).array().square()).transpose();
  const double total = w.sum();
  if (total > 0.0) w /= total;
  return w;
}

ElwResult edge_localization_width(const Eigen::VectorXd& profile, double C) {
  if (!(C > 0.0 && C < 0.5)) throw std::invalid_argument("C must lie in (0, 1/2)");
  const int L = static_cast<int>(profile.size());
  if (L == 0) throw std::invalid_argument("empty profile");

  ElwResult r;
  // A relative slack absorbs rounding in the running sums, so a profile that
  // carries exactly C on the first n sites reports n.
  const double target = C * (1.0 - 1e-12);
  double acc = 0.0;
  r.ell_left = L;
  for (int n = 1; n <= L; ++n) {
    acc += profile(n - 1);
    if (acc >= target) {
      r.ell_left = n;
      break;
    }
  }
  acc = 0.0;
  r.ell_right = L;
  for (int n = 1; n <= L; ++n) {
    acc += profile(L - n);
    if (acc >= target) {
      r.ell_right = n;
      break;
    }
  }
  r.delta_ell = r.ell_left + r.ell_right;
  r.normalized_width = static_cast<double>(r.delta_ell) / L;
  return r;
}

ElwResult edge_localization_width(const BdgSolution& sol, double C) {
  if (sol.boundary != Boundary::Open)
    throw std::logic_error("edge localization width is defined on open chains only");
  return edge_localization_width(lowest_mode_profile(sol), C);
}

}  // namespace kitaev
