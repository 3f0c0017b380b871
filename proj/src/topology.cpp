#include "kitaev/topology.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace kitaev {

namespace {

constexpr double kGapFloor = 1e-8;
constexpr double kCriticalBand = 1e-6;

double wrap_angle(double a) {
  return std::remainder(a, 2.0 * std::numbers::pi);
}

double grid_momentum(int n, int n_k) {
  return (n + 0.5) * 2.0 * std::numbers::pi / n_k;
}

void check_grid(int n_k) {
  if (n_k < 64 || n_k % 2 != 0) throw std::invalid_argument("n_k must be even and >= 64");
}

struct BlochVector {
  double z;
  double y;
};

BlochVector bloch_vector(double k, double J, double Delta, double mu, PairingExponent alpha,
                         int cutoff) {
  BlochVector d{-J * std::cos(k) - mu, Delta * pairing_form_factor(k, alpha, cutoff)};
  if (std::hypot(d.z, d.y) < kGapFloor)
    throw std::domain_error("gap closes on the momentum grid; winding undefined");
  return d;
}

bool homogeneous(const PotentialSpec& p) {
  return std::holds_alternative<UniformPotential>(p) || potential_strength(p) == 0.0;
}

}  // namespace

TransferMatrixResult transfer_matrix_invariant(std::span<const double> mu_values, double Delta,
                                               double J) {
  if (Delta == 0.0 && J == 0.0) throw std::invalid_argument("Delta = J = 0: no transfer matrix");
  if (Delta + J == 0.0) throw std::invalid_argument("Delta + J = 0: transfer matrix undefined");
  const double denom = 0.5 * (Delta + J);
  const double off = (Delta - J) / (Delta + J);

  // P = D_L ... D_1, kept at unit Frobenius norm.
  double p00 = 1.0, p01 = 0.0, p10 = 0.0, p11 = 1.0;
  double log_scale = 0.0;
  for (double mu : mu_values) {
    const double a = mu / denom;
    const double n00 = a * p00 + off * p10;
    const double n01 = a * p01 + off * p11;
    p10 = p00;
    p11 = p01;
    p00 = n00;
    p01 = n01;
    const double norm = std::sqrt(p00 * p00 + p01 * p01 + p10 * p10 + p11 * p11);
    if (!std::isfinite(norm)) throw std::domain_error("transfer matrix product not finite");
    if (norm == 0.0) {
      // Delta = J with mu_j = 0 makes D_j nilpotent: an exactly localized zero mode.
      return {1, -std::numeric_limits<double>::infinity(), false};
    }
    p00 /= norm;
    p01 /= norm;
    p10 /= norm;
    p11 /= norm;
    log_scale += std::log(norm);
  }

  const double tr = p00 + p11;
  const double det = p00 * p11 - p01 * p10;
  const double disc = tr * tr - 4.0 * det;
  double largest;
  if (disc < 0.0) {
    largest = std::sqrt(std::abs(det));
  } else {
    largest = 0.5 * (std::abs(tr) + std::sqrt(disc));
  }

  TransferMatrixResult r;
  r.log_lambda = std::log(largest) + log_scale;
  r.nu = r.log_lambda < 0.0 ? 1 : 0;
  r.critical = std::abs(r.log_lambda) < kCriticalBand;
  return r;
}

double pairing_form_factor(double k, PairingExponent alpha, int cutoff) {
  if (alpha.is_nearest_neighbor()) return std::sin(k);
  double f = 0.0;
  for (int l = 1; l <= cutoff; ++l) f += std::sin(k * l) * std::pow(static_cast<double>(l), -alpha.value());
  return f;
}

double berry_winding(double J, double Delta, double mu, PairingExponent alpha, int n_k) {
  check_grid(n_k);
  const bool singular = !alpha.is_nearest_neighbor() && alpha.value() < 1.0;

  std::vector<double> theta(static_cast<std::size_t>(n_k));
  for (int n = 0; n < n_k; ++n) {
    const BlochVector d = bloch_vector(grid_momentum(n, n_k), J, Delta, mu, alpha, n_k);
    theta[n] = std::atan2(d.y, d.z);
  }
  double swept = 0.0;
  for (int n = 0; n + 1 < n_k; ++n) swept += wrap_angle(theta[n + 1] - theta[n]);
  if (!singular) {
    swept += wrap_angle(theta[0] - theta[n_k - 1]);
  } else if (Delta != 0.0) {
    // f_alpha(k) -> +inf as k -> 0+ and -inf as k -> 2pi-: the open path starts
    // and ends on the pairing axis.
    const double up = std::copysign(0.5 * std::numbers::pi, Delta);
    swept += wrap_angle(theta[0] - up) + wrap_angle(-up - theta[n_k - 1]);
  }

  // With |u_k> = e^{i theta/2} (cos theta/2, i sin theta/2) the connection is
  // <u|d_k u> = (i/2) d theta / dk.
  return -swept / (2.0 * std::numbers::pi) + 0.0;  // no negative zero
}

double wilson_loop_phase(double J, double Delta, double mu, PairingExponent alpha, int n_k) {
  check_grid(n_k);
  using cplx = std::complex<double>;
  std::vector<Eigen::Vector2cd> lower(static_cast<std::size_t>(n_k));
  for (int n = 0; n < n_k; ++n) {
    const BlochVector d = bloch_vector(grid_momentum(n, n_k), J, Delta, mu, alpha, n_k);
    Eigen::Matrix2cd h;
    h << cplx(d.z, 0.0), cplx(0.0, -d.y), cplx(0.0, d.y), cplx(-d.z, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    lower[n] = es.eigenvectors().col(0);
  }
  cplx loop(1.0, 0.0);
  for (int n = 0; n < n_k; ++n) {
    const cplx overlap = lower[n].dot(lower[(n + 1) % n_k]);
    loop *= overlap / std::abs(overlap);
  }
  double phase = -std::arg(loop) / std::numbers::pi;
  if (phase < 0.0) phase += 2.0;
  if (phase >= 2.0 - 1e-12) phase = 0.0;
  return phase + 0.0;
}

PfaffianSigns pfaffian_sign(double J, double /*Delta*/, double mu, PairingExponent alpha) {
  const double at_pi = J - mu;
  const double at_zero = -J - mu;
  if (at_pi == 0.0) throw std::domain_error("gapless at k = pi: Pfaffian sign undefined");

  PfaffianSigns s;
  s.zeta_tilde = at_pi > 0.0 ? 1 : -1;
  const bool singular = !alpha.is_nearest_neighbor() && alpha.value() < 1.0;
  if (!singular) {
    if (at_zero == 0.0) throw std::domain_error("gapless at k = 0: Pfaffian sign undefined");
    s.zeta = (at_zero * at_pi > 0.0) ? 1 : -1;
  }
  return s;
}

TopoResult topological_indices(const ChainSpec& chain, int n_k) {
  chain.validate();
  TopoResult r;
  if (chain.alpha.is_nearest_neighbor()) {
    const auto mu = potential_values(chain.potential, chain.L);
    r.transfer = transfer_matrix_invariant(mu, chain.Delta, chain.J);
  }
  if (homogeneous(chain.potential)) {
    const double mu = potential_offset(chain.potential);
    try {
      r.berry_winding = berry_winding(chain.J, chain.Delta, mu, chain.alpha, n_k);
    } catch (const std::domain_error&) {
    }
    try {
      r.pfaffian = pfaffian_sign(chain.J, chain.Delta, mu, chain.alpha);
    } catch (const std::domain_error&) {
    }
  }
  return r;
}

}  // namespace kitaev
