#include "kitaev/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kitaev {

namespace {

// sin(2 pi r / q) for 0 <= r < q, exact at the quarter points.
double sin_two_pi_fraction(long r, long q) {
  if ((2 * r) % q == 0) return 0.0;
  if (4 * r == q) return 1.0;
  if (4 * r == 3 * q) return -1.0;
  return std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
}

// 53-bit uniform on [0, 1), independent of the standard library's distributions.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double PairingExponent::value() const {
  return nearest_ ? std::numeric_limits<double>::infinity() : alpha_;
}

void ChainSpec::validate() const {
  if (L < 2) throw std::invalid_argument("L must be >= 2");
  if (!(J > 0.0) || !std::isfinite(J)) throw std::invalid_argument("J must be finite and > 0");
  if (!std::isfinite(Delta)) throw std::invalid_argument("Delta must be finite");
  if (!alpha.is_nearest_neighbor() && !(alpha.value() >= 0.0 && std::isfinite(alpha.value())))
    throw std::invalid_argument("alpha must be finite and >= 0 (or inf)");
  std::visit(overloaded{
                 [](const UniformPotential& u) {
                   if (!std::isfinite(u.mu)) throw std::invalid_argument("potential.mu not finite");
                 },
                 [](const HarperPotential& h) {
                   if (h.q < 1 || h.p < 0 || h.p > h.q)
                     throw std::invalid_argument("Harper potential requires 0 <= p <= q, q >= 1");
                   if (std::gcd(h.p, h.q) != 1)
                     throw std::invalid_argument("Harper potential requires gcd(p, q) = 1");
                   if (!std::isfinite(h.mu) || !std::isfinite(h.V) || !std::isfinite(h.phi))
                     throw std::invalid_argument("Harper potential parameters not finite");
                 },
                 [](const AubryAndrePotential& a) {
                   if (!std::isfinite(a.mu) || !std::isfinite(a.V) || !std::isfinite(a.omega) ||
                       !std::isfinite(a.phi))
                     throw std::invalid_argument("Aubry-Andre potential parameters not finite");
                 },
                 [](const AndersonPotential& a) {
                   if (!std::isfinite(a.mu) || !std::isfinite(a.V))
                     throw std::invalid_argument("Anderson potential parameters not finite");
                 },
             },
             potential);
}

std::vector<double> potential_values(const PotentialSpec& spec, int L) {
  std::vector<double> mu(static_cast<std::size_t>(std::max(L, 0)));
  std::visit(overloaded{
                 [&](const UniformPotential& u) { std::fill(mu.begin(), mu.end(), u.mu); },
                 [&](const HarperPotential& h) {
                   const long q = std::max(h.q, 1);
                   for (int l = 1; l <= L; ++l) {
                     const long r = ((static_cast<long>(l) * h.p) % q + q) % q;
                     const double s =
                         h.phi == 0.0
                             ? sin_two_pi_fraction(r, q)
                             : std::sin(2.0 * std::numbers::pi * static_cast<double>(r) /
                                            static_cast<double>(q) +
                                        h.phi);
                     mu[l - 1] = h.mu + h.V * s;
                   }
                 },
                 [&](const AubryAndrePotential& a) {
                   for (int l = 1; l <= L; ++l) {
                     const double x = l * a.omega;
                     const double frac = x - std::floor(x);
                     mu[l - 1] = a.mu + a.V * std::sin(2.0 * std::numbers::pi * frac + a.phi);
                   }
                 },
                 [&](const AndersonPotential& a) {
                   std::mt19937_64 rng(a.seed);
                   for (int l = 0; l < L; ++l) {
                     mu[l] = a.mu + a.V * (2.0 * unit_uniform(rng) - 1.0);
                   }
                 },
             },
             spec);
  return mu;
}

double pairing_coefficient(int l, int L, PairingExponent alpha, Boundary boundary) {
  if (l < 1 || l > L - 1) throw std::out_of_range("pairing distance outside [1, L-1]");
  const int d = boundary == Boundary::Open ? l : std::min(l, L - l);
  if (alpha.is_nearest_neighbor()) return d == 1 ? 1.0 : 0.0;
  if (alpha.value() == 0.0) return 1.0;
  return std::pow(static_cast<double>(d), -alpha.value());
}

CouplingMatrices build_couplings(const ChainSpec& chain) {
  chain.validate();
  const int L = chain.L;
  CouplingMatrices c{Eigen::MatrixXd::Zero(L, L), Eigen::MatrixXd::Zero(L, L)};

  const auto mu = potential_values(chain.potential, L);
  for (int i = 0; i < L; ++i) c.A(i, i) = -mu[i];

  const double hop = -0.5 * chain.J;
  for (int i = 0; i + 1 < L; ++i) {
    c.A(i, i + 1) += hop;
    c.A(i + 1, i) += hop;
  }
  if (chain.boundary == Boundary::ClosedAntiperiodic) {
    // a_{L+1} = -a_1
    c.A(L - 1, 0) -= hop;
    c.A(0, L - 1) -= hop;
  }

  // Pairing across the L -> 1 bond picks up the antiperiodic sign together with
  // a reordering of the two annihilators; the two signs cancel, so every pair
  // enters with the same orientation.
  const double half_delta = 0.5 * chain.Delta;
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const double w = half_delta * pairing_coefficient(j - i, L, chain.alpha, chain.boundary);
      c.B(i, j) = w;
      c.B(j, i) = -w;
    }
  }
  return c;
}

double potential_offset(const PotentialSpec& spec) {
  return std::visit([](const auto& p) { return p.mu; }, spec);
}

double potential_strength(const PotentialSpec& spec) {
  return std::visit(overloaded{[](const UniformPotential&) { return 0.0; },
                               [](const auto& p) { return p.V; }},
                    spec);
}

std::string potential_kind(const PotentialSpec& spec) {
  return std::visit(overloaded{[](const UniformPotential&) { return std::string("uniform"); },
                               [](const HarperPotential&) { return std::string("harper"); },
                               [](const AubryAndrePotential&) { return std::string("aubry-andre"); },
                               [](const AndersonPotential&) { return std::string("anderson"); }},
                    spec);
}

std::string boundary_name(Boundary b) {
  return b == Boundary::Open ? "open" : "closed";
}

}  // namespace kitaev
