#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kitaev/bdg.hpp"

using namespace kitaev;

namespace {

ChainSpec homogeneous(int L, double Delta, double mu, PairingExponent alpha, Boundary b) {
  ChainSpec c;
  c.L = L;
  c.Delta = Delta;
  c.alpha = alpha;
  c.boundary = b;
  c.potential = UniformPotential{mu};
  return c;
}

ChainSpec random_chain(std::mt19937_64& rng, int L) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ChainSpec c;
  c.L = L;
  c.J = 0.5 + u(rng);
  c.Delta = 2.0 * u(rng) - 0.5;
  c.alpha = u(rng) < 0.3 ? PairingExponent::nearest_neighbor() : PairingExponent(3.0 * u(rng));
  c.boundary = u(rng) < 0.5 ? Boundary::Open : Boundary::ClosedAntiperiodic;
  switch (rng() % 4) {
    case 0: c.potential = UniformPotential{4.0 * u(rng) - 2.0}; break;
    case 1: c.potential = HarperPotential{4.0 * u(rng) - 2.0, 2.0 * u(rng), 3, 7, u(rng)}; break;
    case 2: c.potential = AubryAndrePotential{4.0 * u(rng) - 2.0, 3.0 * u(rng), kInverseGoldenRatio, u(rng)}; break;
    default: c.potential = AndersonPotential{4.0 * u(rng) - 2.0, 3.0 * u(rng), rng()}; break;
  }
  return c;
}

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

TEST(Diagonalize, DecoupledSites) {
  CouplingMatrices c{-0.8 * Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3)};
  const BdgSolution s = diagonalize(c);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(s.Lambda(k), 0.8, 1e-15);
  EXPECT_LT((s.G.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Diagonalize, MomentumSpaceSpectrum) {
  // Antiperiodic ring: k = (2n + 1) pi / L and
  // Lambda_k = sqrt((J cos k + mu)^2 + (Delta/2 sum_l d_l^-alpha sin k l)^2).
  const int L = 64;
  const double J = 1.0, mu = 0.5;
  for (double Delta : {0.25, 1.0})
    for (PairingExponent alpha : {PairingExponent::nearest_neighbor(), PairingExponent(0.5), PairingExponent(2.0)}) {
      ChainSpec c = homogeneous(L, Delta, mu, alpha, Boundary::ClosedAntiperiodic);
      const BdgSolution s = solve_chain(c);
      std::vector<double> expected;
      for (int n = 0; n < L; ++n) {
        const double k = (2 * n + 1) * std::numbers::pi / L;
        double f = 0.0;
        for (int l = 1; l < L; ++l) f += pairing_coefficient(l, L, alpha, c.boundary) * std::sin(k * l);
        expected.push_back(std::hypot(J * std::cos(k) + mu, 0.5 * Delta * f));
      }
      std::sort(expected.begin(), expected.end());
      for (int k = 0; k < L; ++k) EXPECT_NEAR(s.Lambda(k), expected[k], 1e-9) << "alpha " << alpha.value();
    }
}

TEST(Diagonalize, Invariants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const ChainSpec chain = random_chain(rng, 50);
    const CouplingMatrices c = build_couplings(chain);
    const BdgSolution s = diagonalize(c, chain.boundary);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(50, 50);
    EXPECT_GE(s.Lambda.minCoeff(), 0.0);
    for (int k = 1; k < 50; ++k) EXPECT_LE(s.Lambda(k - 1), s.Lambda(k));
    EXPECT_LT(inf_norm(s.Phi * s.Phi.transpose() - I), 1e-10);
    EXPECT_LT(inf_norm(s.Psi * s.Psi.transpose() - I), 1e-10);
    EXPECT_LT(inf_norm(s.G * s.G.transpose() - I), 1e-10);
    EXPECT_LT(inf_norm(s.G + s.Psi.transpose() * s.Phi), 1e-14);
    const Eigen::MatrixXd M = c.A + c.B;
    const Eigen::MatrixXd R = s.Phi.transpose() * s.Lambda.asDiagonal() * s.Psi;
    EXPECT_LT(inf_norm(M - R), 1e-9 * inf_norm(M));
    // First entry of every phi_k above roundoff is positive.
    for (int k = 0; k < 50; ++k) {
      int j = 0;
      while (j < 50 && std::abs(s.Phi(k, j)) <= 1e-10) ++j;
      ASSERT_LT(j, 50);
      EXPECT_GT(s.Phi(k, j), 0.0);
    }
  }
}

TEST(Diagonalize, Deterministic) {
  std::mt19937_64 rng(5);
  const ChainSpec chain = random_chain(rng, 80);
  const BdgSolution a = solve_chain(chain);
  const BdgSolution b = solve_chain(chain);
  EXPECT_TRUE(a.Lambda == b.Lambda);
  EXPECT_TRUE(a.G == b.G);
  EXPECT_TRUE(a.Phi == b.Phi);
}

TEST(Diagonalize, RejectsBadInput) {
  CouplingMatrices c{Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 3)};
  c.A(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(diagonalize(c), std::invalid_argument);
  CouplingMatrices d{Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(2, 2)};
  EXPECT_THROW(diagonalize(d), std::invalid_argument);
}

TEST(MassGap, SmallestLambda) {
  BdgSolution s;
  s.Lambda = Eigen::Vector3d(0.001, 0.7, 1.2);
  EXPECT_EQ(mass_gap(s), 0.001);
}

TEST(MassGap, ClosesOnTheCriticalLine) {
  double previous = std::numeric_limits<double>::infinity();
  for (int L : {100, 200, 400}) {
    const double gap = mass_gap(
        solve_chain(homogeneous(L, 0.25, 1.0, PairingExponent::nearest_neighbor(), Boundary::ClosedAntiperiodic)));
    EXPECT_LT(gap, 0.05);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(MassGap, LongRangeGapSaturates) {
  std::vector<double> gaps;
  for (int L : {50, 100, 200, 400})
    gaps.push_back(mass_gap(solve_chain(homogeneous(L, 1.0, 0.5, PairingExponent(0.5), Boundary::ClosedAntiperiodic))));
  for (double g : gaps) EXPECT_GT(g, 0.1);
  EXPECT_LT(std::abs(gaps[3] - gaps[2]), 0.02 * gaps[3]);
}

TEST(EdgeLocalization, PerfectEdgeMode) {
  const int L = 10;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(L);
  p(0) = 0.5;
  p(L - 1) = 0.5;
  const ElwResult e = edge_localization_width(p, 0.45);
  EXPECT_EQ(e.ell_left, 1);
  EXPECT_EQ(e.ell_right, 1);
  EXPECT_EQ(e.delta_ell, 2);
  EXPECT_DOUBLE_EQ(e.normalized_width, 2.0 / L);
}

TEST(EdgeLocalization, UniformProfile) {
  for (int L : {10, 20, 33, 200}) {
    const Eigen::VectorXd p = Eigen::VectorXd::Constant(L, 1.0 / L);
    const ElwResult e = edge_localization_width(p, 0.45);
    const int expected = static_cast<int>(std::ceil(0.45 * L - 1e-9));
    EXPECT_EQ(e.ell_left, expected) << L;
    EXPECT_EQ(e.ell_right, expected) << L;
    EXPECT_NEAR(e.normalized_width, 0.9, 2.0 / L);
  }
}

TEST(EdgeLocalization, MajoranaPhaseIsEdgeLocalized) {
  const BdgSolution s = solve_chain(homogeneous(200, 0.25, 0.5, PairingExponent::nearest_neighbor(), Boundary::Open));
  EXPECT_LT(edge_localization_width(s).normalized_width, 0.1);
  const BdgSolution t = solve_chain(homogeneous(200, 0.25, 1.5, PairingExponent::nearest_neighbor(), Boundary::Open));
  EXPECT_GT(edge_localization_width(t).normalized_width, 0.6);
}

TEST(EdgeLocalization, Misuse) {
  const BdgSolution s =
      solve_chain(homogeneous(20, 0.25, 0.5, PairingExponent::nearest_neighbor(), Boundary::ClosedAntiperiodic));
  EXPECT_THROW(edge_localization_width(s), std::logic_error);
  EXPECT_THROW(edge_localization_width(Eigen::VectorXd::Constant(4, 0.25), 0.5), std::invalid_argument);
  EXPECT_THROW(edge_localization_width(Eigen::VectorXd::Constant(4, 0.25), 0.0), std::invalid_argument);
}

TEST(EdgeLocalization, ProfileNormalized) {
  const BdgSolution s = solve_chain(homogeneous(60, 0.7, 0.2, PairingExponent(1.5), Boundary::Open));
  const Eigen::VectorXd p = lowest_mode_profile(s);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
  EXPECT_GE(p.minCoeff(), 0.0);
}
