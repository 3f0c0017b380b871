#include "kitaev/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kitaev/determinant.hpp"

namespace kitaev {

namespace {

void check_pair(const Eigen::MatrixXd& G, int l, int m) {
  if (G.rows() != G.cols()) throw std::invalid_argument("G must be square");
  if (l < 0 || m <= l || m >= G.rows()) throw std::out_of_range("need 0 <= l < m < L");
}

struct SiteSums {
  double abs = 0.0;
  double plain = 0.0;
  double alternating = 0.0;
};

SiteSums site_sums(const Eigen::MatrixXd& G, Channel c, int l, LeadingMinors& engine,
                   std::vector<double>& minors) {
  engine.compute(correlator_block(G, c, l), minors);
  SiteSums s;
  double parity = 1.0;  // (-1)^(m - l)
  for (double r : minors) {
    parity = -parity;
    s.abs += std::abs(r);
    s.plain += r;
    s.alternating += parity * r;
  }
  return s;
}

}  // namespace

std::string channel_name(Channel c) { return c == Channel::X ? "x" : "y"; }

Eigen::Block<const Eigen::MatrixXd> correlator_block(const Eigen::MatrixXd& G, Channel c, int l) {
  const Eigen::Index n = G.rows() - 1 - l;
  return c == Channel::X ? G.block(l, l + 1, n, n) : G.block(l + 1, l, n, n);
}

double rho_x(const Eigen::MatrixXd& G, int l, int m) {
  check_pair(G, l, m);
  return determinant_lu(G.block(l, l + 1, m - l, m - l));
}

double rho_y(const Eigen::MatrixXd& G, int l, int m) {
  check_pair(G, l, m);
  return determinant_lu(G.block(l + 1, l, m - l, m - l));
}

double rho(const Eigen::MatrixXd& G, Channel c, int l, int m) {
  return c == Channel::X ? rho_x(G, l, m) : rho_y(G, l, m);
}

ChannelQfi qfi_channel(const Eigen::MatrixXd& G, Channel c, int workers) {
  if (G.rows() != G.cols()) throw std::invalid_argument("G must be square");
  const int L = static_cast<int>(G.rows());
  std::vector<SiteSums> per_site(static_cast<std::size_t>(std::max(L - 1, 0)));

  std::atomic<int> next{0};
  auto work = [&] {
    LeadingMinors engine;
    std::vector<double> minors;
    for (int l = next++; l < L - 1; l = next++) per_site[l] = site_sums(G, c, l, engine, minors);
  };
  const int n_threads = std::clamp(workers, 1, std::max(L - 1, 1));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }

  SiteSums total;
  for (const auto& s : per_site) {
    total.abs += s.abs;
    total.plain += s.plain;
    total.alternating += s.alternating;
  }
  ChannelQfi q;
  q.F = L + 2.0 * total.abs;
  q.F_uniform = L + 2.0 * total.plain;
  q.F_staggered = L + 2.0 * total.alternating;
  return q;
}

QfiResult compute_qfi(const BdgSolution& sol, int workers) {
  QfiResult r;
  r.L = sol.size();
  r.x = qfi_channel(sol.G, Channel::X, workers);
  r.y = qfi_channel(sol.G, Channel::Y, workers);
  return r;
}

ScalingResult scaling_exponent(std::span<const SizedQfi> points) {
  if (points.size() < 2) throw std::invalid_argument("scaling exponent needs at least two sizes");
  std::vector<SizedQfi> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SizedQfi& a, const SizedQfi& b) { return a.L < b.L; });
  const SizedQfi& p1 = sorted[sorted.size() - 2];
  const SizedQfi& p2 = sorted.back();
  if (p1.L == p2.L || p1.L <= 0) throw std::invalid_argument("scaling exponent needs distinct sizes");
  for (const auto& p : {p1, p2}) {
    if (!(p.F_x > 0.0) || !(p.F_y > 0.0)) throw std::invalid_argument("QFI must be positive");
  }

  const double dlogL = std::log(static_cast<double>(p2.L) / p1.L);
  ScalingResult r;
  r.L1 = p1.L;
  r.L2 = p2.L;
  r.beta_x = std::log(p2.F_x / p1.F_x) / dlogL;
  r.beta_y = std::log(p2.F_y / p1.F_y) / dlogL;
  r.beta = std::max(r.beta_x, r.beta_y);
  return r;
}

}  // namespace kitaev
