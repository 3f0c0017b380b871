#include "kitaev/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "kitaev/bdg.hpp"

namespace kitaev::oracle {

namespace {

using State = std::uint32_t;
using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;

constexpr State bit(int i) { return State{1} << i; }

// (-1)^(number of occupied sites before i)
int string_sign(State s, int i) { return (std::popcount(s & (bit(i) - 1)) & 1) ? -1 : 1; }

struct Amp {
  State s;
  double coeff;
  bool valid;
};

Amp create(int i, Amp in) {
  if (!in.valid || (in.s & bit(i))) return {0, 0.0, false};
  return {in.s | bit(i), in.coeff * string_sign(in.s, i), true};
}

Amp annihilate(int i, Amp in) {
  if (!in.valid || !(in.s & bit(i))) return {0, 0.0, false};
  return {in.s & ~bit(i), in.coeff * string_sign(in.s, i), true};
}

Amp number(int i, Amp in) {
  if (!in.valid || !(in.s & bit(i))) return {0, 0.0, false};
  return in;
}

// One term of H applied to a basis state: a product of fermion operators,
// rightmost first, times an amplitude.
struct Term {
  enum Kind { Hop, Number, Pair, PairDagger } kind;
  int i;
  int j;
  double amplitude;
};

Amp apply(const Term& t, State s) {
  Amp a{s, t.amplitude, true};
  switch (t.kind) {
    case Term::Hop:  // a+_i a_j
      return create(t.i, annihilate(t.j, a));
    case Term::Number:  // a+_i a_i
      return number(t.i, a);
    case Term::Pair:  // a_i a_j
      return annihilate(t.i, annihilate(t.j, a));
    case Term::PairDagger:  // a+_j a+_i
      return create(t.j, create(t.i, a));
  }
  return {0, 0.0, false};
}

double distance_weight(const ChainSpec& chain, int i, int j) {
  const int l = j - i;
  const int d = chain.boundary == Boundary::Open ? l : std::min(l, chain.L - l);
  if (chain.alpha.is_nearest_neighbor()) return d == 1 ? 1.0 : 0.0;
  return std::pow(static_cast<double>(d), -chain.alpha.value());
}

std::vector<Term> hamiltonian_terms(const ChainSpec& chain) {
  const int L = chain.L;
  std::vector<Term> terms;
  const auto mu = potential_values(chain.potential, L);

  // -J/2 sum_l (a+_l a_{l+1} + a+_{l+1} a_l)
  for (int l = 0; l + 1 < L; ++l) {
    terms.push_back({Term::Hop, l, l + 1, -0.5 * chain.J});
    terms.push_back({Term::Hop, l + 1, l, -0.5 * chain.J});
  }
  if (chain.boundary == Boundary::ClosedAntiperiodic && L >= 2) {
    // a_{L+1} = -a_1
    terms.push_back({Term::Hop, L - 1, 0, 0.5 * chain.J});
    terms.push_back({Term::Hop, 0, L - 1, 0.5 * chain.J});
  }
  // -sum_l mu_l n_l
  for (int l = 0; l < L; ++l) terms.push_back({Term::Number, l, l, -mu[l]});
  // Delta/2 d^-alpha (a_i a_j + a+_j a+_i), each pair once
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const double w = 0.5 * chain.Delta * distance_weight(chain, i, j);
      if (w == 0.0) continue;
      terms.push_back({Term::Pair, i, j, w});
      terms.push_back({Term::PairDagger, i, j, w});
    }
  }
  return terms;
}

void check_size(int L) {
  if (L < 1 || L > kMaxSites)
    throw std::invalid_argument("oracle supports 1 <= L <= " + std::to_string(kMaxSites));
}

struct Sector {
  std::vector<State> states;
  std::vector<int> index;  // full basis -> sector position, -1 if absent
};

Sector make_sector(int L, Parity p) {
  Sector sec;
  const State dim = bit(L);
  sec.index.assign(dim, -1);
  for (State s = 0; s < dim; ++s) {
    const bool odd = std::popcount(s) & 1;
    if (odd == (p == Parity::Odd)) {
      sec.index[s] = static_cast<int>(sec.states.size());
      sec.states.push_back(s);
    }
  }
  return sec;
}

Eigen::MatrixXd sector_hamiltonian(const std::vector<Term>& terms, const Sector& sec) {
  const auto n = static_cast<Eigen::Index>(sec.states.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (const Term& t : terms) {
      const Amp out = apply(t, sec.states[col]);
      if (!out.valid) continue;
      const int row = sec.index[out.s];
      if (row < 0) throw std::logic_error("term leaves the parity sector");
      H(row, col) += out.coeff;
    }
  }
  return H;
}

// sigma^l |s> as (target, coefficient)
std::pair<State, cplx> apply_sigma(Channel c, int l, State s) {
  // K_l a_l and a+_l K_l both carry the string sign twice.
  const bool occupied = s & bit(l);
  const double strings = string_sign(s, l) * string_sign(s, l);
  if (c == Channel::X) return {s ^ bit(l), cplx(strings, 0.0)};
  // -i (a+ K - K a)
  return {s ^ bit(l), occupied ? cplx(0.0, strings) : cplx(0.0, -strings)};
}

CVector apply_sigma(Channel c, int l, const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (State s = 0; s < static_cast<State>(v.size()); ++s) {
    if (v(s) == cplx(0.0)) continue;
    const auto [t, coeff] = apply_sigma(c, l, s);
    out(t) += coeff * v(s);
  }
  return out;
}

void check_state(const FockState& st) {
  check_size(st.L);
  if (st.amplitudes.size() != static_cast<Eigen::Index>(bit(st.L)))
    throw std::invalid_argument("amplitude vector does not match 2^L");
}

}  // namespace

GroundState exact_ground_state(const ChainSpec& chain, std::optional<Parity> sector) {
  check_size(chain.L);
  const auto terms = hamiltonian_terms(chain);

  GroundState best;
  bool have = false;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    if (sector && *sector != p) continue;
    const Sector sec = make_sector(chain.L, p);
    if (sec.states.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_hamiltonian(terms, sec));
    const double e = es.eigenvalues()(0);
    if (!have || e < best.energy) {
      have = true;
      best.energy = e;
      best.state.L = chain.L;
      best.state.parity = p;
      best.state.amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bit(chain.L)));
      const Eigen::VectorXd v = es.eigenvectors().col(0);
      for (std::size_t k = 0; k < sec.states.size(); ++k) best.state.amplitudes(sec.states[k]) = v(k);
    }
  }
  return best;
}

std::vector<double> exact_spectrum(const ChainSpec& chain) {
  check_size(chain.L);
  const auto terms = hamiltonian_terms(chain);
  std::vector<double> all;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const Sector sec = make_sector(chain.L, p);
    if (sec.states.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_hamiltonian(terms, sec),
                                                       Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) all.push_back(es.eigenvalues()(k));
  }
  std::sort(all.begin(), all.end());
  return all;
}

double exact_qfi(const FockState& state, Channel channel, std::span<const int> signs) {
  check_state(state);
  if (static_cast<int>(signs.size()) != state.L) throw std::invalid_argument("need one sign per site");
  const CVector psi = state.amplitudes.cast<cplx>();
  CVector Jpsi = CVector::Zero(psi.size());
  for (int l = 0; l < state.L; ++l) Jpsi += (0.5 * signs[l]) * apply_sigma(channel, l, psi);
  const double second = Jpsi.squaredNorm();
  const double first = psi.dot(Jpsi).real();
  return 4.0 * (second - first * first);
}

double exact_two_point(const FockState& state, int l, int m) {
  check_state(state);
  if (l < 0 || m < 0 || l >= state.L || m >= state.L) throw std::out_of_range("site out of range");
  const auto& psi = state.amplitudes;
  double acc = 0.0;
  for (State s = 0; s < static_cast<State>(psi.size()); ++s) {
    if (psi(s) == 0.0) continue;
    // (a+_m + a_m)|s>, then (a+_l - a_l)
    for (const Amp first : {create(m, {s, psi(s), true}), annihilate(m, {s, psi(s), true})}) {
      if (!first.valid) continue;
      for (const Amp second : {create(l, first), annihilate(l, first)}) {
        if (!second.valid) continue;
        const double sgn = (second.s & bit(l)) ? 1.0 : -1.0;  // created: +, annihilated: -
        acc += sgn * second.coeff * psi(second.s);
      }
    }
  }
  return acc;
}

double exact_string_correlator(const FockState& state, Channel channel, int l, int m) {
  check_state(state);
  if (l < 0 || m < 0 || l >= state.L || m >= state.L) throw std::out_of_range("site out of range");
  const CVector psi = state.amplitudes.cast<cplx>();
  const CVector out = apply_sigma(channel, l, apply_sigma(channel, m, psi));
  return psi.dot(out).real();
}

double exact_magnetization(const FockState& state, Channel channel, int l) {
  check_state(state);
  const CVector psi = state.amplitudes.cast<cplx>();
  return psi.dot(apply_sigma(channel, l, psi)).real();
}

double parity_expectation(const FockState& state) {
  check_state(state);
  double acc = 0.0;
  for (State s = 0; s < static_cast<State>(state.amplitudes.size()); ++s) {
    const double p = state.amplitudes(s) * state.amplitudes(s);
    acc += (std::popcount(s) & 1) ? -p : p;
  }
  return acc;
}

ChainSpec random_gapped_chain(std::mt19937_64& rng, int L, double min_gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ChainSpec c;
    c.L = L;
    c.J = 1.0;
    c.Delta = uniform(0.2, 1.5);
    c.alpha = unit(rng) < 0.5 ? PairingExponent::nearest_neighbor() : PairingExponent(uniform(0.0, 3.0));
    c.boundary = unit(rng) < 0.5 ? Boundary::Open : Boundary::ClosedAntiperiodic;
    const double mu = uniform(-2.0, 2.0);
    const double V = uniform(0.0, 1.5);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    switch (rng() % 4) {
      case 0:
        c.potential = UniformPotential{mu};
        break;
      case 1: {
        const int q = 1 + static_cast<int>(rng() % 10);
        int p = static_cast<int>(rng() % (q + 1));
        while (std::gcd(p, q) != 1) p = (p + 1) % (q + 1);
        c.potential = HarperPotential{mu, V, p, q, phi};
        break;
      }
      case 2:
        c.potential = AubryAndrePotential{mu, V, kInverseGoldenRatio, phi};
        break;
      default:
        c.potential = AndersonPotential{mu, V, rng()};
        break;
    }
    if (mass_gap(solve_chain(c)) >= min_gap) return c;
  }
  throw std::runtime_error("no gapped chain found");
}

EquivalenceReport check_equivalence(int n_cases, std::uint64_t seed, std::vector<int> sizes) {
  if (sizes.empty()) throw std::invalid_argument("no sizes");
  std::mt19937_64 rng(seed);
  EquivalenceReport report;
  for (int n = 0; n < n_cases; ++n) {
    const int L = sizes[static_cast<std::size_t>(n) % sizes.size()];
    EquivalenceCase e;
    e.chain = random_gapped_chain(rng, L);

    const CouplingMatrices cm = build_couplings(e.chain);
    const BdgSolution sol = diagonalize(cm, e.chain.boundary);
    const GroundState gs = exact_ground_state(e.chain);
    e.energy_err = std::abs(gs.energy - sol.ground_energy(cm));

    for (int l = 0; l < L; ++l)
      for (int m = 0; m < L; ++m)
        e.G_err = std::max(e.G_err, std::abs(sol.G(l, m) - exact_two_point(gs.state, l, m)));
    for (Channel c : {Channel::X, Channel::Y})
      for (int l = 0; l < L; ++l)
        for (int m = l + 1; m < L; ++m)
          e.rho_err = std::max(e.rho_err, std::abs(rho(sol.G, c, l, m) -
                                                   exact_string_correlator(gs.state, c, l, m)));

    const QfiResult q = compute_qfi(sol);
    std::vector<int> signs(static_cast<std::size_t>(L));
    for (Channel c : {Channel::X, Channel::Y}) {
      const ChannelQfi& pipe = c == Channel::X ? q.x : q.y;
      // s and -s give the same variance: fix s_0 = +1.
      double best = 0.0, uniform_f = 0.0, staggered_f = 0.0;
      for (unsigned mask = 0; mask < (1u << (L - 1)); ++mask) {
        signs[0] = 1;
        for (int l = 1; l < L; ++l) signs[l] = (mask >> (l - 1)) & 1u ? -1 : 1;
        const double f = exact_qfi(gs.state, c, signs);
        best = std::max(best, f);
        bool is_uniform = true, is_staggered = true;
        for (int l = 0; l < L; ++l) {
          is_uniform = is_uniform && signs[l] == 1;
          is_staggered = is_staggered && signs[l] == (l % 2 == 0 ? 1 : -1);
        }
        if (is_uniform) uniform_f = f;
        if (is_staggered) staggered_f = f;
      }
      const double rel = std::abs(pipe.F - best) / best;
      e.qfi_rel_err = std::max(e.qfi_rel_err, rel);
      if (rel > 1e-8 && !pipe.sign_pattern_mismatch()) e.unflagged_excess = true;
      e.canonical_rel_err =
          std::max({e.canonical_rel_err, std::abs(pipe.F_uniform - uniform_f) / uniform_f,
                    std::abs(pipe.F_staggered - staggered_f) / staggered_f});
    }

    report.max_energy_err = std::max(report.max_energy_err, e.energy_err);
    report.max_G_err = std::max(report.max_G_err, e.G_err);
    report.max_rho_err = std::max(report.max_rho_err, e.rho_err);
    report.max_qfi_rel_err = std::max(report.max_qfi_rel_err, e.qfi_rel_err);
    report.max_canonical_rel_err = std::max(report.max_canonical_rel_err, e.canonical_rel_err);
    if (e.qfi_rel_err > 1e-8) ++report.excess_cases;
    if (e.unflagged_excess) ++report.unflagged_cases;
    report.cases.push_back(std::move(e));
  }
  return report;
}

}  // namespace kitaev::oracle
