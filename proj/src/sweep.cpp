#include "kitaev/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "kitaev/bdg.hpp"
#include "kitaev/topology.hpp"

namespace kitaev {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// Runs fn(i) for i in [0, n) on `workers` threads; the first exception wins.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool all_finite(std::initializer_list<double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void set_param(ChainSpec& c, SweepParam p, double value, int omega_denominator) {
  switch (p) {
    case SweepParam::Delta:
      c.Delta = value;
      return;
    case SweepParam::Alpha:
      c.alpha = PairingExponent(value);
      return;
    case SweepParam::Mu:
      std::visit([&](auto& pot) { pot.mu = value; }, c.potential);
      return;
    case SweepParam::V:
      std::visit(
          [&](auto& pot) {
            if constexpr (requires { pot.V; }) pot.V = value;
          },
          c.potential);
      return;
    case SweepParam::Omega:
      if (auto* h = std::get_if<HarperPotential>(&c.potential)) {
        const double scaled = value * omega_denominator;
        const long p = std::lround(scaled);
        if (std::abs(scaled - static_cast<double>(p)) > 1e-6)
          throw ConfigError("sweep.omega_denominator",
                            "omega = " + format_double(value) + " is not a multiple of 1/q");
        const long g = std::gcd(p, static_cast<long>(omega_denominator));
        h->p = static_cast<int>(p / g);
        h->q = static_cast<int>(omega_denominator / g);
      } else if (auto* a = std::get_if<AubryAndrePotential>(&c.potential)) {
        a->omega = value;
      }
      return;
  }
}

std::string axis_text(const SweepAxis& a) {
  std::string s = param_name(a.param) + ":";
  for (double v : a.values) s += format_double(v) + ",";
  return s;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

constexpr std::size_t kCsvFields = 28;
constexpr const char* kLogMagic = "# kitaev sweep log ";

}  // namespace

std::string param_name(SweepParam p) {
  switch (p) {
    case SweepParam::Mu: return "mu";
    case SweepParam::V: return "V";
    case SweepParam::Omega: return "omega";
    case SweepParam::Delta: return "Delta";
    case SweepParam::Alpha: return "alpha";
  }
  return "?";
}

SweepParam parse_param(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  for (SweepParam p : {SweepParam::Mu, SweepParam::V, SweepParam::Omega, SweepParam::Delta,
                       SweepParam::Alpha})
    if (t == param_name(p)) return p;
  throw ConfigError(key, "expected mu, V, omega, Delta or alpha, got '" + text + "'");
}

SweepAxis SweepAxis::linear(SweepParam p, double min, double max, int count) {
  if (count < 1) throw ConfigError(param_name(p), "axis count must be >= 1");
  SweepAxis a{p, {}};
  a.values.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    a.values.push_back(count == 1 ? min : min + (max - min) * i / (count - 1));
  return a;
}

SweepAxis SweepAxis::list(SweepParam p, std::vector<double> values) {
  return SweepAxis{p, std::move(values)};
}

Observables parse_observables(const std::string& key, const std::string& text) {
  Observables o{false, false, false, false};
  for (const auto& item : split(text, ',')) {
    if (item == "qfi" || item == "beta") o.qfi = true;
    else if (item == "gap") o.gap = true;
    else if (item == "elw") o.elw = true;
    else if (item == "nu") o.nu = true;
    else throw ConfigError(key, "unknown observable '" + item + "' (qfi, gap, elw, nu)");
  }
  return o;
}

void SweepConfig::validate() const {
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("base", e.what());
  }
  if (L1 < 2 || L2 <= L1) throw ConfigError("sweep.sizes", "need 2 <= L1 < L2");
  if (x.values.empty()) throw ConfigError("sweep.x", "axis has no values");
  if (!y.values.empty() && x.param == y.param)
    throw ConfigError("sweep.y", "axis parameters must be distinct");
  if (n_realizations < 1) throw ConfigError("sweep.realizations", "must be >= 1");
  if (omega_denominator < 1) throw ConfigError("sweep.omega_denominator", "must be >= 1");
  if (!(elw_C > 0.0 && elw_C < 0.5)) throw ConfigError("sweep.elw_C", "need 0 < C < 1/2");
  for (const auto* axis : {&x, &y}) {
    const std::string key = axis == &x ? "sweep.x" : "sweep.y";
    for (double v : axis->values)
      if (!std::isfinite(v)) throw ConfigError(key, "axis values must be finite");
    if (axis->values.empty()) continue;
    if (axis->param == SweepParam::Omega && !std::holds_alternative<HarperPotential>(base.potential) &&
        !std::holds_alternative<AubryAndrePotential>(base.potential))
      throw ConfigError(key, "an omega axis needs a harper or aubry-andre potential");
    if (axis->param == SweepParam::V && std::holds_alternative<UniformPotential>(base.potential))
      throw ConfigError(key, "a V axis needs a non-uniform potential");
  }
  // Every grid chain must be a valid model.
  for (std::size_t ix = 0; ix < x.values.size(); ++ix)
    for (std::size_t iy = 0; iy < y_count(); ++iy) {
      const ChainSpec c = grid_chain(*this, ix, iy);
      try {
        c.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep", std::string("grid point invalid: ") + e.what());
      }
    }
}

ChainSpec grid_chain(const SweepConfig& cfg, std::size_t ix, std::size_t iy) {
  ChainSpec c = cfg.base;
  c.L = cfg.L1;
  set_param(c, cfg.x.param, cfg.x.values.at(ix), cfg.omega_denominator);
  if (!cfg.y.values.empty()) set_param(c, cfg.y.param, cfg.y.values.at(iy), cfg.omega_denominator);
  return c;
}

SweepRecord evaluate_point(const SweepConfig& cfg, const ChainSpec& chain) {
  const Observables& obs = cfg.observables;
  SweepRecord r;
  r.chain = chain;
  r.chain.L = cfg.L1;
  r.L1 = cfg.L1;
  r.L2 = cfg.L2;
  r.master_seed = cfg.master_seed;
  r.n_realizations = 1;

  if (obs.qfi || obs.gap || obs.elw) {
    ChainSpec c = r.chain;
    const BdgSolution small = solve_chain(c);
    if (obs.gap) r.mass_gap = mass_gap(small);
    if (obs.elw) {
      if (c.boundary == Boundary::Open) r.elw_normalized = edge_localization_width(small, cfg.elw_C).normalized_width;
      else r.flags.push_back("elw_closed_chain");
    }
    if (obs.qfi) {
      const QfiResult q1 = compute_qfi(small);
      c.L = cfg.L2;
      const QfiResult q2 = compute_qfi(solve_chain(c));
      if (all_finite({q1.F_x(), q1.F_y(), q2.F_x(), q2.F_y()})) {
        r.F_x_L1 = q1.F_x();
        r.F_y_L1 = q1.F_y();
        r.F_x_L2 = q2.F_x();
        r.F_y_L2 = q2.F_y();
        const SizedQfi pts[] = {{cfg.L1, q1.F_x(), q1.F_y()}, {cfg.L2, q2.F_x(), q2.F_y()}};
        const ScalingResult s = scaling_exponent(pts);
        r.beta_x = s.beta_x;
        r.beta_y = s.beta_y;
        r.beta = s.beta;
      } else {
        r.flags.push_back("non_finite_qfi");
      }
      if (q1.x.sign_pattern_mismatch() || q1.y.sign_pattern_mismatch() ||
          q2.x.sign_pattern_mismatch() || q2.y.sign_pattern_mismatch())
        r.flags.push_back("sign_pattern_mismatch");
    }
  }
  if (obs.nu) {
    if (chain.alpha.is_nearest_neighbor()) {
      const auto mu = potential_values(chain.potential, cfg.L2);
      const TransferMatrixResult t = transfer_matrix_invariant(mu, chain.Delta, chain.J);
      r.nu = t.nu;
      if (t.critical) r.flags.push_back("nu_critical");
    } else {
      r.flags.push_back("nu_long_range");
    }
  }
  if (r.mass_gap && !std::isfinite(*r.mass_gap)) {
    r.mass_gap.reset();
    r.flags.push_back("non_finite_gap");
  }
  return r;
}

std::uint64_t realization_seed(std::uint64_t master_seed, int r) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r));
}

SweepRecord disorder_average(const SweepConfig& cfg, const ChainSpec& base, int workers) {
  if (!std::holds_alternative<AndersonPotential>(base.potential))
    throw std::invalid_argument("disorder_average needs an Anderson potential");
  if (cfg.n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
  const int n = cfg.n_realizations;

  std::vector<SweepRecord> runs(static_cast<std::size_t>(n));
  parallel_for(runs.size(), workers, [&](std::size_t i) {
    ChainSpec c = base;
    std::get<AndersonPotential>(c.potential).seed = realization_seed(cfg.master_seed, static_cast<int>(i));
    runs[i] = evaluate_point(cfg, c);
  });

  SweepRecord r;
  r.chain = base;
  r.chain.L = cfg.L1;
  std::get<AndersonPotential>(r.chain.potential).seed = cfg.master_seed;
  r.L1 = cfg.L1;
  r.L2 = cfg.L2;
  r.master_seed = cfg.master_seed;
  r.n_realizations = n;

  // Ordered sums keep the result independent of the worker count.
  auto mean = [&](auto member) -> std::optional<double> {
    double sum = 0.0;
    for (const auto& run : runs) {
      const auto& v = run.*member;
      if (!v) return std::nullopt;
      sum += static_cast<double>(*v);
    }
    return sum / n;
  };
  std::set<std::string> flags;
  for (const auto& run : runs) flags.insert(run.flags.begin(), run.flags.end());

  if (cfg.observables.qfi) {
    r.F_x_L1 = mean(&SweepRecord::F_x_L1);
    r.F_y_L1 = mean(&SweepRecord::F_y_L1);
    r.F_x_L2 = mean(&SweepRecord::F_x_L2);
    r.F_y_L2 = mean(&SweepRecord::F_y_L2);
    if (cfg.averaging == AveragingOrder::MeanOfBeta) {
      r.beta_x = mean(&SweepRecord::beta_x);
      r.beta_y = mean(&SweepRecord::beta_y);
      if (r.beta_x && r.beta_y) r.beta = std::max(*r.beta_x, *r.beta_y);
    } else if (r.F_x_L1 && r.F_y_L1 && r.F_x_L2 && r.F_y_L2) {
      const SizedQfi pts[] = {{cfg.L1, *r.F_x_L1, *r.F_y_L1}, {cfg.L2, *r.F_x_L2, *r.F_y_L2}};
      const ScalingResult s = scaling_exponent(pts);
      r.beta_x = s.beta_x;
      r.beta_y = s.beta_y;
      r.beta = s.beta;
    }
  }
  if (cfg.observables.gap) r.mass_gap = mean(&SweepRecord::mass_gap);
  if (cfg.observables.elw) r.elw_normalized = mean(&SweepRecord::elw_normalized);
  if (cfg.observables.nu) r.nu_bar = mean(&SweepRecord::nu);
  r.flags.assign(flags.begin(), flags.end());
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int workers) {
  cfg.validate();
  const bool disordered = std::holds_alternative<AndersonPotential>(cfg.base.potential);
  std::vector<SweepRecord> out(cfg.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const ChainSpec c = grid_chain(cfg, i / cfg.y_count(), i % cfg.y_count());
    out[i] = disordered ? disorder_average(cfg, c) : evaluate_point(cfg, c);
    out[i].grid_index = i;
  });
  return out;
}

std::string csv_header() {
  return "grid_index,potential,boundary,L1,L2,J,Delta,alpha,mu,V,omega,p,q,phi,"
         "F_x_L1,F_y_L1,F_x_L2,F_y_L2,beta_x,beta_y,beta,mass_gap,elw_normalized,"
         "nu,nu_bar,n_realizations,master_seed,flags";
}

std::string csv_row(const SweepRecord& r) {
  const ChainSpec& c = r.chain;
  std::string omega, p, q, phi;
  if (auto* h = std::get_if<HarperPotential>(&c.potential)) {
    omega = format_double(static_cast<double>(h->p) / h->q);
    p = std::to_string(h->p);
    q = std::to_string(h->q);
    phi = format_double(h->phi);
  } else if (auto* a = std::get_if<AubryAndrePotential>(&c.potential)) {
    omega = format_double(a->omega);
    phi = format_double(a->phi);
  }
  std::string flags;
  for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;

  const std::string fields[] = {
      std::to_string(r.grid_index),
      potential_kind(c.potential),
      boundary_name(c.boundary),
      std::to_string(r.L1),
      std::to_string(r.L2),
      format_double(c.J),
      format_double(c.Delta),
      format_alpha(c.alpha),
      format_double(potential_offset(c.potential)),
      format_double(potential_strength(c.potential)),
      omega,
      p,
      q,
      phi,
      opt(r.F_x_L1),
      opt(r.F_y_L1),
      opt(r.F_x_L2),
      opt(r.F_y_L2),
      opt(r.beta_x),
      opt(r.beta_y),
      opt(r.beta),
      opt(r.mass_gap),
      opt(r.elw_normalized),
      r.nu ? std::to_string(*r.nu) : std::string(),
      opt(r.nu_bar),
      std::to_string(r.n_realizations),
      std::to_string(r.master_seed),
      flags,
  };
  static_assert(std::size(fields) == kCsvFields);
  std::string row;
  for (std::size_t i = 0; i < kCsvFields; ++i) row += (i ? "," : "") + fields[i];
  return row;
}

std::string sweep_fingerprint(const SweepConfig& cfg) {
  std::ostringstream s;
  s << chain_to_config(cfg.base) << axis_text(cfg.x) << "|" << axis_text(cfg.y) << "|" << cfg.L1
    << "," << cfg.L2 << "|" << cfg.observables.qfi << cfg.observables.gap << cfg.observables.elw
    << cfg.observables.nu << "|" << cfg.n_realizations << "|" << cfg.master_seed << "|"
    << static_cast<int>(cfg.averaging) << "|" << cfg.omega_denominator << "|"
    << format_double(cfg.elw_C);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s.str())));
  return buf;
}

std::size_t run_sweep_to_csv(const SweepConfig& cfg, const std::string& csv_path, int workers,
                             bool resume) {
  namespace fs = std::filesystem;
  cfg.validate();
  const std::string log_path = csv_path + ".log";
  const std::string magic = kLogMagic + sweep_fingerprint(cfg);

  // Completed rows by grid index, kept verbatim.
  std::map<std::size_t, std::string> done;
  if (resume && fs::exists(log_path)) {
    std::ifstream in(log_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      if (nl == std::string::npos) break;  // torn final write
      const std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      if (first) {
        if (line != magic)
          throw ConfigError("--resume", "checkpoint " + log_path + " belongs to a different sweep");
        first = false;
        continue;
      }
      if (std::count(line.begin(), line.end(), ',') + 1 != static_cast<long>(kCsvFields)) continue;
      std::size_t index = 0;
      try {
        index = std::stoull(line.substr(0, line.find(',')));
      } catch (const std::exception&) {
        continue;
      }
      if (index < cfg.size()) done.emplace(index, line);
    }
  }

  // Rewrite the log with only intact records, then append.
  {
    const std::string tmp = log_path + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << magic << '\n';
    for (const auto& [i, row] : done) out << row << '\n';
    out.close();
    if (!out) throw std::runtime_error("cannot write " + tmp);
    fs::rename(tmp, log_path);
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (!done.count(i)) todo.push_back(i);

  const bool disordered = std::holds_alternative<AndersonPotential>(cfg.base.potential);
  std::ofstream log(log_path, std::ios::binary | std::ios::app);
  if (!log) throw std::runtime_error("cannot append to " + log_path);
  std::mutex log_mutex;
  parallel_for(todo.size(), workers, [&](std::size_t t) {
    const std::size_t i = todo[t];
    const ChainSpec c = grid_chain(cfg, i / cfg.y_count(), i % cfg.y_count());
    SweepRecord r = disordered ? disorder_average(cfg, c) : evaluate_point(cfg, c);
    r.grid_index = i;
    std::string row = csv_row(r);
    std::lock_guard lock(log_mutex);
    log << row << '\n';
    log.flush();
    done.emplace(i, std::move(row));
  });
  log.close();

  const std::string tmp = csv_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << csv_header() << '\n';
    for (const auto& [i, row] : done) out << row << '\n';
    out.close();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  fs::rename(tmp, csv_path);
  return todo.size();
}

std::vector<std::string> preset_names() { return {"fig1b", "fig4a", "fig6b", "fig8"}; }

SweepConfig sweep_preset(const std::string& name) {
  SweepConfig s;
  if (name == "fig1b") {
    // Commensurate Harper, V/J = 0.5, Delta/J = 0.25, mu x omega = p/q.
    // beta from closed chains at 200 -> 400; nu from the transfer matrix at 400.
    s.base.Delta = 0.25;
    s.base.boundary = Boundary::ClosedAntiperiodic;
    s.base.potential = HarperPotential{0.0, 0.5, 0, 1, 0.0};
    s.omega_denominator = 40;
    s.x = SweepAxis::linear(SweepParam::Mu, -2.0, 2.0, 41);
    s.y = SweepAxis::linear(SweepParam::Omega, 0.0, 1.0, 41);
    s.L1 = 200;
    s.L2 = 400;
    s.observables = {true, false, false, true};
  } else if (name == "fig4a") {
    // Aubry-Andre at mu = 0, V x Delta, open chains 100 -> 200.
    s.base.boundary = Boundary::Open;
    s.base.potential = AubryAndrePotential{0.0, 0.0, kInverseGoldenRatio, 0.0};
    s.x = SweepAxis::linear(SweepParam::V, 0.0, 4.0, 41);
    s.y = SweepAxis::linear(SweepParam::Delta, 0.0, 2.0, 41);
    s.observables = {true, false, false, true};
  } else if (name == "fig6b") {
    // Anderson at mu = 0, cuts Delta/J in {0, 1} against V, open chains.
    s.base.boundary = Boundary::Open;
    s.base.potential = AndersonPotential{0.0, 0.0, 0};
    s.x = SweepAxis::linear(SweepParam::V, 0.0, 4.0, 41);
    s.y = SweepAxis::list(SweepParam::Delta, {0.0, 1.0});
    s.n_realizations = 100;
    s.observables = {true, true, false, true};
  } else if (name == "fig8") {
    // Incommensurate panel: Aubry-Andre, mu = 0, Delta/J = 1, V x alpha, open.
    s.base.Delta = 1.0;
    s.base.boundary = Boundary::Open;
    s.base.potential = AubryAndrePotential{0.0, 0.0, kInverseGoldenRatio, 0.0};
    s.x = SweepAxis::linear(SweepParam::V, 0.0, 4.0, 41);
    s.y = SweepAxis::linear(SweepParam::Alpha, 0.0, 3.0, 41);
    s.observables = {true, true, false, false};
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("--preset", "unknown preset '" + name + "' (" + known + ")");
  }
  s.base.L = s.L1;
  return s;
}

SweepConfig sweep_from_config(const KeyValues& kv, SweepConfig base) {
  static const std::set<std::string> chain_keys = {
      "L", "J", "Delta", "alpha", "boundary", "potential.kind", "potential.mu", "potential.V",
      "potential.p", "potential.q", "potential.omega", "potential.phi", "potential.seed"};
  static const std::set<std::string> sweep_keys = {
      "sweep.x", "sweep.x.min", "sweep.x.max", "sweep.x.count", "sweep.x.values",
      "sweep.y", "sweep.y.min", "sweep.y.max", "sweep.y.count", "sweep.y.values",
      "sweep.sizes", "sweep.observables", "sweep.realizations", "sweep.seed",
      "sweep.averaging", "sweep.omega_denominator", "sweep.elw_C"};
  for (const auto& [k, v] : kv)
    if (!chain_keys.count(k) && !sweep_keys.count(k)) throw ConfigError(k, "unknown key");

  SweepConfig s = std::move(base);
  s.base = chain_from_config(kv, s.base);
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  for (const std::string axis : {"x", "y"}) {
    const std::string key = "sweep." + axis;
    SweepAxis& target = axis == "x" ? s.x : s.y;
    const auto* name = get(key);
    const bool any = name || get(key + ".values") || get(key + ".min") || get(key + ".max") ||
                     get(key + ".count");
    if (!any) continue;
    if (!name) throw ConfigError(key, "axis parameter missing");
    const SweepParam p = parse_param(key, *name);
    if (const auto* list = get(key + ".values")) {
      if (get(key + ".min") || get(key + ".max") || get(key + ".count"))
        throw ConfigError(key + ".values", "give either values or min/max/count");
      std::vector<double> values;
      for (const auto& item : split(*list, ',')) values.push_back(parse_double(key + ".values", item));
      target = SweepAxis::list(p, std::move(values));
    } else {
      const auto* lo = get(key + ".min");
      const auto* hi = get(key + ".max");
      const auto* n = get(key + ".count");
      if (!lo || !hi || !n) throw ConfigError(key, "needs values or min, max and count");
      const long long count = parse_integer(key + ".count", *n);
      if (count < 1 || count > 100000) throw ConfigError(key + ".count", "must be in [1, 100000]");
      target = SweepAxis::linear(p, parse_double(key + ".min", *lo), parse_double(key + ".max", *hi),
                                 static_cast<int>(count));
    }
  }
  if (const auto* v = get("sweep.sizes")) {
    const auto items = split(*v, ',');
    if (items.size() != 2) throw ConfigError("sweep.sizes", "expected 'L1,L2'");
    s.L1 = static_cast<int>(parse_integer("sweep.sizes", items[0]));
    s.L2 = static_cast<int>(parse_integer("sweep.sizes", items[1]));
  }
  if (const auto* v = get("sweep.observables")) s.observables = parse_observables("sweep.observables", *v);
  if (const auto* v = get("sweep.realizations")) {
    const long long n = parse_integer("sweep.realizations", *v);
    if (n < 1 || n > 1'000'000) throw ConfigError("sweep.realizations", "must be >= 1");
    s.n_realizations = static_cast<int>(n);
  }
  if (const auto* v = get("sweep.seed")) s.master_seed = parse_seed("sweep.seed", *v);
  if (const auto* v = get("sweep.averaging")) {
    const std::string t = trim(*v);
    if (t == "mean-qfi") s.averaging = AveragingOrder::MeanQfiThenBeta;
    else if (t == "mean-beta") s.averaging = AveragingOrder::MeanOfBeta;
    else throw ConfigError("sweep.averaging", "expected mean-qfi or mean-beta");
  }
  if (const auto* v = get("sweep.omega_denominator")) {
    const long long q = parse_integer("sweep.omega_denominator", *v);
    if (q < 1 || q > 1'000'000) throw ConfigError("sweep.omega_denominator", "must be >= 1");
    s.omega_denominator = static_cast<int>(q);
  }
  if (const auto* v = get("sweep.elw_C")) s.elw_C = parse_double("sweep.elw_C", *v);
  s.base.L = s.L1;
  s.validate();
  return s;
}

}  // namespace kitaev
