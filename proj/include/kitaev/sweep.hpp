#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kitaev/config.hpp"
#include "kitaev/entanglement.hpp"
#include "kitaev/model.hpp"

namespace kitaev {

enum class SweepParam { Mu, V, Omega, Delta, Alpha };

std::string param_name(SweepParam p);
SweepParam parse_param(const std::string& key, const std::string& text);

struct SweepAxis {
  SweepParam param = SweepParam::Mu;
  std::vector<double> values;

  /// count points from min to max inclusive (count == 1 gives min).
  static SweepAxis linear(SweepParam p, double min, double max, int count);
  static SweepAxis list(SweepParam p, std::vector<double> values);
};

struct Observables {
  bool qfi = true;
  bool gap = false;
  bool elw = false;
  bool nu = false;
};

Observables parse_observables(const std::string& key, const std::string& text);

enum class AveragingOrder { MeanQfiThenBeta, MeanOfBeta };

struct SweepConfig {
  ChainSpec base;
  SweepAxis x;
  SweepAxis y;  // empty values: one-dimensional sweep
  int L1 = 100;
  int L2 = 200;
  Observables observables;
  int n_realizations = 1;  // Anderson potentials only
  std::uint64_t master_seed = 0;
  AveragingOrder averaging = AveragingOrder::MeanQfiThenBeta;
  int omega_denominator = 100;  // Harper omega axis: omega -> p/q
  double elw_C = 0.45;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  std::size_t size() const { return x.values.size() * y_count(); }
  std::size_t y_count() const { return y.values.empty() ? 1 : y.values.size(); }
};

/// Figure presets: fig1b, fig4a, fig6b, fig8. Throws ConfigError for unknown names.
SweepConfig sweep_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Sweep settings on top of the chain keys: sweep.x, sweep.x.min, sweep.x.max,
/// sweep.x.count or sweep.x.values (comma list), same for sweep.y; sizes
/// ("L1,L2"); observables ("qfi,gap,elw,nu"); realizations; seed; averaging
/// ("mean-qfi" | "mean-beta"); omega_denominator; elw_C.
SweepConfig sweep_from_config(const KeyValues& kv, SweepConfig base = {});

struct SweepRecord {
  std::size_t grid_index = 0;
  ChainSpec chain;  // parameters of this grid point (L = L1)
  int L1 = 0;
  int L2 = 0;
  std::optional<double> F_x_L1, F_y_L1, F_x_L2, F_y_L2;
  std::optional<double> beta_x, beta_y, beta;
  std::optional<double> mass_gap;
  std::optional<double> elw_normalized;
  std::optional<int> nu;
  std::optional<double> nu_bar;
  int n_realizations = 1;
  std::uint64_t master_seed = 0;
  std::vector<std::string> flags;
};

/// Chain of grid point (ix, iy).
ChainSpec grid_chain(const SweepConfig& cfg, std::size_t ix, std::size_t iy);

/// One grid point, without disorder averaging.
SweepRecord evaluate_point(const SweepConfig& cfg, const ChainSpec& chain);

/// Seed of realization r, derived from the master seed by a counter.
std::uint64_t realization_seed(std::uint64_t master_seed, int r);

/// Average over n_realizations Anderson draws: F is averaged at each size and
/// beta taken from the averages (or the mean of per-realization betas when
/// `averaging` says so); nu_bar and the mass gap are plain means.
SweepRecord disorder_average(const SweepConfig& cfg, const ChainSpec& base, int workers = 1);

/// All grid points in row-major order (x outer, y inner), computed by
/// `workers` threads. Output is independent of the worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int workers = 1);

std::string csv_header();
std::string csv_row(const SweepRecord& r);

/// Runs the sweep with an append-only checkpoint log at `csv_path + ".log"`
/// and writes the final CSV sorted by grid index. With `resume`, grid points
/// already in the log are not recomputed. Returns the number of points
/// computed in this call.
std::size_t run_sweep_to_csv(const SweepConfig& cfg, const std::string& csv_path, int workers,
                             bool resume);

/// Fingerprint of everything that determines a sweep's output.
std::string sweep_fingerprint(const SweepConfig& cfg);

}  // namespace kitaev
