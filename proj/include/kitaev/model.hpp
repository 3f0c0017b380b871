#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

/// Variable-range Kitaev chain with a site-dependent chemical potential.
///
/// H = -J/2 sum_l (a+_l a_{l+1} + h.c.) - sum_l mu_l n_l
///     + Delta/2 sum_{pairs} d^-alpha (a_i a_j + a+_j a+_i)
///
/// Each unordered pair (i < j) is coupled once, at distance d = j - i on an
/// open chain and d = min(j - i, L - j + i) on a closed one.
namespace kitaev {

enum class Boundary { Open, ClosedAntiperiodic };

/// (sqrt(5) - 1) / 2
inline constexpr double kInverseGoldenRatio = 0.6180339887498948482;

struct UniformPotential {
  double mu = 0.0;
};

/// mu_l = mu + V sin(2 pi l p/q + phi), commensurate.
struct HarperPotential {
  double mu = 0.0;
  double V = 0.0;
  int p = 0;
  int q = 1;
  double phi = 0.0;
};

/// mu_l = mu + V sin(2 pi l omega + phi) with irrational omega.
struct AubryAndrePotential {
  double mu = 0.0;
  double V = 0.0;
  double omega = kInverseGoldenRatio;
  double phi = 0.0;
};

/// mu_l = mu + u_l, u_l i.i.d. uniform on [-V, V].
struct AndersonPotential {
  double mu = 0.0;
  double V = 0.0;
  std::uint64_t seed = 0;
};

using PotentialSpec =
    std::variant<UniformPotential, HarperPotential, AubryAndrePotential, AndersonPotential>;

/// Decay exponent of the pairing, or the nearest-neighbour limit alpha -> inf.
class PairingExponent {
 public:
  constexpr PairingExponent() = default;
  constexpr explicit PairingExponent(double alpha) : alpha_(alpha) {}
  static constexpr PairingExponent nearest_neighbor() {
    PairingExponent e;
    e.nearest_ = true;
    return e;
  }

  constexpr bool is_nearest_neighbor() const { return nearest_; }
  /// Numeric exponent; +inf for the nearest-neighbour limit.
  double value() const;
  /// alpha > 1 (including nearest neighbour): short-range universality.
  bool is_short_range() const { return nearest_ || alpha_ > 1.0; }

  friend bool operator==(const PairingExponent&, const PairingExponent&) = default;

 private:
  double alpha_ = 0.0;
  bool nearest_ = false;
};

struct ChainSpec {
  int L = 2;
  double J = 1.0;
  double Delta = 0.0;
  PairingExponent alpha = PairingExponent::nearest_neighbor();
  Boundary boundary = Boundary::Open;
  PotentialSpec potential = UniformPotential{};

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Quadratic form H = sum A_ij a+_i a_j + 1/2 sum (B_ij a+_i a+_j + h.c.) up to a
/// constant. A is symmetric, B antisymmetric, both by construction.
struct CouplingMatrices {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  int size() const { return static_cast<int>(A.rows()); }
};

/// Site-resolved chemical potential mu_1 ... mu_L (stored 0-based).
std::vector<double> potential_values(const PotentialSpec& spec, int L);

/// d_l^-alpha for a pairing spanning l sites. Throws std::out_of_range unless
/// 1 <= l <= L - 1.
double pairing_coefficient(int l, int L, PairingExponent alpha, Boundary boundary);

CouplingMatrices build_couplings(const ChainSpec& chain);

/// Homogeneous offset mu of any potential.
double potential_offset(const PotentialSpec& spec);
/// Strength V (0 for Uniform).
double potential_strength(const PotentialSpec& spec);
std::string potential_kind(const PotentialSpec& spec);
std::string boundary_name(Boundary b);

}  // namespace kitaev
