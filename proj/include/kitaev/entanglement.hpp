#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/bdg.hpp"

namespace kitaev {

/// Collective pseudo-spin direction sigma_x or sigma_y.
enum class Channel { X, Y };

std::string channel_name(Channel c);

/// String correlator <sigma^l sigma^m> as a determinant of a G block.
/// Sites are 0-based; requires 0 <= l < m < G.rows() (std::out_of_range otherwise).
///   rho_x: rows l..m-1, columns l+1..m
///   rho_y: rows l+1..m, columns l..m-1
double rho_x(const Eigen::MatrixXd& G, int l, int m);
double rho_y(const Eigen::MatrixXd& G, int l, int m);
double rho(const Eigen::MatrixXd& G, Channel c, int l, int m);

/// The square block of G whose leading principal minors are rho(l, l+1..L-1).
Eigen::Block<const Eigen::MatrixXd> correlator_block(const Eigen::MatrixXd& G, Channel c, int l);

struct ChannelQfi {
  /// L + 2 sum_{l<m} |rho_lm|
  double F = 0.0;
  /// 4 Var(J(s)) with s = (1, ..., 1)
  double F_uniform = 0.0;
  /// 4 Var(J(s)) with s = (-1, 1, -1, ...)
  double F_staggered = 0.0;

  double best_canonical() const { return std::max(F_uniform, F_staggered); }
  /// F exceeds both canonical sign patterns by more than 1e-6 relative.
  bool sign_pattern_mismatch() const { return F > best_canonical() * (1.0 + 1e-6); }
};

/// QFI of one channel from the two-point matrix G. The outer site index is
/// split across `workers` threads; partial sums are reduced in site order, so
/// the result does not depend on the worker count.
ChannelQfi qfi_channel(const Eigen::MatrixXd& G, Channel c, int workers = 1);

struct QfiResult {
  int L = 0;
  ChannelQfi x;
  ChannelQfi y;

  double F_x() const { return x.F; }
  double F_y() const { return y.F; }
};

QfiResult compute_qfi(const BdgSolution& sol, int workers = 1);

struct SizedQfi {
  int L = 0;
  double F_x = 0.0;
  double F_y = 0.0;
};

struct ScalingResult {
  double beta_x = 0.0;
  double beta_y = 0.0;
  double beta = 0.0;
  int L1 = 0;
  int L2 = 0;
};

/// Two-point log slope d log F / d log L over the two largest sizes.
/// Throws std::invalid_argument with fewer than two distinct sizes.
ScalingResult scaling_exponent(std::span<const SizedQfi> points);

}  // namespace kitaev
