#pragma once

#include <vector>

#include <Eigen/Dense>

namespace kitaev {

/// Determinant by a fresh LU factorization with partial pivoting.
double determinant_lu(const Eigen::Ref<const Eigen::MatrixXd>& m);

struct MinorStats {
  long border_steps = 0;
  long refactorizations = 0;
  long repivots = 0;
};

/// Determinants of all leading principal submatrices K[0..n, 0..n], n = 1..N.
///
/// The pivoted LU factors of the n x n block are extended to n + 1 by one
/// bordering step (a forward substitution for the new column, one for the new
/// row, and a Schur-complement pivot), O(n^2) instead of O(n^3).
///
/// The appended row cannot take part in pivoting for earlier columns. When its
/// multiplier for column j exceeds `growth_limit` and j lies within
/// `repivot_window` of the end, the trailing Schur complement from column j on
/// is re-factored with partial pivoting, which lets the new row take over a
/// small trailing pivot. Otherwise the factors are rebuilt from scratch. A full
/// rebuild also happens every `refactor_interval` steps and whenever a pivot
/// cancels by more than `cancellation_limit` against its inputs.
class LeadingMinors {
 public:
  struct Options {
    int refactor_interval = 32;
    double growth_limit = 1e2;
    double cancellation_limit = 1e4;
    int repivot_window = 16;
  };

  LeadingMinors() : LeadingMinors(Options{}) {}
  explicit LeadingMinors(Options opts) : opts_(opts) {}

  /// Writes det of the leading n x n block into out[n - 1], n = 1..K.rows().
  void compute(const Eigen::Ref<const Eigen::MatrixXd>& K, std::vector<double>& out);

  std::vector<double> compute(const Eigen::Ref<const Eigen::MatrixXd>& K) {
    std::vector<double> out;
    compute(K, out);
    return out;
  }

  const MinorStats& stats() const { return stats_; }

 private:
  // Partial-pivoting LU of the leading n x n block.
  void refactor(const Eigen::Ref<const Eigen::MatrixXd>& K, int n);
  // Extends the factors from n to n + 1; false if the step must be redone.
  bool border(const Eigen::Ref<const Eigen::MatrixXd>& K, int n);
  // Re-pivots rows/columns j0..n of the (n + 1) x (n + 1) factors; row n holds
  // the new row's multipliers for columns < j0 and its residual from j0 on.
  bool repivot_trailing(int n, int j0);
  void update_determinant(int n);

  Options opts_;
  MinorStats stats_;
  int cap_ = 0;
  std::vector<double> lu_;   // row-major cap_ x cap_, unit-lower L below the diagonal
  std::vector<int> perm_;    // factor row i holds row perm_[i] of K
  std::vector<double> col_;  // scratch
  std::vector<double> trail_;
  int perm_sign_ = 1;
  double log_abs_ = 0.0;
  int sign_ = 1;

  double& at(int i, int j) { return lu_[static_cast<std::size_t>(i) * cap_ + j]; }
};

}  // namespace kitaev
