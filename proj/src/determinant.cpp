#include "kitaev/determinant.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kitaev {

double determinant_lu(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

void LeadingMinors::update_determinant(int n) {
  log_abs_ = 0.0;
  sign_ = perm_sign_;
  for (int i = 0; i < n; ++i) {
    const double u = at(i, i);
    if (u == 0.0) {
      log_abs_ = -std::numeric_limits<double>::infinity();
      return;
    }
    log_abs_ += std::log(std::abs(u));
    if (u < 0.0) sign_ = -sign_;
  }
}

void LeadingMinors::refactor(const Eigen::Ref<const Eigen::MatrixXd>& K, int n) {
  ++stats_.refactorizations;
  perm_sign_ = 1;
  for (int i = 0; i < n; ++i) {
    perm_[i] = i;
    for (int j = 0; j < n; ++j) at(i, j) = K(i, j);
  }
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(at(i, k)) > best) {
        best = std::abs(at(i, k));
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      std::swap(perm_[k], perm_[piv]);
      perm_sign_ = -perm_sign_;
    }
    const double p = at(k, k);
    if (p == 0.0) {
      for (int i = k + 1; i < n; ++i) at(i, k) = 0.0;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = at(i, k) / p;
      at(i, k) = f;
      if (f == 0.0) continue;
      double* ri = &at(i, 0);
      const double* rk = &at(k, 0);
      for (int j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
  update_determinant(n);
}

bool LeadingMinors::repivot_trailing(int n, int j0) {
  ++stats_.repivots;
  const int t = n + 1 - j0;
  trail_.assign(static_cast<std::size_t>(t) * t, 0.0);
  auto S = [&](int a, int b) -> double& { return trail_[static_cast<std::size_t>(a) * t + b]; };

  // Schur complement of the old rows: trailing L times trailing U.
  for (int a = 0; a + 1 < t; ++a) {
    const int i = j0 + a;
    for (int b = 0; b < t; ++b) {
      const int k = j0 + b;
      const int top = std::min(i, k);
      double v = 0.0;
      for (int p = j0; p <= top; ++p) v += (p == i ? 1.0 : at(i, p)) * at(p, k);
      S(a, b) = v;
    }
  }
  for (int b = 0; b < t; ++b) S(t - 1, b) = at(n, j0 + b);
  perm_[n] = n;

  for (int k = 0; k < t; ++k) {
    int piv = k;
    double best = std::abs(S(k, k));
    for (int a = k + 1; a < t; ++a) {
      if (std::abs(S(a, k)) > best) {
        best = std::abs(S(a, k));
        piv = a;
      }
    }
    if (piv != k) {
      for (int b = 0; b < t; ++b) std::swap(S(k, b), S(piv, b));
      for (int p = 0; p < j0; ++p) std::swap(at(j0 + k, p), at(j0 + piv, p));
      std::swap(perm_[j0 + k], perm_[j0 + piv]);
      perm_sign_ = -perm_sign_;
    }
    const double p = S(k, k);
    if (p == 0.0) {
      for (int a = k + 1; a < t; ++a) S(a, k) = 0.0;
      continue;
    }
    for (int a = k + 1; a < t; ++a) {
      const double f = S(a, k) / p;
      S(a, k) = f;
      for (int b = k + 1; b < t; ++b) S(a, b) -= f * S(k, b);
    }
  }
  for (int a = 0; a < t; ++a) {
    for (int b = 0; b < t; ++b) {
      if (!std::isfinite(S(a, b))) return false;
      at(j0 + a, j0 + b) = S(a, b);
    }
  }
  update_determinant(n + 1);
  return true;
}

bool LeadingMinors::border(const Eigen::Ref<const Eigen::MatrixXd>& K, int n) {
  ++stats_.border_steps;
  // New column of U: y = L^-1 P K[0..n-1, n].
  double ynorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = K(perm_[i], n);
    const double* ri = &at(i, 0);
    for (int j = 0; j < i; ++j) v -= ri[j] * col_[j];
    col_[i] = v;
    ynorm += v * v;
  }
  for (int i = 0; i < n; ++i) at(i, n) = col_[i];

  // New row of L: x^T U = K[n, 0..n-1], stored in place.
  double* x = &at(n, 0);
  for (int j = 0; j <= n; ++j) x[j] = K(n, j);
  double xnorm = 0.0;
  for (int j = 0; j < n; ++j) {
    const double xj = x[j] / at(j, j);
    if (!std::isfinite(xj) || std::abs(xj) > opts_.growth_limit) {
      if (n - j > opts_.repivot_window) return false;
      double r = K(n, n);
      for (int p = 0; p < j; ++p) r -= x[p] * col_[p];
      x[n] = r;
      return repivot_trailing(n, j);
    }
    x[j] = xj;
    xnorm += xj * xj;
    const double* rj = &at(j, 0);
    for (int k = j + 1; k < n; ++k) x[k] -= xj * rj[k];
  }

  double dot = 0.0;
  for (int j = 0; j < n; ++j) dot += x[j] * col_[j];
  const double d = K(n, n);
  const double s = d - dot;
  const double scale = std::abs(d) + std::sqrt(xnorm * ynorm);
  if (!std::isfinite(s) || (scale > 0.0 && std::abs(s) * opts_.cancellation_limit < scale))
    return false;

  at(n, n) = s;
  perm_[n] = n;
  if (s == 0.0) {
    log_abs_ = -std::numeric_limits<double>::infinity();
  } else {
    log_abs_ += std::log(std::abs(s));
    if (s < 0.0) sign_ = -sign_;
  }
  return true;
}

void LeadingMinors::compute(const Eigen::Ref<const Eigen::MatrixXd>& K,
                            std::vector<double>& out) {
  if (K.rows() != K.cols()) throw std::invalid_argument("leading minors need a square matrix");
  const int N = static_cast<int>(K.rows());
  out.assign(static_cast<std::size_t>(N), 0.0);
  if (N == 0) return;
  if (cap_ < N) {
    cap_ = N;
    lu_.assign(static_cast<std::size_t>(cap_) * cap_, 0.0);
    perm_.assign(static_cast<std::size_t>(cap_), 0);
    col_.assign(static_cast<std::size_t>(cap_), 0.0);
  }

  int since_refactor = 0;
  for (int n = 0; n < N; ++n) {
    const bool fresh = n == 0 || since_refactor >= opts_.refactor_interval ||
                       !std::isfinite(log_abs_) || !border(K, n);
    if (fresh) {
      refactor(K, n + 1);
      since_refactor = 0;
    } else {
      ++since_refactor;
    }
    out[n] = std::isfinite(log_abs_) ? sign_ * std::exp(log_abs_) : 0.0;
  }
}

}  // namespace kitaev
