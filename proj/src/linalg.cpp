#include "gld/linalg.hpp"

#include <cmath>

namespace gld {

void BandedMatrix::factor() {
  const int band_top = kl_ + ku_;  // widened upper bandwidth after pivoting
  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(n_ - 1, k + kl_);
    int p = k;
    double pmax = std::abs(at(k, k));
    for (int i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(at(i, k));
      if (v > pmax) {
        pmax = v;
        p = i;
      }
    }
    if (pmax == 0.0) throw SingularMatrixError("banded LU: zero pivot column " + std::to_string(k));
    pivot_[k] = p;
    const int last_col = std::min(n_ - 1, k + band_top);
    if (p != k) {
      for (int j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
    }
    const double d = at(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = at(i, k) / d;
      at(i, k) = m;  // keep the multiplier
      if (m != 0.0) {
        for (int j = k + 1; j <= last_col; ++j) at(i, j) -= m * at(k, j);
      }
    }
  }
  factored_ = true;
}

void BandedMatrix::solve(std::span<double> rhs) const {
  if (!factored_) throw std::logic_error("banded LU: solve before factor");
  if (static_cast<int>(rhs.size()) != n_) {
    throw std::invalid_argument("banded LU: rhs size mismatch");
  }
  const int band_top = kl_ + ku_;
  for (int k = 0; k < n_; ++k) {
    if (pivot_[k] != k) std::swap(rhs[k], rhs[pivot_[k]]);
    const int last_row = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= last_row; ++i) rhs[i] -= at(i, k) * rhs[k];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const int last_col = std::min(n_ - 1, i + band_top);
    double s = rhs[i];
    for (int j = i + 1; j <= last_col; ++j) s -= at(i, j) * rhs[j];
    rhs[i] = s / at(i, i);
  }
}

}  // namespace gld
