#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace gld {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// General banded matrix with kl sub- and ku superdiagonals, LAPACK-style
// band storage widened by kl extra superdiagonals for pivot fill-in.
// Covers the tridiagonal scalar problems (kl = ku = 1) and the interleaved
// profile-pair Jacobian (kl = ku = 2).
class BandedMatrix {
 public:
  BandedMatrix(int n, int kl, int ku)
      : n_(n), kl_(kl), ku_(ku), rows_(2 * kl + ku + 1),
        data_(static_cast<std::size_t>(rows_) * n, 0.0), pivot_(n, 0) {}

  int size() const { return n_; }

  // Entry (i, j); j must lie within the band of row i.
  double& at(int i, int j) {
    return data_[idx(i, j)];
  }
  double at(int i, int j) const { return data_[idx(i, j)]; }

  bool in_band(int i, int j) const {
    return j - i <= ku_ && i - j <= kl_;
  }

  // In-place LU with partial pivoting. Throws SingularMatrixError on a
  // zero pivot.
  void factor();

  // Solve with the factored matrix; rhs is overwritten by the solution.
  void solve(std::span<double> rhs) const;

 private:
  std::size_t idx(int i, int j) const {
    // Row kl_+ku_+i-j of column j; fill-in occupies rows 0..kl_-1.
    return static_cast<std::size_t>(kl_ + ku_ + i - j) +
           static_cast<std::size_t>(j) * rows_;
  }

  int n_, kl_, ku_, rows_;
  std::vector<double> data_;
  std::vector<int> pivot_;
  bool factored_ = false;
};

}  // namespace gld
