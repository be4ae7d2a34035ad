#pragma once

#include <vector>

#include "shopd/graded.hpp"

namespace shopd {

/// Dense exact-rational matrix utilities used for rank/kernel/solve work.
/// Row-major storage; elimination always picks the leftmost available pivot
/// column (scanning rows top-down) so results are deterministic.
class DenseMat {
 public:
  DenseMat() = default;
  DenseMat(int rows, int cols) : r_(rows), c_(cols), a_(rows, std::vector<Rational>(cols)) {}
  static DenseMat from_sparse(const SparseMat& m);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rational& at(int i, int j) { return a_[i][j]; }
  const Rational& at(int i, int j) const { return a_[i][j]; }

  /// In-place reduced row echelon form; returns pivot columns in order.
  std::vector<int> rref();

 private:
  int r_ = 0, c_ = 0;
  std::vector<std::vector<Rational>> a_;
};

int rank(const SparseMat& m);

/// Basis of the kernel as columns.
std::vector<std::vector<Rational>> kernel_basis(const SparseMat& m);

/// Is v in the column span of m?
bool in_span(const SparseMat& m, const std::vector<Rational>& v);

/// Do the column spans of a and b coincide?
bool same_span(const SparseMat& a, const SparseMat& b);

/// Solve m x = v; empty optional when inconsistent.
std::optional<std::vector<Rational>> solve(const SparseMat& m, const std::vector<Rational>& v);

}  // namespace shopd
