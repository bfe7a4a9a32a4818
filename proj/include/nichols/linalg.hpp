#pragma once

#include <vector>

#include "nichols/scalar.hpp"

namespace nichols {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

// Incrementally maintained reduced row echelon basis of a subspace of K^n.
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  // pivot column of each row, in insertion order
  const std::vector<int>& pivots() const { return pivots_; }
  const Mat& rows() const { return rows_; }
  bool is_pivot(int col) const { return pivot_row_[col] >= 0; }

  // Reduce v modulo the span; the result vanishes on pivot columns.
  Vec reduce(Vec v) const;
  // Adds v to the span; returns false if v was already contained.
  bool insert(Vec v);

 private:
  int dim_;
  Mat rows_;
  std::vector<int> pivots_;
  std::vector<int> pivot_row_ = std::vector<int>(dim_, -1);
};

int rank(const Mat& m);
bool is_zero(const Vec& v);

}  // namespace nichols
