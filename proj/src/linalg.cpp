#include "nichols/linalg.hpp"

namespace nichols {

Vec EchelonBasis::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const int c = pivots_[r];
    if (v[c].is_zero()) continue;
    const Scalar f = v[c];
    const Vec& row = rows_[r];
    for (int j = 0; j < dim_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
  return v;
}

bool EchelonBasis::insert(Vec v) {
  v = reduce(std::move(v));
  int piv = -1;
  for (int j = 0; j < dim_; ++j)
    if (!v[j].is_zero()) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  const Scalar inv = v[piv].inverse();
  for (int j = piv; j < dim_; ++j)
    if (!v[j].is_zero()) v[j] *= inv;
  for (auto& row : rows_) {
    if (row[piv].is_zero()) continue;
    const Scalar f = row[piv];
    for (int j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) row[j] -= f * v[j];
  }
  pivot_row_[piv] = static_cast<int>(rows_.size());
  pivots_.push_back(piv);
  rows_.push_back(std::move(v));
  return true;
}

int rank(const Mat& m) {
  if (m.empty()) return 0;
  EchelonBasis b(static_cast<int>(m[0].size()));
  for (const auto& row : m) {
    b.insert(row);
    if (b.rank() == b.dim()) break;
  }
  return b.rank();
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace nichols
