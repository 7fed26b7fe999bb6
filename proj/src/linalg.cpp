#include "qf2/linalg.hpp"

namespace qf2::linalg {

std::vector<Vector> kernel(const Matrix& m, int cols, unsigned k) {
  Matrix a = m;
  std::vector<int> pivot_col;
  size_t row = 0;
  for (int c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Element inv = a[row][c].inverse();
    for (auto& x : a[row]) x *= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Element f = a[r][c];
      for (int cc = 0; cc < cols; ++cc)
        if (!a[row][cc].is_zero()) a[r][cc] += f * a[row][cc];
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vector> out;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Element::zero(k));
    v[free] = Element::one(k);
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = a[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<int> independent_subset(const std::vector<Vector>& vectors, unsigned k) {
  std::vector<Vector> echelon;  // reduced rows with recorded pivots
  std::vector<size_t> pivots;
  std::vector<int> chosen;
  for (size_t i = 0; i < vectors.size(); ++i) {
    Vector v = vectors[i];
    for (size_t r = 0; r < echelon.size(); ++r) {
      const Element f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (size_t c = 0; c < v.size(); ++c)
        if (!echelon[r][c].is_zero()) v[c] += f * echelon[r][c];
    }
    size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) continue;
    const Element inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    // Keep earlier rows reduced at the new pivot.
    for (auto& row : echelon) {
      const Element f = row[p];
      if (f.is_zero()) continue;
      for (size_t c = 0; c < v.size(); ++c)
        if (!v[c].is_zero()) row[c] += f * v[c];
    }
    echelon.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(static_cast<int>(i));
  }
  (void)k;
  return chosen;
}

int rank(const std::vector<Vector>& vectors, unsigned k) {
  return static_cast<int>(independent_subset(vectors, k).size());
}

}  // namespace qf2::linalg
