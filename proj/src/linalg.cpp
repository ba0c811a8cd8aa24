#include "wildquot/linalg.hpp"

namespace wq {

std::vector<std::size_t> rref(Matrix& m) {
  const Field& F = *m.field;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    Field::Code inv = F.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      Field::Code f = m.at(i, c);
      if (!f) continue;
      Field::Code nf = F.neg(f);
      for (std::size_t j = c; j < m.cols; ++j)
        if (m.at(r, j)) m.at(i, j) = F.add(m.at(i, j), F.mul(nf, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Vec> nullspace(const Matrix& m) {
  Matrix e = m;
  auto piv = rref(e);
  const Field& F = *m.field;
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(e.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec EchelonBasis::reduce(Vec v) const {
  const Field& F = *field_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Field::Code f = v[pivots_[k]];
    if (!f) continue;
    Field::Code nf = F.neg(f);
    const Vec& row = rows_[k];
    for (std::size_t j = 0; j < dim_; ++j)
      if (row[j]) v[j] = F.add(v[j], F.mul(nf, row[j]));
  }
  return v;
}

bool EchelonBasis::insert(const Vec& v) {
  const Field& F = *field_;
  Vec r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p] == 0) ++p;
  if (p == dim_) return false;
  Field::Code inv = F.inv(r[p]);
  for (auto& x : r) x = F.mul(x, inv);
  // keep the stored rows fully reduced
  for (auto& row : rows_) {
    Field::Code f = row[p];
    if (!f) continue;
    Field::Code nf = F.neg(f);
    for (std::size_t j = 0; j < dim_; ++j)
      if (r[j]) row[j] = F.add(row[j], F.mul(nf, r[j]));
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

}  // namespace wq
