#include "folia/linalg.hpp"

#include <algorithm>

namespace folia::linalg {

SparseVector from_dense(const std::vector<Scalar>& dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero())
      v.emplace_back(i, dense[i]);
  return v;
}

std::vector<Scalar> to_dense(const SparseVector& v, std::size_t ncols) {
  std::vector<Scalar> d(ncols);
  for (const auto& [i, x] : v)
    d.at(i) = x;
  return d;
}

SparseVector axpy(const SparseVector& a, const Scalar& c, const SparseVector& b) {
  if (c.is_zero())
    return a;
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Scalar s = i->second + c * j->second;
      if (!s.is_zero())
        out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector Echelon::reduce(SparseVector v) const {
  // Walk v left to right; eliminating at a pivot only changes later columns.
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivot_row_.find(v[pos].first);
    if (it == pivot_row_.end()) {
      ++pos;
      continue;
    }
    Scalar factor = -v[pos].second;
    std::size_t col = v[pos].first;
    v = axpy(v, factor, rows_[it->second]);
    pos = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), col,
                                                    [](const auto& e, std::size_t c) { return e.first < c; }) -
                                   v.begin());
  }
  return v;
}

bool Echelon::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty())
    return false;
  Scalar inv = v.front().second.inverse();
  if (!inv.is_one())
    for (auto& e : v)
      e.second *= inv;
  pivot_row_[v.front().first] = rows_.size();
  rows_.push_back(std::move(v));
  return true;
}

std::vector<SparseVector> Echelon::rref() const {
  // Back-substitute from the largest pivot down.
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  std::map<std::size_t, SparseVector> done;
  for (auto it = pivot_row_.rbegin(); it != pivot_row_.rend(); ++it) {
    SparseVector row = rows_[it->second];
    for (std::size_t k = 1; k < row.size();) {
      auto d = done.find(row[k].first);
      if (d == done.end()) {
        ++k;
        continue;
      }
      std::size_t col = row[k].first;
      row = axpy(row, -row[k].second, d->second);
      k = static_cast<std::size_t>(std::lower_bound(row.begin(), row.end(), col,
                                                    [](const auto& e, std::size_t c) { return e.first < c; }) -
                                   row.begin());
    }
    done.emplace(it->first, std::move(row));
  }
  for (auto& [p, row] : done)
    out.push_back(std::move(row));
  return out;
}

std::vector<SparseVector> Echelon::kernel(std::size_t ncols) const {
  auto rows = rref();
  std::vector<SparseVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_row_.count(f))
      continue;
    SparseVector v;
    for (const auto& row : rows) {
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != row.end() && it->first == f)
        v.emplace_back(row.front().first, -it->second);
    }
    v.emplace_back(f, Scalar(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return rref_basis(basis);
}

std::vector<SparseVector> rref_basis(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors)
    e.insert(v);
  return e.rref();
}

std::optional<std::vector<Scalar>> solve(const std::vector<SparseVector>& columns, const SparseVector& rhs) {
  // Row-reduce the augmented system [A | rhs] with equations as rows.
  std::map<std::size_t, SparseVector> eqs;
  const std::size_t n = columns.size();
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [r, x] : columns[j])
      eqs[r].emplace_back(j, x);
  for (const auto& [r, x] : rhs)
    eqs[r].emplace_back(n, x);
  Echelon e;
  for (auto& [r, row] : eqs) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    e.insert(row);
  }
  auto rows = e.rref();
  std::vector<Scalar> x(n);
  for (const auto& row : rows) {
    if (row.front().first == n)
      return std::nullopt; // 0 = nonzero
    if (row.back().first == n)
      x[row.front().first] = row.back().second;
  }
  return x;
}

std::size_t rank(const Matrix& m) {
  Echelon e;
  for (const auto& row : m)
    e.insert(from_dense(row));
  return e.rank();
}

} // namespace folia::linalg
