#pragma once

#include "folia/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace folia::linalg {

/// Sparse vector over an exact field: (column, value) pairs sorted by column,
/// no zero values.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

SparseVector from_dense(const std::vector<Scalar>& dense);
std::vector<Scalar> to_dense(const SparseVector& v, std::size_t ncols);
/// a + c * b
SparseVector axpy(const SparseVector& a, const Scalar& c, const SparseVector& b);

/// Incrementally maintained row echelon form.
///
/// Every stored row has its pivot (smallest column) normalized to 1 and is
/// zero at the pivots of the rows stored before it. The pivot of a row is the
/// first nonzero column, so reducing against rows in increasing pivot order
/// only touches columns to the right.
class Echelon {
public:
  /// Reduces v; stores it and returns true iff the remainder is nonzero.
  bool insert(SparseVector v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  /// Fully reduced row echelon form, rows sorted by pivot column.
  std::vector<SparseVector> rref() const;
  /// Basis of {c : row . c = 0 for every stored row} in reduced row echelon
  /// form (pivots 1, sorted by pivot). Columns range over [0, ncols).
  std::vector<SparseVector> kernel(std::size_t ncols) const;

private:
  std::vector<SparseVector> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;
};

/// Canonical reduced row echelon basis of the span of the given vectors.
std::vector<SparseVector> rref_basis(const std::vector<SparseVector>& vectors);

/// Solves sum_j x_j * columns[j] = rhs. Returns one solution or nullopt.
std::optional<std::vector<Scalar>> solve(const std::vector<SparseVector>& columns, const SparseVector& rhs);

/// Dense matrix helpers over Scalar.
using Matrix = std::vector<std::vector<Scalar>>;

std::size_t rank(const Matrix& m);

} // namespace folia::linalg
