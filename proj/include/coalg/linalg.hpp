#pragma once

// Exact rational linear algebra over sparse column storage.
//
// Tensor basis convention used everywhere in the library: the basis vector
// e_{i_1} (x) ... (x) e_{i_k} of V_1 (x) ... (x) V_k sits at the row-major
// index ((i_1 * d_2 + i_2) * d_3 + ...) * d_k + i_k, i.e. the leftmost factor
// is the most significant digit.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/rational.hpp"

namespace coalg {

using Index = std::size_t;

/// Dense vector of rationals; the representation of elements of small spaces.
using Vector = std::vector<Rational>;

/// Sparse vector: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  using Term = std::pair<Index, Rational>;

  SparseVec() = default;

  /// Sorts, merges duplicate indices and drops zeros.
  static SparseVec from_terms(std::vector<Term> terms);
  static SparseVec from_dense(const Vector& dense);
  static SparseVec unit(Index i) { SparseVec v; v.terms_.emplace_back(i, Rational(1)); return v; }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Index leading_index() const { return terms_.front().first; }
  const Rational& leading_value() const { return terms_.front().second; }

  Rational at(Index i) const;
  Vector to_dense(Index dim) const;

  /// this += factor * other
  void add_scaled(const SparseVec& other, const Rational& factor);
  void scale(const Rational& factor);

  bool operator==(const SparseVec& other) const { return terms_ == other.terms_; }

 private:
  std::vector<Term> terms_;
};

/// rows x cols matrix of rationals stored column by column.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static Matrix identity(Index n);
  static Matrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static Matrix from_columns(Index rows, std::vector<SparseVec> columns);
  /// Single-column matrix holding v.
  static Matrix column_vector(const Vector& v);
  /// Single-row matrix holding v.
  static Matrix row_vector(const Vector& v);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const SparseVec& column(Index j) const { return columns_.at(j); }
  const std::vector<SparseVec>& columns() const { return columns_; }

  Rational at(Index i, Index j) const { return columns_.at(j).at(i); }
  /// Overwrites one entry; O(column size).
  void set(Index i, Index j, const Rational& value);
  void set_column(Index j, SparseVec column);

  std::size_t nonzeros() const;
  bool is_zero() const;

  Matrix transpose() const;
  std::vector<SparseVec> row_vectors() const;

  SparseVec apply(const SparseVec& v) const;
  Vector apply(const Vector& v) const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Rational& factor) const;

  /// Restriction to a subset of columns, in the given order.
  Matrix select_columns(std::span<const Index> which) const;
  /// Restriction to a subset of rows, in the given order.
  Matrix select_rows(std::span<const Index> which) const;

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && columns_ == other.columns_;
  }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<SparseVec> columns_;
};

/// Row space in canonical reduced row-echelon form (leftmost pivot, pivot
/// entry 1, pivots strictly increasing, zero above and below each pivot).
std::vector<SparseVec> reduced_echelon(std::vector<SparseVec> rows);

/// Linear subspace of Q^ambient; equality is equality of canonical bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient) : ambient_(ambient) {}

  static Subspace span(Index ambient, std::vector<SparseVec> vectors);
  static Subspace span_dense(Index ambient, const std::vector<Vector>& vectors);
  /// Column space of m.
  static Subspace column_space(const Matrix& m);
  static Subspace full(Index ambient);

  Index ambient() const { return ambient_; }
  Index dim() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  std::vector<Index> pivots() const;

  bool contains(const SparseVec& v) const;
  bool contains(const Vector& v) const { return contains(SparseVec::from_dense(v)); }
  bool contains(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;

  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix basis_matrix() const;
  /// Coordinates of v (assumed in the subspace) in the canonical basis:
  /// the entries of v at the pivot positions.
  Vector coordinates(const SparseVec& v) const;

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  Index ambient_ = 0;
  std::vector<SparseVec> basis_;
};

Index rank(const Matrix& m);
Subspace kernel_basis(const Matrix& m);
Subspace image(const Matrix& m);

/// a (x) b with row-major tensor indices.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// (id_left (x) f (x) id_right) * g, without materializing the Kronecker
/// factor. g.rows() must equal left * f.cols() * right.
Matrix apply_on_factor(const Matrix& f, Index left, Index right, const Matrix& g);

/// Permutation of tensor factors: maps e_{i_1} (x) ... (x) e_{i_k} to the
/// tensor whose position p holds factor perm[p] of the input.
Matrix factor_permutation(std::span<const Index> dims, std::span<const Index> perm);

/// d^k with a cap check.
Index checked_power(Index d, unsigned k, const Limits& limits);

bool is_idempotent(const Matrix& m);
bool are_orthogonal(const Matrix& a, const Matrix& b);

/// Exact solution x of m x = v, or nullopt when none exists.
std::optional<Vector> solve(const Matrix& m, const Vector& v);

Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Rational& c);
bool is_zero(const Vector& v);
/// Tensor product of dense vectors in row-major order.
SparseVec tensor(const SparseVec& a, Index dim_b, const SparseVec& b);

}  // namespace coalg
