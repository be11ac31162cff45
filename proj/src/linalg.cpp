#include "coalg/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace coalg {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  SparseVec v;
  v.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!v.terms_.empty() && v.terms_.back().first == t.first) {
      v.terms_.back().second += t.second;
    } else {
      if (!v.terms_.empty() && v.terms_.back().second == 0) v.terms_.pop_back();
      v.terms_.push_back(std::move(t));
    }
  }
  if (!v.terms_.empty() && v.terms_.back().second == 0) v.terms_.pop_back();
  return v;
}

SparseVec SparseVec::from_dense(const Vector& dense) {
  SparseVec v;
  for (Index i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) v.terms_.emplace_back(i, dense[i]);
  }
  return v;
}

Rational SparseVec::at(Index i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const Term& t, Index k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) return it->second;
  return Rational(0);
}

Vector SparseVec::to_dense(Index dim) const {
  Vector out(dim);
  for (const auto& [i, v] : terms_) {
    if (i >= dim) throw DimensionMismatch("sparse vector index outside dimension");
    out[i] = v;
  }
  return out;
}

void SparseVec::add_scaled(const SparseVec& other, const Rational& factor) {
  if (factor == 0 || other.empty()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational s = a->second + factor * b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

void SparseVec::scale(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return;
  }
  for (auto& t : terms_) t.second *= factor;
}

// ------------------------------------------------------------------- Matrix

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m.columns_[i] = SparseVec::unit(i);
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  Index r = rows.size();
  Index c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c);
  for (Index j = 0; j < c; ++j) {
    std::vector<SparseVec::Term> terms;
    for (Index i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged dense matrix");
      if (rows[i][j] != 0) terms.emplace_back(i, rows[i][j]);
    }
    m.columns_[j] = SparseVec::from_terms(std::move(terms));
  }
  return m;
}

Matrix Matrix::from_columns(Index rows, std::vector<SparseVec> columns) {
  Matrix m(rows, columns.size());
  for (const auto& c : columns) {
    if (!c.empty() && c.terms().back().first >= rows) {
      throw DimensionMismatch("column entry outside row range");
    }
  }
  m.columns_ = std::move(columns);
  return m;
}

Matrix Matrix::column_vector(const Vector& v) {
  Matrix m(v.size(), 1);
  m.columns_[0] = SparseVec::from_dense(v);
  return m;
}

Matrix Matrix::row_vector(const Vector& v) {
  Matrix m(1, v.size());
  for (Index j = 0; j < v.size(); ++j) {
    if (v[j] != 0) m.columns_[j] = SparseVec::from_terms({{0, v[j]}});
  }
  return m;
}

void Matrix::set(Index i, Index j, const Rational& value) {
  if (i >= rows_ || j >= cols_) throw DimensionMismatch("matrix entry out of range");
  auto terms = columns_[j].terms();
  std::erase_if(terms, [i](const SparseVec::Term& t) { return t.first == i; });
  terms.emplace_back(i, value);
  columns_[j] = SparseVec::from_terms(std::move(terms));
}

void Matrix::set_column(Index j, SparseVec column) {
  if (j >= cols_) throw DimensionMismatch("column out of range");
  if (!column.empty() && column.terms().back().first >= rows_) {
    throw DimensionMismatch("column entry outside row range");
  }
  columns_[j] = std::move(column);
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
}

Matrix Matrix::transpose() const {
  std::vector<std::vector<SparseVec::Term>> rows(rows_);
  for (Index j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : columns_[j].terms()) rows[i].emplace_back(j, v);
  }
  Matrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i) t.columns_[i] = SparseVec::from_terms(std::move(rows[i]));
  return t;
}

std::vector<SparseVec> Matrix::row_vectors() const { return transpose().columns_; }

SparseVec Matrix::apply(const SparseVec& v) const {
  std::vector<SparseVec::Term> acc;
  for (const auto& [j, x] : v.terms()) {
    if (j >= cols_) throw DimensionMismatch("vector longer than matrix width");
    for (const auto& [i, a] : columns_[j].terms()) acc.emplace_back(i, a * x);
  }
  return SparseVec::from_terms(std::move(acc));
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  return apply(SparseVec::from_dense(v)).to_dense(rows_);
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product size mismatch");
  Matrix out(rows_, rhs.cols_);
  for (Index j = 0; j < rhs.cols_; ++j) out.columns_[j] = apply(rhs.columns_[j]);
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum size mismatch");
  Matrix out = *this;
  for (Index j = 0; j < cols_; ++j) out.columns_[j].add_scaled(rhs.columns_[j], Rational(1));
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference size mismatch");
  Matrix out = *this;
  for (Index j = 0; j < cols_; ++j) out.columns_[j].add_scaled(rhs.columns_[j], Rational(-1));
  return out;
}

Matrix Matrix::scaled(const Rational& factor) const {
  Matrix out = *this;
  for (auto& c : out.columns_) c.scale(factor);
  return out;
}

Matrix Matrix::select_columns(std::span<const Index> which) const {
  Matrix out(rows_, which.size());
  for (Index k = 0; k < which.size(); ++k) out.columns_[k] = columns_.at(which[k]);
  return out;
}

Matrix Matrix::select_rows(std::span<const Index> which) const {
  std::map<Index, Index> position;
  for (Index k = 0; k < which.size(); ++k) {
    if (which[k] >= rows_) throw DimensionMismatch("row selection out of range");
    position.emplace(which[k], k);
  }
  Matrix out(which.size(), cols_);
  for (Index j = 0; j < cols_; ++j) {
    std::vector<SparseVec::Term> terms;
    for (const auto& [i, v] : columns_[j].terms()) {
      auto it = position.find(i);
      if (it != position.end()) terms.emplace_back(it->second, v);
    }
    out.columns_[j] = SparseVec::from_terms(std::move(terms));
  }
  return out;
}

// ----------------------------------------------------------------- echelon

std::vector<SparseVec> reduced_echelon(std::vector<SparseVec> rows) {
  std::vector<SparseVec> basis;
  std::map<Index, Index> pivot_row;  // pivot column -> position in basis
  for (auto& row : rows) {
    if (row.empty()) continue;
    // Existing basis rows are fully reduced, so clearing each pivot column
    // once cannot reintroduce another pivot column.
    std::vector<std::pair<Index, Rational>> hits;
    for (const auto& [i, v] : row.terms()) {
      auto it = pivot_row.find(i);
      if (it != pivot_row.end()) hits.emplace_back(it->second, v);
    }
    for (const auto& [b, v] : hits) row.add_scaled(basis[b], -v);
    if (row.empty()) continue;
    row.scale(1 / Rational(row.leading_value()));
    Index pivot = row.leading_index();
    for (auto& other : basis) {
      Rational c = other.at(pivot);
      if (c != 0) other.add_scaled(row, -c);
    }
    pivot_row.emplace(pivot, basis.size());
    basis.push_back(std::move(row));
  }
  std::sort(basis.begin(), basis.end(),
            [](const SparseVec& a, const SparseVec& b) { return a.leading_index() < b.leading_index(); });
  return basis;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(Index ambient, std::vector<SparseVec> vectors) {
  for (const auto& v : vectors) {
    if (!v.empty() && v.terms().back().first >= ambient) {
      throw DimensionMismatch("spanning vector outside ambient space");
    }
  }
  Subspace s(ambient);
  s.basis_ = reduced_echelon(std::move(vectors));
  return s;
}

Subspace Subspace::span_dense(Index ambient, const std::vector<Vector>& vectors) {
  std::vector<SparseVec> sparse;
  sparse.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw DimensionMismatch("spanning vector of wrong length");
    sparse.push_back(SparseVec::from_dense(v));
  }
  return span(ambient, std::move(sparse));
}

Subspace Subspace::column_space(const Matrix& m) { return span(m.rows(), m.columns()); }

Subspace Subspace::full(Index ambient) {
  Subspace s(ambient);
  for (Index i = 0; i < ambient; ++i) s.basis_.push_back(SparseVec::unit(i));
  return s;
}

std::vector<Index> Subspace::pivots() const {
  std::vector<Index> p;
  p.reserve(basis_.size());
  for (const auto& b : basis_) p.push_back(b.leading_index());
  return p;
}

bool Subspace::contains(const SparseVec& v) const {
  SparseVec r = v;
  for (const auto& b : basis_) {
    Rational c = r.at(b.leading_index());
    if (c != 0) r.add_scaled(b, -c);
  }
  return r.empty();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const SparseVec& v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  std::vector<SparseVec> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, std::move(all));
}

Matrix Subspace::basis_matrix() const { return Matrix::from_columns(ambient_, basis_); }

Vector Subspace::coordinates(const SparseVec& v) const {
  Vector c;
  c.reserve(basis_.size());
  for (const auto& b : basis_) c.push_back(v.at(b.leading_index()));
  return c;
}

// --------------------------------------------------------------- kernels

Index rank(const Matrix& m) { return reduced_echelon(m.columns()).size(); }

Subspace kernel_basis(const Matrix& m) {
  auto rref = reduced_echelon(m.row_vectors());
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& r : rref) is_pivot[r.leading_index()] = true;
  std::vector<SparseVec> kernel;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<SparseVec::Term> terms{{f, Rational(1)}};
    for (const auto& r : rref) {
      Rational c = r.at(f);
      if (c != 0) terms.emplace_back(r.leading_index(), -c);
    }
    kernel.push_back(SparseVec::from_terms(std::move(terms)));
  }
  return Subspace::span(m.cols(), std::move(kernel));
}

Subspace image(const Matrix& m) { return Subspace::column_space(m); }

// ------------------------------------------------------------- tensors

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.cols(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      out.set_column(i * b.cols() + j, tensor(a.column(i), b.rows(), b.column(j)));
    }
  }
  return out;
}

SparseVec tensor(const SparseVec& a, Index dim_b, const SparseVec& b) {
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) terms.emplace_back(i * dim_b + j, x * y);
  }
  // Row-major products of sorted inputs are already sorted.
  return SparseVec::from_terms(std::move(terms));
}

Matrix apply_on_factor(const Matrix& f, Index left, Index right, const Matrix& g) {
  if (g.rows() != left * f.cols() * right) throw DimensionMismatch("apply_on_factor: shape mismatch");
  Matrix out(left * f.rows() * right, g.cols());
  for (Index c = 0; c < g.cols(); ++c) {
    std::vector<SparseVec::Term> terms;
    for (const auto& [t, v] : g.column(c).terms()) {
      Index r = t % right;
      Index rest = t / right;
      Index m = rest % f.cols();
      Index l = rest / f.cols();
      for (const auto& [fi, fv] : f.column(m).terms()) {
        terms.emplace_back((l * f.rows() + fi) * right + r, v * fv);
      }
    }
    out.set_column(c, SparseVec::from_terms(std::move(terms)));
  }
  return out;
}

Matrix factor_permutation(std::span<const Index> dims, std::span<const Index> perm) {
  const Index k = dims.size();
  if (perm.size() != k) throw DimensionMismatch("permutation length differs from factor count");
  Index total = 1;
  for (Index d : dims) total *= d;
  std::vector<Index> out_dims(k);
  for (Index p = 0; p < k; ++p) out_dims[p] = dims[perm[p]];
  Matrix out(total, total);
  std::vector<Index> digits(k);
  for (Index idx = 0; idx < total; ++idx) {
    Index rest = idx;
    for (Index p = k; p-- > 0;) {
      digits[p] = rest % dims[p];
      rest /= dims[p];
    }
    Index target = 0;
    for (Index p = 0; p < k; ++p) target = target * out_dims[p] + digits[perm[p]];
    out.set_column(idx, SparseVec::unit(target));
  }
  return out;
}

Index checked_power(Index d, unsigned k, const Limits& limits) {
  Index p = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (d != 0 && p > std::numeric_limits<Index>::max() / d) {
      throw TensorCapExceeded(std::numeric_limits<Index>::max(), limits.tensor_cap);
    }
    p *= d;
    require_within_cap(p, limits);
  }
  return p;
}

// ------------------------------------------------------------ predicates

bool is_idempotent(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("idempotency test needs a square matrix");
  return m * m == m;
}

bool are_orthogonal(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("orthogonality test needs square matrices of one size");
  }
  return (a * b).is_zero() && (b * a).is_zero();
}

std::optional<Vector> solve(const Matrix& m, const Vector& v) {
  if (v.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length mismatch");
  // Augmented rows [m | v]; the system is consistent iff no pivot lands on
  // the augmented column.
  auto rows = m.row_vectors();
  for (Index i = 0; i < rows.size(); ++i) {
    if (v[i] != 0) rows[i].add_scaled(SparseVec::unit(m.cols()), v[i]);
  }
  auto rref = reduced_echelon(std::move(rows));
  Vector x(m.cols());
  for (const auto& r : rref) {
    if (r.leading_index() == m.cols()) return std::nullopt;
    x[r.leading_index()] = r.at(m.cols());
  }
  return x;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum size mismatch");
  Vector out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference size mismatch");
  Vector out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(const Vector& a, const Rational& c) {
  Vector out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace coalg
