#include "coalg/symmetric.hpp"

#include <numeric>
#include <stdexcept>

namespace coalg {

namespace {

void exponents_rec(Index s, unsigned k, Exponents& cur, std::vector<Exponents>& out) {
  const Index pos = cur.size();
  if (pos + 1 == s) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = k + 1; e-- > 0;) {
    cur.push_back(e);
    exponents_rec(s, k - e, cur, out);
    cur.pop_back();
  }
}

unsigned degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

std::vector<Exponents> exponents_of_degree(Index s, unsigned k) {
  std::vector<Exponents> out;
  if (s == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  Exponents cur;
  exponents_rec(s, k, cur, out);
  return out;
}

std::string monomial_label(const std::vector<std::string>& variables, const Exponents& e,
                           const std::string& unit_label) {
  std::string out;
  for (Index i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += variables[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? unit_label : out;
}

TruncatedSymmetric::TruncatedSymmetric(std::vector<std::string> variable_labels, unsigned max_degree,
                                       std::string unit_label, const Limits& limits)
    : variable_labels_(std::move(variable_labels)), max_degree_(max_degree) {
  const Index s = variable_labels_.size();
  std::vector<std::string> labels;
  std::vector<int> grades;
  for (unsigned k = 0; k <= max_degree_; ++k) {
    for (auto& e : exponents_of_degree(s, k)) {
      index_.emplace(e, monomials_.size());
      labels.push_back(monomial_label(variable_labels_, e, unit_label));
      grades.push_back(static_cast<int>(k));
      monomials_.push_back(std::move(e));
    }
    require_within_cap(monomials_.size(), limits);
  }
  const Index d = monomials_.size();
  require_within_cap(d * d, limits);

  Matrix delta(d * d, d);
  for (Index j = 0; j < d; ++j) {
    const Exponents& a = monomials_[j];
    std::vector<SparseVec::Term> terms;
    Exponents b(s, 0);
    // Odometer over all b <= a.
    while (true) {
      Rational coeff(1);
      Exponents rest(s);
      for (Index i = 0; i < s; ++i) {
        coeff *= binomial(a[i], b[i]);
        rest[i] = a[i] - b[i];
      }
      terms.emplace_back(index_.at(b) * d + index_.at(rest), coeff);
      Index i = 0;
      while (i < s && b[i] == a[i]) b[i++] = 0;
      if (i == s) break;
      ++b[i];
    }
    delta.set_column(j, SparseVec::from_terms(std::move(terms)));
  }
  Matrix eps(1, d);
  eps.set_column(0, SparseVec::unit(0));
  Vector u(d);
  u[0] = 1;
  coalgebra_ = Coalgebra(GradedSpace(std::move(labels), std::move(grades)), std::move(delta), std::move(eps), u);
}

Index TruncatedSymmetric::index_of(const Exponents& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw std::out_of_range("monomial outside the truncated basis");
  return it->second;
}

Index TruncatedSymmetric::variable_index(Index i) const {
  Exponents e(variables(), 0);
  e.at(i) = 1;
  return index_of(e);
}

Vector TruncatedSymmetric::unit() const {
  Vector u(dim());
  u[0] = 1;
  return u;
}

Vector TruncatedSymmetric::variable(Index i) const {
  Vector v(dim());
  v[variable_index(i)] = 1;
  return v;
}

Vector TruncatedSymmetric::multiply(const Vector& a, const Vector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw DimensionMismatch("product operands have wrong length");
  Vector out(dim());
  for (Index i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (Index j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      Exponents e = monomials_[i];
      for (Index v = 0; v < e.size(); ++v) e[v] += monomials_[j][v];
      if (degree(e) > max_degree_) continue;
      out[index_.at(e)] += a[i] * b[j];
    }
  }
  return out;
}

Vector TruncatedSymmetric::power(const Vector& a, unsigned k) const {
  Vector out = unit();
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

Matrix TruncatedSymmetric::multiplication_by(const Vector& a) const {
  Matrix m(dim(), dim());
  for (Index j = 0; j < dim(); ++j) {
    Vector e(dim());
    e[j] = 1;
    m.set_column(j, SparseVec::from_dense(multiply(a, e)));
  }
  return m;
}

Matrix TruncatedSymmetric::substitution(const Matrix& linear) const {
  const Index s = variables();
  if (linear.rows() != s || linear.cols() != s) throw DimensionMismatch("substitution must be s x s");
  std::vector<Vector> images;
  for (Index i = 0; i < s; ++i) {
    Vector img(dim());
    for (const auto& [j, v] : linear.column(i).terms()) img[variable_index(j)] = v;
    images.push_back(std::move(img));
  }
  Matrix m(dim(), dim());
  for (Index col = 0; col < dim(); ++col) {
    Vector acc = unit();
    for (Index i = 0; i < s; ++i) {
      for (unsigned p = 0; p < monomials_[col][i]; ++p) acc = multiply(acc, images[i]);
    }
    m.set_column(col, SparseVec::from_dense(acc));
  }
  return m;
}

}  // namespace coalg
