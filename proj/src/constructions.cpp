#include <algorithm>
#include <numeric>

#include "coalg/coalgebra.hpp"
#include "coalg/symmetric.hpp"

namespace coalg {

namespace {

/// Offsets of the length-j word blocks in T^{<=n} N.
std::vector<Index> word_offsets(Index e, unsigned n, const Limits& limits) {
  std::vector<Index> offsets{0};
  for (unsigned j = 0; j <= n; ++j) offsets.push_back(offsets.back() + checked_power(e, j, limits));
  return offsets;
}

std::vector<Index> digits_of(Index idx, Index base, unsigned len) {
  std::vector<Index> digits(len);
  for (unsigned p = len; p-- > 0;) {
    digits[p] = idx % base;
    idx /= base;
  }
  return digits;
}

Index number_of(const std::vector<Index>& digits, std::size_t from, std::size_t to, Index base) {
  Index v = 0;
  for (std::size_t p = from; p < to; ++p) v = v * base + digits[p];
  return v;
}

}  // namespace

Coalgebra truncated_tensor_coalg(const GradedSpace& n_space, unsigned n, const Limits& limits) {
  const Index e = n_space.dim();
  auto offsets = word_offsets(e, n, limits);
  const Index d = offsets.back();
  require_within_cap(d * d, limits);
  std::vector<std::string> labels;
  std::vector<int> grades;
  Matrix delta(d * d, d);
  for (unsigned len = 0; len <= n; ++len) {
    const Index block = offsets[len + 1] - offsets[len];
    for (Index w = 0; w < block; ++w) {
      auto digits = digits_of(w, e, len);
      std::string label;
      for (unsigned p = 0; p < len; ++p) {
        if (p) label += '|';
        label += n_space.label(digits[p]);
      }
      labels.push_back(len == 0 ? "1" : label);
      grades.push_back(static_cast<int>(len));
      std::vector<SparseVec::Term> terms;
      for (unsigned cut = 0; cut <= len; ++cut) {
        Index left = offsets[cut] + number_of(digits, 0, cut, e);
        Index right = offsets[len - cut] + number_of(digits, cut, len, e);
        terms.emplace_back(left * d + right, Rational(1));
      }
      delta.set_column(offsets[len] + w, SparseVec::from_terms(std::move(terms)));
    }
  }
  Matrix eps(1, d);
  eps.set_column(0, SparseVec::unit(0));
  Vector u(d);
  u[0] = 1;
  return Coalgebra(GradedSpace(std::move(labels), std::move(grades)), std::move(delta), std::move(eps), u);
}

Coalgebra truncated_sym_coalg(const GradedSpace& n_space, unsigned n, const Limits& limits) {
  return TruncatedSymmetric(n_space.labels(), n, "1", limits).coalgebra();
}

Matrix symmetrizer(Index dim, unsigned k) {
  const std::vector<Index> dims(k, dim);
  std::vector<Index> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Index total = 1;
  for (unsigned i = 0; i < k; ++i) total *= dim;
  Matrix sum(total, total);
  do {
    sum = sum + factor_permutation(dims, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum.scaled(1 / factorial(k));
}

Matrix symmetrizer_embedding(const GradedSpace& n_space, unsigned n, const Limits& limits) {
  const Index e = n_space.dim();
  TruncatedSymmetric sym(n_space.labels(), n, "1", limits);
  auto offsets = word_offsets(e, n, limits);
  Matrix out(offsets.back(), sym.dim());
  for (Index col = 0; col < sym.dim(); ++col) {
    const Exponents& a = sym.exponents(col);
    std::vector<Index> letters;
    for (Index i = 0; i < a.size(); ++i) letters.insert(letters.end(), a[i], i);
    const unsigned len = static_cast<unsigned>(letters.size());
    // Sum over all len! orderings: each distinct word appears a! times.
    Rational weight(1);
    for (unsigned ai : a) weight *= factorial(ai);
    std::vector<SparseVec::Term> terms;
    std::sort(letters.begin(), letters.end());
    do {
      terms.emplace_back(offsets[len] + number_of(letters, 0, len, e), weight);
    } while (std::next_permutation(letters.begin(), letters.end()));
    out.set_column(col, SparseVec::from_terms(std::move(terms)));
  }
  return out;
}

SymmetrizerCheck check_symmetrizer_embedding(const GradedSpace& n_space, unsigned n, const Limits& limits) {
  SymmetrizerCheck check;
  const Index e = n_space.dim();
  Coalgebra sym = truncated_sym_coalg(n_space, n, limits);
  Coalgebra tens = truncated_tensor_coalg(n_space, n, limits);
  Matrix iota = symmetrizer_embedding(n_space, n, limits);
  check.coalgebra_morphism = is_coalgebra_morphism(iota, sym, tens);
  check.injective = rank(iota) == sym.dim();
  // Block-diagonal symmetrizer idempotent on T^{<=n} N.
  auto offsets = word_offsets(e, n, limits);
  std::vector<SparseVec> cols(offsets.back());
  for (unsigned len = 0; len <= n; ++len) {
    Matrix p = symmetrizer(e, len);
    for (Index j = 0; j < p.cols(); ++j) {
      std::vector<SparseVec::Term> terms;
      for (const auto& [i, v] : p.column(j).terms()) terms.emplace_back(offsets[len] + i, v);
      cols[offsets[len] + j] = SparseVec::from_terms(std::move(terms));
    }
  }
  Matrix idempotent = Matrix::from_columns(offsets.back(), std::move(cols));
  check.image_is_symmetric = is_idempotent(idempotent) && image(idempotent) == image(iota);
  return check;
}

}  // namespace coalg
