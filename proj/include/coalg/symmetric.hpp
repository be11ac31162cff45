#pragma once

#include <map>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"

namespace coalg {

using Exponents = std::vector<unsigned>;

/// Sym^{<=n} of a space with basis x_1..x_s, on the monomial basis.
///
/// Monomials are ordered by degree, then by exponent vector in decreasing
/// lexicographic order (x_1^2 before x_1 x_2 before x_2^2). The co-product is
/// Delta(x^a) = sum_{b <= a} C(a, b) x^b (x) x^{a-b}; the truncated product
/// x^a * x^b = x^{a+b} (zero when the degree exceeds n) makes this the
/// truncated symmetric (Pontryagin) algebra as well.
class TruncatedSymmetric {
 public:
  TruncatedSymmetric(std::vector<std::string> variable_labels, unsigned max_degree, std::string unit_label = "1",
                     const Limits& limits = {});

  const Coalgebra& coalgebra() const { return coalgebra_; }
  unsigned max_degree() const { return max_degree_; }
  Index variables() const { return variable_labels_.size(); }
  const std::vector<std::string>& variable_labels() const { return variable_labels_; }
  Index dim() const { return monomials_.size(); }

  const std::vector<Exponents>& monomials() const { return monomials_; }
  const Exponents& exponents(Index i) const { return monomials_.at(i); }
  /// Throws std::out_of_range for unknown or over-degree exponents.
  Index index_of(const Exponents& e) const;
  /// Basis index of the degree-one monomial x_i.
  Index variable_index(Index i) const;

  Vector unit() const;
  Vector variable(Index i) const;

  /// Truncated product.
  Vector multiply(const Vector& a, const Vector& b) const;
  Vector power(const Vector& a, unsigned k) const;
  /// Matrix of v |-> a * v.
  Matrix multiplication_by(const Vector& a) const;

  /// Algebra endomorphism induced by the linear substitution
  /// x_i |-> sum_j L(j, i) x_j. It preserves degree, so it is also a
  /// co-algebra endomorphism.
  Matrix substitution(const Matrix& linear) const;

 private:
  std::vector<std::string> variable_labels_;
  unsigned max_degree_;
  std::vector<Exponents> monomials_;
  std::map<Exponents, Index> index_;
  Coalgebra coalgebra_;
};

/// All exponent vectors of s variables with total degree exactly k, in the
/// order used by TruncatedSymmetric.
std::vector<Exponents> exponents_of_degree(Index s, unsigned k);

/// "x1^2*x2"; the unit label for the empty monomial.
std::string monomial_label(const std::vector<std::string>& variables, const Exponents& e,
                           const std::string& unit_label);

}  // namespace coalg
