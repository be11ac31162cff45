#pragma once

// Co-algebra models of zero-cycles on hyper-Kaehler varieties: a K3 surface,
// Hilbert schemes of points on it, and the Fano variety of lines of a cubic
// fourfold.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/symmetric.hpp"

namespace coalg {

/// Basis {o} u {a_1..a_t}; a_i stands for [x_i] - o. delta(a) = a|o + o|a.
struct K3Model {
  int t = 0;
  TruncatedSymmetric sym;
  const Coalgebra& coalgebra() const { return sym.coalgebra(); }
  Vector unit() const { return sym.unit(); }
};

/// Sym^{<=n} of the t-dimensional primitive space, unit o = empty monomial.
struct HilbModel {
  int n = 0;
  int t = 0;
  TruncatedSymmetric sym;
  const Coalgebra& coalgebra() const { return sym.coalgebra(); }
  Vector unit() const { return sym.unit(); }
};

/// Non-o slots of a point [x_1, ..., x_k, o, ..., o]; labels name primitives.
struct PointSpec {
  std::vector<std::string> labels;
};

K3Model build_k3(int t, const Limits& limits = {});
HilbModel build_hilb(int n, int t, const Limits& limits = {});

/// Primitive labels a1..at.
std::vector<std::string> primitive_labels(int t);

/// sum_{j<=k} e_j(a_{x_1}, ..., a_{x_k}), i.e. prod_i (o + a_{x_i}) in the
/// monomial basis. Throws InvalidModel for unknown labels or k > n.
Vector hilb_point_class(const HilbModel& m, const PointSpec& spec);

int voisin_level(const PointSpec& spec);

/// All multisets of primitive labels of size exactly k.
std::vector<PointSpec> point_specs_of_level(const HilbModel& m, int k);

/// Step k = span of the point classes of level <= k, k = 0..n.
Filtration voisin_filtration(const HilbModel& m);

struct MuKResult {
  int k = 0;
  /// M_(1)^{(x)k} -> M, a_{i_1}|...|a_{i_k} |-> a_{i_1}...a_{i_k}
  Matrix mu;
  /// delta-bar^{k-1} restricted to M_(k), landing in M_(1)^{(x)k}.
  Matrix reduced;
  /// mu o delta-bar^{k-1} == k! id on M_(k)
  bool left_inverse_ok = false;
  /// delta-bar^{k-1} o mu == k! id on Sym^k M_(1) (checked as k! times the
  /// symmetrizer on M_(1)^{(x)k})
  bool right_inverse_ok = false;
};

MuKResult mu_k(const HilbModel& m, int k, const Limits& limits = {});

/// delta-bar^{k-1} of a level-k point class, as a tensor over M^{(x)k}, and
/// the permutation sum over the spec's primitives.
struct PointClassExpansion {
  SparseVec reduced;
  SparseVec permutation_sum;
  bool equal() const { return reduced == permutation_sum; }
};

PointClassExpansion hilb_point_expansion(const HilbModel& m, const PointSpec& spec, const Limits& limits = {});

// ------------------------------------------------------------------- Fano

using Triangle = std::array<int, 3>;

/// Zero-cycle model of the Fano variety of lines: o (grade 0), b_l for
/// every line (grade 1, [l] - o), t_T for every triangle (grade 2,
/// [l1]+[l2]+[l3]-3o) with delta-bar(t_T) = sum_i b_{l_i}|b_{l_i}.
struct FanoModel {
  int lines = 0;
  std::vector<Triangle> triangles;
  Coalgebra coalgebra;
  /// Action of the degree-16 self-map: 1, -2, 4 on grades 0, 1, 2.
  Matrix phi;
  Vector unit() const;
  Index line_index(int l) const { return 1 + static_cast<Index>(l); }
  Index triangle_index(std::size_t t) const { return 1 + static_cast<Index>(lines) + t; }
};

/// Throws InvalidModel for out-of-range or repeated lines in a triangle,
/// duplicate triangles, or two triangles sharing a pair of lines.
FanoModel build_fano(int lines, std::vector<Triangle> triangles);

struct FanoProjectors {
  std::array<Matrix, 3> projectors;
  std::array<Rational, 3> eigenvalues{Rational(1), Rational(-2), Rational(4)};
  bool idempotent = false;
  bool orthogonal = false;
  bool sum_is_identity = false;
  bool images_are_grades = false;
  /// delta o phi == (phi (x) phi) o delta
  bool comult_compatible = false;
  /// delta maps the (-2)^k eigenspace into the (-2)^k eigenspace of phi (x) phi.
  bool eigenspaces_respected = false;
  bool ok() const {
    return idempotent && orthogonal && sum_is_identity && images_are_grades && comult_compatible &&
           eigenspaces_respected;
  }
};

/// Lagrange polynomials in phi at the eigenvalues 1, -2, 4.
FanoProjectors fano_eigenprojectors(const FanoModel& m);

/// Replay of the computation of mu o delta-bar on a triangle class through
/// the declared intersection table of the surfaces S_o, S_l.
struct FanoMuDeltaReport {
  std::size_t triangle = 0;
  /// L_* l = S_o - S_l for the three lines, rendered.
  std::vector<std::string> first_step;
  /// 6 S_o^2 - 2 sum_{i<j} S_{l_i} S_{l_j}, rendered.
  std::string reduced_expression;
  /// The value contributed by 6 S_o^2 (must be 30[o]).
  std::map<std::string, Rational> so_squared_contribution;
  /// Final zero-cycle as point-symbol coefficients ("o", "l0", ...).
  std::map<std::string, Rational> result;
  /// result = factor * ([l1]+[l2]+[l3]-3[o]); nullopt if not proportional.
  std::optional<Rational> factor;
  bool ok() const { return factor && *factor == 2; }
};

/// Throws InvalidModel (missing table entry) if the derivation needs a
/// product that the table does not declare.
FanoMuDeltaReport fano_mu_delta_check(const FanoModel& m, std::size_t triangle);

}  // namespace coalg
