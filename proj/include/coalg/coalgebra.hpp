#pragma once

// Co-algebra objects in finite-dimensional rational vector spaces.
//
// A Coalgebra stores its co-multiplication as a dim^2 x dim matrix (columns
// indexed by the basis of M, rows by the row-major basis of M (x) M) and its
// co-unit as a 1 x dim matrix. All checks are exact matrix identities.

#include <optional>
#include <string>
#include <vector>

#include "coalg/graded_space.hpp"
#include "coalg/linalg.hpp"

namespace coalg {

struct Coalgebra {
  GradedSpace space;
  Matrix comult;
  Matrix counit;
  /// Distinguished unit, when the model has one.
  std::optional<Vector> unit;

  Coalgebra() = default;
  /// Throws DimensionMismatch when the matrices do not fit the space.
  Coalgebra(GradedSpace space, Matrix comult, Matrix counit, std::optional<Vector> unit = std::nullopt);

  Index dim() const { return space.dim(); }
  /// The stored unit; throws NotAUnit when absent.
  const Vector& require_unit() const;
  Rational counit_of(const Vector& v) const;
  Vector basis_vector(Index i) const;
};

// ------------------------------------------------------------------ axioms

struct AxiomReport {
  bool counit_ok = false;
  bool coassoc_ok = false;
  bool cocomm_ok = false;
  /// Basis index whose column breaks the first failing axiom.
  std::optional<Index> witness;
  bool all() const { return counit_ok && coassoc_ok && cocomm_ok; }
};

/// Co-unit, co-associativity and (unsigned swap) co-commutativity.
AxiomReport check_axioms(const Coalgebra& c, const Limits& limits = {});

/// delta(u) = u (x) u and eps(u) = 1.
bool is_unit(const Coalgebra& c, const Vector& u);

/// Swap of the two factors of V (x) V.
Matrix swap_matrix(Index dim);

/// Matrix of m |-> u (x) m (left = true) or m |-> m (x) u.
Matrix unit_insertion(const Vector& u, bool left);

/// p-bar = id - u.eps
Matrix counit_complement(const Coalgebra& c, const Vector& u);

/// delta-bar = (delta - u(x)id - id(x)u) o p-bar. Throws NotAUnit.
Matrix reduced_comult(const Coalgebra& c, const Vector& u);

/// delta^k : M -> M^{(x)(k+1)} expanded leftmost; delta^0 = id.
Matrix iterated_comult(const Coalgebra& c, unsigned k, const Limits& limits = {});

/// delta-bar^k expanded leftmost; delta-bar^0 = p-bar.
Matrix iterated_reduced_comult(const Coalgebra& c, const Vector& u, unsigned k, const Limits& limits = {});

/// delta-bar^0 .. delta-bar^kmax, sharing the intermediate products.
std::vector<Matrix> reduced_comult_powers(const Coalgebra& c, const Vector& u, unsigned kmax,
                                          const Limits& limits = {});

/// p-bar^{(x)(k+1)} o delta^k; equals delta-bar^k on co-associative inputs.
Matrix projected_iterated_comult(const Coalgebra& c, const Vector& u, unsigned k, const Limits& limits = {});

// ------------------------------------------------------------- filtrations

struct Filtration {
  std::vector<Subspace> steps;
  /// Smallest k with step k equal to the whole space, if reached.
  std::optional<int> exhaustive_at;
};

/// R_k = ker delta-bar^k for k = 0..kmax.
Filtration coradical_filtration(const Coalgebra& c, const Vector& u, unsigned kmax, const Limits& limits = {});

/// G_k = span of basis vectors of grade <= k, for k = 0..top grade.
Filtration grading_filtration(const Coalgebra& c);

struct GradingViolation {
  std::string condition;
  std::string detail;
  Vector witness;
};

struct GradingReport {
  bool comult_graded = true;
  bool counit_graded = true;
  bool degree_zero_iso = true;
  bool unit_is_graded_unit = true;
  std::vector<GradingViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that delta is graded, eps vanishes in positive grades and is an
/// isomorphism on M_(0), and u = eps_0^{-1}(1).
GradingReport check_unital_grading(const Coalgebra& c, const Vector& u);

struct StrictReport {
  bool strict = true;
  /// (grade k, delta-bar^{k-1} injective on M_(k)) for every k >= 2 present.
  std::vector<std::pair<int, bool>> per_grade;
  /// Injectivity of delta-bar on the sum of the grades >= 2.
  bool single_condition = true;
  std::optional<int> witness_grade;
  Vector witness;
};

/// Requires a valid unital grading (throws InvalidModel otherwise). The two
/// characterizations are both computed; a disagreement throws logic_error.
StrictReport check_strict(const Coalgebra& c, const Vector& u, const Limits& limits = {});

struct FiltrationStep {
  int k = 0;
  Index grading_dim = 0;
  Index coradical_dim = 0;
  bool contained = false;
  bool equal = false;
  /// An element of R_k outside G_k when the inclusion is proper.
  Vector witness;
};

struct CoradicalGradingReport {
  std::vector<FiltrationStep> steps;
  bool strict = false;
  bool all_contained = true;
  bool all_equal = true;
  /// Inclusion everywhere, with equality at every k exactly when strict.
  bool consistent() const { return all_contained && (all_equal == strict); }
};

CoradicalGradingReport coradical_equals_grading(const Coalgebra& c, const Vector& u, const Limits& limits = {});

/// {m : delta m = m (x) u + u (x) m}
Subspace primitives(const Coalgebra& c, const Vector& u);

// ------------------------------------------------------- constructions

/// Words of length <= n over N's basis, deconcatenation co-product, graded
/// by length, unit = empty word.
Coalgebra truncated_tensor_coalg(const GradedSpace& n_space, unsigned n, const Limits& limits = {});

/// Monomials of degree <= n in N's basis, binomial co-product, graded by
/// degree, unit = empty monomial.
Coalgebra truncated_sym_coalg(const GradedSpace& n_space, unsigned n, const Limits& limits = {});

/// (1/k!) sum over permutations of the k factors of V^{(x) k}.
Matrix symmetrizer(Index dim, unsigned k);

/// Co-algebra embedding Sym^{<=n} N -> T^{<=n} N, x^a |-> sum over all
/// orderings of the multiset a.
Matrix symmetrizer_embedding(const GradedSpace& n_space, unsigned n, const Limits& limits = {});

struct SymmetrizerCheck {
  bool coalgebra_morphism = false;
  bool injective = false;
  bool image_is_symmetric = false;
  bool ok() const { return coalgebra_morphism && injective && image_is_symmetric; }
};

/// Verifies the embedding against the block symmetrizer idempotents.
SymmetrizerCheck check_symmetrizer_embedding(const GradedSpace& n_space, unsigned n, const Limits& limits = {});

/// Delta_T o f == (f (x) f) o Delta_S and eps_T o f == eps_S.
bool is_coalgebra_morphism(const Matrix& f, const Coalgebra& source, const Coalgebra& target);

struct CogenerationResult {
  /// M -> T^{<=n} N
  Matrix map;
  Coalgebra target;
  Index rank = 0;
  bool injective = false;
  bool coalgebra_morphism = false;
  /// Image equals the symmetric tensors of T^{<=n} N.
  bool image_is_symmetric = false;
};

/// T^{<=n} r = eps + r + r^{(x)2} o delta + ... + r^{(x)n} o delta^{n-1}.
/// n_space labels the codomain of r; defaults to "n0", "n1", ... .
CogenerationResult cogeneration_map(const Coalgebra& c, const Vector& u, const Matrix& r, unsigned n,
                                    std::optional<GradedSpace> n_space = std::nullopt,
                                    const Limits& limits = {});

/// Projection of M onto M_(1) as a dim(M_(1)) x dim(M) matrix, with the
/// labels of M_(1).
std::pair<Matrix, GradedSpace> grade_one_projection(const Coalgebra& c);

/// M (x) N with delta = (id (x) swap (x) id)(delta_M (x) delta_N), total grading.
Coalgebra tensor_coalgebra(const Coalgebra& a, const Coalgebra& b, const Limits& limits = {});

struct InvariantCoalgebra {
  Coalgebra coalgebra;
  /// Columns: the canonical basis of the invariant subspace inside M.
  Matrix inclusion;
  /// (1/|G|) sum_g g
  Matrix averaging;
  Index group_order = 0;
};

/// Invariants of a finite group of co-algebra automorphisms, with the
/// induced co-multiplication (e (x) e) o delta restricted to the invariants.
/// Throws NotACoalgebraMorphism or GroupOrderExceeded.
InvariantCoalgebra invariant_subcoalgebra(const Coalgebra& c, const std::vector<Matrix>& action,
                                          const Limits& limits = {});

/// All elements of the group generated by the given invertible matrices.
std::vector<Matrix> generate_group(const std::vector<Matrix>& generators, Index dim, const Limits& limits = {});

}  // namespace coalg
