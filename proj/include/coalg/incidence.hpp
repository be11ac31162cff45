#pragma once

// Finite correspondences: point sets with declared rational-equivalence
// relations, and covers X <- Gamma -> Y with multiplicities.

#include <optional>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"

namespace coalg {

/// Finite point set with CH_0 = span(points) / relations. The quotient basis
/// is the set of points that are not pivots of the relation echelon form.
class FiniteVariety {
 public:
  FiniteVariety() = default;
  /// Relations are vectors over the points; each must have coefficient sum
  /// zero. Throws InvalidModel otherwise or for repeated labels.
  FiniteVariety(std::vector<std::string> points, const std::vector<Vector>& relations = {});

  Index size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(Index i) const { return points_.at(i); }
  std::optional<Index> index_of(const std::string& label) const;
  const Subspace& relations() const { return relations_; }

  Index chow_dim() const { return representatives_.size(); }
  /// Points whose classes form the quotient basis.
  const std::vector<Index>& representatives() const { return representatives_; }
  std::vector<std::string> chow_labels() const;
  /// chow_dim x size: class of each point in the quotient basis.
  const Matrix& quotient() const { return quotient_; }
  /// size x chow_dim: representative point of each quotient basis vector.
  const Matrix& lift() const { return lift_; }
  /// Quotient coordinates of a point-level vector.
  Vector chow_class(const Vector& v) const;

  FiniteVariety with_relations(const std::vector<SparseVec>& extra) const;

  /// Points "a|b"; relations rel (x) full + full (x) rel.
  static FiniteVariety product(const FiniteVariety& a, const FiniteVariety& b, const Limits& limits = {});

 private:
  void build(std::vector<SparseVec> relations);

  std::vector<std::string> points_;
  Subspace relations_;
  std::vector<Index> representatives_;
  Matrix quotient_;
  Matrix lift_;
};

/// A map from the points of Gamma, with a positive multiplicity per point.
struct CoverMap {
  std::vector<Index> target;
  std::vector<Rational> multiplicity;
};

enum class Side { Phi, Psi };

/// X <-phi- Gamma -psi-> Y. Every fiber of phi has multiplicity sum deg_phi,
/// likewise for psi. Gamma's relations are closed under phi^* rel_X and
/// psi^* rel_Y so that both pullbacks descend to CH_0.
class Cover {
 public:
  Cover(FiniteVariety gamma, FiniteVariety x, FiniteVariety y, CoverMap phi, CoverMap psi);

  const FiniteVariety& gamma() const { return gamma_; }
  const FiniteVariety& x() const { return x_; }
  const FiniteVariety& y() const { return y_; }
  const CoverMap& phi() const { return phi_; }
  const CoverMap& psi() const { return psi_; }
  const CoverMap& map(Side s) const { return s == Side::Phi ? phi_ : psi_; }
  const FiniteVariety& target(Side s) const { return s == Side::Phi ? x_ : y_; }
  const Rational& degree(Side s) const { return s == Side::Phi ? deg_phi_ : deg_psi_; }

 private:
  FiniteVariety gamma_, x_, y_;
  CoverMap phi_, psi_;
  Rational deg_phi_, deg_psi_;
};

/// Identity cover of a variety onto itself on both sides.
Cover identity_cover(const FiniteVariety& v);

/// Point level: gamma |-> f(gamma). target.size() x gamma.size().
Matrix point_pushforward(const Cover& c, Side s);
/// Point level: x |-> sum over the fiber of mult * gamma.
Matrix point_pullback(const Cover& c, Side s);

/// CH_0(Gamma) -> CH_0(target). Throws RelationNotPreserved when a relation
/// of Gamma does not map into the relations of the target.
Matrix pushforward(const Cover& c, Side s);
/// CH_0(target) -> CH_0(Gamma).
Matrix pullback(const Cover& c, Side s);

/// f_* f^* == deg(f) id on CH_0(target).
bool projection_formula(const Cover& c, Side s);

struct FiberWitness {
  std::string fiber_over;
  std::string first;
  std::string second;
};

struct ConditionReport {
  /// Points on a common psi-fiber have equal phi_* classes.
  bool condition_i = false;
  /// phi_* psi^* psi_* == deg(psi) phi_* on CH_0(Gamma).
  bool condition_ii = false;
  std::optional<FiberWitness> witness;
  bool agree() const { return condition_i == condition_ii; }
};

ConditionReport check_conditions(const Cover& c);
bool check_condition_i(const Cover& c);
bool check_condition_ii(const Cover& c);

struct GammaMaps {
  /// (1/deg phi) psi_* phi^* : CH_0(X) -> CH_0(Y)
  Matrix gamma;
  /// (1/deg psi) phi_* psi^* : CH_0(Y) -> CH_0(X)
  Matrix gamma_prime;
  bool left_inverse = false;
  bool split_injective = false;
  bool split_surjective = false;
  /// gamma gamma' == id as well (gamma is then an isomorphism).
  bool two_sided = false;
};

/// Throws InvalidModel when condition (i) fails.
GammaMaps gamma_maps(const Cover& c);

/// (gamma' (x) gamma') o delta_Y o gamma == delta_X on CH_0(X) -> CH_0(X x X),
/// with the diagonals as pushforwards along x |-> (x, x).
bool comult_square(const Cover& c, const Limits& limits = {});

struct ComposedCover {
  std::optional<Cover> cover;
  bool empty = false;
};

/// Gamma x_Y Gamma' over (X, Z), multiplicities multiplied. c1's Y and c2's
/// X must have the same points.
ComposedCover fiber_compose(const Cover& c1, const Cover& c2);

/// CH_0(V) with delta[p] = [p] (x) o + o (x) [p] - o (x) o for a degree-one
/// class o; basis o, then degree-zero classes [p] - o.
struct K3PatternModel {
  Coalgebra coalgebra;
  /// chow_dim x chow_dim: model coordinates -> quotient coordinates.
  Matrix basis;
  /// Inverse of basis.
  Matrix inverse;
};

K3PatternModel k3_pattern_coalgebra(const FiniteVariety& v, const Vector& base_class);
K3PatternModel k3_pattern_coalgebra(const FiniteVariety& v, const std::string& base_point);

struct TransportResult {
  /// Target in the basis f(e_i), graded by the source grades.
  Coalgebra transported;
  GradingReport grading;
  /// f(R_k(source)) == R_k(target) for every k up to the top grade.
  bool coradical_corresponds = false;
  bool ok() const { return grading.ok() && coradical_corresponds; }
};

/// Throws NotACoalgebraMorphism when f is not a co-algebra morphism or
/// f_inv is not its inverse.
TransportResult transport_grading(const Coalgebra& source, const Coalgebra& target, const Matrix& f,
                                  const Matrix& f_inv, const Limits& limits = {});

}  // namespace coalg
