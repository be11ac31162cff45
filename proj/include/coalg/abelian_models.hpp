#pragma once

// Zero-cycles on abelian varieties.
//
// Two models. The lazy group algebra Q[Z^r] with Delta[x] = [x] (x) [x] is
// exact but infinite-dimensional; the truncated model Sym^{<=g}(W) carries
// the Beauville grading and makes filtrations finite computations. A point
// x in Z^r has log-class l_x = sum_i x_i l_i and class exp_trunc(l_x).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/lazy.hpp"
#include "coalg/symmetric.hpp"

namespace coalg {

using Point = std::vector<std::int64_t>;
using GroupAlgebraElement = std::map<Point, Rational>;
using GroupCoalgebra = LazyCoalgebra<Point>;

/// [x]
GroupAlgebraElement point_element(const Point& x);
/// [x] with the zero point of the same rank.
GroupAlgebraElement zero_element(std::size_t r);
/// Convolution: [x] * [y] = [x + y].
GroupAlgebraElement pontryagin(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
/// a^{*k}, with a^{*0} = [0].
GroupAlgebraElement pontryagin_power(const GroupAlgebraElement& a, unsigned k, std::size_t r);

/// Q[Z^r] with every point group-like and eps = 1 on points.
GroupCoalgebra group_coalgebra();

struct GrouplikeReport {
  Point x;
  unsigned k = 0;
  GroupCoalgebra::Tensor reduced;
  GroupCoalgebra::Tensor expected;
  bool equal() const { return reduced == expected; }
};

/// delta-bar^k[x] against ([x] - [0])^{(x)(k+1)} with unit [0].
GrouplikeReport eq_redcomult_grouplike(std::size_t r, const Point& x, unsigned k);

struct TruncatedAbelianModel {
  int g = 0;
  std::size_t r = 0;
  TruncatedSymmetric sym;
  std::vector<Point> points;
  const Coalgebra& coalgebra() const { return sym.coalgebra(); }
  Vector unit() const { return sym.unit(); }
};

/// Sym^{<=g} of W = Q^r, labels l1..lr, unit "[0]". Points must have r
/// coordinates.
TruncatedAbelianModel build_abelian_trunc(int g, std::size_t r, std::vector<Point> points,
                                          const Limits& limits = {});

/// sum_{j<=g} l^{*j} / j!
Vector exp_trunc(const TruncatedAbelianModel& m, const Vector& l);
/// sum_{n>=1} (-1)^{n-1}/n (x - [0])^{*n}; requires eps(x) = 1.
Vector log_element(const TruncatedAbelianModel& m, const Vector& x);

/// l_x = sum_i x_i l_i
Vector log_class(const TruncatedAbelianModel& m, const Point& x);
Vector point_class(const TruncatedAbelianModel& m, std::size_t point);
/// log of the point class, computed through the series.
Vector log_point(const TruncatedAbelianModel& m, std::size_t point);

/// (log[x])^{*j} / j!, 0 <= j <= g; throws std::out_of_range otherwise.
Vector beauville_component(const TruncatedAbelianModel& m, std::size_t point, int j);

/// [m]_* : l |-> m l, extended multiplicatively.
Matrix mult_by_m(const TruncatedAbelianModel& model, std::int64_t m);

/// prod_{i != k} ([m]_* - m^i) / (m^k - m^i) over i = 0..g. Throws
/// std::invalid_argument for m in {-1, 0, 1} and std::out_of_range for k.
Matrix dm_projector(const TruncatedAbelianModel& model, std::int64_t m, int k);

struct ProjectorFamilyReport {
  std::int64_t m = 0;
  bool idempotent = false;
  bool orthogonal = false;
  bool sum_is_identity = false;
  bool images_are_grades = false;
  bool ok() const { return idempotent && orthogonal && sum_is_identity && images_are_grades; }
};

ProjectorFamilyReport check_dm_projectors(const TruncatedAbelianModel& model, std::int64_t m);

/// Realization of the k-th Kuennemann projector on [x]:
/// (log[x])^{*(2g-k)} / (2g-k)!. Zero for k < g, since the divided power
/// is past the truncation. k ranges over 0..2g.
Vector kunnemann_component(const TruncatedAbelianModel& m, std::size_t point, int k);

struct ExteriorPowerReport {
  std::size_t point = 0;
  /// delta-bar^g [x] == 0
  bool top_vanishes = false;
  /// grade-g component of [x] is nonzero
  bool top_component_nonzero = false;
  /// delta-bar^{g-1} [x] != 0
  bool previous_nonzero = false;
  /// Vanishing holds, and when the top component is nonzero so is the
  /// previous power.
  bool ok() const { return top_vanishes && (!top_component_nonzero || previous_nonzero); }
};

ExteriorPowerReport exterior_power_vanishing(const TruncatedAbelianModel& m, std::size_t point,
                                             const Limits& limits = {});

struct BeauvilleFiltrationReport {
  std::vector<FiltrationStep> steps;
  bool all_equal = true;
};

/// R_k against the span of Beauville grades <= k, k = 0..g.
BeauvilleFiltrationReport coradical_vs_beauville(const TruncatedAbelianModel& m, const Limits& limits = {});

/// Model of A^n / S_{n+1} with A^n the kernel of the sum map on A^{n+1}:
/// Sym^{<=ng}(W^{(+)n}) with S_{n+1} generated by swaps of adjacent blocks
/// and block 1 |-> -(block 1 + ... + block n).
struct KummerModel {
  int g = 0;
  std::size_t s = 0;
  int n = 0;
  TruncatedSymmetric ambient;
  std::vector<Matrix> generators;
  InvariantCoalgebra invariants;
};

KummerModel build_kummer(int g, std::size_t s, int n, const Limits& limits = {});

}  // namespace coalg
