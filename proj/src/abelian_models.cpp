#include "coalg/abelian_models.hpp"

#include <stdexcept>

namespace coalg {

GroupAlgebraElement point_element(const Point& x) { return {{x, Rational(1)}}; }

GroupAlgebraElement zero_element(std::size_t r) { return point_element(Point(r, 0)); }

GroupAlgebraElement pontryagin(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out;
  for (const auto& [x, va] : a) {
    for (const auto& [y, vb] : b) {
      if (x.size() != y.size()) throw DimensionMismatch("points of different rank");
      Point z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
      GroupCoalgebra::add_to(out, z, va * vb);
    }
  }
  return out;
}

GroupAlgebraElement pontryagin_power(const GroupAlgebraElement& a, unsigned k, std::size_t r) {
  GroupAlgebraElement acc = zero_element(r);
  for (unsigned i = 0; i < k; ++i) acc = pontryagin(acc, a);
  return acc;
}

GroupCoalgebra group_coalgebra() {
  return GroupCoalgebra(
      [](const Point& x) { return std::vector<std::tuple<Point, Point, Rational>>{{x, x, Rational(1)}}; },
      [](const Point&) { return Rational(1); });
}

GrouplikeReport eq_redcomult_grouplike(std::size_t r, const Point& x, unsigned k) {
  if (x.size() != r) throw DimensionMismatch("point has the wrong rank");
  GroupCoalgebra c = group_coalgebra();
  const GroupAlgebraElement zero = zero_element(r);
  GrouplikeReport out;
  out.x = x;
  out.k = k;
  out.reduced = c.iterated_reduced_comult(zero, point_element(x), k);
  out.expected = GroupCoalgebra::tensor_power(GroupCoalgebra::combine(point_element(x), 1, zero, -1), k + 1);
  return out;
}

// ------------------------------------------------------------- truncated

TruncatedAbelianModel build_abelian_trunc(int g, std::size_t r, std::vector<Point> points, const Limits& limits) {
  if (g < 1 || r < 1) throw InvalidModel("abelian model needs g >= 1 and r >= 1");
  for (const auto& p : points) {
    if (p.size() != r) throw InvalidModel("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                          std::to_string(r));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= r; ++i) labels.push_back("l" + std::to_string(i));
  return TruncatedAbelianModel{g, r, TruncatedSymmetric(labels, static_cast<unsigned>(g), "[0]", limits),
                               std::move(points)};
}

Vector exp_trunc(const TruncatedAbelianModel& m, const Vector& l) {
  Vector acc = m.unit();
  Vector term = m.unit();
  for (int j = 1; j <= m.g; ++j) {
    term = scale(m.sym.multiply(term, l), Rational(1, j));
    acc = add(acc, term);
  }
  return acc;
}

Vector log_element(const TruncatedAbelianModel& m, const Vector& x) {
  if (m.coalgebra().counit_of(x) != 1) throw std::invalid_argument("log needs an element of co-unit 1");
  const Vector y = subtract(x, m.unit());
  Vector acc(m.sym.dim());
  Vector term = m.unit();
  for (int n = 1; n <= m.g; ++n) {
    term = m.sym.multiply(term, y);
    acc = add(acc, scale(term, Rational(n % 2 ? 1 : -1, n)));
  }
  return acc;
}

Vector log_class(const TruncatedAbelianModel& m, const Point& x) {
  if (x.size() != m.r) throw DimensionMismatch("point has the wrong rank");
  Vector l(m.sym.dim());
  for (std::size_t i = 0; i < m.r; ++i) l[m.sym.variable_index(i)] = Rational(static_cast<long>(x[i]));
  return l;
}

Vector point_class(const TruncatedAbelianModel& m, std::size_t point) {
  return exp_trunc(m, log_class(m, m.points.at(point)));
}

Vector log_point(const TruncatedAbelianModel& m, std::size_t point) { return log_element(m, point_class(m, point)); }

Vector beauville_component(const TruncatedAbelianModel& m, std::size_t point, int j) {
  if (j < 0 || j > m.g) throw std::out_of_range("Beauville component index out of range");
  return scale(m.sym.power(log_point(m, point), static_cast<unsigned>(j)), 1 / factorial(static_cast<unsigned>(j)));
}

Matrix mult_by_m(const TruncatedAbelianModel& model, std::int64_t m) {
  return model.sym.substitution(Matrix::identity(model.r).scaled(Rational(static_cast<long>(m))));
}

Matrix dm_projector(const TruncatedAbelianModel& model, std::int64_t m, int k) {
  if (m >= -1 && m <= 1) throw std::invalid_argument("multiplication by -1, 0 or 1 does not separate grades");
  if (k < 0 || k > model.g) throw std::out_of_range("projector index out of range");
  const Matrix mm = mult_by_m(model, m);
  const Matrix id = Matrix::identity(model.sym.dim());
  const Rational base(static_cast<long>(m));
  Matrix p = id;
  for (int i = 0; i <= model.g; ++i) {
    if (i == k) continue;
    const Rational mi = power(base, static_cast<unsigned>(i));
    p = p * (mm - id.scaled(mi)).scaled(1 / (power(base, static_cast<unsigned>(k)) - mi));
  }
  return p;
}

ProjectorFamilyReport check_dm_projectors(const TruncatedAbelianModel& model, std::int64_t m) {
  ProjectorFamilyReport out;
  out.m = m;
  const Index d = model.sym.dim();
  std::vector<Matrix> ps;
  for (int k = 0; k <= model.g; ++k) ps.push_back(dm_projector(model, m, k));
  out.idempotent = out.orthogonal = out.images_are_grades = true;
  Matrix sum(d, d);
  for (int k = 0; k <= model.g; ++k) {
    out.idempotent = out.idempotent && is_idempotent(ps[k]);
    for (int j = k + 1; j <= model.g; ++j) out.orthogonal = out.orthogonal && are_orthogonal(ps[k], ps[j]);
    std::vector<SparseVec> grade;
    for (Index i : model.coalgebra().space.indices_of_grade(k)) grade.push_back(SparseVec::unit(i));
    out.images_are_grades = out.images_are_grades && image(ps[k]) == Subspace::span(d, grade);
    sum = sum + ps[k];
  }
  out.sum_is_identity = sum == Matrix::identity(d);
  return out;
}

Vector kunnemann_component(const TruncatedAbelianModel& m, std::size_t point, int k) {
  if (k < 0 || k > 2 * m.g) throw std::out_of_range("projector index out of range");
  const int j = 2 * m.g - k;
  if (j > m.g) return Vector(m.sym.dim());
  return scale(m.sym.power(log_point(m, point), static_cast<unsigned>(j)), 1 / factorial(static_cast<unsigned>(j)));
}

ExteriorPowerReport exterior_power_vanishing(const TruncatedAbelianModel& m, std::size_t point, const Limits& limits) {
  ExteriorPowerReport out;
  out.point = point;
  const Vector x = point_class(m, point);
  const SparseVec xs = SparseVec::from_dense(x);
  const Coalgebra& c = m.coalgebra();
  out.top_vanishes = iterated_reduced_comult(c, m.unit(), static_cast<unsigned>(m.g), limits).apply(xs).empty();
  out.top_component_nonzero = !is_zero(beauville_component(m, point, m.g));
  out.previous_nonzero =
      !iterated_reduced_comult(c, m.unit(), static_cast<unsigned>(m.g - 1), limits).apply(xs).empty();
  return out;
}

BeauvilleFiltrationReport coradical_vs_beauville(const TruncatedAbelianModel& m, const Limits& limits) {
  BeauvilleFiltrationReport out;
  const Coalgebra& c = m.coalgebra();
  Filtration r = coradical_filtration(c, m.unit(), static_cast<unsigned>(m.g), limits);
  Filtration g = grading_filtration(c);
  for (int k = 0; k <= m.g; ++k) {
    FiltrationStep step;
    step.k = k;
    step.grading_dim = g.steps[k].dim();
    step.coradical_dim = r.steps[k].dim();
    step.contained = r.steps[k].contains(g.steps[k]);
    step.equal = r.steps[k] == g.steps[k];
    out.all_equal = out.all_equal && step.equal;
    out.steps.push_back(std::move(step));
  }
  return out;
}

KummerModel build_kummer(int g, std::size_t s, int n, const Limits& limits) {
  if (g < 1 || s < 1 || n < 1) throw InvalidModel("Kummer model needs g, s, n >= 1");
  std::vector<std::string> labels;
  for (int b = 1; b <= n; ++b) {
    for (std::size_t i = 1; i <= s; ++i) labels.push_back("l" + std::to_string(i) + "_" + std::to_string(b));
  }
  KummerModel out{g, s, n, TruncatedSymmetric(labels, static_cast<unsigned>(n * g), "[0]", limits), {}, {}};
  const Index vars = static_cast<Index>(n) * s;
  for (int b = 0; b + 1 < n; ++b) {
    Matrix swap(vars, vars);
    for (Index v = 0; v < vars; ++v) {
      Index block = v / s, offset = v % s;
      Index target = block == static_cast<Index>(b) ? b + 1 : block == static_cast<Index>(b + 1) ? b : block;
      swap.set(target * s + offset, v, Rational(1));
    }
    out.generators.push_back(out.ambient.substitution(swap));
  }
  // The extra point of A^{n+1} is minus the sum of the others.
  Matrix neg(vars, vars);
  for (Index v = 0; v < vars; ++v) {
    if (v < s) {
      for (int b = 0; b < n; ++b) neg.set(b * s + v, v, Rational(-1));
    } else {
      neg.set(v, v, Rational(1));
    }
  }
  out.generators.push_back(out.ambient.substitution(neg));
  out.invariants = invariant_subcoalgebra(out.ambient.coalgebra(), out.generators, limits);
  return out;
}

}  // namespace coalg
