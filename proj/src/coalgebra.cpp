#include "coalg/coalgebra.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace coalg {

// ---------------------------------------------------------------- Coalgebra

Coalgebra::Coalgebra(GradedSpace s, Matrix delta, Matrix eps, std::optional<Vector> u)
    : space(std::move(s)), comult(std::move(delta)), counit(std::move(eps)), unit(std::move(u)) {
  const Index d = space.dim();
  if (comult.cols() != d || comult.rows() != d * d) {
    throw DimensionMismatch("co-multiplication must be a dim^2 x dim matrix");
  }
  if (counit.cols() != d || counit.rows() != 1) throw DimensionMismatch("co-unit must be a 1 x dim matrix");
  if (unit && unit->size() != d) throw DimensionMismatch("unit vector has wrong length");
}

const Vector& Coalgebra::require_unit() const {
  if (!unit) throw NotAUnit("co-algebra has no distinguished unit");
  return *unit;
}

Rational Coalgebra::counit_of(const Vector& v) const { return counit.apply(v)[0]; }

Vector Coalgebra::basis_vector(Index i) const {
  Vector v(dim());
  v.at(i) = 1;
  return v;
}

// ------------------------------------------------------------------- axioms

namespace {

std::optional<Index> first_differing_column(const Matrix& a, const Matrix& b) {
  for (Index j = 0; j < a.cols(); ++j) {
    if (!(a.column(j) == b.column(j))) return j;
  }
  return std::nullopt;
}

void require_unit_arg(const Coalgebra& c, const Vector& u) {
  if (u.size() != c.dim()) throw DimensionMismatch("unit vector has wrong length");
  if (!is_unit(c, u)) throw NotAUnit("vector is not a unit: " + format_vector(c.space, u));
}

}  // namespace

AxiomReport check_axioms(const Coalgebra& c, const Limits& limits) {
  const Index d = c.dim();
  checked_power(d, 3, limits);
  AxiomReport report;
  const Matrix id = Matrix::identity(d);
  Matrix left = apply_on_factor(c.counit, 1, d, c.comult);
  Matrix right = apply_on_factor(c.counit, d, 1, c.comult);
  auto w1 = first_differing_column(left, id);
  auto w2 = first_differing_column(right, id);
  report.counit_ok = !w1 && !w2;

  Matrix lhs = apply_on_factor(c.comult, 1, d, c.comult);
  Matrix rhs = apply_on_factor(c.comult, d, 1, c.comult);
  auto w3 = first_differing_column(lhs, rhs);
  report.coassoc_ok = !w3;

  auto w4 = first_differing_column(swap_matrix(d) * c.comult, c.comult);
  report.cocomm_ok = !w4;

  for (const auto& w : {w1, w2, w3, w4}) {
    if (w) {
      report.witness = w;
      break;
    }
  }
  return report;
}

bool is_unit(const Coalgebra& c, const Vector& u) {
  if (u.size() != c.dim()) return false;
  if (c.counit_of(u) != 1) return false;
  SparseVec su = SparseVec::from_dense(u);
  return c.comult.apply(su) == tensor(su, c.dim(), su);
}

Matrix swap_matrix(Index dim) {
  const std::array<Index, 2> dims{dim, dim};
  const std::array<Index, 2> perm{1, 0};
  return factor_permutation(dims, perm);
}

Matrix unit_insertion(const Vector& u, bool left) {
  const Index d = u.size();
  Matrix ucol = Matrix::column_vector(u);
  return left ? kronecker(ucol, Matrix::identity(d)) : kronecker(Matrix::identity(d), ucol);
}

Matrix counit_complement(const Coalgebra& c, const Vector& u) {
  return Matrix::identity(c.dim()) - Matrix::column_vector(u) * c.counit;
}

Matrix reduced_comult(const Coalgebra& c, const Vector& u) {
  require_unit_arg(c, u);
  Matrix raw = c.comult - unit_insertion(u, true) - unit_insertion(u, false);
  return raw * counit_complement(c, u);
}

Matrix iterated_comult(const Coalgebra& c, unsigned k, const Limits& limits) {
  const Index d = c.dim();
  checked_power(d, k + 1, limits);
  Matrix acc = Matrix::identity(d);
  for (unsigned j = 1; j <= k; ++j) acc = apply_on_factor(c.comult, 1, checked_power(d, j - 1, limits), acc);
  return acc;
}

std::vector<Matrix> reduced_comult_powers(const Coalgebra& c, const Vector& u, unsigned kmax, const Limits& limits) {
  const Index d = c.dim();
  checked_power(d, kmax + 1, limits);
  std::vector<Matrix> out;
  out.push_back(counit_complement(c, u));
  if (kmax == 0) {
    require_unit_arg(c, u);
    return out;
  }
  Matrix bar = reduced_comult(c, u);
  out.push_back(bar);
  for (unsigned k = 2; k <= kmax; ++k) {
    out.push_back(apply_on_factor(bar, 1, checked_power(d, k - 1, limits), out.back()));
  }
  return out;
}

Matrix iterated_reduced_comult(const Coalgebra& c, const Vector& u, unsigned k, const Limits& limits) {
  return reduced_comult_powers(c, u, k, limits).back();
}

Matrix projected_iterated_comult(const Coalgebra& c, const Vector& u, unsigned k, const Limits& limits) {
  const Index d = c.dim();
  Matrix acc = iterated_comult(c, k, limits);
  Matrix pbar = counit_complement(c, u);
  for (unsigned p = 0; p <= k; ++p) {
    acc = apply_on_factor(pbar, checked_power(d, p, limits), checked_power(d, k - p, limits), acc);
  }
  return acc;
}

// -------------------------------------------------------------- filtrations

Filtration coradical_filtration(const Coalgebra& c, const Vector& u, unsigned kmax, const Limits& limits) {
  require_unit_arg(c, u);
  const Index d = c.dim();
  Filtration f;
  Matrix bar = reduced_comult(c, u);
  Matrix power = counit_complement(c, u);
  for (unsigned k = 0; k <= kmax; ++k) {
    if (f.exhaustive_at) {
      // ker delta-bar^k grows with k, so once exhaustive it stays so.
      f.steps.push_back(Subspace::full(d));
      continue;
    }
    if (k == 1) {
      power = bar;
    } else if (k > 1) {
      power = apply_on_factor(bar, 1, checked_power(d, k - 1, limits), power);
    }
    f.steps.push_back(kernel_basis(power));
    if (f.steps.back().dim() == d) f.exhaustive_at = static_cast<int>(k);
  }
  return f;
}

Filtration grading_filtration(const Coalgebra& c) {
  if (!c.space.graded()) throw InvalidModel("grading filtration needs a graded space");
  Filtration f;
  const Index d = c.dim();
  for (int k = 0; k <= c.space.top_grade(); ++k) {
    std::vector<SparseVec> span;
    for (Index i : c.space.indices_up_to(k)) span.push_back(SparseVec::unit(i));
    f.steps.push_back(Subspace::span(d, std::move(span)));
    if (!f.exhaustive_at && f.steps.back().dim() == d) f.exhaustive_at = k;
  }
  return f;
}

GradingReport check_unital_grading(const Coalgebra& c, const Vector& u) {
  GradingReport report;
  const Index d = c.dim();
  if (!c.space.graded()) {
    report.comult_graded = report.counit_graded = report.degree_zero_iso = report.unit_is_graded_unit = false;
    report.violations.push_back({"graded", "space carries no grading", Vector(d)});
    return report;
  }
  for (Index j = 0; j < d; ++j) {
    const int k = c.space.grade(j);
    for (const auto& [row, v] : c.comult.column(j).terms()) {
      const Index p = row / d;
      const Index q = row % d;
      if (c.space.grade(p) + c.space.grade(q) != k) {
        report.comult_graded = false;
        report.violations.push_back({"comult-graded",
                                     "delta(" + c.space.label(j) + ") has a term " + c.space.label(p) + "|" +
                                         c.space.label(q) + " outside total grade " + std::to_string(k),
                                     c.basis_vector(j)});
        break;
      }
    }
  }
  for (Index j = 0; j < d; ++j) {
    if (c.space.grade(j) > 0 && c.counit.at(0, j) != 0) {
      report.counit_graded = false;
      report.violations.push_back({"counit-graded",
                                   "eps does not vanish on " + c.space.label(j) + " in grade " +
                                       std::to_string(c.space.grade(j)),
                                   c.basis_vector(j)});
    }
  }
  auto zero = c.space.indices_of_grade(0);
  Matrix eps0 = c.counit.select_columns(zero);
  std::optional<Vector> graded_unit;
  if (zero.empty()) {
    report.degree_zero_iso = false;
    report.violations.push_back({"degree-zero-iso", "M_(0) is zero", Vector(d)});
  } else if (zero.size() > 1 || eps0.is_zero()) {
    report.degree_zero_iso = false;
    Subspace ker = kernel_basis(eps0);
    Vector w(d);
    if (ker.dim() > 0) {
      for (const auto& [i, v] : ker.basis().front().terms()) w[zero[i]] = v;
    }
    report.violations.push_back({"degree-zero-iso",
                                 "eps restricted to M_(0) (dimension " + std::to_string(zero.size()) +
                                     ") is not an isomorphism",
                                 w});
  } else {
    graded_unit = Vector(d);
    (*graded_unit)[zero[0]] = 1 / eps0.at(0, 0);
  }
  if (u.size() != d || !graded_unit || u != *graded_unit || !is_unit(c, u)) {
    report.unit_is_graded_unit = false;
    report.violations.push_back({"graded-unit", "u is not the graded unit eps_0^{-1}(1)",
                                 u.size() == d ? u : Vector(d)});
  }
  return report;
}

StrictReport check_strict(const Coalgebra& c, const Vector& u, const Limits& limits) {
  if (!check_unital_grading(c, u).ok()) throw InvalidModel("strictness needs a verified unital grading");
  StrictReport report;
  const int top = c.space.top_grade();
  const Index d = c.dim();
  std::vector<Matrix> powers = reduced_comult_powers(c, u, top >= 2 ? static_cast<unsigned>(top - 1) : 1, limits);
  std::vector<Index> high;
  for (int k = 2; k <= top; ++k) {
    auto idx = c.space.indices_of_grade(k);
    if (idx.empty()) continue;
    high.insert(high.end(), idx.begin(), idx.end());
    Matrix restricted = powers[k - 1].select_columns(idx);
    Subspace ker = kernel_basis(restricted);
    const bool injective = ker.dim() == 0;
    report.per_grade.emplace_back(k, injective);
    if (!injective && report.strict) {
      report.strict = false;
      report.witness_grade = k;
      report.witness = Vector(d);
      for (const auto& [i, v] : ker.basis().front().terms()) report.witness[idx[i]] = v;
    }
  }
  std::sort(high.begin(), high.end());
  report.single_condition = kernel_basis(powers[1].select_columns(high)).dim() == 0;
  if (report.single_condition != report.strict) {
    throw std::logic_error("strictness characterizations disagree");
  }
  return report;
}

CoradicalGradingReport coradical_equals_grading(const Coalgebra& c, const Vector& u, const Limits& limits) {
  CoradicalGradingReport report;
  report.strict = check_strict(c, u, limits).strict;
  Filtration g = grading_filtration(c);
  const unsigned top = static_cast<unsigned>(c.space.top_grade());
  Filtration r = coradical_filtration(c, u, top, limits);
  for (unsigned k = 0; k <= top; ++k) {
    FiltrationStep step;
    step.k = static_cast<int>(k);
    step.grading_dim = g.steps[k].dim();
    step.coradical_dim = r.steps[k].dim();
    step.contained = r.steps[k].contains(g.steps[k]);
    step.equal = r.steps[k] == g.steps[k];
    if (!step.equal) {
      for (const auto& b : r.steps[k].basis()) {
        if (!g.steps[k].contains(b)) {
          step.witness = b.to_dense(c.dim());
          break;
        }
      }
    }
    report.all_contained = report.all_contained && step.contained;
    report.all_equal = report.all_equal && step.equal;
    report.steps.push_back(std::move(step));
  }
  return report;
}

Subspace primitives(const Coalgebra& c, const Vector& u) {
  require_unit_arg(c, u);
  Matrix m = c.comult - unit_insertion(u, true) - unit_insertion(u, false);
  return kernel_basis(m);
}

// ----------------------------------------------------------- morphisms

bool is_coalgebra_morphism(const Matrix& f, const Coalgebra& source, const Coalgebra& target) {
  if (f.cols() != source.dim() || f.rows() != target.dim()) {
    throw DimensionMismatch("morphism shape does not match the co-algebras");
  }
  if (!(target.counit * f == source.counit)) return false;
  Matrix lhs = target.comult * f;
  Matrix rhs = apply_on_factor(f, 1, source.dim(), source.comult);
  rhs = apply_on_factor(f, target.dim(), 1, rhs);
  return lhs == rhs;
}

std::pair<Matrix, GradedSpace> grade_one_projection(const Coalgebra& c) {
  auto idx = c.space.indices_of_grade(1);
  Matrix p(idx.size(), c.dim());
  std::vector<std::string> labels;
  for (Index k = 0; k < idx.size(); ++k) {
    p.set_column(idx[k], SparseVec::unit(k));
    labels.push_back(c.space.label(idx[k]));
  }
  return {p, GradedSpace(labels, std::vector<int>(labels.size(), 1))};
}

CogenerationResult cogeneration_map(const Coalgebra& c, const Vector& u, const Matrix& r, unsigned n,
                                    std::optional<GradedSpace> n_space, const Limits& limits) {
  require_unit_arg(c, u);
  if (n == 0) throw std::invalid_argument("co-generation needs n >= 1");
  if (r.cols() != c.dim()) throw DimensionMismatch("r must be defined on M");
  const Index e = r.rows();
  if (!n_space) {
    std::vector<std::string> labels;
    for (Index i = 0; i < e; ++i) labels.push_back("n" + std::to_string(i));
    n_space = GradedSpace(labels, std::vector<int>(e, 1));
  }
  if (n_space->dim() != e) throw DimensionMismatch("labels for the codomain of r have wrong count");

  CogenerationResult result;
  result.target = truncated_tensor_coalg(*n_space, n, limits);
  const Index d = c.dim();
  std::vector<SparseVec> columns(d);
  std::vector<std::vector<SparseVec::Term>> terms(d);
  // Grade 0: eps.
  for (Index j = 0; j < d; ++j) {
    Rational v = c.counit.at(0, j);
    if (v != 0) terms[j].emplace_back(0, v);
  }
  Index offset = 1;
  Matrix delta_power = Matrix::identity(d);
  for (unsigned j = 1; j <= n; ++j) {
    if (j > 1) delta_power = apply_on_factor(c.comult, 1, checked_power(d, j - 2, limits), delta_power);
    Matrix block = delta_power;
    for (unsigned p = 0; p < j; ++p) {
      block = apply_on_factor(r, checked_power(e, p, limits), checked_power(d, j - 1 - p, limits), block);
    }
    for (Index col = 0; col < d; ++col) {
      for (const auto& [i, v] : block.column(col).terms()) terms[col].emplace_back(offset + i, v);
    }
    offset += checked_power(e, j, limits);
  }
  for (Index j = 0; j < d; ++j) columns[j] = SparseVec::from_terms(std::move(terms[j]));
  result.map = Matrix::from_columns(result.target.dim(), std::move(columns));
  result.rank = rank(result.map);
  result.injective = result.rank == d;
  result.coalgebra_morphism = is_coalgebra_morphism(result.map, c, result.target);
  result.image_is_symmetric = image(result.map) == image(symmetrizer_embedding(*n_space, n, limits));
  return result;
}

// --------------------------------------------------------- tensor products

Coalgebra tensor_coalgebra(const Coalgebra& a, const Coalgebra& b, const Limits& limits) {
  const Index da = a.dim();
  const Index db = b.dim();
  require_within_cap((da * db) * (da * db), limits);
  const std::array<Index, 4> dims{da, da, db, db};
  const std::array<Index, 4> perm{0, 2, 1, 3};
  Matrix delta = factor_permutation(dims, perm) * kronecker(a.comult, b.comult);
  Matrix eps = kronecker(a.counit, b.counit);
  std::optional<Vector> unit;
  if (a.unit && b.unit) {
    unit = tensor(SparseVec::from_dense(*a.unit), db, SparseVec::from_dense(*b.unit)).to_dense(da * db);
  }
  return Coalgebra(GradedSpace::tensor(a.space, b.space), std::move(delta), std::move(eps), std::move(unit));
}

// -------------------------------------------------------------- invariants

std::vector<Matrix> generate_group(const std::vector<Matrix>& generators, Index dim, const Limits& limits) {
  std::vector<Matrix> elements{Matrix::identity(dim)};
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim) throw DimensionMismatch("group generator has wrong shape");
  }
  for (Index next = 0; next < elements.size(); ++next) {
    for (const auto& g : generators) {
      Matrix h = g * elements[next];
      if (std::find(elements.begin(), elements.end(), h) == elements.end()) {
        elements.push_back(std::move(h));
        if (elements.size() > limits.group_order_cap) {
          throw GroupOrderExceeded("generated group exceeds order cap " + std::to_string(limits.group_order_cap));
        }
      }
    }
  }
  return elements;
}

InvariantCoalgebra invariant_subcoalgebra(const Coalgebra& c, const std::vector<Matrix>& action,
                                          const Limits& limits) {
  const Index d = c.dim();
  for (const auto& g : action) {
    if (g.rows() != d || g.cols() != d) throw DimensionMismatch("action matrix has wrong shape");
    if (rank(g) != d) throw NotACoalgebraMorphism("action matrix is not invertible");
    if (!is_coalgebra_morphism(g, c, c)) throw NotACoalgebraMorphism("action matrix is not a co-algebra automorphism");
  }
  auto group = generate_group(action, d, limits);
  Matrix sum(d, d);
  for (const auto& g : group) sum = sum + g;
  InvariantCoalgebra out;
  out.group_order = group.size();
  out.averaging = sum.scaled(Rational(1) / Rational(static_cast<long>(group.size())));

  // delta o e == (avg of g (x) g) o delta is what lets (e (x) e) o delta
  // restrict to a co-algebra structure on the invariants.
  Matrix diag(d * d, d * d);
  for (const auto& g : group) diag = diag + kronecker(g, g);
  diag = diag.scaled(Rational(1) / Rational(static_cast<long>(group.size())));
  if (!(c.comult * out.averaging == diag * c.comult)) {
    throw std::logic_error("averaging idempotent does not intertwine the co-multiplication");
  }

  // Homogeneous basis when the averaging idempotent preserves the grading.
  bool graded = c.space.graded();
  std::vector<SparseVec> basis;
  std::vector<int> grades;
  if (graded) {
    for (const auto& block : c.space.blocks()) {
      Matrix restricted = out.averaging.select_columns(block.indices);
      Subspace img = image(restricted);
      for (const auto& b : img.basis()) {
        for (const auto& [i, v] : b.terms()) {
          if (c.space.grade(i) != block.grade) graded = false;
        }
      }
      if (!graded) break;
      for (const auto& b : img.basis()) {
        basis.push_back(b);
        grades.push_back(block.grade);
      }
    }
  }
  if (!graded) {
    basis = image(out.averaging).basis();
    grades.clear();
  }
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back("avg(" + c.space.label(b.leading_index()) + ")");
  const Index m = basis.size();
  out.inclusion = Matrix::from_columns(d, basis);

  std::vector<Index> pivots;
  for (const auto& b : basis) pivots.push_back(b.leading_index());
  auto coordinates = [&](const SparseVec& v) {
    Vector x(m);
    for (Index i = 0; i < m; ++i) x[i] = v.at(pivots[i]);
    return x;
  };

  Matrix delta(m * m, m);
  for (Index j = 0; j < m; ++j) {
    SparseVec w = c.comult.apply(basis[j]);
    Matrix wm = Matrix::from_columns(d * d, {w});
    wm = apply_on_factor(out.averaging, 1, d, wm);
    wm = apply_on_factor(out.averaging, d, 1, wm);
    std::vector<SparseVec::Term> terms;
    for (Index p = 0; p < m; ++p) {
      for (Index q = 0; q < m; ++q) {
        Rational v = wm.column(0).at(pivots[p] * d + pivots[q]);
        if (v != 0) terms.emplace_back(p * m + q, v);
      }
    }
    delta.set_column(j, SparseVec::from_terms(std::move(terms)));
  }
  Matrix eps = c.counit * out.inclusion;
  std::optional<Vector> unit;
  if (c.unit && out.averaging.apply(*c.unit) == *c.unit) unit = coordinates(SparseVec::from_dense(*c.unit));
  GradedSpace space = graded ? GradedSpace(labels, grades) : GradedSpace(labels);
  out.coalgebra = Coalgebra(std::move(space), std::move(delta), std::move(eps), std::move(unit));
  return out;
}

}  // namespace coalg
