#include "coalg/incidence.hpp"

#include <map>
#include <set>

namespace coalg {

// --------------------------------------------------------- FiniteVariety

FiniteVariety::FiniteVariety(std::vector<std::string> points, const std::vector<Vector>& relations)
    : points_(std::move(points)) {
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) throw InvalidModel("repeated point label '" + p + "'");
  }
  std::vector<SparseVec> rels;
  for (const auto& r : relations) {
    if (r.size() != points_.size()) throw InvalidModel("relation has the wrong length");
    Rational sum(0);
    for (const auto& v : r) sum += v;
    if (sum != 0) throw InvalidModel("relation coefficients must sum to zero");
    rels.push_back(SparseVec::from_dense(r));
  }
  build(std::move(rels));
}

void FiniteVariety::build(std::vector<SparseVec> relations) {
  const Index n = points_.size();
  relations_ = Subspace::span(n, std::move(relations));
  const auto pivots = relations_.pivots();
  std::map<Index, Index> pivot_row;
  for (Index i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = i;
  representatives_.clear();
  std::vector<Index> position(n, n);
  for (Index p = 0; p < n; ++p) {
    if (!pivot_row.count(p)) {
      position[p] = representatives_.size();
      representatives_.push_back(p);
    }
  }
  const Index q = representatives_.size();
  quotient_ = Matrix(q, n);
  lift_ = Matrix(n, q);
  for (Index p = 0; p < n; ++p) {
    auto it = pivot_row.find(p);
    if (it == pivot_row.end()) {
      quotient_.set_column(p, SparseVec::unit(position[p]));
      continue;
    }
    // e_p - b, with b the echelon vector pivoting at p, lives on the
    // representatives.
    std::vector<SparseVec::Term> terms;
    for (const auto& [j, v] : relations_.basis()[it->second].terms()) {
      if (j != p) terms.emplace_back(position[j], -v);
    }
    quotient_.set_column(p, SparseVec::from_terms(std::move(terms)));
  }
  for (Index j = 0; j < q; ++j) lift_.set_column(j, SparseVec::unit(representatives_[j]));
}

std::optional<Index> FiniteVariety::index_of(const std::string& label) const {
  for (Index i = 0; i < points_.size(); ++i) {
    if (points_[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<std::string> FiniteVariety::chow_labels() const {
  std::vector<std::string> out;
  for (Index r : representatives_) out.push_back("[" + points_[r] + "]");
  return out;
}

Vector FiniteVariety::chow_class(const Vector& v) const { return quotient_.apply(v); }

FiniteVariety FiniteVariety::with_relations(const std::vector<SparseVec>& extra) const {
  FiniteVariety out = *this;
  std::vector<SparseVec> rels = relations_.basis();
  for (const auto& e : extra) {
    Rational sum(0);
    for (const auto& [i, v] : e.terms()) sum += v;
    if (sum != 0) throw InvalidModel("relation coefficients must sum to zero");
    rels.push_back(e);
  }
  out.build(std::move(rels));
  return out;
}

FiniteVariety FiniteVariety::product(const FiniteVariety& a, const FiniteVariety& b, const Limits& limits) {
  require_within_cap(a.size() * b.size(), limits);
  std::vector<std::string> labels;
  for (const auto& p : a.points_) {
    for (const auto& q : b.points_) labels.push_back(p + "|" + q);
  }
  FiniteVariety out(std::move(labels));
  std::vector<SparseVec> rels;
  for (const auto& r : a.relations_.basis()) {
    for (Index j = 0; j < b.size(); ++j) rels.push_back(tensor(r, b.size(), SparseVec::unit(j)));
  }
  for (Index i = 0; i < a.size(); ++i) {
    for (const auto& r : b.relations_.basis()) rels.push_back(tensor(SparseVec::unit(i), b.size(), r));
  }
  out.build(std::move(rels));
  return out;
}

// ----------------------------------------------------------------- Cover

namespace {

Matrix map_pushforward(const CoverMap& f, Index gamma_size, Index target_size) {
  Matrix m(target_size, gamma_size);
  for (Index g = 0; g < gamma_size; ++g) m.set_column(g, SparseVec::unit(f.target[g]));
  return m;
}

Matrix map_pullback(const CoverMap& f, Index gamma_size, Index target_size) {
  std::vector<std::vector<SparseVec::Term>> cols(target_size);
  for (Index g = 0; g < gamma_size; ++g) cols[f.target[g]].emplace_back(g, f.multiplicity[g]);
  std::vector<SparseVec> columns;
  for (auto& c : cols) columns.push_back(SparseVec::from_terms(std::move(c)));
  return Matrix::from_columns(gamma_size, std::move(columns));
}

Rational validate_map(const CoverMap& f, const FiniteVariety& gamma, const FiniteVariety& target,
                      const std::string& name) {
  if (f.target.size() != gamma.size() || f.multiplicity.size() != gamma.size()) {
    throw InvalidModel(name + " must be defined on every point of the cover");
  }
  std::vector<Rational> fiber(target.size());
  for (Index g = 0; g < gamma.size(); ++g) {
    if (f.target[g] >= target.size()) throw InvalidModel(name + " maps outside its target");
    if (f.multiplicity[g] <= 0) throw InvalidModel(name + " has a non-positive multiplicity");
    fiber[f.target[g]] += f.multiplicity[g];
  }
  if (target.size() == 0) throw InvalidModel(name + " has an empty target");
  for (Index x = 0; x < target.size(); ++x) {
    if (fiber[x] != fiber[0]) {
      throw InvalidModel(name + " fibers have different degrees over '" + target.point(0) + "' and '" +
                         target.point(x) + "'");
    }
  }
  if (fiber[0] == 0) throw InvalidModel(name + " has empty fibers");
  return fiber[0];
}

}  // namespace

Cover::Cover(FiniteVariety gamma, FiniteVariety x, FiniteVariety y, CoverMap phi, CoverMap psi)
    : x_(std::move(x)), y_(std::move(y)), phi_(std::move(phi)), psi_(std::move(psi)) {
  deg_phi_ = validate_map(phi_, gamma, x_, "phi");
  deg_psi_ = validate_map(psi_, gamma, y_, "psi");
  std::vector<SparseVec> extra;
  Matrix pull_phi = map_pullback(phi_, gamma.size(), x_.size());
  Matrix pull_psi = map_pullback(psi_, gamma.size(), y_.size());
  for (const auto& r : x_.relations().basis()) extra.push_back(pull_phi.apply(r));
  for (const auto& r : y_.relations().basis()) extra.push_back(pull_psi.apply(r));
  gamma_ = gamma.with_relations(extra);
}

Cover identity_cover(const FiniteVariety& v) {
  CoverMap id;
  for (Index i = 0; i < v.size(); ++i) {
    id.target.push_back(i);
    id.multiplicity.emplace_back(1);
  }
  FiniteVariety gamma(v.points());
  return Cover(gamma, v, v, id, id);
}

Matrix point_pushforward(const Cover& c, Side s) {
  return map_pushforward(c.map(s), c.gamma().size(), c.target(s).size());
}

Matrix point_pullback(const Cover& c, Side s) { return map_pullback(c.map(s), c.gamma().size(), c.target(s).size()); }

Matrix pushforward(const Cover& c, Side s) {
  const Matrix p = point_pushforward(c, s);
  const FiniteVariety& t = c.target(s);
  for (const auto& r : c.gamma().relations().basis()) {
    if (!t.relations().contains(p.apply(r))) {
      throw RelationNotPreserved(std::string(s == Side::Phi ? "phi" : "psi") +
                                 "_* does not map the relations of the cover into those of its target");
    }
  }
  return t.quotient() * p * c.gamma().lift();
}

Matrix pullback(const Cover& c, Side s) {
  return c.gamma().quotient() * point_pullback(c, s) * c.target(s).lift();
}

bool projection_formula(const Cover& c, Side s) {
  return pushforward(c, s) * pullback(c, s) == Matrix::identity(c.target(s).chow_dim()).scaled(c.degree(s));
}

ConditionReport check_conditions(const Cover& c) {
  ConditionReport out;
  out.condition_i = true;
  const FiniteVariety& x = c.x();
  std::vector<std::optional<Index>> first(c.y().size());
  for (Index g = 0; g < c.gamma().size() && out.condition_i; ++g) {
    const Index y = c.psi().target[g];
    if (!first[y]) {
      first[y] = g;
      continue;
    }
    const Index h = *first[y];
    if (!(x.quotient().column(c.phi().target[g]) == x.quotient().column(c.phi().target[h]))) {
      out.condition_i = false;
      out.witness = FiberWitness{c.y().point(y), c.gamma().point(h), c.gamma().point(g)};
    }
  }
  const Matrix phi_star = pushforward(c, Side::Phi);
  out.condition_ii =
      phi_star * pullback(c, Side::Psi) * pushforward(c, Side::Psi) == phi_star.scaled(c.degree(Side::Psi));
  return out;
}

bool check_condition_i(const Cover& c) { return check_conditions(c).condition_i; }
bool check_condition_ii(const Cover& c) { return check_conditions(c).condition_ii; }

GammaMaps gamma_maps(const Cover& c) {
  if (!check_condition_i(c)) throw InvalidModel("cover fails the fiber condition; gamma maps are undefined");
  GammaMaps out;
  out.gamma = (pushforward(c, Side::Psi) * pullback(c, Side::Phi)).scaled(1 / c.degree(Side::Phi));
  out.gamma_prime = (pushforward(c, Side::Phi) * pullback(c, Side::Psi)).scaled(1 / c.degree(Side::Psi));
  const Index dx = c.x().chow_dim();
  out.left_inverse = out.gamma_prime * out.gamma == Matrix::identity(dx);
  out.split_injective = rank(out.gamma) == dx;
  out.split_surjective = rank(out.gamma_prime) == dx;
  out.two_sided = out.left_inverse && out.gamma * out.gamma_prime == Matrix::identity(c.y().chow_dim());
  return out;
}

namespace {

Matrix point_diagonal(Index n) {
  Matrix d(n * n, n);
  for (Index i = 0; i < n; ++i) d.set_column(i, SparseVec::unit(i * n + i));
  return d;
}

}  // namespace

bool comult_square(const Cover& c, const Limits& limits) {
  GammaMaps maps = gamma_maps(c);
  if (!maps.left_inverse) return false;
  const FiniteVariety xx = FiniteVariety::product(c.x(), c.x(), limits);
  require_within_cap(c.y().size() * c.y().size(), limits);
  const Matrix g = (point_pushforward(c, Side::Psi) * point_pullback(c, Side::Phi)).scaled(1 / c.degree(Side::Phi));
  const Matrix gp = (point_pushforward(c, Side::Phi) * point_pullback(c, Side::Psi)).scaled(1 / c.degree(Side::Psi));
  Matrix lhs = point_diagonal(c.y().size()) * g * c.x().lift();
  lhs = apply_on_factor(gp, 1, c.y().size(), lhs);
  lhs = apply_on_factor(gp, c.x().size(), 1, lhs);
  const Matrix rhs = point_diagonal(c.x().size()) * c.x().lift();
  return xx.quotient() * lhs == xx.quotient() * rhs;
}

ComposedCover fiber_compose(const Cover& c1, const Cover& c2) {
  if (c1.y().points() != c2.x().points()) throw InvalidModel("covers do not share the middle variety");
  std::vector<std::string> labels;
  CoverMap phi, psi;
  for (Index g = 0; g < c1.gamma().size(); ++g) {
    for (Index h = 0; h < c2.gamma().size(); ++h) {
      if (c1.psi().target[g] != c2.phi().target[h]) continue;
      labels.push_back(c1.gamma().point(g) + "|" + c2.gamma().point(h));
      phi.target.push_back(c1.phi().target[g]);
      phi.multiplicity.push_back(c1.phi().multiplicity[g] * c2.phi().multiplicity[h]);
      psi.target.push_back(c2.psi().target[h]);
      psi.multiplicity.push_back(c1.psi().multiplicity[g] * c2.psi().multiplicity[h]);
    }
  }
  ComposedCover out;
  if (labels.empty()) {
    out.empty = true;
    return out;
  }
  out.cover.emplace(FiniteVariety(std::move(labels)), c1.x(), c2.y(), std::move(phi), std::move(psi));
  return out;
}

// ------------------------------------------------------------- transport

namespace {

Matrix invert(const Matrix& m) {
  const Index n = m.rows();
  if (m.cols() != n || rank(m) != n) throw std::invalid_argument("matrix is not invertible");
  std::vector<SparseVec> cols;
  for (Index i = 0; i < n; ++i) {
    Vector e(n);
    e[i] = 1;
    cols.push_back(SparseVec::from_dense(*solve(m, e)));
  }
  return Matrix::from_columns(n, std::move(cols));
}

}  // namespace

K3PatternModel k3_pattern_coalgebra(const FiniteVariety& v, const Vector& base_class) {
  const Index q = v.chow_dim();
  if (base_class.size() != q) throw DimensionMismatch("base class has the wrong length");
  Rational degree(0);
  for (const auto& c : base_class) degree += c;
  if (degree != 1) throw InvalidModel("base class must have degree one");

  std::vector<SparseVec> cols{SparseVec::from_dense(base_class)};
  std::vector<std::string> labels{"o"};
  std::vector<int> grades{0};
  const auto reps = v.chow_labels();
  for (Index j = 0; j < q && cols.size() < q; ++j) {
    Vector a = scale(base_class, -1);
    a[j] += 1;
    auto candidate = cols;
    candidate.push_back(SparseVec::from_dense(a));
    if (Subspace::span(q, candidate).dim() == candidate.size()) {
      cols = std::move(candidate);
      labels.push_back(reps[j] + "-o");
      grades.push_back(1);
    }
  }
  K3PatternModel out;
  out.basis = Matrix::from_columns(q, cols);
  out.inverse = invert(out.basis);
  Matrix delta(q * q, q);
  delta.set_column(0, SparseVec::unit(0));
  for (Index j = 1; j < q; ++j) delta.set_column(j, SparseVec::from_terms({{j * q, Rational(1)}, {j, Rational(1)}}));
  Matrix eps(1, q);
  eps.set_column(0, SparseVec::unit(0));
  Vector u(q);
  u[0] = 1;
  out.coalgebra = Coalgebra(GradedSpace(labels, grades), std::move(delta), std::move(eps), u);
  return out;
}

K3PatternModel k3_pattern_coalgebra(const FiniteVariety& v, const std::string& base_point) {
  auto idx = v.index_of(base_point);
  if (!idx) throw InvalidModel("unknown point '" + base_point + "'");
  return k3_pattern_coalgebra(v, v.quotient().column(*idx).to_dense(v.chow_dim()));
}

TransportResult transport_grading(const Coalgebra& source, const Coalgebra& target, const Matrix& f,
                                  const Matrix& f_inv, const Limits& limits) {
  const Index d = source.dim();
  if (f.rows() != target.dim() || f.cols() != d || f_inv.rows() != d || f_inv.cols() != target.dim()) {
    throw DimensionMismatch("iso has the wrong shape");
  }
  if (!is_coalgebra_morphism(f, source, target)) throw NotACoalgebraMorphism("map is not a co-algebra morphism");
  if (!(f * f_inv == Matrix::identity(target.dim())) || !(f_inv * f == Matrix::identity(d))) {
    throw NotACoalgebraMorphism("given inverse does not invert the map");
  }
  const Vector& u = source.require_unit();
  TransportResult out;
  std::vector<std::string> labels;
  for (const auto& l : source.space.labels()) labels.push_back("f(" + l + ")");
  Matrix delta = apply_on_factor(f_inv, 1, target.dim(), target.comult * f);
  delta = apply_on_factor(f_inv, d, 1, delta);
  out.transported =
      Coalgebra(GradedSpace(labels, source.space.grades()), std::move(delta), target.counit * f, u);
  out.grading = check_unital_grading(out.transported, u);

  const unsigned kmax = static_cast<unsigned>(std::max(source.space.top_grade(), 0));
  Filtration rs = coradical_filtration(source, u, kmax, limits);
  Filtration rt = coradical_filtration(target, f.apply(u), kmax, limits);
  out.coradical_corresponds = true;
  for (unsigned k = 0; k <= kmax; ++k) {
    out.coradical_corresponds =
        out.coradical_corresponds && Subspace::column_space(f * rs.steps[k].basis_matrix()) == rt.steps[k];
  }
  return out;
}

}  // namespace coalg
