#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "coalg/incidence.hpp"

using namespace coalg;

namespace {

std::vector<std::string> names(const std::string& prefix, Index n) {
  std::vector<std::string> out;
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

CoverMap unit_map(std::vector<Index> target) {
  std::vector<Rational> mult(target.size(), Rational(1));
  return CoverMap{std::move(target), std::move(mult)};
}

// X = {p,q,r} <- G = {p1,p2,q1,q2,r1,r2} -> Y = {u,v,w}, both sides 2:1.
Cover double_cover() {
  FiniteVariety x({"p", "q", "r"}), y({"u", "v", "w"});
  FiniteVariety g({"p1", "p2", "q1", "q2", "r1", "r2"});
  return Cover(g, x, y, unit_map({0, 0, 1, 1, 2, 2}), unit_map({0, 0, 1, 1, 2, 2}));
}

Cover relation_cover(bool with_relation) {
  std::vector<Vector> rel;
  if (with_relation) rel.push_back(Vector{1, -1, 0});
  FiniteVariety a({"a", "b", "c"}, rel), b({"s", "t"});
  FiniteVariety k({"a1", "b1", "c1"});
  CoverMap psi{{0, 0, 1}, {Rational(1), Rational(1), Rational(2)}};
  return Cover(k, a, b, unit_map({0, 1, 2}), psi);
}

Matrix permutation_matrix(const std::vector<Index>& sigma) {
  Matrix p(sigma.size(), sigma.size());
  for (Index i = 0; i < sigma.size(); ++i) p.set(sigma[i], i, Rational(1));
  return p;
}

}  // namespace

TEST_CASE("finite varieties and their zero-cycle quotients") {
  FiniteVariety v({"a", "b", "c"}, {Vector{1, -1, 0}});
  CHECK(v.chow_dim() == 2);
  CHECK(v.chow_class(Vector{1, 0, 0}) == v.chow_class(Vector{0, 1, 0}));
  CHECK(v.chow_class(Vector{1, 0, 0}) != v.chow_class(Vector{0, 0, 1}));
  CHECK(v.quotient() * v.lift() == Matrix::identity(2));
  CHECK(v.chow_labels().size() == 2);
  CHECK_THROWS_AS(FiniteVariety({"a", "b"}, {Vector{1, 1}}), InvalidModel);
  CHECK_THROWS_AS(FiniteVariety({"a", "a"}), InvalidModel);

  FiniteVariety w({"x", "y"});
  FiniteVariety prod = FiniteVariety::product(v, w);
  CHECK(prod.size() == 6);
  CHECK(prod.chow_dim() == 4);
  CHECK(prod.index_of("b|y") == 3);
}

TEST_CASE("covers validate fiber degrees") {
  FiniteVariety x({"p", "q"}), y({"u"}), g({"g1", "g2", "g3"});
  CHECK_THROWS_AS(Cover(g, x, y, unit_map({0, 0, 1}), unit_map({0, 0, 0})), InvalidModel);
  Cover ok(g, x, y, CoverMap{{0, 0, 1}, {Rational(1), Rational(1), Rational(2)}}, unit_map({0, 0, 0}));
  CHECK(ok.degree(Side::Phi) == 2);
  CHECK(ok.degree(Side::Psi) == 3);
}

TEST_CASE("identity cover") {
  FiniteVariety v({"a", "b", "c"}, {Vector{1, 0, -1}});
  Cover c = identity_cover(v);
  CHECK(projection_formula(c, Side::Phi));
  CHECK(projection_formula(c, Side::Psi));
  ConditionReport r = check_conditions(c);
  CHECK(r.condition_i);
  CHECK(r.condition_ii);
  GammaMaps g = gamma_maps(c);
  CHECK(g.gamma == Matrix::identity(2));
  CHECK(g.gamma_prime == Matrix::identity(2));
  CHECK(g.two_sided);
  CHECK(comult_square(c));
}

TEST_CASE("double cover: point maps and projection formula") {
  Cover c = double_cover();
  Matrix push = point_pushforward(c, Side::Phi);
  Matrix pull = point_pullback(c, Side::Phi);
  CHECK(push.at(0, 1) == 1);
  CHECK(push.at(1, 1) == 0);
  CHECK(pull.at(2, 1) == 1);
  CHECK(pull.at(3, 1) == 1);
  CHECK(push * pull == Matrix::identity(3).scaled(2));
  CHECK(projection_formula(c, Side::Phi));
  CHECK(projection_formula(c, Side::Psi));
  GammaMaps g = gamma_maps(c);
  CHECK(g.gamma == Matrix::identity(3));
  CHECK(g.left_inverse);
  CHECK(g.two_sided);
  CHECK(comult_square(c));
}

TEST_CASE("condition (i) can depend on a rational equivalence") {
  Cover with = relation_cover(true);
  ConditionReport r = check_conditions(with);
  CHECK(r.condition_i);
  CHECK(r.condition_ii);
  GammaMaps g = gamma_maps(with);
  CHECK(g.two_sided);
  CHECK(comult_square(with));

  Cover without = relation_cover(false);
  ConditionReport bad = check_conditions(without);
  CHECK_FALSE(bad.condition_i);
  CHECK_FALSE(bad.condition_ii);
  REQUIRE(bad.witness);
  CHECK(bad.witness->fiber_over == "s");
  CHECK_THROWS_AS(gamma_maps(without), InvalidModel);
}

TEST_CASE("randomized block covers: conditions agree with a direct fiber scan") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Index nx = 2 + trial % 4, d = 1 + trial % 3;
    const Index ng = nx * d;
    // Gamma = X x {0..d-1}, phi the projection; psi chops a shuffled Gamma
    // into equal blocks.
    std::vector<Index> phi_target(ng), order(ng);
    for (Index i = 0; i < ng; ++i) phi_target[i] = i / d;
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Index> divisors;
    for (Index m = 1; m <= ng; ++m)
      if (ng % m == 0) divisors.push_back(m);
    const Index ny = divisors[rng() % divisors.size()];
    const Index block = ng / ny;
    std::vector<Index> psi_target(ng);
    for (Index pos = 0; pos < ng; ++pos) psi_target[order[pos]] = pos / block;

    Cover c(FiniteVariety(names("g", ng)), FiniteVariety(names("x", nx)), FiniteVariety(names("y", ny)),
            unit_map(phi_target), unit_map(psi_target));
    bool expected = true;
    for (Index i = 0; i < ng; ++i)
      for (Index j = 0; j < ng; ++j)
        if (psi_target[i] == psi_target[j] && phi_target[i] != phi_target[j]) expected = false;
    ConditionReport r = check_conditions(c);
    CHECK(r.condition_i == expected);
    CHECK(r.agree());
    CHECK(projection_formula(c, Side::Phi));
    CHECK(projection_formula(c, Side::Psi));
  }
}

TEST_CASE("randomized permutation covers give permutation gammas") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5, d = 1 + trial % 3;
    std::vector<Index> sigma(n);
    std::iota(sigma.begin(), sigma.end(), Index{0});
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Index> phi_target, psi_target;
    std::vector<Rational> phi_mult, psi_mult;
    for (Index x = 0; x < n; ++x) {
      // fiber of size 1 or 2 with multiplicities summing to d
      const bool split = d > 1 && rng() % 2;
      std::vector<Rational> mults = split ? std::vector<Rational>{Rational(1), Rational(static_cast<long>(d) - 1)}
                                          : std::vector<Rational>{Rational(static_cast<long>(d))};
      for (const auto& m : mults) {
        phi_target.push_back(x);
        psi_target.push_back(sigma[x]);
        phi_mult.push_back(m);
        psi_mult.push_back(m);
      }
    }
    Cover c(FiniteVariety(names("g", phi_target.size())), FiniteVariety(names("x", n)), FiniteVariety(names("y", n)),
            CoverMap{phi_target, phi_mult}, CoverMap{psi_target, psi_mult});
    GammaMaps g = gamma_maps(c);
    CHECK(g.gamma == permutation_matrix(sigma));
    CHECK(g.two_sided);
    CHECK(comult_square(c));
  }
}

TEST_CASE("fiber composition multiplies degrees and composes gammas") {
  Cover c = double_cover();
  FiniteVariety y({"u", "v", "w"}), z({"z1", "z2", "z3"});
  FiniteVariety h({"u1", "u2", "v1", "v2", "w1", "w2"});
  Cover d(h, y, z, unit_map({0, 0, 1, 1, 2, 2}), unit_map({1, 1, 2, 2, 0, 0}));
  ComposedCover cd = fiber_compose(c, d);
  REQUIRE(cd.cover);
  CHECK_FALSE(cd.empty);
  CHECK(cd.cover->gamma().size() == 12);
  CHECK(cd.cover->degree(Side::Phi) == 4);
  CHECK(cd.cover->degree(Side::Psi) == 4);
  CHECK(gamma_maps(*cd.cover).gamma == gamma_maps(d).gamma * gamma_maps(c).gamma);
  CHECK(check_conditions(*cd.cover).condition_i);

  FiniteVariety other({"m", "n", "o"});
  Cover e(h, other, z, unit_map({0, 0, 1, 1, 2, 2}), unit_map({1, 1, 2, 2, 0, 0}));
  CHECK_THROWS(fiber_compose(c, e));
}

TEST_CASE("K3-pattern co-algebra on zero-cycles") {
  FiniteVariety v({"a", "b", "c"});
  K3PatternModel m = k3_pattern_coalgebra(v, "a");
  CHECK(m.coalgebra.dim() == 3);
  CHECK(check_axioms(m.coalgebra).all());
  REQUIRE(m.coalgebra.unit);
  CHECK(check_unital_grading(m.coalgebra, *m.coalgebra.unit).ok());
  CHECK(m.basis * m.inverse == Matrix::identity(3));
  // basis: o = [a], then [b] - [a], [c] - [a]
  CHECK(m.basis.column(0) == SparseVec::unit(0));
  CHECK(m.basis.column(1) == SparseVec::from_dense({-1, 1, 0}));
  CHECK_THROWS(k3_pattern_coalgebra(v, Vector{1, 1, 0}));
}

TEST_CASE("grading transport along co-algebra isomorphisms") {
  FiniteVariety v({"a", "b", "c"});
  K3PatternModel m = k3_pattern_coalgebra(v, "a");
  const Matrix id = Matrix::identity(3);
  CHECK(transport_grading(m.coalgebra, m.coalgebra, id, id).ok());

  // relabeling the points
  FiniteVariety w({"c", "a", "b"});
  K3PatternModel mw = k3_pattern_coalgebra(w, "a");
  Matrix relabel = permutation_matrix({1, 2, 0});
  Matrix f = mw.inverse * relabel * m.basis;
  Matrix f_inv = m.inverse * relabel.transpose() * mw.basis;
  CHECK(transport_grading(m.coalgebra, mw.coalgebra, f, f_inv).ok());

  // the gamma pair of a cover
  Cover c = relation_cover(true);
  GammaMaps g = gamma_maps(c);
  K3PatternModel sx = k3_pattern_coalgebra(c.x(), "a");
  K3PatternModel sy = k3_pattern_coalgebra(c.y(), "s");
  TransportResult t = transport_grading(sx.coalgebra, sy.coalgebra, sy.inverse * g.gamma * sx.basis,
                                        sx.inverse * g.gamma_prime * sy.basis);
  CHECK(t.ok());
  CHECK(t.transported.space.grade(1) == 1);

  CHECK_THROWS_AS(transport_grading(m.coalgebra, m.coalgebra, id.scaled(2), id.scaled(Rational(1, 2))),
                  NotACoalgebraMorphism);
}
