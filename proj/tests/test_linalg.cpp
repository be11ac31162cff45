#include <doctest.h>

#include <random>

#include "coalg/linalg.hpp"

using namespace coalg;

namespace {

Matrix random_matrix(std::mt19937& rng, Index rows, Index cols, int density_percent = 50) {
  std::uniform_int_distribution<int> coin(0, 99), val(-3, 3);
  std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
  for (auto& row : dense) {
    for (auto& v : row) {
      if (coin(rng) < density_percent) v = val(rng);
    }
  }
  return Matrix::from_dense(dense);
}

// Dense Kronecker product written directly from the index formula.
std::vector<std::vector<Rational>> naive_kron(const Matrix& a, const Matrix& b) {
  std::vector<std::vector<Rational>> out(a.rows() * b.rows(), std::vector<Rational>(a.cols() * b.cols()));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out[i * b.rows() + k][j * b.cols() + l] = a.at(i, j) * b.at(k, l);
  return out;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK(to_string(Rational(-7)) == "-7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
  CHECK(power(Rational(-2), 3) == -8);
}

TEST_CASE("sparse vectors drop zeros and merge duplicates") {
  SparseVec v = SparseVec::from_terms({{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}, {0, Rational(0)}});
  REQUIRE(v.size() == 1);
  CHECK(v.leading_index() == 1);
  CHECK(v.at(1) == 2);
  CHECK(v.at(3) == 0);
  SparseVec w = SparseVec::unit(1);
  v.add_scaled(w, -2);
  CHECK(v.empty());
}

TEST_CASE("echelon form, rank and kernel on a hand example") {
  // rows (1 2 3), (2 4 6), (1 0 1): rank 2, kernel spanned by (-1, -1, 1)
  Matrix m = Matrix::from_dense({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  Subspace k = kernel_basis(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(Vector{-1, -1, 1}));
  auto rref = reduced_echelon(m.row_vectors());
  REQUIRE(rref.size() == 2);
  CHECK(rref[0] == SparseVec::from_dense({1, 0, 1}));
  CHECK(rref[1] == SparseVec::from_dense({0, 1, 1}));
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_matrix(rng, 1 + trial % 5, 1 + (trial * 3) % 7, 40);
    Subspace k = kernel_basis(m);
    CHECK(rank(m) + k.dim() == m.cols());
    for (const auto& b : k.basis()) CHECK(m.apply(b).empty());
  }
}

TEST_CASE("subspace equality is basis independent") {
  Subspace a = Subspace::span_dense(3, {{1, 1, 0}, {0, 1, 1}});
  Subspace b = Subspace::span_dense(3, {{1, 2, 1}, {1, 0, -1}});
  CHECK(a == b);
  CHECK(a.contains(Vector{2, 3, 1}));
  CHECK_FALSE(a.contains(Vector{0, 0, 1}));
  CHECK((a + Subspace::span_dense(3, {{0, 0, 1}})) == Subspace::full(3));
  auto coords = a.coordinates(SparseVec::from_dense({2, 3, 1}));
  CHECK(a.basis_matrix().apply(coords) == Vector{2, 3, 1});
}

TEST_CASE("kronecker agrees with the index formula") {
  std::mt19937 rng(11);
  Matrix a = random_matrix(rng, 2, 3);
  Matrix b = random_matrix(rng, 3, 2);
  Matrix k = kronecker(a, b);
  CHECK(k == Matrix::from_dense(naive_kron(a, b)));
}

TEST_CASE("apply_on_factor equals multiplication by id (x) f (x) id") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Index left = 1 + trial % 3, right = 1 + (trial / 3) % 3;
    Matrix f = random_matrix(rng, 2, 3);
    Matrix g = random_matrix(rng, left * 3 * right, 4);
    Matrix expected = kronecker(kronecker(Matrix::identity(left), f), Matrix::identity(right)) * g;
    CHECK(apply_on_factor(f, left, right, g) == expected);
  }
}

TEST_CASE("factor permutation moves tensor factors") {
  // dims (2, 3): swap sends e_i (x) e_j to e_j (x) e_i
  std::vector<Index> dims{2, 3}, perm{1, 0};
  Matrix p = factor_permutation(dims, perm);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(p.apply(SparseVec::unit(i * 3 + j)) == SparseVec::unit(j * 2 + i));
  }
}

TEST_CASE("solve returns exact solutions or nothing") {
  Matrix m = Matrix::from_dense({{1, 1}, {1, -1}});
  auto x = solve(m, Vector{3, 1});
  REQUIRE(x);
  CHECK(*x == Vector{2, 1});
  Matrix singular = Matrix::from_dense({{1, 1}, {2, 2}});
  CHECK_FALSE(solve(singular, Vector{1, 0}));
}

TEST_CASE("tensor power cap") {
  Limits small;
  small.tensor_cap = 100;
  CHECK(checked_power(10, 2, small) == 100);
  CHECK_THROWS_AS(checked_power(10, 3, small), TensorCapExceeded);
}

TEST_CASE("idempotents and orthogonality") {
  Matrix p = Matrix::from_dense({{1, 0}, {0, 0}});
  Matrix q = Matrix::from_dense({{0, 0}, {0, 1}});
  CHECK(is_idempotent(p));
  CHECK(are_orthogonal(p, q));
  CHECK_FALSE(is_idempotent(Matrix::from_dense({{2, 0}, {0, 0}})));
}
