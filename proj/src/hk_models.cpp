#include "coalg/hk_models.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace coalg {

std::vector<std::string> primitive_labels(int t) {
  std::vector<std::string> labels;
  for (int i = 1; i <= t; ++i) labels.push_back("a" + std::to_string(i));
  return labels;
}

K3Model build_k3(int t, const Limits& limits) {
  if (t < 1) throw InvalidModel("K3 model needs t >= 1");
  return K3Model{t, TruncatedSymmetric(primitive_labels(t), 1, "o", limits)};
}

HilbModel build_hilb(int n, int t, const Limits& limits) {
  if (t < 1 || n < 1) throw InvalidModel("Hilbert scheme model needs n >= 1 and t >= 1");
  return HilbModel{n, t, TruncatedSymmetric(primitive_labels(t), static_cast<unsigned>(n), "o", limits)};
}

namespace {

Index primitive_index(const HilbModel& m, const std::string& label) {
  const auto& vars = m.sym.variable_labels();
  auto it = std::find(vars.begin(), vars.end(), label);
  if (it == vars.end()) throw InvalidModel("unknown primitive label '" + label + "'");
  return static_cast<Index>(it - vars.begin());
}

}  // namespace

Vector hilb_point_class(const HilbModel& m, const PointSpec& spec) {
  if (static_cast<int>(spec.labels.size()) > m.n) throw InvalidModel("point has more than n non-o slots");
  Vector acc = m.unit();
  for (const auto& label : spec.labels) {
    Vector factor = m.unit();
    factor[m.sym.variable_index(primitive_index(m, label))] = 1;
    acc = m.sym.multiply(acc, factor);
  }
  return acc;
}

int voisin_level(const PointSpec& spec) { return static_cast<int>(spec.labels.size()); }

std::vector<PointSpec> point_specs_of_level(const HilbModel& m, int k) {
  std::vector<PointSpec> out;
  const auto& vars = m.sym.variable_labels();
  for (const auto& e : exponents_of_degree(vars.size(), static_cast<unsigned>(k))) {
    PointSpec spec;
    for (Index i = 0; i < e.size(); ++i) spec.labels.insert(spec.labels.end(), e[i], vars[i]);
    out.push_back(std::move(spec));
  }
  return out;
}

Filtration voisin_filtration(const HilbModel& m) {
  Filtration f;
  std::vector<Vector> classes;
  for (int k = 0; k <= m.n; ++k) {
    for (const auto& spec : point_specs_of_level(m, k)) classes.push_back(hilb_point_class(m, spec));
    f.steps.push_back(Subspace::span_dense(m.sym.dim(), classes));
    if (!f.exhaustive_at && f.steps.back().dim() == m.sym.dim()) f.exhaustive_at = k;
  }
  return f;
}

MuKResult mu_k(const HilbModel& m, int k, const Limits& limits) {
  if (k < 1 || k > m.n) throw std::invalid_argument("mu_k needs 1 <= k <= n");
  MuKResult out;
  out.k = k;
  const Coalgebra& c = m.coalgebra();
  const Index d = c.dim();
  const Index t = m.sym.variables();
  const Index words = checked_power(t, static_cast<unsigned>(k), limits);

  out.mu = Matrix(d, words);
  std::vector<Index> rows_of_words;  // index of each word inside M^{(x)k}
  for (Index w = 0; w < words; ++w) {
    Exponents e(t, 0);
    Index rest = w;
    Index flat = 0;
    std::vector<Index> letters(k);
    for (int p = k; p-- > 0;) {
      letters[p] = rest % t;
      rest /= t;
    }
    for (Index letter : letters) {
      ++e[letter];
      flat = flat * d + m.sym.variable_index(letter);
    }
    rows_of_words.push_back(flat);
    out.mu.set_column(w, SparseVec::unit(m.sym.index_of(e)));
  }

  auto grade_k = c.space.indices_of_grade(k);
  Matrix full = iterated_reduced_comult(c, m.unit(), static_cast<unsigned>(k - 1), limits).select_columns(grade_k);
  out.reduced = full.select_rows(rows_of_words);
  const bool lands_in_grade_one = out.reduced.nonzeros() == full.nonzeros();

  const Rational kf = factorial(static_cast<unsigned>(k));
  Matrix mu_k_rows = out.mu.select_rows(grade_k);
  out.left_inverse_ok =
      lands_in_grade_one && mu_k_rows * out.reduced == Matrix::identity(grade_k.size()).scaled(kf);
  out.right_inverse_ok =
      lands_in_grade_one && out.reduced * mu_k_rows == symmetrizer(t, static_cast<unsigned>(k)).scaled(kf);
  return out;
}

PointClassExpansion hilb_point_expansion(const HilbModel& m, const PointSpec& spec, const Limits& limits) {
  const int k = voisin_level(spec);
  if (k < 1) throw std::invalid_argument("expansion needs a point with at least one non-o slot");
  const Coalgebra& c = m.coalgebra();
  const Index d = c.dim();
  PointClassExpansion out;
  Vector x = hilb_point_class(m, spec);
  out.reduced = iterated_reduced_comult(c, m.unit(), static_cast<unsigned>(k - 1), limits).apply(SparseVec::from_dense(x));

  std::vector<Index> basis;
  for (const auto& label : spec.labels) basis.push_back(m.sym.variable_index(primitive_index(m, label)));
  std::vector<Index> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<SparseVec::Term> terms;
  do {
    Index flat = 0;
    for (int p = 0; p < k; ++p) flat = flat * d + basis[order[p]];
    terms.emplace_back(flat, Rational(1));
  } while (std::next_permutation(order.begin(), order.end()));
  out.permutation_sum = SparseVec::from_terms(std::move(terms));
  return out;
}

// --------------------------------------------------------------------- Fano

Vector FanoModel::unit() const {
  Vector u(coalgebra.dim());
  u[0] = 1;
  return u;
}

FanoModel build_fano(int lines, std::vector<Triangle> triangles) {
  if (lines < 1) throw InvalidModel("Fano model needs at least one line");
  std::set<std::set<int>> seen_triangles;
  std::set<std::pair<int, int>> seen_pairs;
  for (const auto& tri : triangles) {
    for (int l : tri) {
      if (l < 0 || l >= lines) throw InvalidModel("triangle refers to line " + std::to_string(l) + " out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) throw InvalidModel("triangle repeats a line");
    if (!seen_triangles.insert({tri[0], tri[1], tri[2]}).second) throw InvalidModel("duplicate triangle");
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        auto pair = std::minmax(tri[i], tri[j]);
        if (!seen_pairs.insert(pair).second) {
          throw InvalidModel("two triangles share the lines " + std::to_string(pair.first) + " and " +
                             std::to_string(pair.second));
        }
      }
    }
  }

  FanoModel m;
  m.lines = lines;
  m.triangles = std::move(triangles);
  const Index d = 1 + static_cast<Index>(lines) + m.triangles.size();
  std::vector<std::string> labels{"o"};
  std::vector<int> grades{0};
  for (int l = 0; l < lines; ++l) {
    labels.push_back("b" + std::to_string(l));
    grades.push_back(1);
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    labels.push_back("t" + std::to_string(t));
    grades.push_back(2);
  }

  Matrix delta(d * d, d);
  delta.set_column(0, SparseVec::unit(0));
  auto primitive_part = [&](Index j) {
    return std::vector<SparseVec::Term>{{j * d, Rational(1)}, {j, Rational(1)}};
  };
  for (int l = 0; l < lines; ++l) {
    Index j = m.line_index(l);
    delta.set_column(j, SparseVec::from_terms(primitive_part(j)));
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    Index j = m.triangle_index(t);
    auto terms = primitive_part(j);
    for (int l : m.triangles[t]) terms.emplace_back(m.line_index(l) * d + m.line_index(l), Rational(1));
    delta.set_column(j, SparseVec::from_terms(std::move(terms)));
  }
  Matrix eps(1, d);
  eps.set_column(0, SparseVec::unit(0));
  Vector u(d);
  u[0] = 1;
  m.coalgebra = Coalgebra(GradedSpace(labels, grades), std::move(delta), std::move(eps), u);
  m.phi = Matrix(d, d);
  for (Index i = 0; i < d; ++i) m.phi.set(i, i, power(Rational(-2), static_cast<unsigned>(grades[i])));
  return m;
}


FanoProjectors fano_eigenprojectors(const FanoModel& m) {
  FanoProjectors out;
  const Index d = m.coalgebra.dim();
  const Matrix id = Matrix::identity(d);
  for (int k = 0; k < 3; ++k) {
    Matrix p = id;
    for (int j = 0; j < 3; ++j) {
      if (j == k) continue;
      p = p * (m.phi - id.scaled(out.eigenvalues[j])).scaled(1 / (out.eigenvalues[k] - out.eigenvalues[j]));
    }
    out.projectors[k] = std::move(p);
  }
  out.idempotent = true;
  out.orthogonal = true;
  out.images_are_grades = true;
  Matrix sum(d, d);
  for (int k = 0; k < 3; ++k) {
    out.idempotent = out.idempotent && is_idempotent(out.projectors[k]);
    for (int j = k + 1; j < 3; ++j) out.orthogonal = out.orthogonal && are_orthogonal(out.projectors[k], out.projectors[j]);
    std::vector<SparseVec> grade_vectors;
    for (Index i : m.coalgebra.space.indices_of_grade(k)) grade_vectors.push_back(SparseVec::unit(i));
    out.images_are_grades = out.images_are_grades && image(out.projectors[k]) == Subspace::span(d, grade_vectors);
    sum = sum + out.projectors[k];
  }
  out.sum_is_identity = sum == id;
  const Matrix phi2 = kronecker(m.phi, m.phi);
  out.comult_compatible = m.coalgebra.comult * m.phi == phi2 * m.coalgebra.comult;
  out.eigenspaces_respected = true;
  for (Index i = 0; i < d; ++i) {
    const Rational lambda = out.eigenvalues[m.coalgebra.space.grade(i)];
    SparseVec image_of = m.coalgebra.comult.apply(SparseVec::unit(i));
    SparseVec scaled = image_of;
    scaled.scale(lambda);
    out.eigenspaces_respected = out.eigenspaces_respected && phi2.apply(image_of) == scaled;
  }
  return out;
}

namespace {

// Symbols of the surface classes in CH^2: 0 = S_o, 1..3 = S_l for the lines
// of one triangle.
using Linear = std::array<Rational, 4>;
using Quadratic = std::map<std::pair<int, int>, Rational>;

void add_product(Quadratic& q, const Linear& a, const Linear& b, const Rational& c) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      auto key = std::minmax(i, j);
      q[key] += c * a[i] * b[j];
    }
  }
  std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
}

std::string symbol(const Triangle& tri, int s) { return s == 0 ? "S_o" : "S_l" + std::to_string(tri[s - 1]); }

std::string render(const Triangle& tri, const Quadratic& q) {
  std::string out;
  for (const auto& [key, c] : q) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (abs(c) != 1) out += to_string(Rational(abs(c))) + " ";
    out += key.first == key.second ? symbol(tri, key.first) + "^2" : symbol(tri, key.first) + "*" + symbol(tri, key.second);
  }
  return out.empty() ? "0" : out;
}

bool declared(const std::pair<int, int>& key) {
  return (key.first == 0 && key.second == 0) || (key.first >= 1 && key.first < key.second);
}

}  // namespace

FanoMuDeltaReport fano_mu_delta_check(const FanoModel& m, std::size_t triangle) {
  if (triangle >= m.triangles.size()) throw InvalidModel("no triangle " + std::to_string(triangle));
  const Triangle& tri = m.triangles[triangle];
  FanoMuDeltaReport out;
  out.triangle = triangle;

  // mu(L_* l_i (x) L_* l_i) summed over the triangle, L_* l = S_o - S_l.
  Quadratic q1;
  for (int i = 1; i <= 3; ++i) {
    Linear l{};
    l[0] = 1;
    l[i] = -1;
    out.first_step.push_back("L_*l" + std::to_string(tri[i - 1]) + " = S_o - " + symbol(tri, i));
    add_product(q1, l, l, Rational(1));
  }

  // Rewrite modulo S_l1 + S_l2 + S_l3 = 3 S_o until only the products in the
  // intersection table remain: find q with q1 - R q supported on them.
  const Linear relation{Rational(-3), Rational(1), Rational(1), Rational(1)};
  std::vector<std::pair<int, int>> undeclared;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (!declared({i, j})) undeclared.emplace_back(i, j);
    }
  }
  Matrix system(undeclared.size(), 4);
  for (int s = 0; s < 4; ++s) {
    Linear e{};
    e[s] = 1;
    Quadratic product;
    add_product(product, relation, e, Rational(1));
    for (Index r = 0; r < undeclared.size(); ++r) {
      auto it = product.find(undeclared[r]);
      if (it != product.end()) system.set(r, s, it->second);
    }
  }
  Vector target(undeclared.size());
  for (Index r = 0; r < undeclared.size(); ++r) {
    auto it = q1.find(undeclared[r]);
    if (it != q1.end()) target[r] = it->second;
  }
  auto multiplier = solve(system, target);
  if (!multiplier) throw InvalidModel("missing table entry: expression does not reduce to tabulated products");
  Linear q{};
  for (int s = 0; s < 4; ++s) q[s] = (*multiplier)[s];
  Quadratic reduced = q1;
  add_product(reduced, relation, q, Rational(-1));
  out.reduced_expression = render(tri, reduced);

  // Intersection table: S_o^2 = 5[o], S_li S_lj = 6[o] + [l_k] - [l_i] - [l_j].
  auto point = [&](int s) { return s == 0 ? std::string("o") : "l" + std::to_string(tri[s - 1]); };
  for (const auto& [key, c] : reduced) {
    if (!declared(key)) throw InvalidModel("missing table entry for " + render(tri, Quadratic{{key, Rational(1)}}));
    if (key.first == 0) {
      out.so_squared_contribution["o"] += 5 * c;
      out.result["o"] += 5 * c;
      continue;
    }
    const int k = 6 - key.first - key.second;
    out.result["o"] += 6 * c;
    out.result[point(k)] += c;
    out.result[point(key.first)] -= c;
    out.result[point(key.second)] -= c;
  }
  std::erase_if(out.result, [](const auto& kv) { return kv.second == 0; });

  const Rational f = out.result.count("o") ? out.result.at("o") / -3 : Rational(0);
  std::map<std::string, Rational> expected{{"o", -3 * f}};
  for (int i = 1; i <= 3; ++i) expected[point(i)] = f;
  std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
  if (expected == out.result) out.factor = f;
  return out;
}

}  // namespace coalg
