#pragma once

// Co-algebras too large to store as matrices (e.g. the group algebra of a
// lattice), given by procedures on basis keys and evaluated sparsely.

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "coalg/rational.hpp"

namespace coalg {

template <class Key>
class LazyCoalgebra {
 public:
  using Element = std::map<Key, Rational>;
  /// Formal combination of pure tensors of basis keys.
  using Tensor = std::map<std::vector<Key>, Rational>;
  using ComultFn = std::function<std::vector<std::tuple<Key, Key, Rational>>(const Key&)>;
  using CounitFn = std::function<Rational(const Key&)>;

  LazyCoalgebra(ComultFn comult, CounitFn counit) : comult_(std::move(comult)), counit_(std::move(counit)) {}

  static void add_to(Element& e, const Key& k, const Rational& v) {
    if (v == 0) return;
    auto [it, inserted] = e.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) e.erase(it);
    }
  }

  static void add_to(Tensor& t, const std::vector<Key>& k, const Rational& v) {
    if (v == 0) return;
    auto [it, inserted] = t.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) t.erase(it);
    }
  }

  Rational counit(const Element& x) const {
    Rational s(0);
    for (const auto& [k, v] : x) s += v * counit_(k);
    return s;
  }

  Tensor comult(const Element& x) const {
    Tensor out;
    for (const auto& [k, v] : x) {
      for (const auto& [a, b, c] : comult_(k)) add_to(out, {a, b}, v * c);
    }
    return out;
  }

  /// x_1 (x) ... (x) x_m
  static Tensor tensor_power(const Element& x, unsigned m) {
    Tensor acc{{std::vector<Key>{}, Rational(1)}};
    for (unsigned i = 0; i < m; ++i) {
      Tensor next;
      for (const auto& [keys, c] : acc) {
        for (const auto& [k, v] : x) {
          auto extended = keys;
          extended.push_back(k);
          add_to(next, extended, c * v);
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  static Element combine(const Element& a, const Rational& ca, const Element& b, const Rational& cb) {
    Element out;
    for (const auto& [k, v] : a) add_to(out, k, ca * v);
    for (const auto& [k, v] : b) add_to(out, k, cb * v);
    return out;
  }

  bool is_unit(const Element& u) const { return counit(u) == 1 && comult(u) == tensor_power(u, 2); }

  /// x - u eps(x)
  Element counit_complement(const Element& u, const Element& x) const {
    return combine(x, Rational(1), u, -counit(x));
  }

  /// (delta - u (x) id - id (x) u)(p-bar x)
  Tensor reduced_comult(const Element& u, const Element& x) const {
    Element p = counit_complement(u, x);
    Tensor out = comult(p);
    for (const auto& [a, va] : u) {
      for (const auto& [b, vb] : p) {
        add_to(out, {a, b}, -va * vb);
        add_to(out, {b, a}, -va * vb);
      }
    }
    return out;
  }

  /// delta-bar^k(x), leftmost expansion, evaluated sparsely.
  Tensor iterated_reduced_comult(const Element& u, const Element& x, unsigned k) const {
    Tensor acc;
    for (const auto& [key, v] : counit_complement(u, x)) add_to(acc, {key}, v);
    for (unsigned step = 0; step < k; ++step) {
      Tensor next;
      std::map<Key, Tensor> cache;
      for (const auto& [keys, c] : acc) {
        auto it = cache.find(keys.front());
        if (it == cache.end()) it = cache.emplace(keys.front(), reduced_comult(u, Element{{keys.front(), Rational(1)}})).first;
        for (const auto& [pair, v] : it->second) {
          std::vector<Key> extended = pair;
          extended.insert(extended.end(), keys.begin() + 1, keys.end());
          add_to(next, extended, c * v);
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  /// Co-unit and co-associativity on one element.
  bool spot_check(const Element& x) const {
    Tensor d = comult(x);
    Element left, right;
    for (const auto& [keys, v] : d) {
      add_to(left, keys[1], v * counit_(keys[0]));
      add_to(right, keys[0], v * counit_(keys[1]));
    }
    Element xs;
    for (const auto& [k, v] : x) add_to(xs, k, v);
    if (left != xs || right != xs) return false;
    Tensor l3, r3;
    for (const auto& [keys, v] : d) {
      for (const auto& [a, b, c] : comult_(keys[0])) add_to(l3, {a, b, keys[1]}, v * c);
      for (const auto& [a, b, c] : comult_(keys[1])) add_to(r3, {keys[0], a, b}, v * c);
    }
    return l3 == r3;
  }

 private:
  ComultFn comult_;
  CounitFn counit_;
};

}  // namespace coalg
