#include "coalg/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "coalg/abelian_models.hpp"
#include "coalg/hk_models.hpp"
#include "coalg/incidence.hpp"
#include "coalg/model_file.hpp"

namespace coalg {

int Report::exit_code() const {
  if (error) return 2;
  for (const auto& c : checks) {
    if (!c.pass) return 1;
  }
  return 0;
}

int combined_exit_code(const std::vector<Report>& reports) {
  int code = 0;
  for (const auto& r : reports) code = std::max(code, r.exit_code());
  return code;
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string point_name(const Point& p) {
  std::vector<std::string> parts;
  for (auto v : p) parts.push_back(std::to_string(v));
  return "(" + join(parts, ",") + ")";
}

std::string render_symbols(const std::map<std::string, Rational>& m) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : m) parts.push_back(k + ":" + to_string(v));
  return parts.empty() ? "0" : join(parts, " ");
}

std::string render_dims(const Filtration& f) {
  std::vector<std::string> parts;
  for (const auto& s : f.steps) parts.push_back(std::to_string(s.dim()));
  return join(parts, " ");
}

/// Built models for one definition.
struct Context {
  ModelDefinition def;
  std::optional<K3Model> k3;
  std::optional<HilbModel> hilb;
  std::optional<FanoModel> fano;
  std::optional<TruncatedAbelianModel> abelian;
  std::optional<Coalgebra> raw;

  const Coalgebra* coalgebra() const {
    if (k3) return &k3->coalgebra();
    if (hilb) return &hilb->coalgebra();
    if (fano) return &fano->coalgebra;
    if (abelian) return &abelian->coalgebra();
    if (raw) return &*raw;
    return nullptr;
  }

  /// Named point classes, for the separation property.
  std::vector<std::pair<std::string, Vector>> point_classes() const {
    std::vector<std::pair<std::string, Vector>> out;
    if (k3) {
      out.emplace_back("[o]", k3->unit());
      for (Index i = 0; i < k3->sym.variables(); ++i) {
        out.emplace_back("[x" + std::to_string(i + 1) + "]", add(k3->unit(), k3->sym.variable(i)));
      }
    } else if (hilb) {
      for (int k = 0; k <= hilb->n; ++k) {
        for (const auto& spec : point_specs_of_level(*hilb, k)) {
          auto labels = spec.labels;
          labels.resize(hilb->n, "o");
          out.emplace_back("[" + join(labels, ",") + "]", hilb_point_class(*hilb, spec));
        }
      }
    } else if (abelian) {
      for (std::size_t p = 0; p < abelian->points.size(); ++p) {
        out.emplace_back("[" + point_name(abelian->points[p]) + "]", point_class(*abelian, p));
      }
    } else if (fano) {
      out.emplace_back("[o]", fano->unit());
      for (int l = 0; l < fano->lines; ++l) {
        Vector v = fano->unit();
        v[fano->line_index(l)] = 1;
        out.emplace_back("[l" + std::to_string(l) + "]", v);
      }
    }
    return out;
  }
};

Context build_context(ModelDefinition def, const Limits& limits) {
  Context ctx;
  ctx.def = std::move(def);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, K3Spec>) {
          ctx.k3 = build_k3(s.t, limits);
        } else if constexpr (std::is_same_v<T, HilbSpec>) {
          ctx.hilb = build_hilb(s.n, s.t, limits);
        } else if constexpr (std::is_same_v<T, FanoSpec>) {
          ctx.fano = build_fano(s.lines, s.triangles);
        } else if constexpr (std::is_same_v<T, AbelianTruncSpec>) {
          ctx.abelian = build_abelian_trunc(s.g, s.r, s.points, limits);
        } else if constexpr (std::is_same_v<T, RawSpec>) {
          ctx.raw = s.coalgebra;
        }
      },
      ctx.def.spec);
  return ctx;
}

class NotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Runner {
 public:
  Runner(Report& report, const CommandOptions& opts) : report_(report), opts_(opts) {}

  void add(const std::string& name, const std::function<void(Check&)>& body) {
    Check c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const RelationNotPreserved& e) {
      c.pass = false;
      c.details.emplace_back("relation", e.what());
    }
    if (opts_.timings) {
      c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    report_.checks.push_back(std::move(c));
  }

  const CommandOptions& opts() const { return opts_; }

 private:
  Report& report_;
  const CommandOptions& opts_;
};

const Coalgebra& require_matrix_model(const Context& ctx) {
  const Coalgebra* c = ctx.coalgebra();
  if (!c) throw NotApplicable("command does not apply to kind " + ctx.def.kind);
  return *c;
}

bool has_valid_grading(const Coalgebra& c) {
  return c.unit && c.space.graded() && check_unital_grading(c, *c.unit).ok();
}

// ------------------------------------------------------------- sections

void validate_section(const Context& ctx, Runner& run) {
  const Limits& limits = run.opts().limits;
  if (const Coalgebra* c = ctx.coalgebra()) {
    const AxiomReport ax = check_axioms(*c, limits);
    auto axiom = [&](const std::string& name, bool ok, bool first_failure) {
      run.add(name, [&](Check& ch) {
        ch.pass = ok;
        ch.details.emplace_back("dim", std::to_string(c->dim()));
        if (!ok && first_failure && ax.witness) ch.details.emplace_back("witness", c->space.label(*ax.witness));
      });
    };
    axiom("axioms.counit", ax.counit_ok, !ax.counit_ok);
    axiom("axioms.coassociativity", ax.coassoc_ok, ax.counit_ok && !ax.coassoc_ok);
    axiom("axioms.cocommutativity", ax.cocomm_ok, ax.counit_ok && ax.coassoc_ok && !ax.cocomm_ok);
    run.add("unit", [&](Check& ch) {
      ch.pass = c->unit && is_unit(*c, *c->unit);
      ch.details.emplace_back("unit", c->unit ? format_vector(c->space, *c->unit) : "absent");
    });
    if (c->unit && c->space.graded()) {
      run.add("grading.unital", [&](Check& ch) {
        GradingReport g = check_unital_grading(*c, *c->unit);
        ch.pass = g.ok();
        std::vector<std::string> dims;
        for (const auto& b : c->space.blocks()) dims.push_back(std::to_string(b.grade) + ":" + std::to_string(b.dim()));
        ch.details.emplace_back("grade dims", join(dims, " "));
        for (const auto& v : g.violations) {
          ch.details.emplace_back(v.condition, v.detail);
          ch.details.emplace_back("witness", format_vector(c->space, v.witness));
        }
      });
    }
    return;
  }
  if (const auto* lazy = std::get_if<AbelianLazySpec>(&ctx.def.spec)) {
    GroupCoalgebra gc = group_coalgebra();
    for (const auto& p : lazy->points) {
      run.add("lazy.unit" + point_name(p), [&](Check& ch) {
        auto x = point_element(p);
        ch.pass = gc.is_unit(x) && gc.spot_check(x);
      });
    }
    return;
  }
  if (const auto* inc = std::get_if<IncidenceSpec>(&ctx.def.spec)) {
    for (const auto& cs : inc->covers) {
      run.add("cover[" + cs.name + "].degrees", [&](Check& ch) {
        Cover c = build_cover(*inc, cs);
        ch.pass = true;
        ch.details.emplace_back("deg phi", to_string(c.degree(Side::Phi)));
        ch.details.emplace_back("deg psi", to_string(c.degree(Side::Psi)));
        ch.details.emplace_back("CH0 dims", std::to_string(c.x().chow_dim()) + " " +
                                                std::to_string(c.gamma().chow_dim()) + " " +
                                                std::to_string(c.y().chow_dim()));
      });
    }
  }
}

void coradical_section(const Context& ctx, Runner& run) {
  const Coalgebra& c = require_matrix_model(ctx);
  const Limits& limits = run.opts().limits;
  if (!c.unit) throw NotApplicable("co-radical filtration needs a unit");
  const Vector& u = *c.unit;
  if (has_valid_grading(c)) {
    const CoradicalGradingReport rep = coradical_equals_grading(c, u, limits);
    for (const auto& step : rep.steps) {
      run.add("coradical.R" + std::to_string(step.k) + "=G" + std::to_string(step.k), [&](Check& ch) {
        ch.pass = step.equal;
        ch.details.emplace_back("dim G", std::to_string(step.grading_dim));
        ch.details.emplace_back("dim R", std::to_string(step.coradical_dim));
        ch.details.emplace_back("G in R", yes_no(step.contained));
        if (!step.equal) ch.details.emplace_back("witness", format_vector(c.space, step.witness));
      });
    }
    run.add("coradical.consistent_with_strictness", [&](Check& ch) {
      ch.pass = rep.consistent();
      ch.details.emplace_back("strict", yes_no(rep.strict));
    });
    const int top = c.space.top_grade();
    run.add("coradical.vanishing", [&](Check& ch) {
      ch.pass = iterated_reduced_comult(c, u, static_cast<unsigned>(top), limits).is_zero();
      ch.details.emplace_back("power", std::to_string(top));
    });
  }
  const unsigned kmax = run.opts().kmax.value_or(
      c.space.graded() ? static_cast<unsigned>(std::max(c.space.top_grade(), 1)) : static_cast<unsigned>(c.dim()));
  run.add("coradical.filtration", [&](Check& ch) {
    Filtration f = coradical_filtration(c, u, kmax, limits);
    ch.pass = true;
    ch.details.emplace_back("dims", render_dims(f));
    ch.details.emplace_back("exhaustive at", f.exhaustive_at ? std::to_string(*f.exhaustive_at) : "not within kmax");
  });
  if (ctx.hilb) {
    run.add("hilb.voisin_filtration", [&](Check& ch) {
      Filtration s = voisin_filtration(*ctx.hilb);
      Filtration g = grading_filtration(c);
      Filtration r = coradical_filtration(c, u, static_cast<unsigned>(ctx.hilb->n), limits);
      ch.pass = true;
      for (int k = 0; k <= ctx.hilb->n; ++k) ch.pass = ch.pass && s.steps[k] == g.steps[k] && s.steps[k] == r.steps[k];
      ch.details.emplace_back("dims S", render_dims(s));
    });
  }
}

void strict_section(const Context& ctx, Runner& run) {
  const Coalgebra& c = require_matrix_model(ctx);
  run.add("strict", [&](Check& ch) {
    if (!has_valid_grading(c)) {
      ch.pass = false;
      ch.details.emplace_back("grading", "no verified unital grading");
      return;
    }
    StrictReport s = check_strict(c, *c.unit, run.opts().limits);
    ch.pass = s.strict;
    for (const auto& [k, ok] : s.per_grade) {
      ch.details.emplace_back("grade " + std::to_string(k), ok ? "injective" : "not injective");
    }
    ch.details.emplace_back("single condition", s.single_condition ? "injective" : "not injective");
    if (s.witness_grade) {
      ch.details.emplace_back("witness grade", std::to_string(*s.witness_grade));
      ch.details.emplace_back("witness", format_vector(c.space, s.witness));
    }
  });
}

void cogen_section(const Context& ctx, Runner& run) {
  const Coalgebra& c = require_matrix_model(ctx);
  const Limits& limits = run.opts().limits;
  if (!has_valid_grading(c)) throw NotApplicable("co-generation needs a verified unital grading");
  const unsigned n = run.opts().n.value_or(static_cast<unsigned>(std::max(c.space.top_grade(), 1)));
  auto [pi, space] = grade_one_projection(c);
  const CogenerationResult res = cogeneration_map(c, *c.unit, pi, n, space, limits);
  const bool strict = check_strict(c, *c.unit, limits).strict;
  run.add("cogen.coalgebra_morphism", [&](Check& ch) {
    ch.pass = res.coalgebra_morphism;
    ch.details.emplace_back("n", std::to_string(n));
  });
  run.add("cogen.injective", [&](Check& ch) {
    ch.pass = res.injective;
    ch.details.emplace_back("rank", std::to_string(res.rank));
    ch.details.emplace_back("dim", std::to_string(c.dim()));
  });
  // Only models built as Sym^{<=n} of their grade-one part map onto the
  // symmetric tensors; elsewhere the image is reported, not required.
  if (ctx.k3 || ctx.hilb || ctx.abelian) {
    run.add("cogen.bijective", [&](Check& ch) {
      ch.pass = res.injective && res.image_is_symmetric;
      ch.details.emplace_back("image = symmetric tensors", yes_no(res.image_is_symmetric));
    });
  } else {
    run.add("cogen.image", [&](Check& ch) {
      ch.pass = true;
      ch.details.emplace_back("image = symmetric tensors", yes_no(res.image_is_symmetric));
    });
  }
  run.add("cogen.matches_strict", [&](Check& ch) {
    ch.pass = res.injective == strict;
    ch.details.emplace_back("strict", yes_no(strict));
  });
  const auto classes = ctx.point_classes();
  if (!classes.empty()) {
    run.add("cogen.separation", [&](Check& ch) {
      ch.pass = true;
      for (std::size_t i = 0; i < classes.size() && ch.pass; ++i) {
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
          if (classes[i].second == classes[j].second) continue;
          if (res.map.apply(classes[i].second) == res.map.apply(classes[j].second)) {
            ch.pass = false;
            ch.details.emplace_back("witness", classes[i].first + " " + classes[j].first);
            break;
          }
        }
      }
      ch.details.emplace_back("point classes", std::to_string(classes.size()));
    });
  }
}

void hilb_section(const Context& ctx, Runner& run) {
  const HilbModel& m = *ctx.hilb;
  const Limits& limits = run.opts().limits;
  for (int k = 1; k <= m.n; ++k) {
    run.add("hilb.mu_k[" + std::to_string(k) + "]", [&](Check& ch) {
      MuKResult r = mu_k(m, k, limits);
      ch.pass = r.left_inverse_ok && r.right_inverse_ok;
      ch.details.emplace_back("mu o delta-bar = k! id", yes_no(r.left_inverse_ok));
      ch.details.emplace_back("delta-bar o mu = k! sym", yes_no(r.right_inverse_ok));
    });
  }
  for (int k = 1; k <= m.n; ++k) {
    for (const auto& spec : point_specs_of_level(m, k)) {
      run.add("hilb.expansion[" + join(spec.labels, ",") + "]", [&](Check& ch) {
        PointClassExpansion e = hilb_point_expansion(m, spec, limits);
        ch.pass = e.equal();
        ch.details.emplace_back("delta-bar", format_tensor(m.coalgebra().space, static_cast<unsigned>(k), e.reduced));
      });
    }
  }
}

void fano_section(const Context& ctx, Runner& run) {
  if (!ctx.fano) throw NotApplicable("fano-check applies to kind fano only");
  const FanoModel& m = *ctx.fano;
  const FanoProjectors p = fano_eigenprojectors(m);
  run.add("fano.projectors.idempotent", [&](Check& ch) { ch.pass = p.idempotent; });
  run.add("fano.projectors.orthogonal", [&](Check& ch) { ch.pass = p.orthogonal; });
  run.add("fano.projectors.sum", [&](Check& ch) { ch.pass = p.sum_is_identity; });
  run.add("fano.projectors.images", [&](Check& ch) {
    ch.pass = p.images_are_grades;
    std::vector<std::string> ranks;
    for (const auto& q : p.projectors) ranks.push_back(std::to_string(rank(q)));
    ch.details.emplace_back("ranks", join(ranks, " "));
    ch.details.emplace_back("cohomological degrees", "0 2 4");
  });
  run.add("fano.comult_phi", [&](Check& ch) { ch.pass = p.comult_compatible; });
  run.add("fano.eigenspaces", [&](Check& ch) { ch.pass = p.eigenspaces_respected; });
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    run.add("fano.mu_delta[t" + std::to_string(t) + "]", [&](Check& ch) {
      FanoMuDeltaReport r = fano_mu_delta_check(m, t);
      ch.pass = r.ok();
      for (const auto& s : r.first_step) ch.details.emplace_back("step", s);
      ch.details.emplace_back("reduced", r.reduced_expression);
      ch.details.emplace_back("6 S_o^2", render_symbols(r.so_squared_contribution));
      ch.details.emplace_back("result", render_symbols(r.result));
      ch.details.emplace_back("factor", r.factor ? to_string(*r.factor) : "not proportional");
    });
  }
}

void abelian_trunc_section(const TruncatedAbelianModel& m, Runner& run) {
  const Limits& limits = run.opts().limits;
  const Coalgebra& c = m.coalgebra();
  const std::vector<std::int64_t> ms{2, 3, 5};
  for (std::size_t p = 0; p < m.points.size(); ++p) {
    const std::string tag = "[" + point_name(m.points[p]) + "]";
    const Vector x = point_class(m, p);
    run.add("abelian.log_exp" + tag, [&](Check& ch) {
      Vector l = log_point(m, p);
      ch.pass = l == log_class(m, m.points[p]) && exp_trunc(m, l) == x;
      ch.details.emplace_back("log", format_vector(c.space, l));
    });
    run.add("abelian.components" + tag, [&](Check& ch) {
      Vector sum(c.dim());
      for (int j = 0; j <= m.g; ++j) sum = add(sum, beauville_component(m, p, j));
      ch.pass = sum == x && beauville_component(m, p, 0) == m.unit() &&
                beauville_component(m, p, 1) == log_class(m, m.points[p]);
      ch.details.emplace_back("class", format_vector(c.space, x));
    });
    run.add("abelian.dm_vs_beauville" + tag, [&](Check& ch) {
      ch.pass = true;
      for (auto mm : ms) {
        for (int j = 0; j <= m.g; ++j) ch.pass = ch.pass && dm_projector(m, mm, j).apply(x) == beauville_component(m, p, j);
      }
    });
    run.add("abelian.kunnemann" + tag, [&](Check& ch) {
      ch.pass = true;
      std::vector<std::string> pairs;
      for (int k = 0; k <= 2 * m.g; ++k) {
        const int j = 2 * m.g - k;
        Vector expected = j <= m.g ? beauville_component(m, p, j) : Vector(c.dim());
        ch.pass = ch.pass && kunnemann_component(m, p, k) == expected;
        pairs.push_back(std::to_string(k) + "->" + (j <= m.g ? std::to_string(j) : "0"));
      }
      ch.details.emplace_back("projector -> component", join(pairs, " "));
    });
    run.add("abelian.exterior_vanishing" + tag, [&](Check& ch) {
      ExteriorPowerReport r = exterior_power_vanishing(m, p, limits);
      ch.pass = r.ok();
      ch.details.emplace_back("delta-bar^g = 0", yes_no(r.top_vanishes));
      ch.details.emplace_back("top component nonzero", yes_no(r.top_component_nonzero));
      ch.details.emplace_back("delta-bar^(g-1) nonzero", yes_no(r.previous_nonzero));
    });
  }
  for (auto mm : ms) {
    run.add("abelian.dm_projectors[" + std::to_string(mm) + "]", [&](Check& ch) { ch.pass = check_dm_projectors(m, mm).ok(); });
  }
  run.add("abelian.dm_independent_of_m", [&](Check& ch) {
    ch.pass = true;
    for (int k = 0; k <= m.g; ++k) {
      const Matrix base = dm_projector(m, ms[0], k);
      for (std::size_t i = 1; i < ms.size(); ++i) ch.pass = ch.pass && dm_projector(m, ms[i], k) == base;
    }
  });
  run.add("abelian.mult_eigenvalues", [&](Check& ch) {
    const Matrix three = mult_by_m(m, 3);
    ch.pass = true;
    for (Index i = 0; i < c.dim(); ++i) {
      Vector e = c.basis_vector(i);
      ch.pass = ch.pass && three.apply(e) == scale(e, power(Rational(3), static_cast<unsigned>(c.space.grade(i))));
    }
    std::vector<std::string> ev;
    for (int j = 0; j <= m.g; ++j) ev.push_back(std::to_string(j) + ":" + to_string(power(Rational(3), j)));
    ch.details.emplace_back("eigenvalues", join(ev, " "));
  });
  run.add("abelian.pontryagin_graded", [&](Check& ch) {
    ch.pass = true;
    for (Index i = 0; i < c.dim(); ++i) {
      for (Index j = 0; j < c.dim(); ++j) {
        Vector prod = m.sym.multiply(c.basis_vector(i), c.basis_vector(j));
        const int want = c.space.grade(i) + c.space.grade(j);
        for (Index k = 0; k < prod.size(); ++k) {
          if (prod[k] != 0 && c.space.grade(k) != want) ch.pass = false;
        }
      }
    }
  });
  run.add("abelian.coradical_vs_beauville", [&](Check& ch) {
    BeauvilleFiltrationReport r = coradical_vs_beauville(m, limits);
    ch.pass = r.all_equal;
    std::vector<std::string> dims;
    for (const auto& s : r.steps) dims.push_back(std::to_string(s.coradical_dim));
    ch.details.emplace_back("dims R", join(dims, " "));
  });
}

void abelian_lazy_section(const AbelianLazySpec& s, Runner& run) {
  for (const auto& p : s.points) {
    for (unsigned k = 0; k <= s.kmax; ++k) {
      run.add("lazy.redcomult" + point_name(p) + "[k=" + std::to_string(k) + "]", [&](Check& ch) {
        GrouplikeReport r = eq_redcomult_grouplike(s.r, p, k);
        ch.pass = r.equal();
        ch.details.emplace_back("terms", std::to_string(r.reduced.size()));
      });
    }
  }
  run.add("lazy.pontryagin", [&](Check& ch) {
    ch.pass = true;
    const auto zero = zero_element(s.r);
    for (const auto& p : s.points) {
      for (const auto& q : s.points) {
        auto a = GroupCoalgebra::combine(point_element(p), 1, zero, -1);
        auto b = GroupCoalgebra::combine(point_element(q), 1, zero, -1);
        Point sum(s.r);
        for (std::size_t i = 0; i < s.r; ++i) sum[i] = p[i] + q[i];
        GroupAlgebraElement expected;
        GroupCoalgebra::add_to(expected, sum, 1);
        GroupCoalgebra::add_to(expected, p, -1);
        GroupCoalgebra::add_to(expected, q, -1);
        GroupCoalgebra::add_to(expected, zero.begin()->first, 1);
        ch.pass = ch.pass && pontryagin(a, b) == expected && pontryagin(a, b) == pontryagin(b, a) &&
                  pontryagin(point_element(p), zero) == point_element(p);
      }
    }
  });
}

void abelian_section(const Context& ctx, Runner& run) {
  if (ctx.abelian) return abelian_trunc_section(*ctx.abelian, run);
  if (const auto* lazy = std::get_if<AbelianLazySpec>(&ctx.def.spec)) return abelian_lazy_section(*lazy, run);
  throw NotApplicable("abelian-check applies to kinds abelian-trunc and abelian-lazy only");
}

void incidence_section(const Context& ctx, Runner& run) {
  const auto* inc = std::get_if<IncidenceSpec>(&ctx.def.spec);
  if (!inc) throw NotApplicable("incidence applies to kind incidence only");
  const Limits& limits = run.opts().limits;
  std::map<std::string, Cover> covers;
  for (const auto& cs : inc->covers) covers.emplace(cs.name, build_cover(*inc, cs));
  for (const auto& cs : inc->covers) {
    const Cover& c = covers.at(cs.name);
    const std::string tag = "cover[" + cs.name + "]";
    run.add(tag + ".projection_formula", [&](Check& ch) {
      ch.pass = projection_formula(c, Side::Phi) && projection_formula(c, Side::Psi);
    });
    ConditionReport cond;
    run.add(tag + ".equivalence", [&](Check& ch) {
      cond = check_conditions(c);
      ch.pass = cond.agree();
      ch.details.emplace_back("(i)", yes_no(cond.condition_i));
      ch.details.emplace_back("(ii)", yes_no(cond.condition_ii));
    });
    run.add(tag + ".fiber_condition", [&](Check& ch) {
      ch.pass = cond.condition_i && cond.condition_ii;
      if (cond.witness) {
        ch.details.emplace_back("fiber over", cond.witness->fiber_over);
        ch.details.emplace_back("points", cond.witness->first + " " + cond.witness->second);
      }
    });
    if (!cond.condition_i) continue;
    run.add(tag + ".gamma", [&](Check& ch) {
      GammaMaps g = gamma_maps(c);
      ch.pass = g.left_inverse && g.split_injective && g.split_surjective;
      ch.details.emplace_back("gamma' gamma = id", yes_no(g.left_inverse));
      ch.details.emplace_back("gamma gamma' = id", yes_no(g.two_sided));
    });
    run.add(tag + ".comult_square", [&](Check& ch) { ch.pass = comult_square(c, limits); });
  }
  for (const auto& [a, b] : inc->compositions) {
    run.add("compose[" + a + "," + b + "]", [&](Check& ch) {
      const Cover& c1 = covers.at(a);
      const Cover& c2 = covers.at(b);
      ComposedCover comp = fiber_compose(c1, c2);
      if (comp.empty) {
        ch.pass = true;
        ch.details.emplace_back("fiber product", "empty");
        return;
      }
      const Cover& c = *comp.cover;
      const bool degrees = c.degree(Side::Phi) == c1.degree(Side::Phi) * c2.degree(Side::Phi) &&
                           c.degree(Side::Psi) == c1.degree(Side::Psi) * c2.degree(Side::Psi);
      const bool inputs_pass = check_condition_i(c1) && check_condition_i(c2);
      const bool composite_passes = check_condition_i(c);
      ch.pass = degrees && (!inputs_pass || composite_passes);
      ch.details.emplace_back("degrees", to_string(c.degree(Side::Phi)) + " " + to_string(c.degree(Side::Psi)));
      ch.details.emplace_back("composite (i)", yes_no(composite_passes));
    });
  }
  for (const auto& [name, base] : inc->transports) {
    run.add("transport[" + name + "]", [&](Check& ch) {
      const Cover& c = covers.at(name);
      GammaMaps g = gamma_maps(c);
      if (!g.two_sided) {
        ch.pass = false;
        ch.details.emplace_back("gamma", "not an isomorphism");
        return;
      }
      K3PatternModel sx = k3_pattern_coalgebra(c.x(), base);
      K3PatternModel sy = k3_pattern_coalgebra(c.y(), g.gamma.apply(sx.basis.column(0).to_dense(c.x().chow_dim())));
      const Matrix f = sy.inverse * g.gamma * sx.basis;
      const Matrix f_inv = sx.inverse * g.gamma_prime * sy.basis;
      TransportResult t = transport_grading(sx.coalgebra, sy.coalgebra, f, f_inv, limits);
      ch.pass = t.ok();
      ch.details.emplace_back("grading", t.grading.ok() ? "unital" : "violated");
      ch.details.emplace_back("co-radical", t.coradical_corresponds ? "corresponds" : "differs");
    });
  }
}

// --------------------------------------------------------------- driver

using Section = std::function<void(const Context&, Runner&)>;

Report run_command(const std::string& command, const std::string& path, const CommandOptions& opts,
                   const std::vector<Section>& sections) {
  Report report;
  report.command = command;
  report.model = path;
  try {
    Context ctx = build_context(load_model(path, opts.limits), opts.limits);
    report.kind = ctx.def.kind;
    Runner run(report, opts);
    for (const auto& s : sections) s(ctx, run);
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  return report;
}

void suite_sections(const Context& ctx, Runner& run) {
  validate_section(ctx, run);
  if (const Coalgebra* c = ctx.coalgebra()) {
    if (c->unit) coradical_section(ctx, run);
    if (has_valid_grading(*c)) {
      strict_section(ctx, run);
      cogen_section(ctx, run);
    }
  }
  if (ctx.hilb) hilb_section(ctx, run);
  if (ctx.fano) fano_section(ctx, run);
  if (ctx.abelian || std::holds_alternative<AbelianLazySpec>(ctx.def.spec)) abelian_section(ctx, run);
  if (std::holds_alternative<IncidenceSpec>(ctx.def.spec)) incidence_section(ctx, run);
}

}  // namespace

Report cmd_validate(const std::string& path, const CommandOptions& opts) {
  return run_command("validate", path, opts, {validate_section});
}
Report cmd_coradical(const std::string& path, const CommandOptions& opts) {
  return run_command("coradical", path, opts, {coradical_section});
}
Report cmd_strict(const std::string& path, const CommandOptions& opts) {
  return run_command("strict", path, opts, {strict_section});
}
Report cmd_cogen(const std::string& path, const CommandOptions& opts) {
  return run_command("cogen", path, opts, {cogen_section});
}
Report cmd_fano_check(const std::string& path, const CommandOptions& opts) {
  return run_command("fano-check", path, opts, {fano_section});
}
Report cmd_abelian_check(const std::string& path, const CommandOptions& opts) {
  return run_command("abelian-check", path, opts, {abelian_section});
}
Report cmd_incidence(const std::string& path, const CommandOptions& opts) {
  return run_command("incidence", path, opts, {incidence_section});
}
Report cmd_suite(const std::string& path, const CommandOptions& opts) {
  return run_command("suite", path, opts, {suite_sections});
}

std::vector<std::string> expand_model_paths(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".model") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_text(const std::vector<Report>& reports) {
  std::ostringstream out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Report& r = reports[i];
    if (i) out << '\n';
    out << "coalg-report 1\n";
    out << "command " << r.command << '\n';
    out << "model " << r.model << '\n';
    if (!r.kind.empty()) out << "kind " << r.kind << '\n';
    for (const auto& c : r.checks) {
      out << "check " << c.name << ' ' << (c.pass ? "PASS" : "FAIL");
      if (c.millis) out << " (" << *c.millis << " ms)";
      out << '\n';
      for (const auto& [k, v] : c.details) out << "  " << k << ": " << v << '\n';
    }
    if (r.error) out << "error " << *r.error << '\n';
    out << "exit " << r.exit_code() << '\n';
  }
  return out.str();
}

std::string render_structured(const std::vector<Report>& reports) {
  using nlohmann::ordered_json;
  ordered_json all = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["format"] = "coalg-report";
    j["version"] = 1;
    j["command"] = r.command;
    j["model"] = r.model;
    j["kind"] = r.kind;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      ordered_json details = ordered_json::array();
      for (const auto& [k, v] : c.details) details.push_back({{"key", k}, {"value", v}});
      cj["details"] = details;
      if (c.millis) cj["millis"] = *c.millis;
      checks.push_back(cj);
    }
    j["checks"] = checks;
    j["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
    j["exit"] = r.exit_code();
    all.push_back(j);
  }
  return all.dump(2) + "\n";
}

}  // namespace coalg
