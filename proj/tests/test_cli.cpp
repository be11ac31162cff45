#include <doctest.h>

#include <json.hpp>

#include "coalg/commands.hpp"
#include "coalg/model_file.hpp"

using namespace coalg;

namespace {

const std::string models_dir = MODELS_DIR;

std::string model(const std::string& name) { return models_dir + "/" + name + ".model"; }

bool has_check(const Report& r, const std::string& name, bool pass) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass == pass;
  return false;
}

}  // namespace

TEST_CASE("model files parse into typed specs") {
  ModelDefinition d = parse_model("coalg-model 1\n# comment\nkind hilb\nn 2\nt 3\n");
  CHECK(d.kind == "hilb");
  REQUIRE(std::holds_alternative<HilbSpec>(d.spec));
  CHECK(std::get<HilbSpec>(d.spec).n == 2);
  CHECK(std::get<HilbSpec>(d.spec).t == 3);

  ModelDefinition f = parse_model("coalg-model 1\nkind fano\nlines 4\ntriangle 0 1 2\n");
  REQUIRE(std::holds_alternative<FanoSpec>(f.spec));
  CHECK(std::get<FanoSpec>(f.spec).triangles.size() == 1);

  ModelDefinition raw = load_model(model("nonstrict"));
  REQUIRE(std::holds_alternative<RawSpec>(raw.spec));
  CHECK(std::get<RawSpec>(raw.spec).coalgebra.dim() == 4);
}

TEST_CASE("malformed model files report the offending line") {
  CHECK_THROWS_AS(parse_model("kind k3\nt 1\n"), ParseError);
  CHECK_THROWS_AS(parse_model("coalg-model 2\nkind k3\n"), ParseError);
  CHECK_THROWS_AS(parse_model("coalg-model 1\nkind sphere\n"), ParseError);
  CHECK_THROWS_AS(parse_model("coalg-model 1\nkind k3\ncolour blue\n"), ParseError);
  CHECK_THROWS_AS(parse_model("coalg-model 1\nkind incidence\nvariety X\npoints a b\n"), ParseError);
  try {
    parse_model("coalg-model 1\nkind hilb\nn three\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3", 0) == 0);
  }
  CHECK_THROWS_AS(load_model(models_dir + "/does_not_exist.model"), std::exception);
}

TEST_CASE("declared dimensions are checked against the tensor cap") {
  Limits small;
  small.tensor_cap = 50;
  CHECK_THROWS_AS(parse_model("coalg-model 1\nkind raw-coalgebra\ndim 10\n", small), TensorCapExceeded);
  CommandOptions opts;
  opts.limits = small;
  Report r = cmd_suite(model("hilb_3_2"), opts);
  CHECK(r.error);
  CHECK(r.exit_code() == 2);
}

TEST_CASE("suite exit codes over the model corpus") {
  const std::map<std::string, int> expected{
      {"abelian_lazy_2", 0}, {"abelian_trunc_2_2", 0}, {"fano_9_lines", 0},
      {"hilb_3_2", 0},       {"incidence_fail", 1},    {"incidence_pass", 0},
      {"k3_3", 0},           {"malformed", 2},         {"nonstrict", 1}};
  auto paths = expand_model_paths(models_dir);
  REQUIRE(paths.size() == expected.size());
  std::vector<Report> reports;
  for (const auto& p : paths) {
    reports.push_back(cmd_suite(p, {}));
    const std::string stem = p.substr(p.rfind('/') + 1, p.size() - p.rfind('/') - 7);
    REQUIRE(expected.count(stem));
    CHECK_MESSAGE(reports.back().exit_code() == expected.at(stem), stem);
  }
  CHECK(combined_exit_code(reports) == 2);
}

TEST_CASE("failing checks carry witnesses") {
  Report ns = cmd_strict(model("nonstrict"), {});
  CHECK(ns.exit_code() == 1);
  CHECK(has_check(ns, "strict", false));
  Report inc = cmd_incidence(model("incidence_fail"), {});
  CHECK(inc.exit_code() == 1);
  bool found_witness = false;
  for (const auto& c : inc.checks)
    for (const auto& [k, v] : c.details) found_witness = found_witness || k == "fiber over";
  CHECK(found_witness);
  Report fano = cmd_fano_check(model("fano_9_lines"), {});
  CHECK(fano.exit_code() == 0);
  CHECK(has_check(fano, "fano.mu_delta[t0]", true));
}

TEST_CASE("reports render deterministically, timings only on request") {
  std::vector<Report> a{cmd_suite(model("hilb_3_2"), {}), cmd_suite(model("malformed"), {})};
  std::vector<Report> b{cmd_suite(model("hilb_3_2"), {}), cmd_suite(model("malformed"), {})};
  const std::string text = render_text(a);
  CHECK(text == render_text(b));
  CHECK(text.rfind("coalg-report 1\n", 0) == 0);
  CHECK(text.find(" ms)") == std::string::npos);
  CHECK(render_structured(a) == render_structured(b));

  auto j = nlohmann::json::parse(render_structured(a));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["exit"] == 0);
  CHECK(j[1]["exit"] == 2);
  CHECK(j[1]["error"].is_string());
  CHECK(j[0]["checks"].size() == a[0].checks.size());

  CommandOptions timed;
  timed.timings = true;
  Report t = cmd_validate(model("k3_3"), timed);
  REQUIRE_FALSE(t.checks.empty());
  CHECK(t.checks[0].millis);
}
