// coalg: run co-algebra verification suites on model definition files.

#include <CLI11.hpp>
#include <iostream>

#include "coalg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of co-algebra models of zero-cycles"};
  app.require_subcommand(1);
  app.fallthrough();

  coalg::CommandOptions opts;
  std::string report_format = "text";
  std::size_t tensor_cap = opts.limits.tensor_cap;
  unsigned kmax = 0, n = 0;
  std::string path;

  app.add_option("--tensor-cap", tensor_cap, "Largest tensor-power dimension to build")->check(CLI::PositiveNumber);
  app.add_option("--report", report_format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--timings", opts.timings, "Record per-check wall time (reports are then not reproducible)");

  using Command = coalg::Report (*)(const std::string&, const coalg::CommandOptions&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"validate", "Co-algebra axioms, unit and unital grading", coalg::cmd_validate},
      {"coradical", "Co-radical filtration against the grading", coalg::cmd_coradical},
      {"strict", "Strictness of the grading", coalg::cmd_strict},
      {"cogen", "Co-generation map into the truncated tensor co-algebra", coalg::cmd_cogen},
      {"fano-check", "Fano eigenprojectors and the triangle computation", coalg::cmd_fano_check},
      {"abelian-check", "Beauville components, projector formulas, exterior powers", coalg::cmd_abelian_check},
      {"incidence", "Cover conditions, gamma maps, co-multiplication square", coalg::cmd_incidence},
      {"suite", "Every check applicable to the model (file or directory)", coalg::cmd_suite},
  };
  Command chosen = nullptr;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("model", path, "Model file (or directory for suite)")->required();
    if (name == "coradical" || name == "suite") sub->add_option("--kmax", kmax, "Last filtration step");
    if (name == "cogen" || name == "suite") sub->add_option("--n", n, "Truncation of the tensor co-algebra");
    sub->callback([&chosen, f = fn] { chosen = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.limits.tensor_cap = tensor_cap;
  if (kmax) opts.kmax = kmax;
  if (n) opts.n = n;

  std::vector<coalg::Report> reports;
  for (const auto& p : coalg::expand_model_paths(path)) reports.push_back(chosen(p, opts));
  if (reports.empty()) {
    std::cerr << "no model files under " << path << '\n';
    return 2;
  }
  std::cout << (report_format == "structured" ? coalg::render_structured(reports) : coalg::render_text(reports));
  return coalg::combined_exit_code(reports);
}
