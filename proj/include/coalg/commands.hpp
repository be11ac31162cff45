#pragma once

// Verification commands behind the coalg executable, and their reports.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"

namespace coalg {

struct Check {
  std::string name;
  bool pass = false;
  /// Ordered key/value lines: dimensions, witnesses, rendered vectors.
  std::vector<std::pair<std::string, std::string>> details;
  std::optional<double> millis;
};

struct Report {
  std::string command;
  std::string model;
  std::string kind;
  std::vector<Check> checks;
  std::optional<std::string> error;

  /// 0 all checks pass, 1 some check fails, 2 input, parse or cap error.
  int exit_code() const;
};

struct CommandOptions {
  Limits limits;
  std::optional<unsigned> kmax;
  std::optional<unsigned> n;
  bool timings = false;
};

Report cmd_validate(const std::string& path, const CommandOptions& opts);
Report cmd_coradical(const std::string& path, const CommandOptions& opts);
Report cmd_strict(const std::string& path, const CommandOptions& opts);
Report cmd_cogen(const std::string& path, const CommandOptions& opts);
Report cmd_fano_check(const std::string& path, const CommandOptions& opts);
Report cmd_abelian_check(const std::string& path, const CommandOptions& opts);
Report cmd_incidence(const std::string& path, const CommandOptions& opts);
/// Everything applicable to the model's kind.
Report cmd_suite(const std::string& path, const CommandOptions& opts);

/// Model files under a directory (*.model, sorted), or the path itself.
std::vector<std::string> expand_model_paths(const std::string& path);

std::string render_text(const std::vector<Report>& reports);
std::string render_structured(const std::vector<Report>& reports);

/// Largest exit code among the reports.
int combined_exit_code(const std::vector<Report>& reports);

}  // namespace coalg
