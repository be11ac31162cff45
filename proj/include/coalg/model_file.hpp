#pragma once

// Line-oriented model definition files. See README.md for the grammar.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coalg/abelian_models.hpp"
#include "coalg/coalgebra.hpp"
#include "coalg/hk_models.hpp"
#include "coalg/incidence.hpp"

namespace coalg {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message) {}
};

struct K3Spec {
  int t = 1;
};

struct HilbSpec {
  int n = 1;
  int t = 1;
};

struct FanoSpec {
  int lines = 0;
  std::vector<Triangle> triangles;
};

struct AbelianTruncSpec {
  int g = 1;
  std::size_t r = 1;
  std::vector<Point> points;
};

struct AbelianLazySpec {
  std::size_t r = 1;
  std::vector<Point> points;
  unsigned kmax = 4;
};

struct CoverSpec {
  std::string name;
  std::string gamma, x, y;
  std::vector<std::tuple<std::string, std::string, Rational>> phi, psi;
};

struct IncidenceSpec {
  /// Declaration order is kept for deterministic reports.
  std::vector<std::string> variety_order;
  std::map<std::string, FiniteVariety> varieties;
  std::vector<CoverSpec> covers;
  std::vector<std::pair<std::string, std::string>> compositions;
  /// (cover, base point of X)
  std::vector<std::pair<std::string, std::string>> transports;
};

struct RawSpec {
  Coalgebra coalgebra;
};

struct ModelDefinition {
  std::string kind;
  std::variant<K3Spec, HilbSpec, FanoSpec, AbelianTruncSpec, AbelianLazySpec, IncidenceSpec, RawSpec> spec;
};

/// Throws ParseError for malformed input and TensorCapExceeded when a
/// declared dimension is past the cap.
ModelDefinition parse_model(const std::string& text, const Limits& limits = {});
ModelDefinition load_model(const std::string& path, const Limits& limits = {});

/// Builds the cover named in the spec.
Cover build_cover(const IncidenceSpec& spec, const CoverSpec& cover);

}  // namespace coalg
