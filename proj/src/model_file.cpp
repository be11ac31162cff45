#include "coalg/model_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace coalg {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long parse_int(const Line& line, const std::string& token) {
  try {
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected an integer, got '" + token + "'");
  }
}

Rational parse_value(const Line& line, const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected a rational literal, got '" + token + "'");
  }
}

void expect_arity(const Line& line, std::size_t lo, std::size_t hi) {
  const std::size_t n = line.tokens.size() - 1;
  if (n < lo || n > hi) throw ParseError(line.number, "wrong number of arguments to '" + line.tokens[0] + "'");
}

/// Cursor over the significant lines.
class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return pos_ >= lines_.size(); }
  const Line& next() {
    if (done()) throw ParseError(last_line(), "unexpected end of file");
    return lines_[pos_++];
  }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

/// "label:coef" (or "index:coef") terms.
Vector parse_sparse(const Line& line, std::size_t from, const std::vector<std::string>& labels) {
  Vector v(labels.size());
  for (std::size_t i = from; i < line.tokens.size(); ++i) {
    const std::string& tok = line.tokens[i];
    auto colon = tok.rfind(':');
    if (colon == std::string::npos) throw ParseError(line.number, "expected label:coefficient, got '" + tok + "'");
    const std::string label = tok.substr(0, colon);
    Index idx = labels.size();
    for (Index j = 0; j < labels.size(); ++j) {
      if (labels[j] == label) idx = j;
    }
    if (idx == labels.size()) throw ParseError(line.number, "unknown label '" + label + "'");
    v[idx] += parse_value(line, tok.substr(colon + 1));
  }
  return v;
}

Point parse_point(const Line& line, std::size_t r) {
  if (line.tokens.size() - 1 != r) throw ParseError(line.number, "point needs " + std::to_string(r) + " coordinates");
  Point p;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) p.push_back(parse_int(line, line.tokens[i]));
  return p;
}

int positive(const Line& line, long v) {
  if (v < 1 || v > 1000000) throw ParseError(line.number, "'" + line.tokens[0] + "' must be a positive integer");
  return static_cast<int>(v);
}

// ---------------------------------------------------------------- kinds

K3Spec parse_k3(Reader& r) {
  K3Spec s;
  bool seen = false;
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] == "t") {
      expect_arity(l, 1, 1);
      s.t = positive(l, parse_int(l, l.tokens[1]));
      seen = true;
    } else {
      throw ParseError(l.number, "unknown key '" + l.tokens[0] + "' for kind k3");
    }
  }
  if (!seen) throw ParseError(r.last_line(), "k3 model needs 't'");
  return s;
}

HilbSpec parse_hilb(Reader& r) {
  HilbSpec s;
  std::set<std::string> seen;
  while (!r.done()) {
    const Line& l = r.next();
    expect_arity(l, 1, 1);
    if (l.tokens[0] == "n") {
      s.n = positive(l, parse_int(l, l.tokens[1]));
    } else if (l.tokens[0] == "t") {
      s.t = positive(l, parse_int(l, l.tokens[1]));
    } else {
      throw ParseError(l.number, "unknown key '" + l.tokens[0] + "' for kind hilb");
    }
    seen.insert(l.tokens[0]);
  }
  if (seen.size() != 2) throw ParseError(r.last_line(), "hilb model needs 'n' and 't'");
  return s;
}

FanoSpec parse_fano(Reader& r) {
  FanoSpec s;
  bool seen = false;
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] == "lines") {
      expect_arity(l, 1, 1);
      s.lines = positive(l, parse_int(l, l.tokens[1]));
      seen = true;
    } else if (l.tokens[0] == "triangle") {
      expect_arity(l, 3, 3);
      Triangle t{};
      for (int i = 0; i < 3; ++i) t[i] = static_cast<int>(parse_int(l, l.tokens[i + 1]));
      s.triangles.push_back(t);
    } else {
      throw ParseError(l.number, "unknown key '" + l.tokens[0] + "' for kind fano");
    }
  }
  if (!seen) throw ParseError(r.last_line(), "fano model needs 'lines'");
  return s;
}

template <class Spec>
void parse_points_section(Reader& r, Spec& s, const std::string& kind, bool truncated) {
  bool have_r = false, have_g = !truncated;
  std::vector<Line> pending;
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] == "r") {
      expect_arity(l, 1, 1);
      s.r = static_cast<std::size_t>(positive(l, parse_int(l, l.tokens[1])));
      have_r = true;
    } else if (l.tokens[0] == "point") {
      pending.push_back(l);
    } else if (truncated && l.tokens[0] == "g") {
      expect_arity(l, 1, 1);
      if constexpr (requires { s.g; }) s.g = positive(l, parse_int(l, l.tokens[1]));
      have_g = true;
    } else if (!truncated && l.tokens[0] == "kmax") {
      expect_arity(l, 1, 1);
      if constexpr (requires { s.kmax; }) s.kmax = static_cast<unsigned>(positive(l, parse_int(l, l.tokens[1])));
    } else {
      throw ParseError(l.number, "unknown key '" + l.tokens[0] + "' for kind " + kind);
    }
  }
  if (!have_r || !have_g) throw ParseError(r.last_line(), kind + " model is missing its dimensions");
  for (const auto& l : pending) s.points.push_back(parse_point(l, s.r));
}

FiniteVariety parse_variety(Reader& r) {
  std::vector<std::string> points;
  std::vector<Line> relations;
  while (true) {
    const Line& l = r.next();
    if (l.tokens[0] == "end") break;
    if (l.tokens[0] == "points") {
      points.insert(points.end(), l.tokens.begin() + 1, l.tokens.end());
    } else if (l.tokens[0] == "relation") {
      relations.push_back(l);
    } else {
      throw ParseError(l.number, "unknown key '" + l.tokens[0] + "' in variety");
    }
  }
  std::vector<Vector> rels;
  for (const auto& l : relations) rels.push_back(parse_sparse(l, 1, points));
  try {
    return FiniteVariety(points, rels);
  } catch (const InvalidModel& e) {
    throw ParseError(relations.empty() ? 0 : relations.front().number, e.what());
  }
}

CoverSpec parse_cover(Reader& r, const std::string& name) {
  CoverSpec c;
  c.name = name;
  while (true) {
    const Line& l = r.next();
    const std::string& key = l.tokens[0];
    if (key == "end") break;
    if (key == "gamma" || key == "x" || key == "y") {
      expect_arity(l, 1, 1);
      (key == "gamma" ? c.gamma : key == "x" ? c.x : c.y) = l.tokens[1];
    } else if (key == "phi" || key == "psi") {
      expect_arity(l, 2, 3);
      Rational mult = l.tokens.size() == 4 ? parse_value(l, l.tokens[3]) : Rational(1);
      (key == "phi" ? c.phi : c.psi).emplace_back(l.tokens[1], l.tokens[2], mult);
    } else {
      throw ParseError(l.number, "unknown key '" + key + "' in cover");
    }
  }
  return c;
}

IncidenceSpec parse_incidence(Reader& r) {
  IncidenceSpec s;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> compositions, transports;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& key = l.tokens[0];
    if (key == "variety") {
      expect_arity(l, 1, 1);
      if (s.varieties.count(l.tokens[1])) throw ParseError(l.number, "variety '" + l.tokens[1] + "' redefined");
      const std::string name = l.tokens[1];
      s.varieties.emplace(name, parse_variety(r));
      s.variety_order.push_back(name);
    } else if (key == "cover") {
      expect_arity(l, 1, 1);
      const int at = l.number;
      CoverSpec c = parse_cover(r, l.tokens[1]);
      for (const auto& other : s.covers) {
        if (other.name == c.name) throw ParseError(at, "cover '" + c.name + "' redefined");
      }
      try {
        build_cover(s, c);
      } catch (const std::invalid_argument& e) {
        throw ParseError(at, e.what());
      }
      s.covers.push_back(std::move(c));
    } else if (key == "compose") {
      expect_arity(l, 2, 2);
      compositions.push_back({l.number, {l.tokens[1], l.tokens[2]}});
    } else if (key == "transport") {
      expect_arity(l, 2, 2);
      transports.push_back({l.number, {l.tokens[1], l.tokens[2]}});
    } else {
      throw ParseError(l.number, "unknown key '" + key + "' for kind incidence");
    }
  }
  auto has_cover = [&](const std::string& n) {
    for (const auto& c : s.covers) {
      if (c.name == n) return true;
    }
    return false;
  };
  for (const auto& [line, pair] : compositions) {
    if (!has_cover(pair.first) || !has_cover(pair.second)) throw ParseError(line, "compose names an unknown cover");
    s.compositions.push_back(pair);
  }
  for (const auto& [line, pair] : transports) {
    if (!has_cover(pair.first)) throw ParseError(line, "transport names an unknown cover");
    s.transports.push_back(pair);
  }
  if (s.covers.empty()) throw ParseError(r.last_line(), "incidence model declares no cover");
  return s;
}

RawSpec parse_raw(Reader& r, const Limits& limits) {
  std::optional<Index> dim;
  std::vector<std::string> labels;
  std::vector<int> grades;
  std::optional<Line> unit_line;
  std::vector<Line> comult_lines, counit_lines;
  bool have_comult = false, have_counit = false;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& key = l.tokens[0];
    if (key == "dim") {
      expect_arity(l, 1, 1);
      dim = static_cast<Index>(positive(l, parse_int(l, l.tokens[1])));
      if (*dim > limits.tensor_cap || *dim * *dim > limits.tensor_cap) throw TensorCapExceeded(*dim * *dim, limits.tensor_cap);
    } else if (key == "labels") {
      labels.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (key == "grades") {
      grades.clear();
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        long g = parse_int(l, l.tokens[i]);
        if (g < 0) throw ParseError(l.number, "grades must be non-negative");
        grades.push_back(static_cast<int>(g));
      }
    } else if (key == "unit") {
      unit_line = l;
    } else if (key == "comult" || key == "counit") {
      expect_arity(l, 0, 0);
      auto& target = key == "comult" ? comult_lines : counit_lines;
      (key == "comult" ? have_comult : have_counit) = true;
      while (true) {
        const Line& e = r.next();
        if (e.tokens[0] == "end") break;
        if (e.tokens.size() != 3) throw ParseError(e.number, "expected 'row col value'");
        target.push_back(e);
      }
    } else {
      throw ParseError(l.number, "unknown key '" + key + "' for kind raw-coalgebra");
    }
  }
  if (!dim) throw ParseError(r.last_line(), "raw-coalgebra needs 'dim'");
  if (!have_comult || !have_counit) throw ParseError(r.last_line(), "raw-coalgebra needs comult and counit sections");
  const Index d = *dim;
  if (labels.empty()) {
    for (Index i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (labels.size() != d) throw ParseError(r.last_line(), "labels do not match dim");
  if (!grades.empty() && grades.size() != d) throw ParseError(r.last_line(), "grades do not match dim");

  // Rows may be flat indices or "label|label"; columns indices or labels.
  auto label_index = [&](const Line& l, const std::string& tok) -> Index {
    for (Index j = 0; j < d; ++j) {
      if (labels[j] == tok) return j;
    }
    long v = parse_int(l, tok);
    if (v < 0 || static_cast<Index>(v) >= d) throw ParseError(l.number, "index " + tok + " out of range");
    return static_cast<Index>(v);
  };
  auto row_index = [&](const Line& l, const std::string& tok, Index rows) -> Index {
    if (auto bar = tok.find('|'); bar != std::string::npos) {
      return label_index(l, tok.substr(0, bar)) * d + label_index(l, tok.substr(bar + 1));
    }
    long v = parse_int(l, tok);
    if (v < 0 || static_cast<Index>(v) >= rows) throw ParseError(l.number, "row " + tok + " out of range");
    return static_cast<Index>(v);
  };

  Matrix comult(d * d, d), counit(1, d);
  std::vector<std::vector<SparseVec::Term>> cols(d), ecols(d);
  for (const auto& e : comult_lines) {
    cols[label_index(e, e.tokens[1])].emplace_back(row_index(e, e.tokens[0], d * d), parse_value(e, e.tokens[2]));
  }
  for (const auto& e : counit_lines) {
    ecols[label_index(e, e.tokens[1])].emplace_back(row_index(e, e.tokens[0], 1), parse_value(e, e.tokens[2]));
  }
  for (Index j = 0; j < d; ++j) {
    comult.set_column(j, SparseVec::from_terms(std::move(cols[j])));
    counit.set_column(j, SparseVec::from_terms(std::move(ecols[j])));
  }
  std::optional<Vector> unit;
  if (unit_line) unit = parse_sparse(*unit_line, 1, labels);
  GradedSpace space = grades.empty() ? GradedSpace(labels) : GradedSpace(labels, grades);
  try {
    return RawSpec{Coalgebra(std::move(space), std::move(comult), std::move(counit), unit)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(r.last_line(), e.what());
  }
}

}  // namespace

Cover build_cover(const IncidenceSpec& spec, const CoverSpec& c) {
  auto variety = [&](const std::string& name) -> const FiniteVariety& {
    auto it = spec.varieties.find(name);
    if (it == spec.varieties.end()) throw InvalidModel("cover '" + c.name + "' names unknown variety '" + name + "'");
    return it->second;
  };
  const FiniteVariety& gamma = variety(c.gamma);
  const FiniteVariety& x = variety(c.x);
  const FiniteVariety& y = variety(c.y);
  auto build_map = [&](const auto& entries, const FiniteVariety& target, const std::string& which) {
    CoverMap m;
    m.target.assign(gamma.size(), target.size());
    m.multiplicity.assign(gamma.size(), Rational(0));
    for (const auto& [g, t, mult] : entries) {
      auto gi = gamma.index_of(g);
      auto ti = target.index_of(t);
      if (!gi || !ti) throw InvalidModel(which + " entry " + g + " -> " + t + " names an unknown point");
      if (m.target[*gi] != target.size()) throw InvalidModel(which + " is defined twice on " + g);
      m.target[*gi] = *ti;
      m.multiplicity[*gi] = mult;
    }
    for (Index i = 0; i < gamma.size(); ++i) {
      if (m.target[i] == target.size()) throw InvalidModel(which + " is undefined on " + gamma.point(i));
    }
    return m;
  };
  std::vector<Vector> relations;
  for (const auto& b : gamma.relations().basis()) relations.push_back(b.to_dense(gamma.size()));
  return Cover(FiniteVariety(gamma.points(), relations), x, y, build_map(c.phi, x, "phi"), build_map(c.psi, y, "psi"));
}

ModelDefinition parse_model(const std::string& text, const Limits& limits) {
  Reader r(tokenize(text));
  if (r.done()) throw ParseError(0, "empty model file");
  const Line& header = r.next();
  if (header.tokens.size() != 2 || header.tokens[0] != "coalg-model") {
    throw ParseError(header.number, "expected header 'coalg-model 1'");
  }
  if (header.tokens[1] != "1") throw ParseError(header.number, "unsupported format version " + header.tokens[1]);
  if (r.done()) throw ParseError(header.number, "missing 'kind' line");
  const Line& kind_line = r.next();
  if (kind_line.tokens[0] != "kind" || kind_line.tokens.size() != 2) throw ParseError(kind_line.number, "expected 'kind <name>'");
  ModelDefinition def;
  def.kind = kind_line.tokens[1];
  if (def.kind == "k3") {
    def.spec = parse_k3(r);
  } else if (def.kind == "hilb") {
    def.spec = parse_hilb(r);
  } else if (def.kind == "fano") {
    def.spec = parse_fano(r);
  } else if (def.kind == "abelian-trunc") {
    AbelianTruncSpec s;
    parse_points_section(r, s, def.kind, true);
    def.spec = std::move(s);
  } else if (def.kind == "abelian-lazy") {
    AbelianLazySpec s;
    parse_points_section(r, s, def.kind, false);
    def.spec = std::move(s);
  } else if (def.kind == "incidence") {
    def.spec = parse_incidence(r);
  } else if (def.kind == "raw-coalgebra") {
    def.spec = parse_raw(r, limits);
  } else {
    throw ParseError(kind_line.number, "unknown kind '" + def.kind + "'");
  }
  return def;
}

ModelDefinition load_model(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), limits);
}

}  // namespace coalg
