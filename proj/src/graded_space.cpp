#include "coalg/graded_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace coalg {

namespace {

void require_unique(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw InvalidModel("empty basis label");
    if (!seen.insert(l).second) throw InvalidModel("duplicate basis label '" + l + "'");
  }
}

}  // namespace

GradedSpace::GradedSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)), grades_(labels_.size(), 0), graded_(false) {
  require_unique(labels_);
}

GradedSpace::GradedSpace(std::vector<std::string> labels, std::vector<int> grades)
    : labels_(std::move(labels)), grades_(std::move(grades)), graded_(true) {
  require_unique(labels_);
  if (grades_.size() != labels_.size()) throw DimensionMismatch("one grade per basis vector expected");
  for (int g : grades_) {
    if (g < 0) throw InvalidModel("negative grade");
  }
}

std::optional<Index> GradedSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

std::vector<GradeBlock> GradedSpace::blocks() const {
  std::map<int, GradeBlock> by_grade;
  for (Index i = 0; i < labels_.size(); ++i) {
    auto& b = by_grade[grades_[i]];
    b.grade = grades_[i];
    b.indices.push_back(i);
    b.labels.push_back(labels_[i]);
  }
  std::vector<GradeBlock> out;
  for (auto& [g, b] : by_grade) out.push_back(std::move(b));
  return out;
}

int GradedSpace::top_grade() const {
  return grades_.empty() ? 0 : *std::max_element(grades_.begin(), grades_.end());
}

std::vector<Index> GradedSpace::indices_of_grade(int k) const {
  std::vector<Index> out;
  for (Index i = 0; i < grades_.size(); ++i) {
    if (grades_[i] == k) out.push_back(i);
  }
  return out;
}

std::vector<Index> GradedSpace::indices_up_to(int k) const {
  std::vector<Index> out;
  for (Index i = 0; i < grades_.size(); ++i) {
    if (grades_[i] <= k) out.push_back(i);
  }
  return out;
}

GradedSpace GradedSpace::regraded(std::vector<int> grades) const { return GradedSpace(labels_, std::move(grades)); }

GradedSpace GradedSpace::tensor(const GradedSpace& a, const GradedSpace& b) {
  std::vector<std::string> labels;
  std::vector<int> grades;
  labels.reserve(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = 0; j < b.dim(); ++j) {
      labels.push_back(a.label(i) + "|" + b.label(j));
      grades.push_back(a.grade(i) + b.grade(j));
    }
  }
  if (a.graded() && b.graded()) return GradedSpace(std::move(labels), std::move(grades));
  return GradedSpace(std::move(labels));
}

std::string format_vector(const GradedSpace& space, const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += space.label(i) + ":" + to_string(v[i]);
  }
  return out.empty() ? "0" : out;
}

std::string format_tensor(const GradedSpace& space, unsigned factors, const SparseVec& v) {
  std::string out;
  const Index d = space.dim();
  for (const auto& [idx, c] : v.terms()) {
    std::vector<Index> digits(factors);
    Index rest = idx;
    for (unsigned p = factors; p-- > 0;) {
      digits[p] = rest % d;
      rest /= d;
    }
    if (!out.empty()) out += ' ';
    for (unsigned p = 0; p < factors; ++p) {
      if (p) out += '|';
      out += space.label(digits[p]);
    }
    out += ":" + to_string(c);
  }
  return out.empty() ? "0" : out;
}

}  // namespace coalg
