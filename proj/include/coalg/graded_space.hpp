#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coalg/linalg.hpp"

namespace coalg {

/// One homogeneous piece M_(k) of a graded space.
struct GradeBlock {
  int grade = 0;
  std::vector<Index> indices;
  std::vector<std::string> labels;
  Index dim() const { return indices.size(); }
};

/// Finite-dimensional space with a labeled basis and, optionally, a grade
/// attached to every basis vector. Basis vectors of one grade need not be
/// contiguous; blocks() groups them by increasing grade.
class GradedSpace {
 public:
  GradedSpace() = default;
  /// Ungraded space.
  explicit GradedSpace(std::vector<std::string> labels);
  /// Graded space; grades.size() must match labels.size(), grades >= 0.
  GradedSpace(std::vector<std::string> labels, std::vector<int> grades);

  Index dim() const { return labels_.size(); }
  bool graded() const { return graded_; }
  const std::string& label(Index i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  int grade(Index i) const { return grades_.at(i); }
  const std::vector<int>& grades() const { return grades_; }
  std::optional<Index> index_of(const std::string& label) const;

  std::vector<GradeBlock> blocks() const;
  int top_grade() const;
  std::vector<Index> indices_of_grade(int k) const;
  std::vector<Index> indices_up_to(int k) const;

  /// Same basis, new grades (used by regrading experiments and transport).
  GradedSpace regraded(std::vector<int> grades) const;

  /// Labels "x|y" for the basis of M (x) N, grade = sum of grades.
  static GradedSpace tensor(const GradedSpace& a, const GradedSpace& b);

 private:
  std::vector<std::string> labels_;
  std::vector<int> grades_;
  bool graded_ = false;
};

/// Renders a dense vector as "label:coef label:coef ..." (or "0").
std::string format_vector(const GradedSpace& space, const Vector& v);

/// Renders a sparse tensor over space^{(x) k} as "a|b:coef ...".
std::string format_tensor(const GradedSpace& space, unsigned factors, const SparseVec& v);

}  // namespace coalg
