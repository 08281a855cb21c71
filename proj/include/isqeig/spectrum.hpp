#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace isq {

/// Where an eigenvalue came from: angular mode n and radial index k (1-based),
/// or -1 when not applicable (e.g. mortar solves).
struct ModeTag {
  int n = -1;
  int k = -1;
};

/// Ascending eigenvalues with repeats kept; degenerate values are grouped on demand.
class Spectrum {
public:
  struct Group {
    double value = 0.0;
    int multiplicity = 0;
    std::size_t first = 0;
    ModeTag tag;
  };

  static constexpr double kGroupTolerance = 1e-9;

  void add(double value, ModeTag tag = {});
  void add_repeated(double value, ModeTag tag, long count);

  /// Stable sort by value, ties broken by mode index.
  void sort();
  void truncate(std::size_t m);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<ModeTag>& tags() const { return tags_; }

  /// Values within tol * (1 + |lambda|) of the group's first member are merged.
  std::vector<Group> groups(double tol = kGroupTolerance) const;

  /// Size of the degenerate group containing entry i.
  int multiplicity_at(std::size_t i, double tol = kGroupTolerance) const;

private:
  std::vector<double> values_;
  std::vector<ModeTag> tags_;
};

}  // namespace isq
