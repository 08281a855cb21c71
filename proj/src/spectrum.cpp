#include "isqeig/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isq {

void Spectrum::add(double value, ModeTag tag) {
  values_.push_back(value);
  tags_.push_back(tag);
}

void Spectrum::add_repeated(double value, ModeTag tag, long count) {
  if (count < 0) throw std::invalid_argument("Spectrum: negative multiplicity");
  for (long i = 0; i < count; ++i) add(value, tag);
}

void Spectrum::sort() {
  std::vector<std::size_t> idx(values_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (values_[a] != values_[b]) return values_[a] < values_[b];
    return tags_[a].n < tags_[b].n;
  });
  std::vector<double> v(idx.size());
  std::vector<ModeTag> t(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    v[i] = values_[idx[i]];
    t[i] = tags_[idx[i]];
  }
  values_ = std::move(v);
  tags_ = std::move(t);
}

void Spectrum::truncate(std::size_t m) {
  if (m < values_.size()) {
    values_.resize(m);
    tags_.resize(m);
  }
}

std::vector<Spectrum::Group> Spectrum::groups(double tol) const {
  std::vector<Group> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!out.empty() && std::abs(values_[i] - out.back().value) <= tol * (1.0 + std::abs(out.back().value))) {
      ++out.back().multiplicity;
      continue;
    }
    out.push_back(Group{values_[i], 1, i, tags_[i]});
  }
  return out;
}

int Spectrum::multiplicity_at(std::size_t i, double tol) const {
  for (const Group& g : groups(tol))
    if (i >= g.first && i < g.first + static_cast<std::size_t>(g.multiplicity)) return g.multiplicity;
  throw std::out_of_range("Spectrum: index out of range");
}

}  // namespace isq
