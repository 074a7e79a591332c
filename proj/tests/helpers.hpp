#pragma once

#include <random>
#include <vector>

#include "cdiag/diagram.hpp"

namespace testutil {

// Single-summand point-base tower with identity labels.
inline cdiag::Diagram af_tower(const std::vector<long long>& sizes, bool repeat = false) {
  cdiag::Diagram d;
  for (long long s : sizes) d.levels.push_back({cdiag::SummandShape{cdiag::Base::Point, s}});
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    cdiag::EdgeBundle b;
    b.level = static_cast<int>(n);
    for (long long m = 0; m < sizes[n + 1] / sizes[n]; ++m) {
      b.labels.push_back(cdiag::PLMap::identity());
    }
    d.bundles.push_back(b);
  }
  d.repeat_last = repeat;
  cdiag::require_valid(d);
  return d;
}

// Deterministic random PL self-map of [0,1] with small denominators.
inline cdiag::PLMap random_plmap(std::mt19937& rng) {
  std::uniform_int_distribution<int> pieces(1, 4);
  std::uniform_int_distribution<int> num(0, 16);
  const int k = pieces(rng);
  std::vector<cdiag::Rat> xs{cdiag::Rat(0)}, ys;
  std::vector<int> cuts;
  for (int i = 1; i < k; ++i) cuts.push_back(1 + num(rng) % 15);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (int c : cuts) xs.push_back(cdiag::Rat(c, 16));
  xs.push_back(cdiag::Rat(1));
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(cdiag::Rat(num(rng), 16));
  return cdiag::PLMap(xs, ys);
}

}  // namespace testutil
