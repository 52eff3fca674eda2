#pragma once

// Canonical pairs used throughout the test and verification suites.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wordchain/measures.hpp"
#include "wordchain/random.hpp"

namespace wordchain::fixtures {

struct NamedPair {
  std::string name;
  CanonicalPair pair;
};

inline std::vector<NamedPair> canonical_pairs() {
  using R = Rational;
  return {
      {"lebesgue", CanonicalPair::lebesgue()},
      {"separated", CanonicalPair::separated()},
      {"thirds", CanonicalPair::from_mu(StepMeasure({0, R(1, 3), R(2, 3), 1}, {R(3, 2), R(1, 2), 1}))},
      {"quarters",
       CanonicalPair::from_mu(StepMeasure({0, R(1, 4), R(1, 2), R(3, 4), 1}, {0, 2, R(1, 2), R(3, 2)}))},
      {"uneven", CanonicalPair::from_mu(StepMeasure({0, R(1, 5), R(1, 2), 1}, {R(1, 3), 2, R(2, 3)}))},
  };
}

/// A random canonical pair with 1-4 cells and small rational data.
inline CanonicalPair random_canonical_pair(Rng& rng) {
  using R = Rational;
  const std::size_t cells = 1 + uniform_index(rng, 4);
  std::vector<R> cuts;
  while (cuts.size() + 1 < cells) {
    R t(static_cast<long long>(1 + uniform_index(rng, 11)), 12);
    if (std::find(cuts.begin(), cuts.end(), t) == cuts.end()) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<R> bps{0};
  bps.insert(bps.end(), cuts.begin(), cuts.end());
  bps.push_back(1);

  std::vector<R> dens;
  R mass = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    dens.emplace_back(static_cast<long long>(uniform_index(rng, 9)), 4);  // 0, 1/4, ..., 2
    mass += dens.back() * (bps[k + 1] - bps[k]);
  }
  // blend toward density 2 or toward 0 so the mass is exactly 1 and 0 <= d <= 2
  if (mass == 0) {
    for (auto& d : dens) d = 1;
  } else if (mass < 1) {
    R s = (1 - mass) / (2 - mass);
    for (auto& d : dens) d += s * (2 - d);
  } else {
    for (auto& d : dens) d /= mass;
  }
  return CanonicalPair::from_mu(StepMeasure(std::move(bps), std::move(dens)));
}

}  // namespace wordchain::fixtures
