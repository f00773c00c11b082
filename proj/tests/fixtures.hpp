// Shared configurations for the unit tests.
#pragma once

#include <doctest.h>

#include "gkz/config.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fixtures {

using namespace gkz;

inline IntVec v(std::initializer_list<long> xs) { return to_int_vec(std::vector<long>(xs)); }

inline PointConfiguration config(std::size_t rows, const std::vector<IntVec>& cols) {
  return PointConfiguration(IntMatrix::from_columns(rows, cols));
}

inline PointConfiguration planar_five() {
  return config(3, {v({1, 0, 0}), v({1, 3, 0}), v({1, 0, 3}), v({1, 1, 0}), v({1, 0, 2})});
}

inline PointConfiguration spatial_seven() {
  return config(4, {v({1, 0, 1, 0}), v({1, 1, 2, 0}), v({1, 2, 0, 0}), v({1, 1, 1, 0}), v({1, 2, 0, 2}),
                    v({1, 1, 0, 3}), v({1, 0, 0, 4})});
}

inline PointConfiguration curve(std::vector<long> exps) {
  std::vector<IntVec> cols;
  for (long e : exps) cols.push_back(v({1, e}));
  return config(2, cols);
}

inline const Face& face_with(const PointConfiguration& a, const IndexSet& idx) {
  auto f = a.faces().find(idx);
  REQUIRE(f.has_value());
  return a.faces().faces[*f];
}

inline std::set<IntVec> point_set(const PointConfiguration& a) {
  auto p = a.points();
  return {p.begin(), p.end()};
}

inline PointConfiguration random_config(std::mt19937& rng, std::size_t d, std::size_t n, int box) {
  std::uniform_int_distribution<int> dist(0, box);
  for (;;) {
    std::vector<IntVec> pts;
    while (pts.size() < n) {
      IntVec p(d + 1);
      p[0] = 1;
      for (std::size_t i = 1; i <= d; ++i) p[i] = dist(rng);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    auto a = config(d + 1, pts);
    if (a.dim() == d) return a;
  }
}


}  // namespace fixtures
