#include <doctest.h>

#include "fixtures.hpp"
#include "gkz/lp.hpp"
#include "gkz/secondary.hpp"

using namespace fixtures;

namespace {

std::vector<IndexSet> cells_of(const Triangulation& t) { return t.cells; }

Rat volume_of_n(const PointConfiguration& a) { return normalized_volume(a.polytope(), a.polytope().affine); }

// Triangulations of a 1-dimensional configuration, one per subset of the
// interior points.
std::set<std::vector<IndexSet>> curve_triangulations(const std::vector<long>& exps) {
  std::vector<std::size_t> order(exps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return exps[x] < exps[y]; });
  const std::size_t inner = order.size() - 2;
  std::set<std::vector<IndexSet>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << inner); ++mask) {
    std::vector<std::size_t> used{order.front()};
    for (std::size_t k = 0; k < inner; ++k)
      if (mask >> k & 1) used.push_back(order[k + 1]);
    used.push_back(order.back());
    std::vector<IndexSet> cells;
    for (std::size_t k = 0; k + 1 < used.size(); ++k) {
      IndexSet c{used[k], used[k + 1]};
      std::sort(c.begin(), c.end());
      cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    out.insert(cells);
  }
  return out;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("small systems") {
    RatMatrix a = RatMatrix::from_rows(1, {{Rat(1)}, {Rat(-1)}});
    CHECK_FALSE(feasible_point(a, {Rat(1), Rat(0)}).has_value());
    auto x = feasible_point(a, {Rat(1), Rat(-3)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] >= 1);
    CHECK((*x)[0] <= 3);
    RatMatrix eq = RatMatrix::from_rows(2, {{Rat(1), Rat(1)}});
    RatMatrix ge = RatMatrix::from_rows(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    auto y = feasible_point(ge, {Rat(1, 3), Rat(1, 3)}, eq, {Rat(1)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == 1);
    CHECK_FALSE(feasible_point(ge, {Rat(2, 3), Rat(2, 3)}, eq, {Rat(1)}).has_value());
  }

  TEST_CASE("planted feasible and contradictory systems") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4), slack(0, 3), dim(1, 4), rows(1, 7);
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t n = static_cast<std::size_t>(dim(rng)), m = static_cast<std::size_t>(rows(rng));
      RatVec x0(n);
      for (auto& c : x0) c = Rat(coef(rng), 1 + slack(rng));
      RatMatrix a(m, n);
      RatVec b(m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = coef(rng);
        RatVec row = a.row(r);
        b[r] = dot(row, x0) - slack(rng);
      }
      auto x = feasible_point(a, b);
      REQUIRE(x.has_value());
      for (std::size_t r = 0; r < m; ++r) CHECK(dot(a.row(r), *x) >= b[r]);

      // Append the negation of a row with a larger bound.
      std::size_t r0 = static_cast<std::size_t>(trial) % m;
      RatMatrix bad(m + 1, n);
      RatVec bb = b;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) bad(r, c) = a(r, c);
      for (std::size_t c = 0; c < n; ++c) bad(m, c) = -a(r0, c);
      bb.push_back(-b[r0] + 1);
      if (is_zero(a.row(r0))) continue;
      CHECK_FALSE(feasible_point(bad, bb).has_value());
    }
  }
}

TEST_SUITE("secondary") {
  TEST_CASE("lifting examples") {
    auto c = curve({0, 1, 3});
    CHECK(cells_of(regular_triangulation(c, {0, 1, 0})) == std::vector<IndexSet>{{0, 2}});
    CHECK(cells_of(regular_triangulation(c, {0, -1, 0})) == std::vector<IndexSet>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(regular_triangulation(c, {0, 1, 3}), InputError);
    auto s = config(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 0, 1})});
    CHECK(cells_of(regular_triangulation(s, {5, -2, 7})) == std::vector<IndexSet>{{0, 1, 2}});
    // Four lower points on one plane.
    auto sq = config(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 0, 1}), v({1, 1, 1})});
    CHECK_THROWS_AS(regular_triangulation(sq, {0, 0, 0, 0}), InputError);
    CHECK(regular_triangulation(sq, {0, 0, 0, 1}).cells == std::vector<IndexSet>{{0, 1, 2}, {1, 2, 3}});
  }

  TEST_CASE("gkz vectors of the cubic curve") {
    auto c = curve({0, 1, 3});
    CHECK(gkz_vector(c, regular_triangulation(c, {0, 1, 0})) == v({3, 0, 3}));
    CHECK(gkz_vector(c, regular_triangulation(c, {0, -1, 0})) == v({1, 3, 2}));
    auto s = config(3, {v({1, 0, 0}), v({1, 3, 0}), v({1, 0, 3}), v({1, 1, 1})});
    CHECK(gkz_vector(s, regular_triangulation(s, {0, 0, 0, 10})) == v({3, 3, 3, 0}));  // Z_A has index 3 in Z^3
  }

  TEST_CASE("enumeration counts") {
    CHECK(enumerate_regular_triangulations(curve({0, 1, 3})).size() == 2);
    CHECK(enumerate_regular_triangulations(curve({0, 1, 2})).size() == 2);
    CHECK(enumerate_regular_triangulations(config(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 0, 1})})).size() == 1);
    CHECK(enumerate_regular_triangulations(planar_five()).size() == 5);
    EnumerationOptions tight;
    tight.max_points = 4;
    CHECK_THROWS_AS(enumerate_regular_triangulations(planar_five(), tight), BudgetError);
  }

  TEST_CASE("secondary polytopes") {
    auto s = secondary_polytope(curve({0, 1, 3}));
    std::set<IntVec> got(s.gkz.begin(), s.gkz.end());
    CHECK(got == std::set<IntVec>{v({3, 0, 3}), v({1, 3, 2})});
    CHECK(s.hull.dim == 1);
    auto t = secondary_polytope(curve({0, 1, 2}));
    CHECK(std::set<IntVec>(t.gkz.begin(), t.gkz.end()) == std::set<IntVec>{v({2, 0, 2}), v({1, 2, 1})});
    auto u = secondary_polytope(config(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 0, 1})}));
    CHECK(u.hull.dim == 0);
    auto e = secondary_polytope(planar_five());
    CHECK(e.hull.dim == 2);
    CHECK(e.hull.vertices.size() == 5);
  }

  TEST_CASE("facet restriction") {
    auto r = check_facet_restriction(curve({0, 1, 2, 3}), 2);
    CHECK(r.holds);
    CHECK(r.secondary_dim == 2);
    CHECK(r.face_dim == 1);
    CHECK(r.restricted.size() == 2);
    CHECK_THROWS_AS(check_facet_restriction(curve({0, 1, 2}), 1), InputError);
    CHECK_THROWS_AS(check_facet_restriction(planar_five(), 3), InputError);
    CHECK_THROWS_AS(check_facet_restriction(curve({0, 1, 2, 3}), 0), InputError);
  }

  TEST_CASE("curves against subset enumeration") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(0, 9);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
      std::vector<long> exps;
      while (exps.size() < n) {
        long e = coord(rng);
        if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(e);
      }
      auto a = curve(exps);
      auto ts = enumerate_regular_triangulations(a);
      std::set<std::vector<IndexSet>> got;
      for (const auto& t : ts) got.insert(t.cells);
      CHECK(got == curve_triangulations(exps));
      CHECK(ts.size() == std::size_t{1} << (n - 2));
    }
  }

  TEST_CASE("triangulation invariants on random configurations") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t d = trial % 5 == 4 ? 3 : 2;
      std::size_t n = d + 2 + static_cast<std::size_t>(trial % 4);
      auto a = random_config(rng, d, n, d == 3 ? 2 : 3);
      auto sp = secondary_polytope(a);
      Rat vol = volume_of_n(a);
      std::set<IntVec> distinct(sp.gkz.begin(), sp.gkz.end());
      CHECK(distinct.size() == sp.gkz.size());
      CHECK(sp.hull.vertices.size() == sp.gkz.size());
      if (sp.gkz.size() > 1) CHECK(sp.hull.dim == n - d - 1);
      for (std::size_t k = 0; k < sp.triangulations.size(); ++k) {
        const auto& t = sp.triangulations[k];
        Int cells = 0, total = 0;
        for (const auto& c : t.cells) {
          CHECK(c.size() == d + 1);
          CHECK(rank(a.matrix().select_columns(c)) == d + 1);
        }
        for (const auto& x : t.volumes) cells += x;
        for (const auto& x : sp.gkz[k]) total += x;
        CHECK(Rat(cells) == vol);
        CHECK(Rat(total) == Rat(d + 1) * vol);
        std::vector<bool> used(n, false);
        for (const auto& c : t.cells)
          for (auto j : c) used[j] = true;
        for (std::size_t j = 0; j < n; ++j)
          if (!used[j]) CHECK(sp.gkz[k][j] == 0);
        // The certificate reproduces the triangulation, also after an affine shift.
        CHECK(regular_triangulation(a, t.heights) == t);
        RatVec shifted = t.heights;
        for (std::size_t j = 0; j < n; ++j) shifted[j] += Rat(3) * Rat(a.point(j)[1]) - Rat(2) + Rat(a.point(j)[0]);
        CHECK(regular_triangulation(a, shifted) == t);
      }
    }
  }
}
