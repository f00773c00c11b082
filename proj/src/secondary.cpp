#include "gkz/secondary.hpp"

#include "gkz/lp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace gkz {

namespace {

void canonicalize(Triangulation& t) {
  for (auto& c : t.cells) std::sort(c.begin(), c.end());
  std::sort(t.cells.begin(), t.cells.end());
}

// Barycentric coordinates of column j in the simplex `cell`.
RatVec barycentric(const PointConfiguration& a, const IndexSet& cell, std::size_t j) {
  RatMatrix m = to_rational(a.matrix().select_columns(cell));
  auto x = solve(m, to_rational(a.point(j)));
  if (!x) throw Error("point outside the span of a cell");
  return *x;
}

IntVec fold_form(const PointConfiguration& a, const IndexSet& cell, std::size_t j) {
  RatVec f(a.size());
  f[j] = 1;
  RatVec lam = barycentric(a, cell, j);
  for (std::size_t k = 0; k < cell.size(); ++k) f[cell[k]] -= lam[k];
  return primitive(clear_denominators(f));
}

RatVec random_heights(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<long> dist(0, 1000000);
  RatVec h(n);
  for (auto& x : h) x = dist(rng);
  return h;
}

std::optional<Triangulation> try_triangulation(const PointConfiguration& a, const RatVec& h) {
  try {
    return regular_triangulation(a, h);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

bool weakly_inside(const std::vector<IntVec>& forms, const RatVec& h) {
  for (const auto& f : forms)
    if (dot(to_rational(f), h) < 0) return false;
  return true;
}

std::size_t affine_dim(const std::vector<IntVec>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<IntVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank(IntMatrix::from_columns(pts[0].size(), diffs));
}

}  // namespace

Int cell_volume(const PointConfiguration& a, const IndexSet& cell) {
  const Lattice& z = a.lattice();
  if (cell.size() != z.rank()) throw InputError("cell size does not match dim N + 1");
  std::vector<IntVec> coords;
  for (std::size_t j : cell) {
    auto c = lattice_coordinates(z, a.point(j));
    if (!c) throw Error("column outside Z_A");
    coords.push_back(*c);
  }
  Int d = determinant(IntMatrix::from_columns(z.rank(), coords));
  return boost::multiprecision::abs(d);
}

Triangulation regular_triangulation(const PointConfiguration& a, const RatVec& heights) {
  const std::size_t n = a.size();
  if (heights.size() != n) throw InputError("expected one height per column");
  const std::size_t d = a.dim();
  Triangulation t;
  t.heights = heights;

  Int den = common_denominator(heights);
  std::vector<IntVec> lifted;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec p = a.point(j);
    Rat h = heights[j] * den;
    p.push_back(boost::multiprecision::numerator(h));
    lifted.push_back(std::move(p));
  }
  Polytope up = convex_hull(lifted);
  if (up.dim == d) {
    if (n != d + 1) throw InputError("heights are affine on the points; perturb them to get a triangulation");
    IndexSet all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    t.cells.push_back(all);
  } else {
    const std::size_t last = a.ambient_dim();
    for (const auto& f : up.facets) {
      if (f.normal[last] >= 0) continue;
      if (f.indices.size() != d + 1)
        throw InputError("lower hull cell with " + std::to_string(f.indices.size()) +
                         " points is not a simplex; perturb the heights");
      t.cells.push_back(f.indices);
    }
  }
  canonicalize(t);
  for (const auto& c : t.cells) t.volumes.push_back(cell_volume(a, c));
  return t;
}

IntVec gkz_vector(const PointConfiguration& a, const Triangulation& t) {
  IntVec phi(a.size());
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    Int vol = k < t.volumes.size() ? t.volumes[k] : cell_volume(a, t.cells[k]);
    for (std::size_t j : t.cells[k]) phi[j] += vol;
  }
  return phi;
}

std::vector<IntVec> secondary_cone_inequalities(const PointConfiguration& a, const Triangulation& t) {
  std::set<IntVec> forms;
  std::map<IndexSet, std::vector<std::pair<std::size_t, std::size_t>>> ridges;
  std::vector<bool> used(a.size(), false);
  for (std::size_t k = 0; k < t.cells.size(); ++k)
    for (std::size_t v : t.cells[k]) {
      used[v] = true;
      IndexSet r;
      for (std::size_t u : t.cells[k])
        if (u != v) r.push_back(u);
      ridges[r].emplace_back(k, v);
    }
  for (const auto& [r, sides] : ridges) {
    if (sides.size() != 2) continue;
    forms.insert(fold_form(a, t.cells[sides[0].first], sides[1].second));
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (used[j]) continue;
    bool placed = false;
    for (const auto& c : t.cells) {
      RatVec lam = barycentric(a, c, j);
      if (std::all_of(lam.begin(), lam.end(), [](const Rat& x) { return x >= 0; })) {
        forms.insert(fold_form(a, c, j));
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("point " + std::to_string(j) + " is covered by no cell");
  }
  return {forms.begin(), forms.end()};
}

std::optional<RatVec> regularity_certificate(const PointConfiguration& a, const Triangulation& t) {
  auto forms = secondary_cone_inequalities(a, t);
  if (forms.empty()) return RatVec(a.size());
  return feasible_point(to_rational(IntMatrix::from_rows(a.size(), forms)), RatVec(forms.size(), Rat(1)));
}

std::vector<Triangulation> enumerate_regular_triangulations(const PointConfiguration& a,
                                                            const EnumerationOptions& opt) {
  const std::size_t n = a.size();
  if (n > opt.max_points)
    throw BudgetError("triangulation enumeration is capped at " + std::to_string(opt.max_points) + " points");
  std::mt19937 rng(opt.seed);

  std::optional<Triangulation> start;
  for (int tries = 0; !start; ++tries) {
    if (tries > 100) throw Error("no generic lifting found");
    start = try_triangulation(a, random_heights(n, rng));
  }

  std::map<std::vector<IndexSet>, Triangulation> found;
  std::deque<std::vector<IndexSet>> queue;
  auto admit = [&](Triangulation t) {
    auto cert = regularity_certificate(a, t);
    if (!cert) throw Error("triangulation failed its regularity certificate");
    t.heights = *cert;
    auto key = t.cells;
    if (found.emplace(key, std::move(t)).second) queue.push_back(key);
  };
  admit(*start);

  while (!queue.empty()) {
    const Triangulation cur = found.at(queue.front());
    queue.pop_front();
    auto forms = secondary_cone_inequalities(a, cur);
    for (std::size_t w = 0; w < forms.size(); ++w) {
      std::vector<IntVec> others;
      for (std::size_t k = 0; k < forms.size(); ++k)
        if (k != w) others.push_back(forms[k]);
      RatMatrix eq = to_rational(IntMatrix::from_rows(n, {forms[w]}));
      RatMatrix ineq = others.empty() ? RatMatrix() : to_rational(IntMatrix::from_rows(n, others));
      auto wall = feasible_point(ineq, RatVec(others.size(), Rat(1)), eq, RatVec{Rat(0)});
      if (!wall) continue;  // not a facet of the cone

      RatVec lw = to_rational(forms[w]);
      RatVec step = scale(lw, Rat(-1) / dot(lw, lw));
      Rat worst = 1;
      for (const auto& f : others) worst = std::max(worst, boost::multiprecision::abs(dot(to_rational(f), step)));
      Rat eps = 1 / (2 * worst);
      bool crossed = false;
      for (int halvings = 0; halvings < 64 && !crossed; ++halvings, eps /= 2) {
        auto next = try_triangulation(a, add(*wall, scale(step, eps)));
        if (!next || next->cells == cur.cells) continue;
        if (!weakly_inside(secondary_cone_inequalities(a, *next), *wall)) continue;
        admit(*next);
        crossed = true;
      }
      if (!crossed) throw Error("could not cross a wall of the secondary cone");
    }
  }

  for (std::size_t s = 0; s < opt.seed_checks; ++s) {
    auto t = try_triangulation(a, random_heights(n, rng));
    if (t && !found.count(t->cells)) throw Error("flip closure missed a regular triangulation");
  }

  std::vector<Triangulation> out;
  for (auto& [k, t] : found) out.push_back(std::move(t));
  return out;
}

SecondaryPolytope secondary_polytope(const PointConfiguration& a, const EnumerationOptions& opt) {
  SecondaryPolytope s;
  s.triangulations = enumerate_regular_triangulations(a, opt);
  for (const auto& t : s.triangulations) s.gkz.push_back(gkz_vector(a, t));
  s.hull = convex_hull(s.gkz);
  return s;
}

FacetRestrictionReport check_facet_restriction(const PointConfiguration& a, std::size_t i,
                                               const EnumerationOptions& opt) {
  if (i >= a.size()) throw InputError("column index out of range");
  if (a.is_vertex(i)) throw InputError("column " + std::to_string(i) + " is a vertex of N");
  PointConfiguration ai = a.without(i);
  if (!(ai.lattice() == a.lattice())) throw InputError("removing column " + std::to_string(i) + " shrinks Z_A");

  FacetRestrictionReport r;
  r.point = i;
  auto full = secondary_polytope(a, opt);
  for (const auto& g : full.gkz)
    if (g[i] == 0) r.face_vertices.push_back(g);
  for (const auto& t : enumerate_regular_triangulations(ai, opt)) {
    IntVec g = gkz_vector(ai, t);
    g.insert(g.begin() + static_cast<std::ptrdiff_t>(i), Int(0));
    r.restricted.push_back(std::move(g));
  }
  std::sort(r.face_vertices.begin(), r.face_vertices.end());
  std::sort(r.restricted.begin(), r.restricted.end());
  r.secondary_dim = affine_dim(full.gkz);
  r.face_dim = affine_dim(r.face_vertices);
  r.holds = r.face_vertices == r.restricted && r.face_dim + 1 == r.secondary_dim;
  return r;
}

}  // namespace gkz
