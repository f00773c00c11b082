#include "gkz/polytope.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace gkz {

namespace {

struct LocalFacet {
  IntVec g;
  Int e;
  IndexSet on;
};

constexpr std::size_t kExhaustiveLimit = 12;

std::size_t affine_rank(const std::vector<IntVec>& y, const IndexSet& idx) {
  if (idx.empty()) return 0;
  std::vector<IntVec> diffs;
  for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(sub(y[idx[i]], y[idx[0]]));
  if (diffs.empty()) return 0;
  return rank(IntMatrix::from_columns(y[0].size(), diffs));
}

// Greedy choice of affinely independent points from idx.
IndexSet independent_subset(const std::vector<IntVec>& y, const IndexSet& idx) {
  IndexSet out;
  std::vector<IntVec> diffs;
  for (std::size_t i : idx) {
    if (out.empty()) {
      out.push_back(i);
      continue;
    }
    diffs.push_back(sub(y[i], y[out[0]]));
    if (rank(IntMatrix::from_columns(y[0].size(), diffs)) == diffs.size())
      out.push_back(i);
    else
      diffs.pop_back();
  }
  return out;
}

// Hyperplane through the d points `s`; a facet if all points lie on one side.
std::optional<LocalFacet> facet_through(const std::vector<IntVec>& y, std::size_t d, const IndexSet& s) {
  RatMatrix rows(s.size() - 1, d);
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t c = 0; c < d; ++c) rows(i - 1, c) = Rat(y[s[i]][c] - y[s[0]][c]);
  auto ns = null_space(rows);
  if (ns.size() != 1) return std::nullopt;
  IntVec g = primitive(clear_denominators(ns[0]));
  Int e = dot(g, y[s[0]]);
  bool le = true, ge = true;
  IndexSet on;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Int v = dot(g, y[i]);
    if (v > e) le = false;
    if (v < e) ge = false;
    if (v == e) on.push_back(i);
  }
  if (!le && !ge) return std::nullopt;
  if (!le) {
    g = scale(g, Int(-1));
    e = -e;
  }
  return LocalFacet{g, e, on};
}

std::vector<LocalFacet> facets_1d(const std::vector<IntVec>& y) {
  Int lo = y[0][0], hi = y[0][0];
  for (const auto& p : y) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  LocalFacet top{IntVec{1}, hi, {}}, bottom{IntVec{-1}, -lo, {}};
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i][0] == hi) top.on.push_back(i);
    if (y[i][0] == lo) bottom.on.push_back(i);
  }
  return {bottom, top};
}

std::vector<LocalFacet> facets_exhaustive(const std::vector<IntVec>& y, std::size_t d) {
  std::vector<LocalFacet> out;
  std::set<IndexSet> seen;
  IndexSet s(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == d) {
      auto f = facet_through(y, d, s);
      if (f && seen.insert(f->on).second) out.push_back(std::move(*f));
      return;
    }
    for (std::size_t i = start; i < y.size(); ++i) {
      s[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<LocalFacet> local_facets(const std::vector<IntVec>& y, std::size_t d, HullMethod method);

// Ridges of a facet as global index sets.
std::vector<IndexSet> ridges_of(const std::vector<IntVec>& y, const IndexSet& on) {
  std::vector<IntVec> pts;
  for (std::size_t i : on) pts.push_back(y[i]);
  Lattice aff = lattice_span(pts, SpanMode::Affine);
  std::vector<IntVec> local;
  for (const auto& p : pts) local.push_back(*lattice_coordinates(aff, p));
  std::vector<IndexSet> out;
  for (auto& f : local_facets(local, aff.rank(), HullMethod::Auto)) {
    IndexSet r;
    for (std::size_t i : f.on) r.push_back(on[i]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LocalFacet> facets_giftwrap(const std::vector<IntVec>& y, std::size_t d) {
  // Initial facet: scan d-subsets, trying points extreme in the first coordinate first.
  IndexSet order(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a][0] > y[b][0]; });
  std::optional<LocalFacet> first;
  IndexSet s(d);
  std::function<bool(std::size_t, std::size_t)> scan = [&](std::size_t pos, std::size_t start) {
    if (pos == d) {
      IndexSet sorted = s;
      first = facet_through(y, d, sorted);
      return first.has_value();
    }
    for (std::size_t i = start; i < order.size(); ++i) {
      s[pos] = order[i];
      if (scan(pos + 1, i + 1)) return true;
    }
    return false;
  };
  if (!scan(0, 0)) throw Error("convex hull: no initial facet found");

  std::vector<LocalFacet> out;
  std::set<IndexSet> seen{first->on};
  std::set<IndexSet> done_ridges;
  std::deque<std::size_t> queue{0};
  out.push_back(std::move(*first));
  while (!queue.empty()) {
    std::size_t fi = queue.front();
    queue.pop_front();
    IndexSet on = out[fi].on;
    for (const auto& ridge : ridges_of(y, on)) {
      if (!done_ridges.insert(ridge).second) continue;
      IndexSet base = independent_subset(y, ridge);
      for (std::size_t p = 0; p < y.size(); ++p) {
        if (std::binary_search(on.begin(), on.end(), p)) continue;
        IndexSet cand = base;
        cand.push_back(p);
        auto f = facet_through(y, d, cand);
        if (!f) continue;
        if (seen.insert(f->on).second) {
          out.push_back(std::move(*f));
          queue.push_back(out.size() - 1);
        }
        break;
      }
    }
  }
  return out;
}

std::vector<LocalFacet> local_facets(const std::vector<IntVec>& y, std::size_t d, HullMethod method) {
  if (d == 0) return {};
  if (d == 1) return facets_1d(y);
  if (method == HullMethod::Exhaustive || (method == HullMethod::Auto && y.size() <= kExhaustiveLimit))
    return facets_exhaustive(y, d);
  return facets_giftwrap(y, d);
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_of(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

bool Polytope::contains(const RatVec& x) const {
  if (!rational_coordinates(affine, x)) return false;
  for (const auto& f : facets)
    if (dot(to_rational(f.normal), x) > Rat(f.offset)) return false;
  return true;
}

bool Polytope::contains(const IntVec& x) const { return contains(to_rational(x)); }

std::vector<std::size_t> Polytope::tight_facets(const RatVec& x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (dot(to_rational(facets[i].normal), x) == Rat(facets[i].offset)) out.push_back(i);
  return out;
}

Polytope convex_hull(const std::vector<IntVec>& points, HullMethod method) {
  if (points.empty()) throw InputError("convex_hull of no points");
  Polytope p;
  p.points = points;
  p.affine = lattice_span(points, SpanMode::Affine);
  p.dim = p.affine.rank();
  std::vector<IntVec> local;
  local.reserve(points.size());
  for (const auto& x : points) local.push_back(*lattice_coordinates(p.affine, x));

  RatMatrix bt = to_rational(p.affine.basis.transpose());
  for (auto& lf : local_facets(local, p.dim, method)) {
    // Ambient functional h with h . (basis column j) = g_j.
    auto h = solve(bt, to_rational(lf.g));
    IntVec hi = primitive(clear_denominators(*h));
    Int c = dot(hi, points[lf.on.front()]);
    p.facets.push_back(Facet{hi, c, lf.on});
  }
  std::sort(p.facets.begin(), p.facets.end(), [](const Facet& a, const Facet& b) { return a.indices < b.indices; });

  std::set<IntVec> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    IndexSet on;
    for (std::size_t j = 0; j < points.size(); ++j) on.push_back(j);
    for (const auto& f : p.facets)
      if (std::binary_search(f.indices.begin(), f.indices.end(), i)) on = intersect(on, f.indices);
    bool vertex = std::all_of(on.begin(), on.end(), [&](std::size_t j) { return points[j] == points[i]; });
    if (vertex && seen.insert(points[i]).second) p.vertices.push_back(i);
  }
  return p;
}

std::optional<std::size_t> FacePoset::find(const IndexSet& indices) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].indices == indices) return i;
  return std::nullopt;
}

std::vector<std::size_t> FacePoset::f_vector() const {
  std::vector<std::size_t> f(faces.back().dim + 1, 0);
  for (const auto& face : faces) ++f[face.dim];
  return f;
}

std::vector<std::size_t> FacePoset::subfaces(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (subset_of(faces[i].indices, faces[f].indices)) out.push_back(i);
  return out;
}

FacePoset face_poset(const Polytope& p) {
  const std::size_t np = p.points.size();
  IndexSet all(np);
  for (std::size_t i = 0; i < np; ++i) all[i] = i;

  std::set<IndexSet> sets;
  std::deque<IndexSet> queue;
  for (const auto& f : p.facets)
    if (sets.insert(f.indices).second) queue.push_back(f.indices);
  while (!queue.empty()) {
    IndexSet cur = queue.front();
    queue.pop_front();
    for (const auto& f : p.facets) {
      IndexSet meet = intersect(cur, f.indices);
      if (!meet.empty() && sets.insert(meet).second) queue.push_back(meet);
    }
  }
  sets.erase(all);

  FacePoset poset;
  auto make_face = [&](const IndexSet& idx) {
    Face face;
    face.indices = idx;
    face.normal = IntVec(p.ambient_dim());
    face.offset = 0;
    for (std::size_t fi = 0; fi < p.facets.size(); ++fi) {
      if (!subset_of(idx, p.facets[fi].indices)) continue;
      face.facets.push_back(fi);
      face.normal = add(face.normal, p.facets[fi].normal);
      face.offset += p.facets[fi].offset;
    }
    face.dim = affine_rank(p.points, idx);
    return face;
  };
  for (const auto& s : sets) poset.faces.push_back(make_face(s));
  std::stable_sort(poset.faces.begin(), poset.faces.end(),
                   [](const Face& a, const Face& b) { return a.dim < b.dim; });
  Face top = make_face(all);
  top.dim = p.dim;
  poset.faces.push_back(top);

  for (std::size_t i = 0; i < poset.faces.size(); ++i)
    for (std::size_t j = 0; j < poset.faces.size(); ++j)
      if (poset.faces[i].dim + 1 == poset.faces[j].dim && subset_of(poset.faces[i].indices, poset.faces[j].indices))
        poset.covers.emplace_back(i, j);
  return poset;
}

std::size_t minimal_face_containing(const Polytope& p, const FacePoset& poset, const RatVec& x) {
  if (!p.contains(x)) throw InputError("minimal_face_containing: point outside the polytope");
  IndexSet on(p.points.size());
  for (std::size_t i = 0; i < on.size(); ++i) on[i] = i;
  for (std::size_t fi : p.tight_facets(x)) on = intersect(on, p.facets[fi].indices);
  auto f = poset.find(on);
  if (!f) throw Error("minimal_face_containing: face not in poset");
  return *f;
}

std::size_t minimal_face_containing(const Polytope& p, const FacePoset& poset, const IntVec& x) {
  return minimal_face_containing(p, poset, to_rational(x));
}

std::vector<IntVec> relative_interior_lattice_points(const Polytope& p, const Face& f, const Lattice& l) {
  std::vector<IntVec> pts;
  for (std::size_t i : f.indices) pts.push_back(p.points[i]);
  if (f.dim == 0) {
    if (contains(l, pts[0])) return {pts[0]};
    return {};
  }
  Lattice aff = lattice_span(pts, SpanMode::Affine);

  // A point of l on aff(F): anchor_l + B z with P (B z) = P (v0 - anchor_l).
  IntVec base = l.anchor ? *l.anchor : IntVec(l.ambient_dim);
  IntMatrix proj = annihilator(aff.basis);
  IntVec x0;
  if (proj.rows() == 0) {
    x0 = base;
  } else {
    auto z = solve_integer(proj * l.basis, proj * sub(pts[0], base));
    if (!z) return {};
    x0 = add(base, l.basis * *z);
  }
  Lattice dir = intersect_with_span(l, aff.basis);
  if (dir.rank() != f.dim) throw InputError("relative_interior_lattice_points: lattice does not span the face");
  dir.anchor = x0;

  const std::size_t k = dir.rank();
  std::vector<Int> lo(k), hi(k);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    RatVec c = *rational_coordinates(dir, to_rational(pts[j]));
    for (std::size_t t = 0; t < k; ++t) {
      Int fl = floor(c[t]), ce = ceil(c[t]);
      if (j == 0 || fl < lo[t]) lo[t] = fl;
      if (j == 0 || ce > hi[t]) hi[t] = ce;
    }
  }
  std::vector<std::size_t> strict;
  for (std::size_t fi = 0; fi < p.facets.size(); ++fi)
    if (std::find(f.facets.begin(), f.facets.end(), fi) == f.facets.end()) strict.push_back(fi);

  std::vector<IntVec> out;
  IntVec w = lo;
  for (;;) {
    IntVec x = add(x0, dir.basis * w);
    bool inside = std::all_of(strict.begin(), strict.end(), [&](std::size_t fi) {
      return dot(p.facets[fi].normal, x) < p.facets[fi].offset;
    });
    if (inside) out.push_back(x);
    std::size_t t = 0;
    while (t < k && w[t] == hi[t]) {
      w[t] = lo[t];
      ++t;
    }
    if (t == k) break;
    ++w[t];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::size_t> face_int_semiideal(const Polytope& p, const FacePoset& poset) {
  std::set<std::size_t> generators;
  for (const auto& x : p.points) generators.insert(minimal_face_containing(p, poset, x));
  std::set<std::size_t> out;
  for (std::size_t g : generators)
    for (std::size_t s : poset.subfaces(g)) out.insert(s);
  return out;
}

std::vector<IndexSet> pulling_triangulation(const Polytope& p) {
  if (p.dim == 0) return {IndexSet{p.vertices.front()}};
  std::size_t apex = p.vertices.front();
  std::vector<IndexSet> out;
  for (const auto& f : p.facets) {
    if (std::binary_search(f.indices.begin(), f.indices.end(), apex)) continue;
    std::vector<IntVec> fpts;
    for (std::size_t i : f.indices) fpts.push_back(p.points[i]);
    Polytope fp = convex_hull(fpts);
    for (auto& s : pulling_triangulation(fp)) {
      IndexSet cell{apex};
      for (std::size_t i : s) cell.push_back(f.indices[i]);
      std::sort(cell.begin(), cell.end());
      out.push_back(std::move(cell));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rat normalized_volume(const Polytope& p, const Lattice& l) {
  if (l.rank() != p.dim) throw InputError("normalized_volume: lattice rank differs from the polytope dimension");
  Rat vol = 0;
  for (const auto& cell : pulling_triangulation(p)) {
    std::vector<IntVec> verts;
    for (std::size_t i : cell) verts.push_back(p.points[i]);
    vol += simplex_volume(l, verts);
  }
  return vol;
}

Rat normalized_volume(const std::vector<RatVec>& points, const Lattice& l) {
  if (points.empty()) throw InputError("normalized_volume of no points");
  Int den = 1;
  for (const auto& x : points) den = lcm(den, common_denominator(x));
  std::vector<IntVec> scaled;
  for (const auto& x : points) scaled.push_back(*as_integral(scale(x, Rat(den))));
  Polytope p = convex_hull(scaled);
  if (l.rank() != p.dim) throw InputError("normalized_volume: lattice rank differs from the polytope dimension");
  Rat vol = 0;
  for (const auto& cell : pulling_triangulation(p)) {
    std::vector<RatVec> verts;
    for (std::size_t i : cell) verts.push_back(points[i]);
    vol += simplex_volume(l, verts);
  }
  return vol;
}

}  // namespace gkz
