// Direct enumeration of the quotient semigroup, kept apart from the
// polyhedral subdiagram volume so the two can be compared.
#include "gkz/config.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gkz {

namespace {

using Pt = std::pair<Int, Int>;
using QPt = std::pair<Rat, Rat>;

Int cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

std::vector<Pt> monotone_chain(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;  // counterclockwise
}

// Keep the part of a convex polygon with a x + b y <= c.
std::vector<QPt> clip(const std::vector<QPt>& poly, const Rat& a, const Rat& b, const Rat& c) {
  std::vector<QPt> out;
  auto val = [&](const QPt& p) { return a * p.first + b * p.second - c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const QPt& p = poly[i];
    const QPt& q = poly[(i + 1) % poly.size()];
    Rat vp = val(p), vq = val(q);
    if (vp <= 0) out.push_back(p);
    if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
      Rat t = vp / (vp - vq);
      out.emplace_back(p.first + t * (q.first - p.first), p.second + t * (q.second - p.second));
    }
  }
  return out;
}

Rat doubled_area(const std::vector<QPt>& poly) {
  Rat s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const QPt& p = poly[i];
    const QPt& q = poly[(i + 1) % poly.size()];
    s += p.first * q.second - q.first * p.second;
  }
  return s < 0 ? Rat(-s) : s;
}

Int rank1(const std::vector<IntVec>& images) {
  std::vector<Int> gens;
  for (const auto& g : images) gens.push_back(boost::multiprecision::abs(g[0]));
  Int top = *std::max_element(gens.begin(), gens.end());
  std::size_t n = top.convert_to<std::size_t>();
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (std::size_t s = 1; s <= n; ++s)
    for (const auto& g : gens) {
      std::size_t gi = g.convert_to<std::size_t>();
      if (gi <= s && reach[s - gi]) reach[s] = true;
    }
  for (std::size_t s = 1; s <= n; ++s)
    if (reach[s]) return Int(s);
  throw Error("semigroup has no nonzero element");
}

Int rank2(const std::vector<IntVec>& images) {
  std::vector<Pt> g;
  for (const auto& x : images) g.emplace_back(x[0], x[1]);
  const Pt origin{0, 0};
  // Extreme rays: r1 has every generator on its left, r2 on its right.
  Pt r1 = g[0], r2 = g[0];
  for (const auto& x : g) {
    if (cross(origin, r1, x) < 0) r1 = x;
    if (cross(origin, r2, x) > 0) r2 = x;
  }
  Pt w{-r1.second + r2.second, r1.first - r2.first};
  auto wv = [&](const Pt& p) { return w.first * p.first + w.second * p.second; };
  Int top = 0;
  for (const auto& x : g) {
    if (wv(x) <= 0) throw Error("oracle: functional not positive on the cone");
    top = std::max(top, wv(x));
  }
  const Int t = top + 1;
  const Int bound = t + top;

  std::set<Pt> seen(g.begin(), g.end());
  std::deque<Pt> queue(g.begin(), g.end());
  while (!queue.empty()) {
    Pt s = queue.front();
    queue.pop_front();
    for (const auto& x : g) {
      Pt n{s.first + x.first, s.second + x.second};
      if (wv(n) <= bound && seen.insert(n).second) queue.push_back(n);
    }
  }
  std::vector<QPt> hull;
  for (const auto& p : monotone_chain(std::vector<Pt>(seen.begin(), seen.end()))) hull.emplace_back(Rat(p.first), Rat(p.second));
  Rat clipped = doubled_area(clip(hull, Rat(w.first), Rat(w.second), Rat(t)));

  Rat s1 = Rat(t, wv(r1)), s2 = Rat(t, wv(r2));
  Rat cone = boost::multiprecision::abs(Rat(r1.first) * s1 * Rat(r2.second) * s2 - Rat(r1.second) * s1 * Rat(r2.first) * s2);
  Rat v = cone - clipped;
  if (!is_integer(v)) throw Error("oracle: non-integral area " + to_string(v));
  return boost::multiprecision::numerator(v);
}

}  // namespace

Int subdiagram_volume_oracle(const PointConfiguration& a, const Face& face) {
  FaceQuotient fq = face_quotient(a, face);
  switch (fq.quotient.quotient_rank) {
    case 0: return 1;
    case 1: return rank1(fq.images);
    case 2: return rank2(fq.images);
    default: throw InputError("subdiagram_volume_oracle supports quotient rank at most 2");
  }
}

}  // namespace gkz
