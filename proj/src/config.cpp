#include "gkz/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gkz {

RatVec check_homogeneous(const IntMatrix& matrix) {
  RatVec ones(matrix.cols(), Rat(1));
  auto h = solve(to_rational(matrix.transpose()), ones);
  if (!h) throw InputError("configuration is not homogeneous: no functional takes the value 1 on every column");
  return *h;
}

std::string point_label(const IntVec& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

PointConfiguration::PointConfiguration(IntMatrix matrix, std::vector<std::string> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (matrix_.cols() == 0 || matrix_.rows() == 0) throw InputError("configuration needs at least one column");
  if (labels_.empty())
    for (std::size_t i = 0; i < matrix_.cols(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != matrix_.cols()) throw InputError("label count differs from column count");
  auto pts = matrix_.columns();
  std::set<IntVec> distinct(pts.begin(), pts.end());
  if (distinct.size() != pts.size()) throw InputError("configuration columns must be distinct");
  homogeneity_ = check_homogeneous(matrix_);
  polytope_ = convex_hull(pts);
  poset_ = face_poset(polytope_);
  lattice_ = make_lattice(matrix_.rows(), matrix_);
}

std::optional<std::size_t> PointConfiguration::find(const IntVec& p) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (point(i) == p) return i;
  return std::nullopt;
}

PointConfiguration PointConfiguration::without(std::size_t i) const {
  if (i >= size()) throw InputError("column index out of range");
  auto labels = labels_;
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(i));
  return PointConfiguration(matrix_.drop_column(i), labels);
}

PointConfiguration PointConfiguration::with_point(const IntVec& p, const std::string& label) const {
  auto labels = labels_;
  labels.push_back(label.empty() ? point_label(p) : label);
  return PointConfiguration(matrix_.append_column(p), labels);
}

bool PointConfiguration::is_vertex(std::size_t i) const {
  return std::find(polytope_.vertices.begin(), polytope_.vertices.end(), i) != polytope_.vertices.end();
}

IndexSet PointConfiguration::on_face(const Face& face) const {
  IndexSet out;
  for (std::size_t i = 0; i < size(); ++i)
    if (dot(face.normal, point(i)) == face.offset) out.push_back(i);
  return out;
}

namespace {

std::vector<IntVec> points_on(const PointConfiguration& a, const Face& face) {
  std::vector<IntVec> out;
  for (std::size_t i : a.on_face(face)) out.push_back(a.point(i));
  return out;
}

IntMatrix as_columns(std::size_t rows, const std::vector<IntVec>& pts) { return IntMatrix::from_columns(rows, pts); }

Int to_integer(const Rat& q, const char* what) {
  if (!is_integer(q)) throw Error(std::string(what) + " is not an integer: " + to_string(q));
  return boost::multiprecision::numerator(q);
}

}  // namespace

Lattice face_lattice(const PointConfiguration& a, const Face& face) {
  auto pts = points_on(a, face);
  if (pts.empty()) throw InputError("face_lattice: no configuration point on the face");
  return lattice_span(pts, SpanMode::Affine);
}

bool same_affine_lattice(const Lattice& x, const Lattice& y) {
  if (x.ambient_dim != y.ambient_dim || !(x.basis == y.basis)) return false;
  if (x.anchor && y.anchor) return contains(x, *y.anchor);
  return x.anchor.has_value() == y.anchor.has_value();
}

RedundancyReport is_lattice_redundant(const PointConfiguration& a, std::size_t i) {
  if (i >= a.size()) throw InputError("column index out of range");
  RedundancyReport rep;
  if (a.is_vertex(i)) {
    rep.is_vertex = true;
    return rep;
  }
  PointConfiguration b = a.without(i);
  rep.redundant = true;
  for (std::size_t f = 0; f < a.faces().faces.size(); ++f) {
    const Face& face = a.faces().faces[f];
    bool eq = same_affine_lattice(face_lattice(a, face), face_lattice(b, face));
    rep.faces.push_back({f, eq});
    rep.redundant = rep.redundant && eq;
  }
  return rep;
}

Int index_i(const PointConfiguration& a, const Face& face) {
  auto pts = points_on(a, face);
  if (pts.empty()) throw InputError("index_i: no configuration point on the face");
  IntMatrix span = as_columns(a.ambient_dim(), pts);
  Lattice sat = intersect_with_span(a.lattice(), span);
  Lattice group = make_lattice(a.ambient_dim(), span);
  return *lattice_index(sat, group);
}

FaceQuotient face_quotient(const PointConfiguration& a, const Face& face) {
  auto on = a.on_face(face);
  if (on.empty()) throw InputError("face_quotient: no configuration point on the face");
  std::vector<IntVec> pts;
  for (std::size_t i : on) pts.push_back(a.point(i));
  Lattice kernel = intersect_with_span(a.lattice(), as_columns(a.ambient_dim(), pts));
  FaceQuotient fq{quotient(a.lattice(), kernel, true), {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::binary_search(on.begin(), on.end(), i)) continue;
    fq.off_face.push_back(i);
    fq.images.push_back(fq.quotient.project(a.point(i)));
  }
  return fq;
}

// Let G be the images of the columns off the face, S the semigroup generated
// by G and C = cone(G).
//
// Claim: conv(S\0) = conv(G) + C. Every s in S\0 is g + s' with g in G and
// s' in S, so S\0 lies in the convex set conv(G) + C. Conversely conv(S\0)
// contains g + sum n_r r for integers n_r >= 0, and a point g + sum t_r r with
// real t_r >= 0 is a convex combination of the corners with n_r in
// {floor t_r, ceil t_r}. Taking convex combinations over g gives all of
// conv(G) + C.
//
// Truncation: w, the sum of the inward facet normals of C, is positive on
// C\0. Let M = max w(g). A point x of C with w(x) >= M is sum l_i r_i over
// rays r_i in G with l_i >= 0; putting u_i = l_i w(r_i) / w(x) (so sum u_i = 1)
// gives x = sum u_i r_i + sum u_i (w(x)/w(r_i) - 1) r_i, a point of
// conv(G) + C. So C \ conv(S\0) lies in {w < M} and its volume is
// vol(C and w <= T) - vol(conv(G) + C and w <= T) for T = M + 1. The first set
// is conv(0, r T / w(r)); the second is conv(G, g + (T - w(g)) / w(r) r), since
// its vertices are vertices of conv(G) + C or points where an unbounded edge
// g + t r meets w = T.
Int subdiagram_volume(const PointConfiguration& a, const Face& face) {
  FaceQuotient fq = face_quotient(a, face);
  const std::size_t q = fq.quotient.quotient_rank;
  if (q == 0) return 1;
  const auto& g = fq.images;
  Lattice zq = standard_lattice(q);

  std::vector<IntVec> with_origin{IntVec(q)};
  with_origin.insert(with_origin.end(), g.begin(), g.end());
  Polytope cone = convex_hull(with_origin);
  IntVec w(q);
  for (const auto& f : cone.facets)
    if (f.offset == 0) w = sub(w, f.normal);

  Int top = 0;
  for (const auto& x : g) top = std::max(top, dot(w, x));
  const Int t = top + 1;

  std::vector<IntVec> rays;
  for (std::size_t vi : cone.vertices)
    if (!is_zero(cone.points[vi])) rays.push_back(cone.points[vi]);

  std::vector<RatVec> truncated_cone{RatVec(q)};
  for (const auto& r : rays) truncated_cone.push_back(scale(to_rational(r), Rat(t, dot(w, r))));

  std::vector<RatVec> truncated_hull;
  for (const auto& x : g) {
    truncated_hull.push_back(to_rational(x));
    for (const auto& r : rays)
      truncated_hull.push_back(add(to_rational(x), scale(to_rational(r), Rat(t - dot(w, x), dot(w, r)))));
  }
  Rat v = normalized_volume(truncated_cone, zq) - normalized_volume(truncated_hull, zq);
  return to_integer(v, "subdiagram volume");
}

MultiplicityRecord multiplicity(const PointConfiguration& a, const Face& face) {
  MultiplicityRecord r;
  auto idx = a.faces().find(a.on_face(face));
  r.face = idx ? *idx : a.faces().top();
  r.index_i = index_i(a, face);
  r.subvol_v = subdiagram_volume(a, face);
  r.mult_m = r.index_i * r.subvol_v;
  return r;
}

std::vector<MultiplicityRecord> multiplicity_table(const PointConfiguration& a) {
  std::vector<MultiplicityRecord> out;
  for (const auto& f : a.faces().faces) out.push_back(multiplicity(a, f));
  return out;
}

SaturationMode parse_saturation_mode(const std::string& s) {
  if (s == "s") return SaturationMode::S;
  if (s == "p") return SaturationMode::P;
  if (s == "full") return SaturationMode::Full;
  throw InputError("unknown saturation mode '" + s + "' (expected s, p or full)");
}

std::string to_string(SaturationMode m) {
  switch (m) {
    case SaturationMode::S: return "s";
    case SaturationMode::P: return "p";
    case SaturationMode::Full: return "full";
  }
  return "?";
}

SaturationResult saturate(const PointConfiguration& a, SaturationMode mode) {
  const Polytope& p = a.polytope();
  const FacePoset& poset = a.faces();
  std::set<std::size_t> family;
  if (mode == SaturationMode::P) {
    family = face_int_semiideal(p, poset);
  } else {
    for (std::size_t f = 0; f < poset.faces.size(); ++f) family.insert(f);
  }
  std::set<IntVec> found;
  for (std::size_t f : family) {
    const Face& face = poset.faces[f];
    Lattice l = mode == SaturationMode::Full ? a.lattice() : face_lattice(a, face);
    for (auto& x : relative_interior_lattice_points(p, face, l))
      if (!a.find(x)) found.insert(x);
  }
  SaturationResult res;
  res.mode = mode;
  res.added_points.assign(found.begin(), found.end());
  IntMatrix m = a.matrix();
  auto labels = a.labels();
  for (const auto& x : res.added_points) {
    m = m.append_column(x);
    labels.push_back(point_label(x));
  }
  res.result = PointConfiguration(m, labels);
  return res;
}

bool is_pyramid(const std::vector<IntVec>& pts) {
  if (pts.size() < 2) return false;
  std::size_t full = lattice_span(pts, SpanMode::Affine).rank();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntVec> rest;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(pts[j]);
    if (lattice_span(rest, SpanMode::Affine).rank() < full) return true;
  }
  return false;
}

AuxCertificate check_aux_point(const PointConfiguration& a, std::size_t k, std::size_t aux) {
  if (k >= a.size() || aux >= a.size()) throw InputError("column index out of range");
  if (k == aux) throw InputError("the auxiliary point must differ from the removed point");
  AuxCertificate c;
  c.redundancy = is_lattice_redundant(a, k);
  const FacePoset& poset = a.faces();
  c.gamma1 = minimal_face_containing(a.polytope(), poset, a.point(aux));
  const IndexSet& g1 = poset.faces[c.gamma1].indices;
  c.k_in_closure_gamma1 = std::binary_search(g1.begin(), g1.end(), k);
  c.faces_of_k_contain_a = true;
  for (const auto& f : poset.faces)
    if (std::binary_search(f.indices.begin(), f.indices.end(), k) &&
        !std::binary_search(f.indices.begin(), f.indices.end(), aux))
      c.faces_of_k_contain_a = false;

  if (!c.redundancy.redundant) {
    c.reason = c.redundancy.is_vertex ? "removed point is a vertex of the Newton polytope"
                                      : "removed point is not lattice redundant";
    return c;
  }
  bool cond1 = c.k_in_closure_gamma1 || c.faces_of_k_contain_a;

  PointConfiguration ak = a.without(k);
  bool cond2 = true;
  std::size_t first_bad = 0;
  for (std::size_t f = 0; f < poset.faces.size(); ++f) {
    const Face& face = poset.faces[f];
    if (!std::binary_search(face.indices.begin(), face.indices.end(), aux)) continue;
    FaceMultiplicityCheck fc;
    fc.face = f;
    fc.m_a = multiplicity(a, face).mult_m;
    fc.m_ak = multiplicity(ak, face).mult_m;
    fc.equal = fc.m_a == fc.m_ak;
    auto on_k = points_on(ak, face);
    fc.k_in_face_group = contains(make_lattice(a.ambient_dim(), on_k), a.point(k));
    fc.pyramid = is_pyramid(points_on(a, face));
    fc.ok = fc.equal || fc.pyramid;
    if (!fc.ok && cond2) first_bad = f;
    cond2 = cond2 && fc.ok;
    c.gamma2.push_back(fc);
  }
  c.accepted = cond1 && cond2;
  if (!cond1) {
    c.reason = "removed point is not in the closure of the auxiliary point's minimal face";
  } else if (!cond2) {
    std::ostringstream os;
    os << "multiplicity changes on face {";
    const auto& idx = poset.faces[first_bad].indices;
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << a.labels()[idx[i]];
    os << "} which is not a pyramid";
    c.reason = os.str();
  } else {
    c.reason = "accepted";
  }
  return c;
}

ReductionChain reduction_chain(const PointConfiguration& a, SaturationMode target) {
  ReductionChain chain;
  chain.start = a;
  chain.target = saturate(a, target).result;
  PointConfiguration cur = a;
  for (;;) {
    std::vector<std::pair<IntVec, std::string>> remaining;
    for (std::size_t i = 0; i < chain.target.size(); ++i)
      if (!cur.find(chain.target.point(i))) remaining.emplace_back(chain.target.point(i), chain.target.labels()[i]);
    std::sort(remaining.begin(), remaining.end());
    if (remaining.empty()) {
      chain.complete = true;
      break;
    }
    bool progress = false;
    for (const auto& [alpha, label] : remaining) {
      PointConfiguration b = cur.with_point(alpha, label);
      const std::size_t k = b.size() - 1;
      if (!is_lattice_redundant(b, k).redundant) continue;
      for (std::size_t a1 = 0; a1 < cur.size() && !progress; ++a1) {
        std::size_t f = minimal_face_containing(b.polytope(), b.faces(), b.point(a1));
        const IndexSet& idx = b.faces().faces[f].indices;
        if (!std::binary_search(idx.begin(), idx.end(), k)) continue;
        AuxCertificate cert = check_aux_point(b, k, a1);
        if (!cert.accepted) continue;
        chain.steps.push_back({alpha, f, b.point(a1), std::move(cert)});
        cur = b;
        progress = true;
      }
      if (progress) break;
    }
    if (!progress) {
      for (const auto& r : remaining) chain.stuck.push_back(r.first);
      break;
    }
  }
  chain.end = cur;
  return chain;
}

Dim2Result dim2_interior_witness(const PointConfiguration& a) {
  if (a.dim() != 2) throw InputError("dim2_interior_witness needs a two-dimensional Newton polytope");
  const Polytope& p = a.polytope();
  const FacePoset& poset = a.faces();
  Dim2Result res;
  res.interior_lattice_points = !relative_interior_lattice_points(p, poset.faces[poset.top()], a.lattice()).empty();

  std::vector<std::size_t> verts = p.vertices;
  std::sort(verts.begin(), verts.end(), [&](std::size_t x, std::size_t y) { return a.point(x) < a.point(y); });
  for (std::size_t v : verts) {
    std::vector<std::pair<IntVec, IntVec>> steps;  // (other endpoint, primitive step)
    std::vector<Int> lengths;
    for (const auto& face : poset.faces) {
      if (face.dim != 1 || !std::binary_search(face.indices.begin(), face.indices.end(), v)) continue;
      IntVec other;
      for (std::size_t i : face.indices)
        if (i != v && a.is_vertex(i)) other = a.point(i);
      Lattice fl = face_lattice(a, face);
      IntVec dir = fl.basis.column(0);
      IntVec edge = sub(other, a.point(v));
      std::size_t c = 0;
      while (dir[c] == 0) ++c;
      Int len = edge[c] / dir[c];
      if (len < 0) {
        len = -len;
        dir = scale(dir, Int(-1));
      }
      steps.emplace_back(other, dir);
      lengths.push_back(len);
    }
    if (steps.size() != 2) continue;
    IntVec cand = add(a.point(v), add(steps[0].second, steps[1].second));
    if (!p.contains(cand) || minimal_face_containing(p, poset, cand) != poset.top()) continue;
    Dim2Witness w;
    w.vertex = a.point(v);
    w.neighbor2 = steps[0].first;
    w.neighbor3 = steps[1].first;
    w.ell2 = lengths[0];
    w.ell3 = lengths[1];
    w.point = cand;
    if (auto existing = a.find(cand)) {
      w.certificate = check_aux_point(a, *existing, v);
    } else {
      PointConfiguration b = a.with_point(cand);
      w.certificate = check_aux_point(b, b.size() - 1, v);
    }
    res.witness = std::move(w);
    break;
  }
  return res;
}

}  // namespace gkz
