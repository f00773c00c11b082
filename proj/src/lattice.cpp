#include "gkz/lattice.hpp"

#include <algorithm>
#include <utility>

namespace gkz {

namespace {

using boost::multiprecision::abs;

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void swap_columns(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// col_j -= q * col_k
void axpy_column(IntMatrix& a, std::size_t j, std::size_t k, const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= q * a(r, k);
}

void negate_column(IntMatrix& a, std::size_t k) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, k) = -a(r, k);
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& a = res.H;
  IntMatrix& u = res.U;
  const std::size_t ncols = a.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.rows() && k < ncols; ++i) {
    for (;;) {
      std::size_t best = ncols;
      std::size_t nonzero = 0;
      for (std::size_t j = k; j < ncols; ++j) {
        if (a(i, j) == 0) continue;
        ++nonzero;
        if (best == ncols || abs(a(i, j)) < abs(a(i, best))) best = j;
      }
      if (nonzero == 0) break;
      swap_columns(a, k, best);
      swap_columns(u, k, best);
      if (nonzero == 1) break;
      for (std::size_t j = k + 1; j < ncols; ++j) {
        if (a(i, j) == 0) continue;
        Int q = floor_div(a(i, j), a(i, k));
        axpy_column(a, j, k, q);
        axpy_column(u, j, k, q);
      }
    }
    if (a(i, k) == 0) continue;
    if (a(i, k) < 0) {
      negate_column(a, k);
      negate_column(u, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Int q = floor_div(a(i, j), a(i, k));
      axpy_column(a, j, k, q);
      axpy_column(u, j, k, q);
    }
    ++k;
  }
  res.rank = k;
  return res;
}

std::vector<Int> smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t R = a.rows();
  const std::size_t C = a.cols();
  std::vector<Int> factors;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t br = R, bc = C;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c)
          if (a(r, c) != 0 && (br == R || abs(a(r, c)) < abs(a(br, bc)))) {
            br = r;
            bc = c;
          }
      if (br == R) return factors;
      if (br != t)
        for (std::size_t c = 0; c < C; ++c) std::swap(a(br, c), a(t, c));
      swap_columns(a, bc, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (a(r, t) == 0) continue;
        Int q = a(r, t) / a(t, t);
        for (std::size_t c = t; c < C; ++c) a(r, c) -= q * a(t, c);
        if (a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (a(t, c) == 0) continue;
        Int q = a(t, c) / a(t, t);
        axpy_column(a, c, t, q);
        if (a(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = R;
      for (std::size_t r = t + 1; r < R && bad == R; ++r)
        for (std::size_t c = t + 1; c < C; ++c)
          if (a(r, c) % a(t, t) != 0) {
            bad = r;
            break;
          }
      if (bad == R) break;
      for (std::size_t c = t; c < C; ++c) a(t, c) += a(bad, c);
    }
    factors.push_back(abs(a(t, t)));
  }
  return factors;
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  if (b.size() != m.rows()) throw InputError("right-hand side length mismatch");
  auto hnf = hermite_normal_form(m);
  const IntMatrix& h = hnf.H;
  IntVec y(m.cols());
  std::size_t row = 0;
  for (std::size_t k = 0; k < hnf.rank; ++k) {
    while (h(row, k) == 0) {
      // Rows without a pivot must already be satisfied.
      Int s = 0;
      for (std::size_t j = 0; j < k; ++j) s += h(row, j) * y[j];
      if (s != b[row]) return std::nullopt;
      ++row;
    }
    Int s = b[row];
    for (std::size_t j = 0; j < k; ++j) s -= h(row, j) * y[j];
    if (s % h(row, k) != 0) return std::nullopt;
    y[k] = s / h(row, k);
    ++row;
  }
  if (h * y != b) return std::nullopt;
  return hnf.U * y;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  auto hnf = hermite_normal_form(m);
  std::vector<IntVec> gens;
  for (std::size_t c = hnf.rank; c < m.cols(); ++c) gens.push_back(hnf.U.column(c));
  return make_lattice(m.cols(), gens).basis;
}

IntMatrix annihilator(const IntMatrix& m) { return integer_kernel(m.transpose()).transpose(); }

Lattice make_lattice(std::size_t ambient_dim, const IntMatrix& generators) {
  if (generators.cols() > 0 && generators.rows() != ambient_dim)
    throw InputError("generator dimension mismatch");
  if (generators.cols() == 0) return Lattice{ambient_dim, IntMatrix(ambient_dim, 0), std::nullopt};
  auto hnf = hermite_normal_form(generators);
  std::vector<std::size_t> idx(hnf.rank);
  for (std::size_t i = 0; i < hnf.rank; ++i) idx[i] = i;
  return Lattice{ambient_dim, hnf.H.select_columns(idx), std::nullopt};
}

Lattice make_lattice(std::size_t ambient_dim, const std::vector<IntVec>& generators) {
  return make_lattice(ambient_dim, IntMatrix::from_columns(ambient_dim, generators));
}

Lattice standard_lattice(std::size_t dim) {
  return Lattice{dim, IntMatrix::identity(dim), std::nullopt};
}

Lattice lattice_span(const std::vector<IntVec>& points, SpanMode mode) {
  if (points.empty()) throw InputError("lattice_span of an empty point list");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw InputError("points of different dimensions");
  if (mode == SpanMode::Linear) return make_lattice(n, points);
  std::vector<IntVec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  Lattice l = make_lattice(n, diffs);
  l.anchor = points[0];
  return l;
}

std::optional<IntVec> lattice_coordinates(const Lattice& l, const IntVec& v) {
  if (v.size() != l.ambient_dim) throw InputError("vector dimension mismatch");
  IntVec w = l.anchor ? sub(v, *l.anchor) : v;
  return solve_integer(l.basis, w);
}

std::optional<RatVec> rational_coordinates(const Lattice& l, const RatVec& v) {
  if (v.size() != l.ambient_dim) throw InputError("vector dimension mismatch");
  RatVec w = l.anchor ? sub(v, to_rational(*l.anchor)) : v;
  return solve(to_rational(l.basis), w);
}

bool contains(const Lattice& l, const IntVec& v) { return lattice_coordinates(l, v).has_value(); }

bool contains(const Lattice& sup, const Lattice& sub) {
  if (sup.ambient_dim != sub.ambient_dim) return false;
  Lattice lin = sup.linear_part();
  for (std::size_t c = 0; c < sub.rank(); ++c)
    if (!contains(lin, sub.basis.column(c))) return false;
  if (sub.anchor && sup.anchor) return contains(sup, *sub.anchor);
  return true;
}

std::optional<Int> lattice_index(const Lattice& sup, const Lattice& sub) {
  if (!contains(sup.linear_part(), sub.linear_part()))
    throw InputError("lattice_index: sublattice is not contained in the superlattice");
  if (sub.rank() < sup.rank()) return std::nullopt;
  IntMatrix coords(sup.rank(), sub.rank());
  Lattice lin = sup.linear_part();
  for (std::size_t c = 0; c < sub.rank(); ++c) coords.set_column(c, *lattice_coordinates(lin, sub.basis.column(c)));
  return abs(determinant(coords));
}

Lattice intersect_with_span(const Lattice& l, const IntMatrix& span) {
  Lattice lin = l.linear_part();
  if (span.cols() > 0 && span.rows() != l.ambient_dim) throw InputError("span dimension mismatch");
  IntMatrix p = span.cols() == 0 ? IntMatrix::identity(l.ambient_dim) : annihilator(span);
  if (p.rows() == 0) return lin;
  IntMatrix k = integer_kernel(p * lin.basis);
  return make_lattice(l.ambient_dim, lin.basis * k);
}

Lattice saturation(const Lattice& l) {
  if (l.rank() == 0) return l.linear_part();
  return intersect_with_span(standard_lattice(l.ambient_dim), l.basis);
}

IntVec QuotientLattice::project(const IntVec& ambient) const {
  auto coords = lattice_coordinates(source.linear_part(), ambient);
  if (!coords) throw InputError("project: vector " + to_string(ambient) + " is not in the source lattice");
  return projection * *coords;
}

IntVec QuotientLattice::lift(const IntVec& image) const {
  auto x = solve_integer(projection, image);
  if (!x) throw InputError("lift: no preimage");  // cannot happen: projection surjects
  return source.basis * *x;
}

QuotientLattice quotient(const Lattice& source, const Lattice& kernel, bool require_torsion_free) {
  Lattice src = source.linear_part();
  Lattice ker = kernel.linear_part();
  if (!contains(src, ker)) throw InputError("quotient: kernel is not contained in the source");
  IntMatrix c(src.rank(), ker.rank());
  for (std::size_t j = 0; j < ker.rank(); ++j) c.set_column(j, *lattice_coordinates(src, ker.basis.column(j)));
  QuotientLattice q;
  q.source = src;
  q.kernel = ker;
  q.projection = integer_kernel(c.transpose()).transpose();
  if (c.cols() == 0) q.projection = IntMatrix::identity(src.rank());
  q.quotient_rank = q.projection.rows();
  for (const auto& d : smith_normal_form(c))
    if (d > 1) q.torsion.push_back(d);
  if (require_torsion_free && !q.torsion.empty()) throw InputError("quotient has torsion");
  return q;
}

Rat simplex_volume(const Lattice& l, const std::vector<RatVec>& vertices) {
  if (vertices.size() != l.rank() + 1)
    throw InputError("simplex_volume needs rank + 1 vertices");
  Lattice lin = l.linear_part();
  RatMatrix edges(l.rank(), l.rank());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto coords = rational_coordinates(lin, sub(vertices[i], vertices[0]));
    if (!coords) throw InputError("simplex_volume: vertex outside the span of the lattice");
    for (std::size_t r = 0; r < l.rank(); ++r) edges(r, i - 1) = (*coords)[r];
  }
  return abs(determinant(edges));
}

Rat simplex_volume(const Lattice& l, const std::vector<IntVec>& vertices) {
  std::vector<RatVec> q;
  q.reserve(vertices.size());
  for (const auto& v : vertices) q.push_back(to_rational(v));
  return simplex_volume(l, q);
}

}  // namespace gkz
