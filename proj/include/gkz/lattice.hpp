// Integer lattices: normal forms, spans, indices, quotients, volumes.
#pragma once

#include "gkz/arith.hpp"

#include <optional>
#include <vector>

namespace gkz {

struct HermiteResult {
  IntMatrix H;  // column HNF, same shape as the input; zero columns trail
  IntMatrix U;  // unimodular, H = M * U
  std::size_t rank = 0;
};

/// Column HNF: lower-triangular echelon, positive pivots, entries left of a
/// pivot reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

/// Nonzero invariant factors d_1 | d_2 | ... (all positive).
std::vector<Int> smith_normal_form(const IntMatrix& m);

/// Integer x with m x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

/// Basis (columns, canonical HNF) of {x in Z^cols : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Integer rows spanning the annihilator of the rational column span of m.
IntMatrix annihilator(const IntMatrix& m);

enum class SpanMode { Affine, Linear };

/// A lattice, or an affine lattice when `anchor` is set. Basis columns are in
/// canonical column HNF so equal lattices compare equal.
struct Lattice {
  std::size_t ambient_dim = 0;
  IntMatrix basis;               // ambient_dim x rank
  std::optional<IntVec> anchor;  // affine lattices only

  std::size_t rank() const { return basis.cols(); }
  bool is_affine() const { return anchor.has_value(); }
  /// Same direction lattice without the anchor.
  Lattice linear_part() const { return Lattice{ambient_dim, basis, std::nullopt}; }
  bool operator==(const Lattice&) const = default;
};

/// Lattice generated by the columns of `generators`.
Lattice make_lattice(std::size_t ambient_dim, const IntMatrix& generators);
Lattice make_lattice(std::size_t ambient_dim, const std::vector<IntVec>& generators);
Lattice standard_lattice(std::size_t dim);

Lattice lattice_span(const std::vector<IntVec>& points, SpanMode mode);

/// Integer coordinates of v (minus the anchor) in the basis, if v is in L.
std::optional<IntVec> lattice_coordinates(const Lattice& l, const IntVec& v);
/// Rational coordinates of v (minus the anchor) in the basis, if v is in L (x) R.
std::optional<RatVec> rational_coordinates(const Lattice& l, const RatVec& v);
bool contains(const Lattice& l, const IntVec& v);
bool contains(const Lattice& sup, const Lattice& sub);

/// [sup : sub]; nullopt means infinite (rank drop). Throws InputError if sub is
/// not contained in sup. Anchors are ignored.
std::optional<Int> lattice_index(const Lattice& sup, const Lattice& sub);

/// L intersected with the rational span of the columns of `span`.
Lattice intersect_with_span(const Lattice& l, const IntMatrix& span);
/// Z^n intersected with the rational span of L (the saturation).
Lattice saturation(const Lattice& l);

struct QuotientLattice {
  Lattice source;
  Lattice kernel;
  IntMatrix projection;     // quotient_rank x source.rank(), acts on source coordinates
  std::size_t quotient_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1 of the kernel inside its saturation

  /// Image of an ambient vector of the source lattice.
  IntVec project(const IntVec& ambient) const;
  /// Some ambient vector of the source mapping to `image`.
  IntVec lift(const IntVec& image) const;
};

/// source / kernel. With `require_torsion_free` a nontrivial torsion part is an
/// InputError.
QuotientLattice quotient(const Lattice& source, const Lattice& kernel, bool require_torsion_free = false);

/// Normalized volume of the simplex on `vertices` measured in L: |det| of the
/// edge vectors in L's basis. Requires rank(L) + 1 vertices.
Rat simplex_volume(const Lattice& l, const std::vector<RatVec>& vertices);
Rat simplex_volume(const Lattice& l, const std::vector<IntVec>& vertices);

}  // namespace gkz
