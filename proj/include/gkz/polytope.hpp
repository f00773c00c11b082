// Exact convex hulls, face posets and volumes of integer point sets.
#pragma once

#include "gkz/lattice.hpp"

#include <optional>
#include <set>
#include <vector>

namespace gkz {

using IndexSet = std::vector<std::size_t>;  // sorted point indices

/// h . x <= c on the polytope, equality exactly on `indices`.
struct Facet {
  IntVec normal;  // primitive
  Int offset;
  IndexSet indices;
};

enum class HullMethod { Auto, Exhaustive, GiftWrap };

struct Polytope {
  std::vector<IntVec> points;
  Lattice affine;  // affine lattice spanned by the points, anchored at points[0]
  std::size_t dim = 0;
  std::vector<Facet> facets;
  IndexSet vertices;  // one index per distinct vertex

  std::size_t ambient_dim() const { return affine.ambient_dim; }
  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const;
  /// Indices of facets tight at x (x assumed to lie in the polytope).
  std::vector<std::size_t> tight_facets(const RatVec& x) const;
};

Polytope convex_hull(const std::vector<IntVec>& points, HullMethod method = HullMethod::Auto);

/// A face given by the configuration points on it. N itself has a zero
/// supporting functional.
struct Face {
  IndexSet indices;
  IntVec normal;  // sum of the normals of the facets containing the face
  Int offset;
  std::size_t dim = 0;
  std::vector<std::size_t> facets;  // facets of the polytope containing the face

  bool operator==(const Face& o) const { return indices == o.indices; }
};

struct FacePoset {
  std::vector<Face> faces;  // sorted by dimension, then by index set; last is N
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)

  std::size_t top() const { return faces.size() - 1; }
  std::optional<std::size_t> find(const IndexSet& indices) const;
  /// Number of faces of each dimension 0..dim.
  std::vector<std::size_t> f_vector() const;
  /// Faces contained in face `f` (including f).
  std::vector<std::size_t> subfaces(std::size_t f) const;
};

FacePoset face_poset(const Polytope& p);

/// Index (into the poset) of the face whose relative interior contains x.
std::size_t minimal_face_containing(const Polytope& p, const FacePoset& poset, const RatVec& x);
std::size_t minimal_face_containing(const Polytope& p, const FacePoset& poset, const IntVec& x);

/// Points of the (affine) lattice l lying in the relative interior of face f.
/// The relative interior of a vertex is the vertex itself.
std::vector<IntVec> relative_interior_lattice_points(const Polytope& p, const Face& f, const Lattice& l);

/// Faces whose relative interior contains a point of the polytope's own point
/// list, closed downwards.
std::set<std::size_t> face_int_semiideal(const Polytope& p, const FacePoset& poset);

/// Full-dimensional simplices (point indices) of a pulling triangulation.
std::vector<IndexSet> pulling_triangulation(const Polytope& p);

/// Normalized volume of the polytope in lattice l; rank(l) must equal dim.
Rat normalized_volume(const Polytope& p, const Lattice& l);
/// Normalized volume of conv(points) for rational points.
Rat normalized_volume(const std::vector<RatVec>& points, const Lattice& l);

}  // namespace gkz
