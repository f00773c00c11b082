// Regular triangulations, GKZ vectors and secondary polytopes.
#pragma once

#include "gkz/config.hpp"

#include <vector>

namespace gkz {

struct Triangulation {
  std::vector<IndexSet> cells;  // sorted; each sorted
  std::vector<Int> volumes;     // normalized volume of each cell in Z_A
  RatVec heights;               // a lifting that induces the triangulation

  bool operator==(const Triangulation& o) const { return cells == o.cells; }
};

/// Normalized volume of a full-dimensional simplex of columns, measured in Z_A.
Int cell_volume(const PointConfiguration& a, const IndexSet& cell);

/// Projection of the lower hull of the lifted points. Throws InputError when
/// a lower cell is not a simplex.
Triangulation regular_triangulation(const PointConfiguration& a, const RatVec& heights);

IntVec gkz_vector(const PointConfiguration& a, const Triangulation& t);

/// Linear forms on heights; the open cone where all are positive is the set
/// of liftings inducing t. Primitive integer rows, deduplicated.
std::vector<IntVec> secondary_cone_inequalities(const PointConfiguration& a, const Triangulation& t);
/// Exact LP certificate: heights with every cone inequality at least 1.
std::optional<RatVec> regularity_certificate(const PointConfiguration& a, const Triangulation& t);

struct EnumerationOptions {
  std::size_t max_points = 12;
  std::size_t seed_checks = 20;
  unsigned seed = 20240611u;
};

/// All regular triangulations, sorted by cells.
std::vector<Triangulation> enumerate_regular_triangulations(const PointConfiguration& a,
                                                            const EnumerationOptions& opt = {});

struct SecondaryPolytope {
  std::vector<Triangulation> triangulations;
  std::vector<IntVec> gkz;  // parallel to triangulations
  Polytope hull;
};
SecondaryPolytope secondary_polytope(const PointConfiguration& a, const EnumerationOptions& opt = {});

struct FacetRestrictionReport {
  std::size_t point = 0;
  std::vector<IntVec> face_vertices;  // GKZ vectors of A vanishing at the point
  std::vector<IntVec> restricted;     // GKZ vectors of A without the point, zero inserted
  std::size_t secondary_dim = 0;
  std::size_t face_dim = 0;
  bool holds = false;
};
/// Throws InputError if the point is a vertex or removing it changes Z_A.
FacetRestrictionReport check_facet_restriction(const PointConfiguration& a, std::size_t i,
                                               const EnumerationOptions& opt = {});

}  // namespace gkz
