// Point configurations and the face-wise invariants attached to them.
#pragma once

#include "gkz/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// Rational h with h . alpha = 1 for every column; throws InputError if none.
RatVec check_homogeneous(const IntMatrix& matrix);

class PointConfiguration {
 public:
  PointConfiguration() = default;
  /// Columns are the points. Labels default to the column indices.
  explicit PointConfiguration(IntMatrix matrix, std::vector<std::string> labels = {});

  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const RatVec& homogeneity() const { return homogeneity_; }
  std::size_t size() const { return matrix_.cols(); }
  std::size_t ambient_dim() const { return matrix_.rows(); }
  IntVec point(std::size_t i) const { return matrix_.column(i); }
  std::vector<IntVec> points() const { return matrix_.columns(); }
  std::optional<std::size_t> find(const IntVec& p) const;

  const Polytope& polytope() const { return polytope_; }
  const FacePoset& faces() const { return poset_; }
  /// Z_A, the group generated by the columns.
  const Lattice& lattice() const { return lattice_; }
  std::size_t dim() const { return polytope_.dim; }

  PointConfiguration without(std::size_t i) const;
  PointConfiguration with_point(const IntVec& p, const std::string& label = "") const;

  bool is_vertex(std::size_t i) const;
  /// Columns lying on the face cut out by (normal, offset).
  IndexSet on_face(const Face& face) const;

 private:
  IntMatrix matrix_;
  std::vector<std::string> labels_;
  RatVec homogeneity_;
  Polytope polytope_;
  FacePoset poset_;
  Lattice lattice_;
};

std::string point_label(const IntVec& p);

/// Affine lattice spanned by the columns on the face.
Lattice face_lattice(const PointConfiguration& a, const Face& face);
bool same_affine_lattice(const Lattice& x, const Lattice& y);

struct FaceLatticeCheck {
  std::size_t face = 0;  // index into the configuration's face poset
  bool equal = false;
};
struct RedundancyReport {
  bool redundant = false;
  bool is_vertex = false;
  std::vector<FaceLatticeCheck> faces;
};
RedundancyReport is_lattice_redundant(const PointConfiguration& a, std::size_t i);

/// i(A, face) = [Z_A intersected with the span of the face : group generated by A on the face].
Int index_i(const PointConfiguration& a, const Face& face);
/// v(A, face), computed polyhedrally.
Int subdiagram_volume(const PointConfiguration& a, const Face& face);
/// Independent check of subdiagram_volume for quotient rank 1 or 2.
Int subdiagram_volume_oracle(const PointConfiguration& a, const Face& face);

/// Images of the columns off the face in Z_A / (Z_A intersected with the face span).
struct FaceQuotient {
  QuotientLattice quotient;
  std::vector<IntVec> images;  // of columns not on the face, in column order
  IndexSet off_face;
};
FaceQuotient face_quotient(const PointConfiguration& a, const Face& face);

struct MultiplicityRecord {
  std::size_t face = 0;
  Int index_i;
  Int subvol_v;
  Int mult_m;
};
MultiplicityRecord multiplicity(const PointConfiguration& a, const Face& face);
std::vector<MultiplicityRecord> multiplicity_table(const PointConfiguration& a);

enum class SaturationMode { S, P, Full };
SaturationMode parse_saturation_mode(const std::string& s);
std::string to_string(SaturationMode m);

struct SaturationResult {
  SaturationMode mode = SaturationMode::S;
  std::vector<IntVec> added_points;  // sorted
  PointConfiguration result;
};
SaturationResult saturate(const PointConfiguration& a, SaturationMode mode);

/// True if some point p of `pts` lies outside the affine span of the others.
bool is_pyramid(const std::vector<IntVec>& pts);

struct FaceMultiplicityCheck {
  std::size_t face = 0;
  Int m_a;
  Int m_ak;
  bool equal = false;
  bool k_in_face_group = false;  // alpha_k in the group generated by A_k on the face
  bool pyramid = false;
  bool ok = false;
};

struct AuxCertificate {
  bool accepted = false;
  std::string reason;
  RedundancyReport redundancy;
  std::size_t gamma1 = 0;                  // minimal face of alpha_a
  bool k_in_closure_gamma1 = false;
  bool faces_of_k_contain_a = false;       // every face through alpha_k contains alpha_a
  std::vector<FaceMultiplicityCheck> gamma2;
};
AuxCertificate check_aux_point(const PointConfiguration& a, std::size_t k, std::size_t aux);

struct ChainStep {
  IntVec added;
  std::size_t face = 0;  // certifying face, index into the current configuration's poset
  IntVec witness;        // relative interior point alpha_1
  AuxCertificate certificate;
};
struct ReductionChain {
  PointConfiguration start;
  PointConfiguration end;
  PointConfiguration target;
  std::vector<ChainStep> steps;
  bool complete = false;
  std::vector<IntVec> stuck;  // remaining points when incomplete
};
ReductionChain reduction_chain(const PointConfiguration& a, SaturationMode target);

struct Dim2Witness {
  IntVec vertex;
  IntVec neighbor2, neighbor3;  // the other endpoints of the two edges at the vertex
  Int ell2, ell3;
  IntVec point;  // alpha'
  AuxCertificate certificate;
};
struct Dim2Result {
  std::optional<Dim2Witness> witness;
  bool interior_lattice_points = false;  // Z_A meets the interior of N
};
Dim2Result dim2_interior_witness(const PointConfiguration& a);

}  // namespace gkz
