// A-hypergeometric series: kernel lattices, nonresonance, truncated
// Gamma-series and the extension of solutions across a removed column.
#pragma once

#include "gkz/config.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace gkz {

/// Basis of {u in Z^k : A u = 0}; each vector has a positive leading entry.
std::vector<IntVec> toric_kernel_basis(const IntMatrix& a);

/// Lattice points u of span_Z(basis) with |u|_1 <= radius, sorted.
std::vector<IntVec> kernel_ball(const std::vector<IntVec>& basis, std::size_t k, const Int& radius);

struct NonresonanceReport {
  bool nonresonant = true;
  std::optional<std::size_t> facet;  // into a.polytope().facets
  IndexSet facet_points;
  std::vector<IntVec> functionals;   // integer basis of the annihilator of the facet span
  IntVec translate;                  // gamma with beta - gamma in the facet span
};
NonresonanceReport check_nonresonance(const PointConfiguration& a, const RatVec& beta);
inline bool is_nonresonant(const PointConfiguration& a, const RatVec& beta) {
  return check_nonresonance(a, beta).nonresonant;
}

/// N(x)/N(y) for x - y integral, where N(z) = Gamma(z+1) unless z is a
/// negative integer, in which case N(z) = 1.
Rat gamma_ratio(const Rat& x, const Rat& y);
/// Coefficient of y^e in the normalized Gamma-series with base b.
Rat canonical_coefficient(const RatVec& base, const RatVec& e);

struct GammaComponent {
  Rat scale;
  RatVec base;
};

struct TruncatedSeries {
  IntMatrix a;
  RatVec beta;
  std::map<RatVec, Rat> terms;  // exponent -> coefficient, zeros omitted
  std::set<RatVec> known;       // exponents whose coefficient is determined
  std::vector<RatVec> cosets;   // exponent classes mod Z^k that may carry terms
  std::vector<GammaComponent> components;  // exact description, empty if none

  std::size_t variables() const { return a.cols(); }
  Rat coefficient(const RatVec& e) const;
  bool in_cosets(const RatVec& e) const;
  /// Known, or outside every coset and hence zero.
  bool determined(const RatVec& e) const { return known.count(e) > 0 || !in_cosets(e); }
};

/// Gamma-series attached to a full-dimensional simplex of columns, exponents
/// v + u with |u|_1 <= order. Off the cell v takes the integers in off_cell
/// (zero when empty). Throws ResonanceError for resonant beta.
TruncatedSeries gamma_series(const PointConfiguration& a, const RatVec& beta, const IndexSet& cell, std::size_t order,
                             const IntVec& off_cell = {});

struct Operator {
  enum class Kind { Euler, Box } kind = Kind::Euler;
  std::size_t index = 0;  // Euler row
  Rat beta;               // Euler parameter
  IntVec u;               // Box: d^{u+} - d^{u-}

  static Operator euler(std::size_t i, const Rat& b) { return {Kind::Euler, i, b, {}}; }
  static Operator box(const IntVec& u) { return {Kind::Box, 0, 0, u}; }
};
TruncatedSeries apply_operator(const TruncatedSeries& s, const Operator& op);

/// d^w for w in Z^k: derivatives where w > 0, antiderivatives where w < 0.
/// Series with components are moved exactly; others term by term, throwing
/// ResonanceError on a vanishing divisor.
TruncatedSeries differentiate(const TruncatedSeries& s, const IntVec& w);
TruncatedSeries antiderivative(const TruncatedSeries& s, const IntVec& gamma);

TruncatedSeries linear_combination(const std::vector<std::pair<Rat, TruncatedSeries>>& parts);

struct AnnihilationFailure {
  std::string op;
  RatVec exponent;
  Rat value;
};
struct AnnihilationReport {
  std::size_t euler_checked = 0;
  std::size_t box_checked = 0;
  std::size_t boundary = 0;  // image coefficients not fully determined
  std::vector<AnnihilationFailure> failures;
  bool passed() const { return failures.empty(); }
};
/// Euler operators for every row and box operators for the kernel basis and
/// the sums and differences of its pairs.
AnnihilationReport annihilation_check(const TruncatedSeries& s);

/// u in ker_Z(A) with u_k = ell, greedily shortened in the l1 norm.
std::optional<IntVec> kernel_vector_with(const IntMatrix& a, std::size_t k, const Int& ell);

struct Extension {
  TruncatedSeries series;
  std::vector<std::optional<IntVec>> representatives;  // per ell; nullopt where psi_ell = 0
};
/// Extends a series for A without column k to a series for A, of radius order.
Extension extend_solution(const TruncatedSeries& psi, const PointConfiguration& a, std::size_t k, std::size_t order);
/// psi_ell built from an explicit kernel vector u of A (u_k = ell).
TruncatedSeries extension_slice(const TruncatedSeries& psi, std::size_t k, const IntVec& u);
/// Terms with e_k = 0, coordinate k dropped.
TruncatedSeries restrict_to_zero(const TruncatedSeries& f, std::size_t k);

/// Normalized volume of N in Z_A.
Int rank_volume(const PointConfiguration& a);

}  // namespace gkz
