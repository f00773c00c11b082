// Monomial curves: principal determinants, the reduced scalar ODE and its
// monodromy.
#pragma once

#include "gkz/config.hpp"
#include "gkz/poly.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

inline constexpr long kSymbolicBudget = 6;

/// Exponents 0 = a_0 < a_1 < ... < a_{m+1} = delta with gcd 1.
struct MonomialCurve {
  std::vector<long> exponents;

  long delta() const { return exponents.back(); }
  std::size_t size() const { return exponents.size(); }
  /// Columns (1, a_j).
  PointConfiguration configuration() const;
  std::vector<std::string> variables() const;
};
MonomialCurve monomial_curve(std::vector<long> exponents);

/// Sylvester resultant of f = sum_j y_j z^{s_j} and z f'(z), content removed.
/// The support must start at 0; its gcd may exceed 1.
Poly curve_resultant(const std::vector<long>& support, long budget = kSymbolicBudget);
Poly principal_determinant_curve(const MonomialCurve& c, long budget = kSymbolicBudget);
/// Squarefree part of E_A after removing its monomial factor.
Poly discriminant_curve(const MonomialCurve& c, long budget = kSymbolicBudget);

struct FactorizationReport {
  Poly principal;
  Poly discriminant;
  Int unit;                              // E_A = unit * y^coordinate * D^discriminant_exponent
  std::vector<int> coordinate_exponents;
  int discriminant_exponent = 0;         // 0 when D is constant
  std::vector<Int> expected_coordinate;  // m(A, vertex) on vertex columns, 0 elsewhere
  Int expected_discriminant;             // m(A, N)
  std::vector<IntVec> newton_vertices;
  std::vector<IntVec> secondary_vertices;
  bool exponents_match = false;
  bool newton_matches = false;
  bool holds() const { return exponents_match && newton_matches; }
};
FactorizationReport verify_factorization(const MonomialCurve& c, long budget = kSymbolicBudget);

struct RestrictionCheck {
  std::size_t column = 0;
  Poly restricted_radical;  // squarefree part of E_A at y_column = 0, variable dropped
  Poly deleted;             // E of the support without the column
  bool divides = false;
};
/// One entry per non-vertex column.
std::vector<RestrictionCheck> check_restriction_divisibility(const MonomialCurve& c, long budget = kSymbolicBudget);

/// Polynomial in one variable, ascending coefficients.
using RatPoly = std::vector<Rat>;

/// The system for {0, 1, delta} in t = y0^(delta-1) y2 / y1^delta:
/// P(theta) phi = c t Q(theta) phi with theta = t d/dt.
struct CurveOde {
  long delta = 0;
  RatVec beta;
  Rat c;
  RatPoly lower;                // P
  RatPoly upper;                // Q
  std::vector<RatPoly> d_form;  // sum_i d_form[i](t) (d/dt)^i
  Rat singular_point;           // 1/c
  RatVec exponents_at_zero;

  std::size_t order() const { return static_cast<std::size_t>(delta); }
};
CurveOde ode_from_system(long delta, const RatVec& beta);

struct OdeSeries {
  Rat exponent;       // leading exponent at t = 0
  RatVec base;        // Gamma-series base on {0, 1, delta}
  RatVec coefficients;  // of t^(exponent + n)
  RatVec residuals;     // of L phi at t^(exponent + n)
};
struct OdeCertificate {
  std::size_t t_order = 0;
  std::vector<OdeSeries> series;
  bool independent = false;  // exponents pairwise distinct mod Z
  bool passed() const;
};
/// Substitutes the delta Gamma-series of the triangulation {[0,1],[1,delta]}.
OdeCertificate certify_ode(const CurveOde& ode, std::size_t t_order);

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

struct MonodromyGenerators {
  long delta = 0;
  RatVec beta;
  std::array<CMatrix, 3> g;
};
/// The three generators for delta = 3, as printed in the literature.
MonodromyGenerators beukers_generators(long delta, const RatVec& beta);

/// Monic characteristic polynomial, coefficients of lambda^(n-1), ..., lambda^0.
std::vector<Complex> characteristic_polynomial(const CMatrix& m);

enum class Loop { Origin, Discriminant, Infinity, Trivial };
std::string to_string(Loop l);

struct ContinuationOptions {
  double step_fraction = 0.5;   // of the distance to the nearest singular point
  double term_tolerance = 1e-18;
  double min_step = 1e-12;
  std::size_t max_terms = 4000;
  std::size_t polygon = 96;     // vertices per circle
  std::optional<Complex> basepoint;  // default: half the singular point
};

struct LoopMatrix {
  Loop loop = Loop::Origin;
  CMatrix matrix;
  std::size_t steps = 0;
};

struct NumericMonodromy {
  long delta = 0;
  RatVec beta;
  Complex basepoint;
  std::vector<LoopMatrix> loops;  // in Loop order
  std::array<CMatrix, 3> generators;
  const CMatrix& matrix(Loop l) const;
};
/// Continues the local solution basis at the basepoint around each loop, with
/// the basis normalized by Y(basepoint) = I. Generators: e^{2 pi i b1} M_trivial,
/// M_infinity and e^{2 pi i b1} M_discriminant^{-1}.
NumericMonodromy numeric_monodromy(long delta, const RatVec& beta, const ContinuationOptions& opt = {});

struct InvariantComparison {
  std::string name;
  std::vector<Complex> numeric;
  std::vector<Complex> algebraic;
  double error = 0;
};
/// Characteristic polynomials of the generators, their pairwise products and
/// the triple product.
std::vector<InvariantComparison> compare_invariants(const NumericMonodromy& n, const MonodromyGenerators& g);

}  // namespace gkz
