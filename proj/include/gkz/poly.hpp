// Sparse multivariate polynomials with integer coefficients.
#pragma once

#include "gkz/arith.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

using Exponent = std::vector<int>;

/// Terms are kept in lexicographic order of exponents; zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Int& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(std::size_t nvars, const Exponent& e, const Int& c = 1);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Int>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Int& c);

  int degree(std::size_t var) const;
  int total_degree() const;
  /// Largest exponent in lex order; the polynomial must be nonzero.
  const std::pair<const Exponent, Int>& leading() const { return *terms_.rbegin(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Int& c) const;
  Poly& operator+=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly pow(unsigned k) const;
  Poly derivative(std::size_t var) const;
  /// Sets y_var = 0.
  Poly at_zero(std::size_t var) const;
  /// Removes a variable that does not occur.
  Poly drop_variable(std::size_t var) const;
  /// gcd of the coefficients (0 for the zero polynomial).
  Int content() const;
  /// Componentwise minimum of the exponents.
  Exponent monomial_content() const;
  /// Divided by its integer content, with a positive coefficient at the lex-smallest exponent.
  Poly normalized() const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Int> terms_;
};

/// q with p = d q, or nullopt when d does not divide p.
std::optional<Poly> exact_divide(const Poly& p, const Poly& d);
/// Greatest common divisor up to a rational constant, normalized (so 1 for coprime inputs).
Poly gcd(const Poly& a, const Poly& b);
/// Product of the distinct irreducible factors of p, up to sign.
Poly squarefree_part(const Poly& p);
/// Exponent vectors of the terms.
std::vector<IntVec> support(const Poly& p);

}  // namespace gkz
