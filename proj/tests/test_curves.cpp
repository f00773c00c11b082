#include <doctest.h>

#include "fixtures.hpp"
#include "gkz/curves.hpp"
#include "gkz/hyper.hpp"

using namespace fixtures;

namespace {

Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly num(std::size_t n, long c) { return Poly::constant(n, Int(c)); }

Poly random_poly(std::mt19937& rng, std::size_t nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5);
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars);
    for (auto& x : e) x = deg(rng);
    p.add_term(e, Int(coef(rng)));
  }
  return p;
}

Int evaluate(const Poly& p, const IntVec& y) {
  Int v = 0;
  for (const auto& [e, c] : p.terms()) {
    Int t = c;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int k = 0; k < e[j]; ++k) t *= y[j];
    v += t;
  }
  return v;
}

// Sylvester matrix of f and z f' at numeric coefficients, determinant by elimination.
Rat numeric_resultant(const std::vector<long>& s, const IntVec& y) {
  const long d = s.back();
  const auto n = static_cast<std::size_t>(2 * d);
  RatMatrix m(n, n);
  for (std::size_t r = 0; r < n / 2; ++r)
    for (std::size_t j = 0; j < s.size(); ++j) {
      m(r, r + static_cast<std::size_t>(d - s[j])) += Rat(y[j]);
      m(n / 2 + r, r + static_cast<std::size_t>(d - s[j])) += Rat(y[j] * s[j]);
    }
  return determinant(m);
}

std::vector<std::vector<long>> curves_up_to(long max_delta) {
  std::vector<std::vector<long>> out;
  for (long d = 1; d <= max_delta; ++d)
    for (long mask = 0; mask < (1L << (d - 1)); ++mask) {
      std::vector<long> e{0};
      long g = d;
      for (long k = 1; k < d; ++k)
        if (mask >> (k - 1) & 1) {
          e.push_back(k);
          g = std::gcd(g, k);
        }
      e.push_back(d);
      if (g == 1) out.push_back(e);
    }
  return out;
}

double max_error(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("arithmetic and printing") {
    Poly x = var(2, 0), y = var(2, 1);
    Poly p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    CHECK(p.to_string() == "y0^2 - y1^2");
    CHECK((x * num(2, 3) - num(2, 1)).to_string() == "3*y0 - 1");
    CHECK(p.derivative(0) == x * Int(2));
    CHECK(p.at_zero(0) == -(y * y));
    CHECK((x + y).pow(3).size() == 4);
    CHECK(p.total_degree() == 2);
    CHECK(Poly(2).to_string() == "0");
    CHECK(((x * y * y) * Int(6) + x * x * y * Int(4)).monomial_content() == Exponent{1, 1});
  }

  TEST_CASE("division and gcd") {
    Poly x = var(3, 0), y = var(3, 1), z = var(3, 2);
    Poly a = (x + y) * (x - z * Int(2));
    auto q = exact_divide(a, x + y);
    REQUIRE(q.has_value());
    CHECK(*q == x - z * Int(2));
    CHECK_FALSE(exact_divide(a, x + z).has_value());
    CHECK_FALSE(exact_divide(x * Int(3), x * Int(2)).has_value());
    CHECK(gcd((x + y) * (x - y), (x + y) * (x + y) * z) == (x + y).normalized());
    CHECK(gcd(x * Int(4) + num(3, 2), x * Int(6) + num(3, 3)) == (x * Int(2) + num(3, 1)));
    CHECK(gcd(x + y, x - y).is_constant());
    Poly sq = x * x * y * (x + z).pow(3) * (y - z).pow(2);
    CHECK(squarefree_part(sq) == (x * y * (x + z) * (y - z)).normalized());
  }

  TEST_CASE("random gcd and division properties") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
      Poly a = random_poly(rng, n, 2, 3), b = random_poly(rng, n, 2, 3), c = random_poly(rng, n, 2, 2);
      if (a.is_zero() || b.is_zero() || c.is_zero() || c.is_constant()) continue;
      auto back = exact_divide(a * b, b);
      REQUIRE(back.has_value());
      CHECK(*back == a);
      Poly g = gcd(a * c, b * c);
      CHECK(exact_divide(g, c.normalized()).has_value());
      CHECK(exact_divide((a * c).normalized(), g).has_value());
      CHECK(exact_divide((b * c).normalized(), g).has_value());
      Poly s = squarefree_part(a * c * c);
      CHECK(exact_divide(s, squarefree_part(c)).has_value());
    }
  }
}

TEST_SUITE("curves") {
  TEST_CASE("curve validation") {
    CHECK(monomial_curve({0, 1, 3}).delta() == 3);
    CHECK_THROWS_AS(monomial_curve({0, 2, 4}), InputError);
    CHECK_THROWS_AS(monomial_curve({1, 3}), InputError);
    CHECK_THROWS_AS(monomial_curve({0, 3, 1}), InputError);
    CHECK_THROWS_AS(monomial_curve({0}), InputError);
    auto a = monomial_curve({0, 2, 3}).configuration();
    CHECK(a.size() == 3);
    CHECK(a.point(1) == v({1, 2}));
  }

  TEST_CASE("principal determinants of small curves") {
    const std::size_t n = 3;
    Poly y0 = var(n, 0), y1 = var(n, 1), y2 = var(n, 2);
    auto quad = principal_determinant_curve(monomial_curve({0, 1, 2}));
    CHECK(quad == y0 * y2 * (y1 * y1 - y0 * y2 * Int(4)));
    auto cubic = principal_determinant_curve(monomial_curve({0, 1, 3}));
    CHECK(cubic == y0 * y2 * y2 * (y1.pow(3) * Int(4) + y0 * y0 * y2 * Int(27)));
    CHECK(principal_determinant_curve(monomial_curve({0, 1})) == var(2, 0) * var(2, 1));
    CHECK_THROWS_AS(principal_determinant_curve(monomial_curve({0, 1, 7})), BudgetError);
    CHECK_NOTHROW(principal_determinant_curve(monomial_curve({0, 1, 7}), 7));
  }

  TEST_CASE("expansion agrees with numeric Sylvester determinants") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (const auto& s : curves_up_to(5)) {
      Poly e = curve_resultant(s);
      std::optional<Rat> ratio;
      for (int k = 0; k < 4; ++k) {
        IntVec y(s.size());
        for (auto& x : y) x = coef(rng) == 0 ? Int(7) : Int(coef(rng));
        Rat num_det = numeric_resultant(s, y);
        Int val = evaluate(e, y);
        if (val == 0) {
          CHECK(num_det == 0);
          continue;
        }
        Rat r = num_det / Rat(val);
        if (ratio) CHECK(*ratio == r);
        ratio = r;
      }
    }
  }

  TEST_CASE("discriminants") {
    Poly y0 = var(3, 0), y1 = var(3, 1), y2 = var(3, 2);
    CHECK(discriminant_curve(monomial_curve({0, 1, 2})) == y1 * y1 - y0 * y2 * Int(4));
    CHECK(discriminant_curve(monomial_curve({0, 1, 3})) == y1.pow(3) * Int(4) + y0 * y0 * y2 * Int(27));
    CHECK(discriminant_curve(monomial_curve({0, 1})).is_constant());
    // d + c z + b z^2 + a z^3
    Poly d = var(4, 0), c = var(4, 1), b = var(4, 2), a = var(4, 3);
    Poly classical = b * b * c * c - a * c.pow(3) * Int(4) - b.pow(3) * d * Int(4) - a * a * d * d * Int(27) +
                     a * b * c * d * Int(18);
    Poly got = discriminant_curve(monomial_curve({0, 1, 2, 3}));
    CHECK(got.total_degree() == 4);
    CHECK((got == classical.normalized() || got == (-classical).normalized()));
  }

  TEST_CASE("factorization against multiplicities and secondary polytopes") {
    auto r = verify_factorization(monomial_curve({0, 1, 3}));
    CHECK(r.holds());
    CHECK(r.coordinate_exponents == std::vector<int>{1, 0, 2});
    CHECK(r.discriminant_exponent == 1);
    CHECK(r.unit == 1);
    CHECK(r.newton_vertices == std::vector<IntVec>{v({1, 3, 2}), v({3, 0, 3})});
    auto q = verify_factorization(monomial_curve({0, 1, 2}));
    CHECK(q.holds());
    CHECK(q.coordinate_exponents == std::vector<int>{1, 0, 1});
    CHECK(q.newton_vertices == std::vector<IntVec>{v({1, 2, 1}), v({2, 0, 2})});
    auto l = verify_factorization(monomial_curve({0, 1}));
    CHECK(l.holds());
    CHECK(l.coordinate_exponents == std::vector<int>{1, 1});
    CHECK(l.discriminant_exponent == 0);
    for (const auto& s : curves_up_to(4)) {
      auto f = verify_factorization(monomial_curve(s));
      CHECK(f.holds());
      CHECK(f.expected_discriminant == 1);
    }
  }

  TEST_CASE("restrictions to coordinate hyperplanes") {
    std::size_t checked = 0;
    for (const auto& s : curves_up_to(4))
      for (const auto& rc : check_restriction_divisibility(monomial_curve(s))) {
        CHECK(rc.divides);
        ++checked;
      }
    CHECK(checked > 10);
    auto none = check_restriction_divisibility(monomial_curve({0, 1}));
    CHECK(none.empty());
  }

  TEST_CASE("scalar equations") {
    auto o = ode_from_system(3, {Rat(1, 5), Rat(1, 3)});
    CHECK(o.order() == 3);
    CHECK(o.singular_point == Rat(-4, 27));
    CHECK(ode_from_system(2, {Rat(0), Rat(1, 2)}).singular_point == Rat(1, 4));
    for (long d = 2; d <= 5; ++d) {
      auto od = ode_from_system(d, {Rat(1, 7), Rat(2, 9)});
      CHECK(Int(static_cast<long>(od.order())) == rank_volume(curve({0, 1, d})));
      // Leading coefficient t^d (1 - c t): singular only at 0, 1/c and infinity.
      const auto& lead = od.d_form.back();
      for (std::size_t k = 0; k < lead.size(); ++k)
        CHECK(lead[k] == (k == static_cast<std::size_t>(d) ? Rat(1) : k == static_cast<std::size_t>(d) + 1 ? -od.c : Rat(0)));
      // The derivative form acts on t^s like P(s) t^s - c Q(s) t^(s+1).
      for (Rat s : {Rat(1, 3), Rat(-5, 2), Rat(4)}) {
        RatVec image(static_cast<std::size_t>(d) + 3);
        for (std::size_t i = 0; i < od.d_form.size(); ++i) {
          Rat ff = 1;
          for (std::size_t j = 0; j < i; ++j) ff *= s - static_cast<long>(j);
          for (std::size_t k = 0; k < od.d_form[i].size(); ++k)
            if (k >= i) image[k - i] += od.d_form[i][k] * ff;
        }
        Rat p = 0, q = 0, pw = 1;
        for (const auto& x : od.lower) p += x * pw, pw *= s;
        pw = 1;
        for (const auto& x : od.upper) q += x * pw, pw *= s;
        CHECK(image[0] == p);
        CHECK(image[1] == -od.c * q);
        for (std::size_t k = 2; k < image.size(); ++k) CHECK(image[k] == 0);
      }
    }
    CHECK_THROWS_AS(ode_from_system(1, {Rat(0), Rat(0)}), InputError);
    CHECK_THROWS_AS(ode_from_system(6, {Rat(0), Rat(0)}), InputError);
  }

  TEST_CASE("gamma-series substitution certifies the equations") {
    auto cert = certify_ode(ode_from_system(2, {Rat(0), Rat(1, 2)}), 10);
    CHECK(cert.passed());
    CHECK(cert.series.size() == 2);
    CHECK(cert.series[0].coefficients.size() == 11);
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> num(-20, 20);
    for (long d = 2; d <= 5; ++d)
      for (int trial = 0; trial < 3; ++trial) {
        RatVec beta{Rat(num(rng), 11), Rat(num(rng), 13)};
        if (!is_nonresonant(curve({0, 1, d}), beta)) continue;
        auto c = certify_ode(ode_from_system(d, beta), 8);
        CHECK(c.passed());
        CHECK(c.series.size() == static_cast<std::size_t>(d));
      }
    CHECK_THROWS_AS(certify_ode(ode_from_system(3, {Rat(0), Rat(0)}), 4), ResonanceError);
    // A wrong equation is caught.
    auto bad = ode_from_system(3, {Rat(1, 5), Rat(1, 3)});
    bad.c += 1;
    CHECK_FALSE(certify_ode(bad, 4).passed());
  }

  TEST_CASE("printed generators") {
    auto g = beukers_generators(3, {Rat(0), Rat(2, 7)});
    CHECK(max_error(g.g[0], CMatrix::Identity(3, 3)) == 0);
    CHECK(std::abs(g.g[2].trace() - Complex(1)) < 1e-15);
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-30, 30);
    for (int trial = 0; trial < 20; ++trial) {
      RatVec beta{Rat(num(rng), 17), Rat(num(rng), 19)};
      auto h = beukers_generators(3, beta);
      Complex a = std::polar(1.0, 2 * std::numbers::pi * beta[0].convert_to<double>());
      Complex b2 = std::polar(1.0, 2 * std::numbers::pi * beta[1].convert_to<double>());
      Eigen::ComplexEigenSolver<CMatrix> es(h.g[0]);
      for (Eigen::Index k = 0; k < 3; ++k) CHECK(std::abs(es.eigenvalues()[k] - a) < 1e-12);
      CHECK(max_error(h.g[1] * h.g[1] * h.g[1], b2 * CMatrix::Identity(3, 3)) < 1e-12);
      for (const auto& m : h.g) CHECK(std::abs(m.determinant()) > 0.5);
    }
    CHECK_THROWS_AS(beukers_generators(2, {Rat(0), Rat(0)}), InputError);
  }

  TEST_CASE("characteristic polynomials against eigenvalues") {
    std::mt19937 rng(23);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index n = 1 + trial % 4;
      CMatrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
      Eigen::ComplexEigenSolver<CMatrix> es(m);
      std::vector<Complex> poly{1.0};  // descending
      for (Eigen::Index k = 0; k < n; ++k) {
        std::vector<Complex> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i] += poly[i];
          next[i + 1] -= poly[i] * es.eigenvalues()[k];
        }
        poly = next;
      }
      auto c = characteristic_polynomial(m);
      REQUIRE(c.size() == static_cast<std::size_t>(n));
      for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(c[k] - poly[k + 1]) < 1e-9);
    }
  }

  TEST_CASE("numeric monodromy of the cubic family") {
    const RatVec beta{Rat(1, 5), Rat(1, 3)};
    auto n = numeric_monodromy(3, beta);
    CHECK(max_error(n.matrix(Loop::Trivial), CMatrix::Identity(3, 3)) < 1e-9);
    CHECK(std::abs(std::abs(n.matrix(Loop::Origin).determinant()) - 1) < 1e-9);
    auto cmp = compare_invariants(n, beukers_generators(3, beta));
    CHECK(cmp.size() == 7);
    for (const auto& c : cmp) {
      INFO(c.name);
      CHECK(c.error < 1e-6);
    }
    // Local exponents at 0 give the eigenvalues around the origin.
    auto ode = ode_from_system(3, beta);
    Eigen::ComplexEigenSolver<CMatrix> es(n.matrix(Loop::Origin));
    for (const auto& e : ode.exponents_at_zero) {
      Complex want = std::polar(1.0, 2 * std::numbers::pi * e.convert_to<double>());
      double best = 1;
      for (Eigen::Index k = 0; k < 3; ++k) best = std::min(best, std::abs(es.eigenvalues()[k] - want));
      CHECK(best < 1e-8);
    }
  }

  TEST_CASE("monodromy invariants do not depend on the basepoint") {
    const RatVec beta{Rat(2, 7), Rat(3, 5)};
    ContinuationOptions moved;
    moved.basepoint = Complex(-2.0 / 27, 1.0 / 40);
    auto x = numeric_monodromy(3, beta);
    auto y = numeric_monodromy(3, beta, moved);
    for (Loop l : {Loop::Origin, Loop::Discriminant, Loop::Infinity}) {
      auto cx = characteristic_polynomial(x.matrix(l)), cy = characteristic_polynomial(y.matrix(l));
      for (std::size_t k = 0; k < cx.size(); ++k) CHECK(std::abs(cx[k] - cy[k]) < 1e-8);
    }
    auto q = numeric_monodromy(2, {Rat(1, 3), Rat(1, 4)});
    CHECK(max_error(q.matrix(Loop::Trivial), CMatrix::Identity(2, 2)) < 1e-9);
    CHECK_THROWS_AS(numeric_monodromy(3, {Rat(0), Rat(0)}), ResonanceError);
    CHECK_THROWS_AS(numeric_monodromy(4, {Rat(1, 5), Rat(1, 3)}), InputError);
  }
}
