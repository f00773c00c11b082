#include "gkz/curves.hpp"

#include "gkz/hyper.hpp"
#include "gkz/secondary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

namespace gkz {

namespace {

void check_support(const std::vector<long>& s) {
  if (s.size() < 2) throw InputError("a curve needs at least two exponents");
  if (s.front() != 0) throw InputError("exponents must start at 0");
  for (std::size_t j = 1; j < s.size(); ++j)
    if (s[j] <= s[j - 1]) throw InputError("exponents must be strictly increasing");
}

Poly monomial_factor(std::size_t nvars, const Exponent& e) { return Poly::monomial(nvars, e); }

RatPoly multiply(const RatPoly& a, const RatPoly& b) {
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Rat evaluate(const RatPoly& p, const Rat& x) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

// Stirling numbers of the second kind S(j, i), 0 <= i, j <= n.
std::vector<std::vector<Rat>> stirling2(std::size_t n) {
  std::vector<std::vector<Rat>> s(n + 1, std::vector<Rat>(n + 1));
  s[0][0] = 1;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 1; i <= j; ++i) s[j][i] = Rat(static_cast<long>(i)) * s[j - 1][i] + s[j - 1][i - 1];
  return s;
}

Rat rat_power(const Rat& x, long k) {
  Rat r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

Rat fractional(const Rat& x) { return x - Rat(floor(x)); }

Complex unit_root(const Rat& x) {
  return std::polar(1.0, 2 * std::numbers::pi * fractional(x).convert_to<double>());
}

void check_beta(const RatVec& beta) {
  if (beta.size() != 2) throw InputError("beta must have two entries");
}

}  // namespace

PointConfiguration MonomialCurve::configuration() const {
  std::vector<IntVec> cols;
  for (long e : exponents) cols.push_back({Int(1), Int(e)});
  return PointConfiguration(IntMatrix::from_columns(2, cols));
}

std::vector<std::string> MonomialCurve::variables() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < exponents.size(); ++j) out.push_back("y" + std::to_string(j));
  return out;
}

MonomialCurve monomial_curve(std::vector<long> exponents) {
  check_support(exponents);
  long g = 0;
  for (long e : exponents) g = std::gcd(g, e);
  if (g != 1) throw InputError("exponents must have gcd 1");
  return {std::move(exponents)};
}

Poly curve_resultant(const std::vector<long>& support, long budget) {
  check_support(support);
  const long delta = support.back();
  if (delta > budget)
    throw BudgetError("degree " + std::to_string(delta) + " exceeds the symbolic budget " + std::to_string(budget));
  if (delta > 15) throw BudgetError("degree too large for the determinant expansion");
  const std::size_t nv = support.size(), n = static_cast<std::size_t>(2 * delta);

  struct Entry {
    std::size_t col, var;
    long coef;
  };
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t r = 0; r < n / 2; ++r)
    for (std::size_t j = 0; j < nv; ++j)
      rows[r].push_back({r + static_cast<std::size_t>(delta - support[j]), j, 1});
  for (std::size_t r = 0; r < n / 2; ++r)
    for (std::size_t j = 1; j < nv; ++j)
      rows[n / 2 + r].push_back({r + static_cast<std::size_t>(delta - support[j]), j, support[j]});

  // Laplace expansion row by row, indexed by the set of used columns.
  std::map<std::uint32_t, Poly> layer;
  layer.emplace(0u, Poly::constant(nv, 1));
  for (const auto& row : rows) {
    std::map<std::uint32_t, Poly> next;
    for (const auto& [mask, p] : layer)
      for (const auto& en : row) {
        const std::uint32_t bit = 1u << en.col;
        if (mask & bit) continue;
        const int above = std::popcount(mask >> (en.col + 1));
        const Int coef = Int(above % 2 ? -en.coef : en.coef);
        auto& q = next.try_emplace(mask | bit, Poly(nv)).first->second;
        for (const auto& [e, c] : p.terms()) {
          Exponent f = e;
          ++f[en.var];
          q.add_term(f, c * coef);
        }
      }
    layer = std::move(next);
  }
  auto it = layer.find((n == 32 ? 0u : (1u << n)) - 1u);
  if (it == layer.end() || it->second.is_zero()) throw Error("the resultant vanishes identically");
  return it->second.normalized();
}

Poly principal_determinant_curve(const MonomialCurve& c, long budget) { return curve_resultant(c.exponents, budget); }

Poly discriminant_curve(const MonomialCurve& c, long budget) {
  Poly e = principal_determinant_curve(c, budget);
  auto rest = exact_divide(e, monomial_factor(e.nvars(), e.monomial_content()));
  return squarefree_part(*rest);
}

FactorizationReport verify_factorization(const MonomialCurve& c, long budget) {
  FactorizationReport r;
  const std::size_t nv = c.size();
  r.principal = principal_determinant_curve(c, budget);
  r.coordinate_exponents = r.principal.monomial_content();
  Poly rest = *exact_divide(r.principal, monomial_factor(nv, r.coordinate_exponents));
  r.discriminant = squarefree_part(rest);
  if (!r.discriminant.is_constant())
    while (auto q = exact_divide(rest, r.discriminant)) {
      rest = std::move(*q);
      ++r.discriminant_exponent;
    }
  const bool clean = rest.is_constant();
  r.unit = clean ? rest.coefficient(Exponent(nv, 0)) : Int(0);

  const PointConfiguration a = c.configuration();
  r.expected_coordinate.assign(nv, Int(0));
  for (const auto& rec : multiplicity_table(a)) {
    const Face& f = a.faces().faces[rec.face];
    if (rec.face == a.faces().top()) r.expected_discriminant = rec.mult_m;
    else if (f.dim == 0) r.expected_coordinate[f.indices.front()] = rec.mult_m;
  }
  r.exponents_match = clean;
  for (std::size_t j = 0; j < nv; ++j)
    if (Int(r.coordinate_exponents[j]) != r.expected_coordinate[j]) r.exponents_match = false;
  if (!r.discriminant.is_constant() && Int(r.discriminant_exponent) != r.expected_discriminant)
    r.exponents_match = false;

  const Polytope newton = convex_hull(support(r.principal));
  for (std::size_t i : newton.vertices) r.newton_vertices.push_back(newton.points[i]);
  const SecondaryPolytope sec = secondary_polytope(a);
  for (std::size_t i : sec.hull.vertices) r.secondary_vertices.push_back(sec.hull.points[i]);
  std::sort(r.newton_vertices.begin(), r.newton_vertices.end());
  std::sort(r.secondary_vertices.begin(), r.secondary_vertices.end());
  r.newton_matches = r.newton_vertices == r.secondary_vertices;
  return r;
}

std::vector<RestrictionCheck> check_restriction_divisibility(const MonomialCurve& c, long budget) {
  std::vector<RestrictionCheck> out;
  const Poly e = principal_determinant_curve(c, budget);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    RestrictionCheck rc;
    rc.column = i;
    Poly restricted = e.at_zero(i).drop_variable(i);
    std::vector<long> smaller = c.exponents;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    rc.deleted = curve_resultant(smaller, budget);
    if (!restricted.is_zero()) {
      rc.restricted_radical = squarefree_part(restricted);
      rc.divides = exact_divide(rc.deleted, rc.restricted_radical).has_value();
    }
    out.push_back(std::move(rc));
  }
  return out;
}

CurveOde ode_from_system(long delta, const RatVec& beta) {
  if (delta < 2 || delta > 5) throw InputError("the scalar equation is available for 2 <= delta <= 5");
  check_beta(beta);
  CurveOde o;
  o.delta = delta;
  o.beta = beta;
  o.c = rat_power(Rat(-delta), delta) / rat_power(Rat(delta - 1), delta - 1);
  o.singular_point = 1 / o.c;
  const Rat b1 = beta[0], b2 = beta[1];

  o.lower = {Rat(0), Rat(1)};
  o.exponents_at_zero.push_back(0);
  for (long k = 0; k <= delta - 2; ++k) {
    Rat r = (b1 - b2 - k) / (delta - 1);
    o.lower = multiply(o.lower, {r, Rat(1)});
    o.exponents_at_zero.push_back(-r);
  }
  o.upper = {Rat(1)};
  for (long k = 0; k <= delta - 1; ++k) o.upper = multiply(o.upper, {-(b2 - k) / delta, Rat(1)});

  // theta^j = sum_i S(j, i) t^i D^i
  const auto s = stirling2(static_cast<std::size_t>(delta));
  for (std::size_t i = 0; i <= static_cast<std::size_t>(delta); ++i) {
    Rat li = 0, ui = 0;
    for (std::size_t j = i; j <= static_cast<std::size_t>(delta); ++j) {
      li += o.lower[j] * s[j][i];
      ui += o.upper[j] * s[j][i];
    }
    RatPoly p(i + 2);
    p[i] = li;
    p[i + 1] = -o.c * ui;
    o.d_form.push_back(std::move(p));
  }
  return o;
}

bool OdeCertificate::passed() const {
  if (!independent || series.empty()) return false;
  for (const auto& s : series) {
    if (s.coefficients.empty() || s.coefficients.front() == 0) return false;
    for (const auto& r : s.residuals)
      if (r != 0) return false;
  }
  return true;
}

OdeCertificate certify_ode(const CurveOde& ode, std::size_t t_order) {
  const long delta = ode.delta;
  const PointConfiguration a = monomial_curve({0, 1, delta}).configuration();
  const std::size_t radius = static_cast<std::size_t>(2 * delta) * t_order;
  const IntVec u{Int(delta - 1), Int(-delta), Int(1)};

  std::vector<std::pair<IndexSet, IntVec>> sources{{{0, 1}, IntVec(3)}};
  for (long m = 0; m <= delta - 2; ++m) sources.push_back({{1, 2}, IntVec{Int(m), Int(0), Int(0)}});

  OdeCertificate cert;
  cert.t_order = t_order;
  for (const auto& [cell, off] : sources) {
    TruncatedSeries s = gamma_series(a, ode.beta, cell, radius, off);
    OdeSeries os;
    os.base = s.components.front().base;
    os.exponent = os.base[2];
    for (std::size_t n = 0; n <= t_order; ++n) {
      RatVec e = os.base;
      for (std::size_t j = 0; j < 3; ++j) e[j] += Rat(u[j]) * static_cast<long>(n);
      if (!s.known.count(e)) throw Error("series truncated below the requested order");
      os.coefficients.push_back(s.coefficient(e));
    }
    for (std::size_t n = 0; n <= t_order; ++n) {
      Rat x = os.exponent + static_cast<long>(n);
      Rat res = evaluate(ode.lower, x) * os.coefficients[n];
      if (n > 0) res -= ode.c * evaluate(ode.upper, x - 1) * os.coefficients[n - 1];
      os.residuals.push_back(res);
    }
    cert.series.push_back(std::move(os));
  }
  cert.independent = true;
  for (std::size_t i = 0; i < cert.series.size(); ++i)
    for (std::size_t j = i + 1; j < cert.series.size(); ++j)
      if (is_integer(cert.series[i].exponent - cert.series[j].exponent)) cert.independent = false;
  return cert;
}

MonodromyGenerators beukers_generators(long delta, const RatVec& beta) {
  if (delta != 3) throw InputError("generators are only available for delta = 3");
  check_beta(beta);
  const Complex a = unit_root(beta[0]), b = unit_root(beta[1] - beta[0]);
  MonodromyGenerators g;
  g.delta = delta;
  g.beta = beta;
  g.g[0] = a * CMatrix::Identity(3, 3);
  g.g[1] = CMatrix::Zero(3, 3);
  g.g[1](0, 1) = 1;
  g.g[1](1, 2) = b;
  g.g[1](2, 0) = a;
  g.g[2] = CMatrix::Zero(3, 3);
  g.g[2](0, 0) = -1;
  g.g[2](0, 1) = 1;
  g.g[2](0, 2) = 1;
  g.g[2](1, 1) = a;
  g.g[2](2, 2) = a;
  return g;
}

std::vector<Complex> characteristic_polynomial(const CMatrix& m) {
  const auto n = m.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;  // c[k] multiplies lambda^k
  CMatrix mk = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * CMatrix::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return {c.rbegin() + 1, c.rend()};
}

std::string to_string(Loop l) {
  switch (l) {
    case Loop::Origin: return "origin";
    case Loop::Discriminant: return "discriminant";
    case Loop::Infinity: return "infinity";
    case Loop::Trivial: return "trivial";
  }
  return "?";
}

namespace {

struct Continuation {
  std::vector<std::vector<Complex>> p;  // d_form coefficients
  std::vector<Complex> singular;
  ContinuationOptions opt;
  std::size_t steps = 0;

  std::size_t order() const { return p.size() - 1; }

  double clearance(Complex t) const {
    double d = std::numeric_limits<double>::infinity();
    for (auto s : singular) d = std::min(d, std::abs(t - s));
    return d;
  }

  // One Taylor step of every column of the state matrix y (derivatives 0..order-1).
  bool step(Complex t0, Complex h, CMatrix& y) const {
    const std::size_t n = order();
    std::vector<std::vector<Complex>> q(n + 1);
    // q[i][m]: coefficients of p_i(t0 + s) in s.
    std::vector<Complex> pw{1.0};
    for (std::size_t i = 0; i <= n; ++i) {
      const auto& pi = p[i];
      while (pw.size() < pi.size()) pw.push_back(pw.back() * t0);
      q[i].assign(pi.size(), 0);
      for (std::size_t k = 0; k < pi.size(); ++k) {
        double binom = 1;
        for (std::size_t m = 0; m <= k; ++m) {
          q[i][m] += pi[k] * binom * pw[k - m];
          binom = binom * static_cast<double>(k - m) / static_cast<double>(m + 1);
        }
      }
    }
    auto ff = [](double x, std::size_t k) {
      double r = 1;
      for (std::size_t j = 0; j < k; ++j) r *= x - static_cast<double>(j);
      return r;
    };
    const Complex lead = q[n][0];
    CMatrix out(n, y.cols());
    for (Eigen::Index col = 0; col < y.cols(); ++col) {
      std::vector<Complex> a(n);
      double fact = 1, scale = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        a[k] = y(static_cast<Eigen::Index>(k), col) / fact;
        scale = std::max(scale, std::abs(a[k]) * std::pow(std::abs(h), static_cast<double>(k)));
      }
      scale = std::max(scale, 1e-300);
      std::size_t small = 0;
      while (small < n + 1) {
        if (a.size() >= opt.max_terms) return false;
        const std::size_t next = a.size();
        const long base = static_cast<long>(next) - static_cast<long>(n);  // N
        Complex sum = 0;
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t m = 0; m < q[i].size(); ++m) {
            if (i == n && m == 0) continue;
            const long idx = base - static_cast<long>(m) + static_cast<long>(i);
            if (idx < 0) continue;
            sum += q[i][m] * a[static_cast<std::size_t>(idx)] * ff(static_cast<double>(idx), i);
          }
        a.push_back(-sum / (lead * ff(static_cast<double>(next), n)));
        const double term = std::abs(a.back()) * std::pow(std::abs(h), static_cast<double>(next));
        scale = std::max(scale, term);
        small = term < opt.term_tolerance * scale ? small + 1 : 0;
      }
      for (std::size_t k = 0; k < n; ++k) {
        Complex v = 0;
        for (std::size_t j = a.size(); j-- > k;)
          v = v * h + a[j] * ff(static_cast<double>(j), k);
        out(static_cast<Eigen::Index>(k), col) = v;
      }
    }
    y = out;
    return true;
  }

  void segment(Complex from, Complex to, CMatrix& y) {
    Complex t = from;
    while (std::abs(to - t) > 0) {
      double hmax = opt.step_fraction * clearance(t);
      Complex rem = to - t;
      double len = std::min(std::abs(rem), hmax);
      for (;;) {
        if (len < opt.min_step) throw Error("step size underflow near a singular point");
        Complex h = std::abs(rem) <= len ? rem : rem / std::abs(rem) * len;
        CMatrix trial = y;
        if (step(t, h, trial)) {
          y = trial;
          t = std::abs(rem) <= len ? to : t + h;
          ++steps;
          break;
        }
        len /= 2;
      }
    }
  }

  void circle(Complex center, Complex start, CMatrix& y) {
    const Complex r = start - center;
    Complex prev = start;
    for (std::size_t k = 1; k <= opt.polygon; ++k) {
      double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(opt.polygon);
      Complex next = k == opt.polygon ? start : center + r * std::polar(1.0, ang);
      segment(prev, next, y);
      prev = next;
    }
  }
};

}  // namespace

const CMatrix& NumericMonodromy::matrix(Loop l) const {
  for (const auto& m : loops)
    if (m.loop == l) return m.matrix;
  throw Error("loop not computed");
}

NumericMonodromy numeric_monodromy(long delta, const RatVec& beta, const ContinuationOptions& opt) {
  if (delta < 2 || delta > 3) throw InputError("numeric monodromy is available for delta = 2, 3");
  const CurveOde ode = ode_from_system(delta, beta);
  const PointConfiguration a = monomial_curve({0, 1, delta}).configuration();
  RatVec full{beta[0], beta[1]};
  if (!is_nonresonant(a, full)) throw ResonanceError("beta is resonant");

  Continuation cont;
  cont.opt = opt;
  for (const auto& pi : ode.d_form) {
    std::vector<Complex> c;
    for (const auto& x : pi) c.emplace_back(x.convert_to<double>());
    cont.p.push_back(std::move(c));
  }
  const Complex ts(ode.singular_point.convert_to<double>());
  cont.singular = {0.0, ts};

  NumericMonodromy out;
  out.delta = delta;
  out.beta = beta;
  const Complex p = opt.basepoint.value_or(ts / 2.0);
  out.basepoint = p;
  const double r0 = std::abs(p), rs = std::abs(p - ts), big = 2 * std::max(r0, rs);
  if (r0 >= std::abs(ts) || rs >= std::abs(ts)) throw InputError("basepoint too far from the singular points");
  if (std::min(r0, rs) < 1e-6) throw InputError("basepoint too close to a singular point");

  const auto n = static_cast<Eigen::Index>(delta);
  auto run = [&](Loop l) {
    CMatrix y = CMatrix::Identity(n, n);
    cont.steps = 0;
    switch (l) {
      case Loop::Origin: cont.circle(0.0, p, y); break;
      case Loop::Discriminant: cont.circle(ts, p, y); break;
      case Loop::Infinity: {
        const Complex top = p + Complex(0, big);
        cont.segment(p, top, y);
        cont.circle(p, top, y);
        cont.segment(top, p, y);
        break;
      }
      case Loop::Trivial: {
        const double r = std::min(r0, rs) / 4;
        cont.circle(p + Complex(0, r), p, y);
        break;
      }
    }
    out.loops.push_back({l, y, cont.steps});
  };
  for (Loop l : {Loop::Origin, Loop::Discriminant, Loop::Infinity, Loop::Trivial}) run(l);

  const Complex av = unit_root(beta[0]);
  out.generators[0] = av * out.matrix(Loop::Trivial);
  out.generators[1] = out.matrix(Loop::Infinity);
  out.generators[2] = av * out.matrix(Loop::Discriminant).inverse();
  return out;
}

std::vector<InvariantComparison> compare_invariants(const NumericMonodromy& n, const MonodromyGenerators& g) {
  if (n.delta != g.delta) throw InputError("generators for different delta");
  const auto& x = n.generators;
  const auto& y = g.g;
  std::vector<std::pair<std::string, std::pair<CMatrix, CMatrix>>> cases{
      {"g1", {x[0], y[0]}},
      {"g2", {x[1], y[1]}},
      {"g3", {x[2], y[2]}},
      {"g1g2", {x[0] * x[1], y[0] * y[1]}},
      {"g1g3", {x[0] * x[2], y[0] * y[2]}},
      {"g2g3", {x[1] * x[2], y[1] * y[2]}},
      {"g1g2g3", {x[0] * x[1] * x[2], y[0] * y[1] * y[2]}},
  };
  std::vector<InvariantComparison> out;
  for (const auto& [name, mats] : cases) {
    InvariantComparison c;
    c.name = name;
    c.numeric = characteristic_polynomial(mats.first);
    c.algebraic = characteristic_polynomial(mats.second);
    for (std::size_t k = 0; k < c.numeric.size(); ++k) c.error = std::max(c.error, std::abs(c.numeric[k] - c.algebraic[k]));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gkz
