#include "gkz/poly.hpp"

#include <algorithm>
#include <sstream>

namespace gkz {

namespace {

// Coefficients of p as a polynomial in y_v; the v-exponent is zeroed.
std::map<int, Poly> coefficients_in(const Poly& p, std::size_t v) {
  std::map<int, Poly> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[v] = 0;
    auto it = out.try_emplace(e[v], Poly(p.nvars())).first;
    it->second.add_term(f, c);
  }
  return out;
}

Poly coefficient_in(const Poly& p, std::size_t v, int d) {
  Poly out(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (e[v] == d) {
      Exponent f = e;
      f[v] = 0;
      out.add_term(f, c);
    }
  return out;
}

Poly power_of(std::size_t nvars, std::size_t v, int d) {
  Exponent e(nvars, 0);
  e[v] = d;
  return Poly::monomial(nvars, e);
}

Poly content_in(const Poly& p, std::size_t v) {
  Poly g(p.nvars());
  for (const auto& [d, c] : coefficients_in(p, v)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return p;
  auto q = exact_divide(p, content_in(p, v));
  if (!q) throw Error("content does not divide the polynomial");
  return *q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v) {
  const int db = b.degree(v);
  const Poly lb = coefficient_in(b, v, db);
  Poly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    const int dr = r.degree(v);
    r = r * lb - coefficient_in(r, v, dr) * power_of(a.nvars(), v, dr - db) * b;
  }
  return r;
}

// gcd of two polynomials that are primitive in y_v.
Poly primitive_prs(Poly a, Poly b, std::size_t v) {
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  for (;;) {
    if (b.is_zero()) return a;
    if (b.degree(v) == 0) return Poly::constant(a.nvars(), 1);
    Poly r = pseudo_remainder(a, b, v);
    a = std::move(b);
    b = primitive_in(r, v);
  }
}

// Univariate image in y_v after substituting fixed integers for the other variables.
std::vector<Rat> specialize(const Poly& p, std::size_t v, const std::vector<Int>& at) {
  std::vector<Rat> out(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1);
  for (const auto& [e, c] : p.terms()) {
    Int x = c;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != v)
        for (int t = 0; t < e[j]; ++t) x *= at[j];
    out[static_cast<std::size_t>(e[v])] += Rat(x);
  }
  return out;
}

void trim(std::vector<Rat>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::size_t univariate_gcd_degree(std::vector<Rat> f, std::vector<Rat> g) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    while (f.size() >= g.size()) {
      Rat q = f.back() / g.back();
      std::size_t off = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) f[off + i] -= q * g[i];
      trim(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.empty() ? 0 : f.size() - 1;
}

// True when specializations show that gcd(a, b) has degree 0 in every variable.
bool coprime_by_specialization(const Poly& a, const Poly& b) {
  for (std::size_t v = 0; v < a.nvars(); ++v) {
    if (a.degree(v) <= 0 || b.degree(v) <= 0) continue;
    bool shown = false;
    for (long attempt = 0; attempt < 3 && !shown; ++attempt) {
      std::vector<Int> at(a.nvars());
      for (std::size_t j = 0; j < at.size(); ++j) at[j] = Int(static_cast<long>(3 + 7 * j + 13 * attempt + 2 * v));
      auto fa = specialize(a, v, at), fb = specialize(b, v, at);
      if (fa.back() == 0 || fb.back() == 0) continue;
      if (univariate_gcd_degree(fa, fb) == 0) shown = true;
      else return false;
    }
    if (!shown) return false;
  }
  return true;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Int& c) { return monomial(nvars, Exponent(nvars, 0), c); }

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw InputError("variable index out of range");
  return power_of(nvars, i, 1);
}

Poly Poly::monomial(std::size_t nvars, const Exponent& e, const Int& c) {
  if (e.size() != nvars) throw InputError("exponent has the wrong length");
  Poly p(nvars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent(nvars_, 0));
}

Int Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int Poly::degree(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw InputError("polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw InputError("polynomials in different rings");
  Poly r(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t j = 0; j < nvars_; ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const Int& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [e, x] : r.terms_) x *= c;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    r.add_term(f, c * e[var]);
  }
  return r;
}

Poly Poly::at_zero(std::size_t var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (e[var] == 0) r.terms_.emplace(e, c);
  return r;
}

Poly Poly::drop_variable(std::size_t var) const {
  if (var >= nvars_) throw InputError("variable index out of range");
  Poly r(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[var] != 0) throw InputError("variable still occurs");
    Exponent f = e;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& [e, c] : terms_) g = gkz::gcd(g, c);
  return g;
}

Exponent Poly::monomial_content() const {
  if (terms_.empty()) return Exponent(nvars_, 0);
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t j = 0; j < nvars_; ++j) m[j] = std::min(m[j], e[j]);
  return m;
}

Poly Poly::normalized() const {
  if (terms_.empty()) return *this;
  Int g = content();
  if (terms_.begin()->second < 0) g = -g;
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c / g);
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t j) { return j < names.size() ? names[j] : "y" + std::to_string(j); };
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Int a = c < 0 ? Int(-c) : c;
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    bool mono = false;
    std::string vars;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      vars += (mono ? "*" : "") + name(j);
      if (e[j] > 1) vars += "^" + std::to_string(e[j]);
      mono = true;
    }
    if (!mono) os << gkz::to_string(a);
    else if (a == 1) os << vars;
    else os << gkz::to_string(a) << "*" << vars;
  }
  return os.str();
}

std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw InputError("division by the zero polynomial");
  if (p.nvars() != d.nvars()) throw InputError("polynomials in different rings");
  Poly q(p.nvars()), r = p;
  const auto& [ed, cd] = d.leading();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading();
    Exponent e(p.nvars());
    for (std::size_t j = 0; j < e.size(); ++j) {
      e[j] = er[j] - ed[j];
      if (e[j] < 0) return std::nullopt;
    }
    if (cr % cd != 0) return std::nullopt;
    Poly t = Poly::monomial(p.nvars(), e, cr / cd);
    q += t;
    r = r - t * d;
  }
  return q;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw InputError("polynomials in different rings");
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const std::size_t n = a.nvars();
  std::optional<std::size_t> v;
  for (std::size_t i = n; i-- > 0;)
    if (a.degree(i) > 0 || b.degree(i) > 0) {
      v = i;
      break;
    }
  if (!v || coprime_by_specialization(a, b)) return Poly::constant(n, 1);
  const Poly ca = content_in(a, *v), cb = content_in(b, *v);
  const Poly c = gcd(ca, cb);
  const Poly g = primitive_prs(*exact_divide(a, ca), *exact_divide(b, cb), *v);
  return (c * g).normalized();
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) return p;
  Poly prim = p.normalized();
  Poly g = prim;
  for (std::size_t i = 0; i < p.nvars() && !g.is_constant(); ++i)
    if (prim.degree(i) > 0) g = gcd(g, prim.derivative(i));
  auto q = exact_divide(prim, g);
  if (!q) throw Error("gcd does not divide the polynomial");
  return q->normalized();
}

std::vector<IntVec> support(const Poly& p) {
  std::vector<IntVec> out;
  for (const auto& [e, c] : p.terms()) {
    IntVec x;
    for (int k : e) x.push_back(Int(k));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace gkz
