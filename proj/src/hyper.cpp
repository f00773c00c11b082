#include "gkz/hyper.hpp"

#include <algorithm>

namespace gkz {

namespace {

RatVec frac(const RatVec& e) {
  RatVec f(e.size());
  for (std::size_t j = 0; j < e.size(); ++j) f[j] = e[j] - Rat(floor(e[j]));
  return f;
}

bool integral_difference(const RatVec& x, const RatVec& y) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!is_integer(x[j] - y[j])) return false;
  return true;
}

RatVec shift(const RatVec& e, const IntVec& w, int sign) {
  RatVec out = e;
  for (std::size_t j = 0; j < e.size(); ++j) out[j] += sign * Rat(w[j]);
  return out;
}

// x (x-1) ... (x-m+1)
Rat falling(const Rat& x, long m) {
  Rat p = 1;
  for (long t = 0; t < m; ++t) p *= x - t;
  return p;
}

Rat falling(const RatVec& e, const IntVec& w) {
  Rat p = 1;
  for (std::size_t j = 0; j < e.size(); ++j) p *= falling(e[j], w[j].convert_to<long>());
  return p;
}

// p! / q! for p, q >= 0.
Rat factorial_ratio(const Int& p, const Int& q) {
  Rat r = 1;
  if (p >= q)
    for (Int t = q + 1; t <= p; ++t) r *= Rat(t);
  else
    for (Int t = p + 1; t <= q; ++t) r /= Rat(t);
  return r;
}

IntVec positive_part(const IntVec& u) {
  IntVec p(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) p[j] = u[j] > 0 ? u[j] : Int(0);
  return p;
}

IntVec negative_part(const IntVec& u) {
  IntVec p(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) p[j] = u[j] < 0 ? Int(-u[j]) : Int(0);
  return p;
}

RatVec matvec(const IntMatrix& a, const RatVec& x) { return to_rational(a) * x; }

std::vector<GammaComponent> shift_components(const std::vector<GammaComponent>& comps, const IntVec& w) {
  std::vector<GammaComponent> out;
  for (const auto& c : comps) {
    RatVec nb = shift(c.base, w, -1);
    Rat s = c.scale;
    for (std::size_t j = 0; j < nb.size(); ++j) s *= gamma_ratio(c.base[j], nb[j]);
    out.push_back({s, nb});
  }
  return out;
}

Rat component_sum(const std::vector<GammaComponent>& comps, const RatVec& e) {
  Rat v = 0;
  for (const auto& c : comps)
    if (integral_difference(e, c.base)) v += c.scale * canonical_coefficient(c.base, e);
  return v;
}

void materialize(TruncatedSeries& s) {
  s.terms.clear();
  for (const auto& e : s.known) {
    Rat v = component_sum(s.components, e);
    if (v != 0) s.terms.emplace(e, v);
  }
}

void add_coset(std::vector<RatVec>& cosets, const RatVec& e) {
  RatVec f = frac(e);
  if (std::find(cosets.begin(), cosets.end(), f) == cosets.end()) cosets.push_back(f);
}

void enumerate_l1(std::size_t depth, std::size_t r, const Int& budget, IntVec& cur, std::vector<IntVec>& out) {
  if (depth == r) {
    out.push_back(cur);
    return;
  }
  for (Int x = -budget; x <= budget; ++x) {
    cur[depth] = x;
    enumerate_l1(depth + 1, r, budget - boost::multiprecision::abs(x), cur, out);
  }
  cur[depth] = 0;
}

std::vector<IntVec> box_operators(const std::vector<IntVec>& basis) {
  std::vector<IntVec> ops = basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      ops.push_back(add(basis[i], basis[j]));
      ops.push_back(sub(basis[i], basis[j]));
    }
  return ops;
}

}  // namespace

std::vector<IntVec> toric_kernel_basis(const IntMatrix& a) {
  std::vector<IntVec> out;
  for (auto u : integer_kernel(a).columns()) {
    auto lead = std::find_if(u.begin(), u.end(), [](const Int& x) { return x != 0; });
    if (lead != u.end() && *lead < 0) u = scale(u, Int(-1));
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<IntVec> kernel_ball(const std::vector<IntVec>& basis, std::size_t k, const Int& radius) {
  if (basis.empty()) return {IntVec(k)};
  const std::size_t r = basis.size();
  IntMatrix b = IntMatrix::from_columns(k, basis);
  std::vector<std::size_t> rows;
  std::vector<IntVec> chosen;
  for (std::size_t i = 0; i < k && rows.size() < r; ++i) {
    auto trial = chosen;
    trial.push_back(b.row(i));
    if (rank(IntMatrix::from_rows(r, trial)) == trial.size()) {
      chosen = trial;
      rows.push_back(i);
    }
  }
  auto inv = inverse(to_rational(IntMatrix::from_rows(r, chosen)));
  if (!inv) throw Error("kernel basis is not of full rank");

  std::vector<IntVec> heads;
  IntVec cur(r);
  enumerate_l1(0, r, radius, cur, heads);
  std::vector<IntVec> out;
  for (const auto& h : heads) {
    auto z = as_integral(*inv * to_rational(h));
    if (!z) continue;
    IntVec u = b * *z;
    if (l1_norm(u) <= radius) out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

NonresonanceReport check_nonresonance(const PointConfiguration& a, const RatVec& beta) {
  if (beta.size() != a.ambient_dim()) throw InputError("beta has the wrong length");
  NonresonanceReport r;
  const auto& facets = a.polytope().facets;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    std::vector<IntVec> pts;
    for (std::size_t j : facets[f].indices) pts.push_back(a.point(j));
    IntMatrix h = annihilator(IntMatrix::from_columns(a.ambient_dim(), pts));
    IntVec values(h.rows());
    bool integral = true;
    for (std::size_t i = 0; i < h.rows() && integral; ++i) {
      Rat x = dot(to_rational(h.row(i)), beta);
      if (!is_integer(x)) integral = false;
      else values[i] = boost::multiprecision::numerator(x);
    }
    if (!integral) continue;
    auto gamma = solve_integer(h, values);
    if (!gamma) throw Error("facet functionals are not surjective");
    r.nonresonant = false;
    r.facet = f;
    r.facet_points = facets[f].indices;
    for (std::size_t i = 0; i < h.rows(); ++i) r.functionals.push_back(h.row(i));
    r.translate = *gamma;
    return r;
  }
  return r;
}

Rat gamma_ratio(const Rat& x, const Rat& y) {
  Rat d = x - y;
  if (!is_integer(d)) throw Error("gamma_ratio: arguments differ by a non-integer");
  long m = boost::multiprecision::numerator(d).convert_to<long>();
  if (!is_integer(x)) {
    if (m >= 0) return falling(x, m);
    return 1 / falling(y, -m);
  }
  Int xi = boost::multiprecision::numerator(x), yi = boost::multiprecision::numerator(y);
  if (xi >= 0 && yi >= 0) return factorial_ratio(xi, yi);
  if (xi >= 0) return factorial_ratio(xi, 0);
  if (yi >= 0) return factorial_ratio(0, yi);
  return 1;
}

Rat canonical_coefficient(const RatVec& base, const RatVec& e) {
  Rat c = 1;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (is_integer(e[j]) && e[j] < 0) return 0;
    c *= gamma_ratio(base[j], e[j]);
  }
  return c;
}

Rat TruncatedSeries::coefficient(const RatVec& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? Rat(0) : it->second;
}

bool TruncatedSeries::in_cosets(const RatVec& e) const {
  RatVec f = frac(e);
  return std::find(cosets.begin(), cosets.end(), f) != cosets.end();
}

TruncatedSeries gamma_series(const PointConfiguration& a, const RatVec& beta, const IndexSet& cell,
                             std::size_t order, const IntVec& off_cell) {
  const std::size_t k = a.size();
  if (beta.size() != a.ambient_dim()) throw InputError("beta has the wrong length");
  for (std::size_t j : cell)
    if (j >= k) throw InputError("cell index out of range");
  if (cell.size() != a.lattice().rank() || rank(a.matrix().select_columns(cell)) != cell.size())
    throw InputError("cell is not a full-dimensional simplex of columns");
  IntVec fixed = off_cell.empty() ? IntVec(k) : off_cell;
  if (fixed.size() != k) throw InputError("off-cell exponents have the wrong length");
  for (std::size_t j : cell)
    if (fixed[j] != 0) throw InputError("off-cell exponents must vanish on the cell");
  auto vs = solve(to_rational(a.matrix().select_columns(cell)), sub(beta, matvec(a.matrix(), to_rational(fixed))));
  if (!vs) throw InputError("beta is not in the span of the columns");
  auto res = check_nonresonance(a, beta);
  if (!res.nonresonant) {
    std::string pts;
    for (std::size_t j : res.facet_points) pts += (pts.empty() ? "" : ",") + std::to_string(j);
    throw ResonanceError("beta is resonant: beta - " + to_string(res.translate) +
                         " lies in the span of the facet on columns {" + pts + "}");
  }

  TruncatedSeries s;
  s.a = a.matrix();
  s.beta = beta;
  RatVec v = to_rational(fixed);
  for (std::size_t i = 0; i < cell.size(); ++i) v[cell[i]] = (*vs)[i];
  for (const auto& u : kernel_ball(toric_kernel_basis(a.matrix()), k, Int(order)))
    s.known.insert(shift(v, u, 1));
  s.components.push_back({Rat(1), v});
  add_coset(s.cosets, v);
  materialize(s);
  return s;
}

TruncatedSeries apply_operator(const TruncatedSeries& s, const Operator& op) {
  TruncatedSeries out;
  out.a = s.a;
  out.cosets = s.cosets;
  if (op.kind == Operator::Kind::Euler) {
    if (op.index >= s.a.rows()) throw InputError("Euler operator index out of range");
    out.beta = s.beta;
    out.known = s.known;
    for (const auto& [e, c] : s.terms) {
      Rat m = matvec(s.a, e)[op.index] - op.beta;
      if (m != 0) out.terms.emplace(e, c * m);
    }
    return out;
  }
  if (op.u.size() != s.variables()) throw InputError("box operator has the wrong length");
  RatVec au = matvec(s.a, to_rational(op.u));
  if (!is_zero(au)) throw InputError("box operator is not in the kernel of A");
  const IntVec up = positive_part(op.u), um = negative_part(op.u);
  out.beta = sub(s.beta, matvec(s.a, to_rational(up)));
  for (const auto& e : s.known)
    for (const auto* w : {&up, &um}) {
      RatVec img = shift(e, *w, -1);
      if (s.determined(shift(img, up, 1)) && s.determined(shift(img, um, 1))) out.known.insert(img);
    }
  for (const auto& e : out.known) {
    RatVec ep = shift(e, up, 1), em = shift(e, um, 1);
    Rat v = s.coefficient(ep) * falling(ep, up) - s.coefficient(em) * falling(em, um);
    if (v != 0) out.terms.emplace(e, v);
  }
  return out;
}

TruncatedSeries differentiate(const TruncatedSeries& s, const IntVec& w) {
  if (w.size() != s.variables()) throw InputError("derivative multi-index has the wrong length");
  TruncatedSeries out;
  out.a = s.a;
  out.cosets = s.cosets;
  out.beta = sub(s.beta, matvec(s.a, to_rational(w)));
  for (const auto& e : s.known) out.known.insert(shift(e, w, -1));
  if (!s.components.empty()) {
    out.components = shift_components(s.components, w);
    materialize(out);
    return out;
  }
  for (const auto& [e, c] : s.terms) {
    Rat v = c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      long m = w[j].convert_to<long>();
      if (m >= 0) {
        v *= falling(e[j], m);
        continue;
      }
      Rat d = falling(e[j] - m, -m);  // (e+1)(e+2)...(e-m)
      if (d == 0) throw ResonanceError("antiderivative divides by zero at exponent " + to_string(e[j]));
      v /= d;
    }
    if (v != 0) out.terms.emplace(shift(e, w, -1), v);
  }
  return out;
}

TruncatedSeries antiderivative(const TruncatedSeries& s, const IntVec& gamma) {
  for (const auto& g : gamma)
    if (g < 0) throw InputError("antiderivative expects a nonnegative multi-index");
  return differentiate(s, scale(gamma, Int(-1)));
}

TruncatedSeries linear_combination(const std::vector<std::pair<Rat, TruncatedSeries>>& parts) {
  if (parts.empty()) throw InputError("empty linear combination");
  TruncatedSeries out;
  out.a = parts[0].second.a;
  out.beta = parts[0].second.beta;
  bool symbolic = true;
  for (const auto& [c, s] : parts) {
    if (!(s.a == out.a) || s.beta != out.beta) throw InputError("series belong to different systems");
    for (const auto& f : s.cosets) add_coset(out.cosets, f);
    for (const auto& comp : s.components) out.components.push_back({c * comp.scale, comp.base});
    symbolic = symbolic && !s.components.empty();
  }
  std::set<RatVec> candidates;
  for (const auto& [c, s] : parts) candidates.insert(s.known.begin(), s.known.end());
  if (symbolic) {
    out.known = candidates;
    materialize(out);
    return out;
  }
  out.components.clear();
  for (const auto& e : candidates) {
    bool ok = true;
    Rat v = 0;
    for (const auto& [c, s] : parts) {
      if (!s.determined(e)) {
        ok = false;
        break;
      }
      v += c * s.coefficient(e);
    }
    if (!ok) continue;
    out.known.insert(e);
    if (v != 0) out.terms.emplace(e, v);
  }
  return out;
}

AnnihilationReport annihilation_check(const TruncatedSeries& s) {
  AnnihilationReport r;
  for (std::size_t i = 0; i < s.a.rows(); ++i) {
    for (const auto& e : s.known) {
      ++r.euler_checked;
      Rat v = s.coefficient(e) * (matvec(s.a, e)[i] - s.beta[i]);
      if (v != 0) r.failures.push_back({"euler " + std::to_string(i), e, v});
    }
  }
  for (const auto& u : box_operators(toric_kernel_basis(s.a))) {
    TruncatedSeries img = apply_operator(s, Operator::box(u));
    std::set<RatVec> candidates;
    const IntVec up = positive_part(u), um = negative_part(u);
    for (const auto& e : s.known) {
      candidates.insert(shift(e, up, -1));
      candidates.insert(shift(e, um, -1));
    }
    r.boundary += candidates.size() - img.known.size();
    for (const auto& e : img.known) {
      ++r.box_checked;
      Rat v = img.coefficient(e);
      if (v != 0) r.failures.push_back({"box " + to_string(u), e, v});
    }
  }
  return r;
}

std::optional<IntVec> kernel_vector_with(const IntMatrix& a, std::size_t k, const Int& ell) {
  if (k >= a.cols()) throw InputError("column index out of range");
  auto basis = toric_kernel_basis(a);
  if (ell == 0) return IntVec(a.cols());
  IntVec row;
  for (const auto& b : basis) row.push_back(b[k]);
  if (row.empty()) return std::nullopt;
  auto z = solve_integer(IntMatrix::from_rows(row.size(), {row}), IntVec{ell});
  if (!z) return std::nullopt;
  IntVec u(a.cols());
  for (std::size_t i = 0; i < basis.size(); ++i) u = add(u, scale(basis[i], (*z)[i]));

  // Shorten by kernel vectors vanishing at k.
  IntMatrix ak(a.rows() + 1, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) ak(i, j) = a(i, j);
  ak(a.rows(), k) = 1;
  auto moves = toric_kernel_basis(ak);
  for (bool improved = true; improved;) {
    improved = false;
    for (const auto& g : moves)
      for (int sgn : {1, -1}) {
        IntVec t = add(u, scale(g, Int(sgn)));
        if (l1_norm(t) < l1_norm(u)) {
          u = t;
          improved = true;
        }
      }
  }
  return u;
}

TruncatedSeries extension_slice(const TruncatedSeries& psi, std::size_t k, const IntVec& u) {
  IntVec ubar = u;
  ubar.erase(ubar.begin() + static_cast<std::ptrdiff_t>(k));
  return differentiate(psi, scale(ubar, Int(-1)));
}

Extension extend_solution(const TruncatedSeries& psi, const PointConfiguration& a, std::size_t k, std::size_t order) {
  if (k >= a.size()) throw InputError("column index out of range");
  if (psi.components.empty()) throw InputError("extension needs a series given by Gamma-series components");
  if (a.is_vertex(k)) throw InputError("column " + std::to_string(k) + " is a vertex of N");
  PointConfiguration ak = a.without(k);
  if (!(ak.matrix() == psi.a)) throw InputError("series does not belong to A without column k");
  if (!(ak.lattice() == a.lattice())) throw InputError("removing column " + std::to_string(k) + " shrinks Z_A");
  auto res = check_nonresonance(a, psi.beta);
  if (!res.nonresonant) throw ResonanceError("beta is resonant for A");

  Extension ext;
  std::vector<std::vector<GammaComponent>> slices;
  for (std::size_t ell = 0; ell <= order; ++ell) {
    auto u = kernel_vector_with(a.matrix(), k, Int(ell));
    ext.representatives.push_back(u);
    if (!u) {
      slices.emplace_back();
      continue;
    }
    IntVec ubar = *u;
    ubar.erase(ubar.begin() + static_cast<std::ptrdiff_t>(k));
    slices.push_back(shift_components(psi.components, scale(ubar, Int(-1))));
  }

  TruncatedSeries& f = ext.series;
  f.a = a.matrix();
  f.beta = psi.beta;
  auto ball = kernel_ball(toric_kernel_basis(a.matrix()), a.size(), Int(order));
  for (const auto& comp : psi.components) {
    RatVec center = comp.base;
    center.insert(center.begin() + static_cast<std::ptrdiff_t>(k), Rat(0));
    add_coset(f.cosets, center);
    for (const auto& u : ball) f.known.insert(shift(center, u, 1));
  }
  for (const auto& e : f.known) {
    Rat l = e[k];
    if (l < 0 || l > Rat(order)) continue;
    std::size_t ell = boost::multiprecision::numerator(l).convert_to<std::size_t>();
    if (slices[ell].empty()) continue;
    RatVec ebar = e;
    ebar.erase(ebar.begin() + static_cast<std::ptrdiff_t>(k));
    Rat v = component_sum(slices[ell], ebar) * factorial_ratio(0, Int(ell));
    if (v != 0) f.terms.emplace(e, v);
  }
  return ext;
}

TruncatedSeries restrict_to_zero(const TruncatedSeries& f, std::size_t k) {
  if (k >= f.variables()) throw InputError("column index out of range");
  auto drop = [k](RatVec e) {
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(k));
    return e;
  };
  TruncatedSeries out;
  out.a = f.a.drop_column(k);
  out.beta = f.beta;
  for (const auto& e : f.known)
    if (e[k] == 0) out.known.insert(drop(e));
  for (const auto& [e, c] : f.terms)
    if (e[k] == 0) out.terms.emplace(drop(e), c);
  for (const auto& c : f.cosets)
    if (c[k] == 0) out.cosets.push_back(drop(c));
  return out;
}

Int rank_volume(const PointConfiguration& a) {
  Rat v = normalized_volume(a.polytope(), a.polytope().affine);
  if (!is_integer(v)) throw Error("normalized volume is not an integer");
  return boost::multiprecision::numerator(v);
}

}  // namespace gkz
