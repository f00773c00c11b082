// Acceptance suite: one PASS/FAIL line per criterion.
#include "gkz/curves.hpp"
#include "gkz/hyper.hpp"
#include "gkz/secondary.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace gkz;

namespace {

constexpr double kInvariantTolerance = 1e-6;
constexpr double kIdentityTolerance = 1e-9;
constexpr long kBox = 5;        // brute-force translate range
constexpr long kBetaBound = 2;  // |beta_i| <= kBetaBound keeps the needed translates inside the box
constexpr std::size_t kNonresonanceConfigs = 10;
constexpr std::size_t kBetasPerConfig = 200;
constexpr std::size_t kOracleConfigs = 100;
constexpr std::size_t kInvariantConfigs = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

IntVec v(std::initializer_list<long> xs) { return to_int_vec(std::vector<long>(xs)); }

PointConfiguration make(std::size_t rows, const std::vector<IntVec>& cols) {
  return PointConfiguration(IntMatrix::from_columns(rows, cols));
}

PointConfiguration planar_five() {
  return make(3, {v({1, 0, 0}), v({1, 3, 0}), v({1, 0, 3}), v({1, 1, 0}), v({1, 0, 2})});
}

PointConfiguration spatial_seven() {
  return make(4, {v({1, 0, 1, 0}), v({1, 1, 2, 0}), v({1, 2, 0, 0}), v({1, 1, 1, 0}), v({1, 2, 0, 2}),
                  v({1, 1, 0, 3}), v({1, 0, 0, 4})});
}

PointConfiguration curve(const std::vector<long>& exps) {
  std::vector<IntVec> cols;
  for (long e : exps) cols.push_back(v({1, e}));
  return make(2, cols);
}

std::set<IntVec> point_set(const PointConfiguration& a) {
  auto p = a.points();
  return {p.begin(), p.end()};
}

PointConfiguration random_config(std::mt19937& rng, std::size_t d, std::size_t n, int box) {
  std::uniform_int_distribution<int> dist(0, box);
  for (;;) {
    std::vector<IntVec> pts;
    while (pts.size() < n) {
      IntVec p(d + 1);
      p[0] = 1;
      for (std::size_t i = 1; i <= d; ++i) p[i] = dist(rng);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    auto a = make(d + 1, pts);
    if (a.dim() == d) return a;
  }
}

const Face& face_on(const PointConfiguration& a, const IndexSet& idx) {
  auto f = a.faces().find(idx);
  if (!f) throw Error("expected face not found");
  return a.faces().faces[*f];
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

Outcome criterion1() {
  const auto a = planar_five();
  auto ap = point_set(a), as = point_set(a);
  ap.insert({v({1, 2, 0}), v({1, 0, 1})});
  as = ap;
  as.insert(v({1, 1, 1}));
  const bool p = point_set(saturate(a, SaturationMode::P).result) == ap;
  const bool s = point_set(saturate(a, SaturationMode::S).result) == as;
  const std::size_t full = saturate(a, SaturationMode::Full).result.size();
  std::ostringstream os;
  os << std::boolalpha;
  os << "A^p " << (p ? "exact" : "wrong") << ", A^s " << (s ? "exact" : "wrong") << ", full size " << full;
  return {p && s && full == 10, os.str()};
}

Outcome criterion2() {
  const auto a = spatial_seven();
  const auto as = saturate(a, SaturationMode::S).result;
  auto k = as.find(v({1, 1, 1, 1}));
  if (!k) return {false, "A^s lacks (1,1,1,1)"};
  const bool redundant = is_lattice_redundant(as, *k).redundant;
  std::size_t rejected = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!check_aux_point(as, *k, j).accepted) ++rejected;
  bool volumes = true, vertices = true;
  for (const IndexSet& idx : {IndexSet{0, 1, 2, 3}, IndexSet{4, 5, 6}}) {
    const Face& fa = face_on(a, idx);
    const Face& fs = face_on(as, idx);
    if (!(subdiagram_volume(a, fa) > subdiagram_volume(as, fs))) volumes = false;
    auto fq = face_quotient(as, fs);
    std::vector<IntVec> pts;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < fq.off_face.size(); ++i) {
      if (fq.off_face[i] == *k) pos = pts.size();
      pts.push_back(fq.images[i]);
    }
    auto hull = convex_hull(pts);
    bool is_vertex = false;
    for (std::size_t vi : hull.vertices)
      if (hull.points[vi] == pts[pos]) is_vertex = true;
    if (!is_vertex) vertices = false;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << "redundant " << redundant << ", rejected " << rejected << "/" << a.size() << ", volumes drop " << volumes
     << ", projected vertex " << vertices;
  return {redundant && rejected == a.size() && volumes && vertices, os.str()};
}

Outcome criterion3() {
  std::size_t ok = 0, total = 0;
  bool sparse = false;
  for (const auto& s : std::vector<std::vector<long>>{{0, 1}, {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}}) {
    auto r = verify_factorization(monomial_curve(s));
    ++total;
    if (r.holds()) ++ok;
    if (s == std::vector<long>{0, 1, 3})
      sparse = r.coordinate_exponents.front() == 1 && r.coordinate_exponents.back() == 2;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << ok << "/" << total << " curves factor as predicted, sparse cubic vertex exponents (1,2) " << sparse;
  return {ok == total && sparse, os.str()};
}

Outcome criterion4() {
  std::size_t ok = 0, total = 0;
  for (const auto& s : curves_up_to(4))
    for (const auto& rc : check_restriction_divisibility(monomial_curve(s))) {
      ++total;
      if (rc.divides) ++ok;
    }
  std::ostringstream os;
  os << std::boolalpha;
  os << ok << "/" << total << " restrictions divide";
  return {total > 0 && ok == total, os.str()};
}

Outcome criterion5() {
  std::size_t ok = 0, total = 0;
  for (long d = 1; d <= 4; ++d) {
    std::vector<long> e(static_cast<std::size_t>(d) + 1);
    std::iota(e.begin(), e.end(), 0L);
    auto a = curve(e);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.is_vertex(i) || !(a.without(i).lattice() == a.lattice())) continue;
      ++total;
      if (check_facet_restriction(a, i).holds) ++ok;
    }
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << ok << "/" << total << " valid pairs";
  return {total > 0 && ok == total, os.str()};
}

Outcome criterion6() {
  const auto ak = curve({0, 1, 3}), a = curve({0, 1, 2, 3});
  const RatVec beta{Rat(0), Rat(1, 2)};
  const std::size_t order = 6;
  std::size_t ok = 0, total = 0, checked = 0;
  for (const IndexSet& cell : {IndexSet{0, 1}, IndexSet{1, 2}, IndexSet{0, 2}}) {
    auto psi = gamma_series(ak, beta, cell, order);
    auto ext = extend_solution(psi, a, 2, order);
    auto rep = annihilation_check(ext.series);
    auto back = restrict_to_zero(ext.series, 2);
    ++total;
    checked += rep.euler_checked + rep.box_checked;
    if (rep.passed() && back.terms == psi.terms && back.known == psi.known) ++ok;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << ok << "/" << total << " cells, " << checked << " coefficients checked";
  return {ok == total, os.str()};
}

// Resonance by search: some facet F and integer gamma in the box with beta - gamma in span F.
bool brute_force_resonant(const PointConfiguration& a, const RatVec& beta) {
  const std::size_t n = a.ambient_dim();
  for (const auto& f : a.polytope().facets) {
    std::vector<RatVec> cols;
    for (std::size_t j : f.indices) cols.push_back(to_rational(a.point(j)));
    auto normals = null_space(RatMatrix::from_rows(n, cols));
    std::vector<IntVec> hs;
    std::vector<Rat> targets;
    for (const auto& h : normals) {
      hs.push_back(clear_denominators(h));
      targets.push_back(dot(to_rational(hs.back()), beta));
    }
    bool integral = std::all_of(targets.begin(), targets.end(), [](const Rat& x) { return is_integer(x); });
    if (!integral) continue;
    std::vector<long> g(n, -kBox);
    for (;;) {
      bool hit = true;
      for (std::size_t r = 0; r < hs.size() && hit; ++r) {
        Int s = 0;
        for (std::size_t i = 0; i < n; ++i) s += hs[r][i] * g[i];
        if (Rat(s) != targets[r]) hit = false;
      }
      if (hit) return true;
      std::size_t i = 0;
      while (i < n && g[i] == kBox) g[i++] = -kBox;
      if (i == n) break;
      ++g[i];
    }
  }
  return false;
}

Outcome criterion7() {
  std::mt19937 rng(7001);
  std::uniform_int_distribution<long> num(-12, 12), den(1, 6), wide_den(2, 9), small(-2, 2);
  std::size_t agree = 0, total = 0, resonant = 0;
  for (std::size_t c = 0; c < kNonresonanceConfigs; ++c) {
    const std::size_t d = 1 + c % 2;
    auto a = random_config(rng, d, d + 2 + c % 2, d == 1 ? 6 : 3);
    const auto& facets = a.polytope().facets;
    for (std::size_t t = 0; t < kBetasPerConfig; ++t) {
      RatVec beta(a.ambient_dim());
      auto bounded = [&] {
        return std::all_of(beta.begin(), beta.end(),
                           [](const Rat& x) { return boost::multiprecision::abs(x) <= kBetaBound; });
      };
      do {
        if (t % 2 == 0) {
          for (auto& x : beta) x = Rat(num(rng), wide_den(rng));
        } else {
          const auto& f = facets[t / 2 % facets.size()];
          for (auto& x : beta) x = small(rng);
          for (std::size_t j : f.indices) beta = add(beta, scale(to_rational(a.point(j)), Rat(small(rng), den(rng))));
        }
      } while (!bounded());
      const bool oracle = brute_force_resonant(a, beta);
      const bool fast = !is_nonresonant(a, beta);
      ++total;
      if (oracle == fast) ++agree;
      if (oracle) ++resonant;
    }
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << agree << "/" << total << " agree (" << resonant << " resonant)";
  return {agree == total, os.str()};
}

Outcome criterion8() {
  std::mt19937 rng(8001);
  std::size_t configs = 0, faces = 0, agree = 0;
  while (configs < kOracleConfigs) {
    const std::size_t d = 1 + configs % 3;
    auto a = random_config(rng, d, d + 2 + configs % 3, d == 1 ? 9 : 3);
    bool any = false;
    for (const auto& f : a.faces().faces) {
      if (face_quotient(a, f).quotient.quotient_rank > 2) continue;
      any = true;
      ++faces;
      if (subdiagram_volume(a, f) == subdiagram_volume_oracle(a, f)) ++agree;
    }
    if (any) ++configs;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << agree << "/" << faces << " faces agree over " << configs << " configurations";
  return {agree == faces, os.str()};
}

Outcome criterion9() {
  const RatVec beta{Rat(1, 5), Rat(1, 3)};
  auto n = numeric_monodromy(3, beta);
  double worst = 0;
  for (const auto& c : compare_invariants(n, beukers_generators(3, beta))) worst = std::max(worst, c.error);
  const CMatrix& t = n.matrix(Loop::Trivial);
  const double id = (t - CMatrix::Identity(t.rows(), t.cols())).cwiseAbs().maxCoeff();
  char buf[160];
  std::snprintf(buf, sizeof buf, "max char-poly deviation %.2e (tol %.0e), trivial loop %.2e (tol %.0e)", worst,
                kInvariantTolerance, id, kIdentityTolerance);
  return {worst < kInvariantTolerance && id < kIdentityTolerance, buf};
}

Outcome criterion10() {
  std::mt19937 rng(10001);
  std::size_t idem = 0, replay = 0, gkz = 0, volume = 0, failures = 0;
  for (std::size_t c = 0; c < kInvariantConfigs; ++c) {
    const std::size_t d = 1 + c % 3;
    auto a = random_config(rng, d, d + 2 + c % 3, d == 1 ? 8 : d == 2 ? 3 : 2);
    bool ok = true;
    for (auto m : {SaturationMode::P, SaturationMode::S, SaturationMode::Full})
      ok = ok && saturate(saturate(a, m).result, m).added_points.empty();
    idem += ok;
    failures += !ok;

    ok = true;
    for (auto m : {SaturationMode::P, SaturationMode::S}) {
      auto chain = reduction_chain(a, m);
      PointConfiguration cur = a;
      for (const auto& step : chain.steps) {
        cur = cur.with_point(step.added);
        auto w = cur.find(step.witness);
        ok = ok && w && check_aux_point(cur, cur.size() - 1, *w).accepted;
      }
      ok = ok && point_set(cur) == point_set(chain.end);
      if (chain.complete) ok = ok && point_set(chain.end) == point_set(chain.target);
    }
    replay += ok;
    failures += !ok;

    ok = true;
    const Rat vol = normalized_volume(a.polytope(), a.polytope().affine);
    auto sp = secondary_polytope(a);
    for (const auto& g : sp.gkz) {
      Int s = 0;
      for (const auto& x : g) s += x;
      ok = ok && Rat(s) == Rat(static_cast<long>(d + 1)) * vol;
    }
    gkz += ok;
    failures += !ok;

    ok = true;
    const Int rv = rank_volume(a);
    for (auto m : {SaturationMode::P, SaturationMode::S, SaturationMode::Full})
      ok = ok && rank_volume(saturate(a, m).result) == rv;
    volume += ok;
    failures += !ok;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << "idempotence " << idem << ", chain replay " << replay << ", GKZ sums " << gkz << ", rank volume " << volume
     << " of " << kInvariantConfigs;
  return {failures == 0 && kInvariantConfigs >= 100, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "planar saturations", 1, criterion1},
      {2, "redundant point without auxiliary certificate", 5, criterion2},
      {3, "principal determinants vs multiplicities and secondary polytopes", 10, criterion3},
      {4, "restrictions of principal determinants", 30, criterion4},
      {5, "secondary faces from deleted points", 30, criterion5},
      {6, "extension across a removed column", 10, criterion6},
      {7, "nonresonance vs brute force", 60, criterion7},
      {8, "subdiagram volume vs oracle", 60, criterion8},
      {9, "numeric monodromy vs printed generators", 120, criterion9},
      {10, "randomized invariants", 0, criterion10},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s == 0 || s < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    if (c.limit_s == 0) std::snprintf(timing, sizeof timing, "%.2fs", s);
    else std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", s, c.limit_s);
    std::printf("criterion %2d %s  [%s] %s: %s%s\n", c.id, pass ? "PASS" : "FAIL", timing, c.name, o.detail.c_str(),
                in_time ? "" : " (time limit exceeded)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
