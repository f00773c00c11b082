#include "gkz/cli.hpp"

#include "gkz/curves.hpp"
#include "gkz/hyper.hpp"
#include "gkz/secondary.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gkz::cli {

namespace {

using nlohmann::json;

struct Obstruction : Error {
  using Error::Error;
};

json str(const Int& x) { return to_string(x); }
json str(const Rat& x) { return to_string(x); }

json point(const IntVec& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(x.convert_to<long long>());
  return a;
}

json points(const std::vector<IntVec>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point(p));
  return a;
}

json strs(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

json strs(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

json indices(const IndexSet& s) { return json(std::vector<std::size_t>(s.begin(), s.end())); }

json complex_matrix(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json complex_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

RatVec parse_beta_list(const std::string& text) {
  RatVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw InputError("empty beta");
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rat r = parse_rational(item);
    if (!is_integer(r)) throw InputError("expected integers in '" + text + "'");
    out.push_back(boost::multiprecision::numerator(r).convert_to<long>());
  }
  return out;
}

struct Input {
  json echo;
  PointConfiguration config;
  std::optional<RatVec> beta;
};

Input parse_input(const std::string& text) {
  Input in;
  try {
    in.echo = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  const json& j = in.echo;
  if (!j.is_object()) throw InputError("input must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "matrix" && key != "labels" && key != "beta") throw InputError("unknown input key '" + key + "'");
  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
    throw InputError("'matrix' must be a nonempty list of columns");
  std::vector<IntVec> cols;
  std::size_t rows = 0;
  for (const auto& c : j["matrix"]) {
    if (!c.is_array() || c.empty()) throw InputError("each column must be a nonempty list of integers");
    IntVec col;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw InputError("matrix entries must be integers");
      col.push_back(Int(x.get<long long>()));
    }
    if (rows != 0 && col.size() != rows) throw InputError("columns have different lengths");
    rows = col.size();
    cols.push_back(std::move(col));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != cols.size())
      throw InputError("'labels' must list one string per column");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw InputError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  in.config = PointConfiguration(IntMatrix::from_columns(rows, cols), labels);
  if (j.contains("beta")) {
    if (!j["beta"].is_array()) throw InputError("'beta' must be a list");
    RatVec b;
    for (const auto& x : j["beta"]) {
      if (x.is_string()) b.push_back(parse_rational(x.get<std::string>()));
      else if (x.is_number_integer()) b.push_back(Rat(x.get<long long>()));
      else throw InputError("beta entries must be integers or \"p/q\" strings");
    }
    if (b.size() != rows) throw InputError("beta has the wrong length");
    in.beta = b;
  }
  return in;
}

long symbolic_budget() {
  const char* env = std::getenv("GKZKIT_BUDGET");
  if (!env) return kSymbolicBudget;
  try {
    std::size_t used = 0;
    long b = std::stol(env, &used);
    if (used != std::string(env).size() || b < 1) throw std::invalid_argument("budget");
    return b;
  } catch (const std::exception&) {
    throw InputError("GKZKIT_BUDGET must be a positive integer");
  }
}

std::size_t column(const PointConfiguration& a, long i, const char* what) {
  if (i < 0 || static_cast<std::size_t>(i) >= a.size()) throw InputError(std::string(what) + " is out of range");
  return static_cast<std::size_t>(i);
}

json face_json(const PointConfiguration& a, std::size_t f) {
  const Face& face = a.faces().faces[f];
  return {{"dim", face.dim}, {"points", indices(face.indices)}};
}

json faces_report(const PointConfiguration& a) {
  json faces = json::array();
  for (std::size_t f = 0; f < a.faces().faces.size(); ++f) {
    json x = face_json(a, f);
    x["normal"] = strs(a.faces().faces[f].normal);
    x["offset"] = str(a.faces().faces[f].offset);
    faces.push_back(x);
  }
  json facets = json::array();
  for (const auto& f : a.polytope().facets)
    facets.push_back({{"normal", strs(f.normal)}, {"offset", str(f.offset)}, {"points", indices(f.indices)}});
  IndexSet verts;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a.is_vertex(j)) verts.push_back(j);
  return {{"dim", a.dim()},
          {"f_vector", a.faces().f_vector()},
          {"faces", faces},
          {"facets", facets},
          {"vertices", indices(verts)}};
}

json saturate_report(const PointConfiguration& a, SaturationMode mode) {
  auto s = saturate(a, mode);
  return {{"mode", to_string(mode)},
          {"added", points(s.added_points)},
          {"matrix", points(s.result.points())},
          {"size", s.result.size()}};
}

json redundancy_json(const PointConfiguration& a, const RedundancyReport& r) {
  json faces = json::array();
  for (const auto& f : r.faces) {
    json x = face_json(a, f.face);
    x["same_lattice"] = f.equal;
    faces.push_back(x);
  }
  return {{"redundant", r.redundant}, {"is_vertex", r.is_vertex}, {"faces", faces}};
}

json mults_report(const PointConfiguration& a) {
  json rows = json::array();
  for (const auto& m : multiplicity_table(a)) {
    json x = face_json(a, m.face);
    x["index"] = str(m.index_i);
    x["subdiagram_volume"] = str(m.subvol_v);
    x["multiplicity"] = str(m.mult_m);
    rows.push_back(x);
  }
  return {{"faces", rows}};
}

json aux_json(const PointConfiguration& a, const AuxCertificate& c) {
  json g2 = json::array();
  for (const auto& f : c.gamma2) {
    json x = face_json(a, f.face);
    x["m_a"] = str(f.m_a);
    x["m_ak"] = str(f.m_ak);
    x["equal"] = f.equal;
    x["k_in_face_group"] = f.k_in_face_group;
    x["pyramid"] = f.pyramid;
    x["ok"] = f.ok;
    g2.push_back(x);
  }
  return {{"accepted", c.accepted},
          {"reason", c.reason},
          {"redundancy", redundancy_json(a, c.redundancy)},
          {"gamma1", face_json(a, c.gamma1)},
          {"k_in_closure_gamma1", c.k_in_closure_gamma1},
          {"faces_of_k_contain_a", c.faces_of_k_contain_a},
          {"gamma2", g2}};
}

json reduce_report(const PointConfiguration& a, SaturationMode mode) {
  auto chain = reduction_chain(a, mode);
  json steps = json::array();
  PointConfiguration cur = chain.start;
  for (const auto& s : chain.steps) {
    PointConfiguration next = cur.with_point(s.added);
    steps.push_back({{"added", point(s.added)},
                     {"face", face_json(next, s.face)},
                     {"witness", point(s.witness)},
                     {"accepted", s.certificate.accepted}});
    cur = next;
  }
  json r{{"mode", to_string(mode)},
         {"complete", chain.complete},
         {"steps", steps},
         {"target", points(chain.target.points())},
         {"stuck", points(chain.stuck)}};
  if (!chain.complete) throw Obstruction(r.dump());
  return r;
}

json secondary_report(const PointConfiguration& a, bool enumerate) {
  auto s = secondary_polytope(a);
  json r{{"count", s.triangulations.size()}, {"dim", s.hull.dim}, {"gkz_vectors", points(s.gkz)}};
  if (enumerate) {
    json ts = json::array();
    for (std::size_t k = 0; k < s.triangulations.size(); ++k) {
      const auto& t = s.triangulations[k];
      json cells = json::array();
      for (const auto& c : t.cells) cells.push_back(indices(c));
      ts.push_back({{"cells", cells}, {"volumes", strs(t.volumes)}, {"heights", strs(t.heights)}, {"gkz", point(s.gkz[k])}});
    }
    r["triangulations"] = ts;
  }
  return r;
}

json nonresonance_report(const PointConfiguration& a, const RatVec& beta) {
  auto r = check_nonresonance(a, beta);
  json out{{"beta", strs(beta)}, {"nonresonant", r.nonresonant}};
  if (!r.nonresonant) {
    out["facet_points"] = indices(r.facet_points);
    out["translate"] = strs(r.translate);
    json f = json::array();
    for (const auto& h : r.functionals) f.push_back(strs(h));
    out["functionals"] = f;
    throw Obstruction(out.dump());
  }
  return out;
}

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms) terms.push_back({{"exponent", strs(e)}, {"coefficient", str(c)}});
  return {{"terms", terms}, {"known", s.known.size()}};
}

json annihilation_json(const AnnihilationReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"operator", f.op}, {"exponent", strs(f.exponent)}, {"value", str(f.value)}});
  return {{"passed", r.passed()},
          {"euler_checked", r.euler_checked},
          {"box_checked", r.box_checked},
          {"boundary", r.boundary},
          {"failures", fails}};
}

IndexSet default_cell(const PointConfiguration& a) { return enumerate_regular_triangulations(a).front().cells.front(); }

json series_report(const PointConfiguration& a, const RatVec& beta, bool extend, std::optional<long> col,
                   std::size_t order, const std::string& cell_text) {
  if (!extend) {
    IndexSet cell;
    if (cell_text.empty()) cell = default_cell(a);
    else
      for (long x : parse_long_list(cell_text)) cell.push_back(column(a, x, "cell index"));
    auto s = gamma_series(a, beta, cell, order);
    auto check = annihilation_check(s);
    json r{{"cell", indices(cell)}, {"order", order}, {"series", series_json(s)}, {"annihilation", annihilation_json(check)}};
    if (!check.passed()) throw Obstruction(r.dump());
    return r;
  }
  if (!col) throw InputError("--extend needs --col");
  const std::size_t k = column(a, *col, "--col");
  PointConfiguration ak = a.without(k);
  IndexSet cell;
  if (cell_text.empty()) cell = default_cell(ak);
  else
    for (long x : parse_long_list(cell_text)) cell.push_back(column(ak, x, "cell index"));
  auto psi = gamma_series(ak, beta, cell, order);
  auto ext = extend_solution(psi, a, k, order);
  auto check = annihilation_check(ext.series);
  auto back = restrict_to_zero(ext.series, k);
  const bool restricts = back.terms == psi.terms;
  json reps = json::array();
  for (const auto& u : ext.representatives) reps.push_back(u ? json(strs(*u)) : json(nullptr));
  json r{{"column", k},
         {"cell", indices(cell)},
         {"order", order},
         {"input_series", series_json(psi)},
         {"extension", series_json(ext.series)},
         {"representatives", reps},
         {"annihilation", annihilation_json(check)},
         {"restriction_matches", restricts}};
  if (!check.passed() || !restricts) throw Obstruction(r.dump());
  return r;
}

json poly_json(const Poly& p, const std::vector<std::string>& names) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"coefficient", str(c)}});
  return {{"text", p.to_string(names)}, {"terms", terms}};
}

json curve_report(const std::string& what, long delta, const std::string& exps, const std::string& beta_text,
                  std::size_t order) {
  if (delta < 1) throw InputError("--delta must be positive");
  std::vector<long> support;
  if (exps.empty())
    for (long k = 0; k <= delta; ++k) support.push_back(k);
  else support = parse_long_list(exps);
  if (support.empty() || support.back() != delta) throw InputError("exponents must end at --delta");
  const long budget = symbolic_budget();
  json r{{"delta", delta}};
  if (what == "edet" || what == "disc" || what == "verify") {
    auto c = monomial_curve(support);
    r["exponents"] = support;
    const auto names = c.variables();
    if (what == "edet") r["principal_determinant"] = poly_json(principal_determinant_curve(c, budget), names);
    if (what == "disc") r["discriminant"] = poly_json(discriminant_curve(c, budget), names);
    if (what == "verify") {
      auto f = verify_factorization(c, budget);
      r["principal_determinant"] = poly_json(f.principal, names);
      r["discriminant"] = poly_json(f.discriminant, names);
      r["unit"] = str(f.unit);
      r["coordinate_exponents"] = f.coordinate_exponents;
      r["discriminant_exponent"] = f.discriminant_exponent;
      r["expected_coordinate"] = strs(f.expected_coordinate);
      r["expected_discriminant"] = str(f.expected_discriminant);
      r["newton_vertices"] = points(f.newton_vertices);
      r["secondary_vertices"] = points(f.secondary_vertices);
      r["exponents_match"] = f.exponents_match;
      r["newton_matches"] = f.newton_matches;
      if (!f.holds()) throw Obstruction(r.dump());
    }
    return r;
  }
  if (beta_text.empty()) throw InputError("--beta is required");
  const RatVec beta = parse_beta_list(beta_text);
  r["beta"] = strs(beta);
  if (what == "ode") {
    auto ode = ode_from_system(delta, beta);
    auto cert = certify_ode(ode, order);
    json dform = json::array();
    for (const auto& p : ode.d_form) dform.push_back(strs(p));
    json series = json::array();
    for (const auto& s : cert.series)
      series.push_back({{"exponent", str(s.exponent)}, {"coefficients", strs(s.coefficients)}, {"residuals", strs(s.residuals)}});
    r["c"] = str(ode.c);
    r["theta_lower"] = strs(ode.lower);
    r["theta_upper"] = strs(ode.upper);
    r["d_form"] = dform;
    r["singular_point"] = str(ode.singular_point);
    r["exponents_at_zero"] = strs(ode.exponents_at_zero);
    r["certificate"] = {{"t_order", order}, {"independent", cert.independent}, {"passed", cert.passed()}, {"series", series}};
    if (!cert.passed()) throw Obstruction(r.dump());
    return r;
  }
  if (what == "monodromy") {
    constexpr double kTolerance = 1e-6;
    auto n = numeric_monodromy(delta, beta);
    json loops = json::array();
    for (const auto& l : n.loops)
      loops.push_back({{"loop", to_string(l.loop)},
                       {"matrix", complex_matrix(l.matrix)},
                       {"steps", l.steps},
                       {"charpoly", complex_list(characteristic_polynomial(l.matrix))}});
    r["basepoint"] = {n.basepoint.real(), n.basepoint.imag()};
    r["loops"] = loops;
    r["tolerance"] = kTolerance;
    if (delta == 3) {
      auto cmp = compare_invariants(n, beukers_generators(3, beta));
      json cs = json::array();
      bool ok = true;
      for (const auto& c : cmp) {
        cs.push_back({{"name", c.name}, {"numeric", complex_list(c.numeric)}, {"algebraic", complex_list(c.algebraic)}, {"error", c.error}});
        ok = ok && c.error < kTolerance;
      }
      r["comparisons"] = cs;
      r["matches"] = ok;
      if (!ok) throw Obstruction(r.dump());
    }
    return r;
  }
  throw InputError("unknown curve action '" + what + "'");
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunResult run(const std::vector<std::string>& args, std::istream& stdin_stream) {
  CLI::App app{"Combinatorics and series of A-hypergeometric systems", "gkzkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string input_path;
  app.add_option("--input", input_path, "configuration JSON (default: stdin)");

  std::string mode = "s", cell, beta_text, exps, action;
  long col = -1, k = -1, aux = -1, delta = 0;
  std::size_t order = 6;
  bool enumerate = false, extend = false;

  auto* faces = app.add_subcommand("faces", "face lattice of conv(A)");
  auto* sat = app.add_subcommand("saturate", "saturations of A");
  sat->add_option("--mode", mode)->check(CLI::IsMember({"s", "p", "full"}));
  auto* red = app.add_subcommand("redundant", "lattice redundancy of a column");
  red->add_option("--col", col)->required();
  auto* mults = app.add_subcommand("mults", "index, subdiagram volume and multiplicity per face");
  auto* auxc = app.add_subcommand("aux-check", "auxiliary point certificate");
  auxc->add_option("--k", k)->required();
  auxc->add_option("--a", aux)->required();
  auto* reduce = app.add_subcommand("reduce", "chain of certified point additions");
  reduce->add_option("--mode", mode)->check(CLI::IsMember({"s", "p"}));
  auto* sec = app.add_subcommand("secondary", "regular triangulations and GKZ vectors");
  sec->add_flag("--enumerate", enumerate);
  auto* nonres = app.add_subcommand("nonresonant", "nonresonance of beta");
  nonres->add_option("--beta", beta_text);
  auto* series = app.add_subcommand("series", "truncated Gamma-series");
  series->add_flag("--extend", extend);
  series->add_option("--col", col);
  series->add_option("--order", order);
  series->add_option("--cell", cell, "comma separated column indices");
  series->add_option("--beta", beta_text);
  auto* curve = app.add_subcommand("curve", "monomial curves");
  curve->add_option("action", action)->required()->check(CLI::IsMember({"edet", "disc", "verify", "ode", "monodromy"}));
  curve->add_option("--delta", delta)->required();
  curve->add_option("--beta", beta_text);
  curve->add_option("--exponents", exps);
  curve->add_option("--order", order);

  RunResult res;
  json report;
  std::string command;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    command = app.get_subcommands().front()->get_name();
    report["command"] = command;
    report["version"] = kVersion;

    auto load = [&]() {
      std::string text;
      if (input_path.empty()) text = read_all(stdin_stream);
      else {
        std::ifstream f(input_path);
        if (!f) throw InputError("cannot open " + input_path);
        text = read_all(f);
      }
      Input in = parse_input(text);
      report["input"] = in.echo;
      return in;
    };
    auto beta_of = [&](const Input& in) {
      if (!beta_text.empty()) {
        RatVec b = parse_beta_list(beta_text);
        if (b.size() != in.config.ambient_dim()) throw InputError("beta has the wrong length");
        return b;
      }
      if (!in.beta) throw InputError("beta is required (--beta or the input's \"beta\")");
      return *in.beta;
    };

    json result;
    if (curve->parsed()) {
      report["input"] = nullptr;
      result = curve_report(action, delta, exps, beta_text, order);
    } else {
      Input in = load();
      const PointConfiguration& a = in.config;
      if (faces->parsed()) result = faces_report(a);
      else if (sat->parsed()) result = saturate_report(a, parse_saturation_mode(mode));
      else if (red->parsed()) {
        const std::size_t i = column(a, col, "--col");
        result = redundancy_json(a, is_lattice_redundant(a, i));
        result["column"] = i;
        if (!result["redundant"].get<bool>()) throw Obstruction(result.dump());
      } else if (mults->parsed()) result = mults_report(a);
      else if (auxc->parsed()) {
        const std::size_t ki = column(a, k, "--k"), ai = column(a, aux, "--a");
        result = aux_json(a, check_aux_point(a, ki, ai));
        result["k"] = ki;
        result["a"] = ai;
        if (!result["accepted"].get<bool>()) throw Obstruction(result.dump());
      } else if (reduce->parsed()) result = reduce_report(a, parse_saturation_mode(mode));
      else if (sec->parsed()) result = secondary_report(a, enumerate);
      else if (nonres->parsed()) result = nonresonance_report(a, beta_of(in));
      else if (series->parsed())
        result = series_report(a, beta_of(in), extend, col >= 0 ? std::optional<long>(col) : std::nullopt, order, cell);
    }
    report["status"] = "ok";
    report["result"] = result;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help or --version
      std::ostringstream out, err;
      app.exit(e, out, err);
      res.output = out.str();
      return res;
    }
    res.exit_code = kInputError;
    res.diagnostics = e.what();
    report["status"] = "input_error";
    report["message"] = e.what();
  } catch (const Obstruction& e) {
    res.exit_code = kObstruction;
    report["status"] = "obstruction";
    report["result"] = json::parse(e.what());
  } catch (const InputError& e) {
    res.exit_code = kInputError;
    res.diagnostics = e.what();
    report["status"] = "input_error";
    report["message"] = e.what();
  } catch (const BudgetError& e) {
    res.exit_code = kBudgetExceeded;
    res.diagnostics = e.what();
    report["status"] = "budget_exceeded";
    report["message"] = e.what();
  } catch (const Error& e) {
    res.exit_code = kObstruction;
    res.diagnostics = e.what();
    report["status"] = "obstruction";
    report["message"] = e.what();
  }
  report["version"] = kVersion;
  if (!command.empty()) report["command"] = command;
  res.output = report.dump(2) + "\n";
  return res;
}

}  // namespace gkz::cli
