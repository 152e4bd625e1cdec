// Command-line front end: every command emits a table as CSV (default) or JSON.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cnoidal/asymptotics.hpp"
#include "cnoidal/band.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/orbit.hpp"
#include "cnoidal/shoaling.hpp"

using namespace cnoidal;
using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool record = false;  // a single result: JSON object instead of array
  json extra;           // JSON-only fields next to the rows
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string csv_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

json json_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);  // JSON has no infinities
  }
  if (auto i = std::get_if<long long>(&c)) return *i;
  if (auto b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

void write(const Table& t, bool as_json, std::ostream& os) {
  if (!as_json) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
    return;
  }
  auto obj = [&](const std::vector<Cell>& r) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = json_cell(r[i]);
    return o;
  };
  json out;
  if (t.record && t.rows.size() == 1) {
    out = obj(t.rows[0]);
  } else {
    out = json::array();
    for (const auto& r : t.rows) out.push_back(obj(r));
  }
  if (!t.extra.is_null()) {
    json wrapped = t.extra;
    wrapped["rows"] = out;
    out = wrapped;
  }
  os << out.dump(2) << "\n";
}

// Grid of n points from a to b inclusive.
std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

std::vector<Cell> classify_cells(double m, double V) {
  const double tr = monodromy_trace(m, V);
  const auto rep = uniform_representative(m, V);
  const auto oc = classify(m, V);
  return {m, V, tr, rep.value.real(), rep.value.imag(), rep.has_rest_frame, to_string(oc.kind),
          static_cast<long long>(oc.winding)};
}

// A number with an optional unit tag that must match one of `units`.
double quantity(const std::string& text, std::initializer_list<const char*> units, const char* what) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc()) throw DomainError(std::string("cannot parse ") + what + ": '" + text + "'");
  std::string tag(r.ptr, e);
  while (!tag.empty() && tag.front() == ' ') tag.erase(tag.begin());
  if (tag.empty()) return v;
  for (const char* u : units)
    if (tag == u) return v;
  std::string expected;
  for (const char* u : units) expected += std::string(expected.empty() ? "" : " or ") + u;
  throw DomainError(std::string(what) + " has unit '" + tag + "', expected " + expected);
}

struct Bathymetry {
  std::vector<double> X, h;
};

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  return s;
}

// Two-column CSV with header "X,h", optionally tagged "X[m],h[m]".
Bathymetry read_bathymetry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open bathymetry file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty bathymetry file");
  std::stringstream hs(line);
  std::string c1, c2;
  std::getline(hs, c1, ',');
  std::getline(hs, c2, ',');
  c1 = trim(c1);
  c2 = trim(c2);
  if (!(c1 == "X" || c1 == "X[m]") || !(c2 == "h" || c2 == "h[m]"))
    throw DomainError("bathymetry header must be 'X,h' (lengths in m, optional [m] tags)");
  Bathymetry b;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ls(line);
    std::string a, d;
    std::getline(ls, a, ',');
    std::getline(ls, d, ',');
    b.X.push_back(quantity(trim(a), {"m"}, "X"));
    b.h.push_back(quantity(trim(d), {"m"}, "h"));
  }
  return b;
}

Table cmd_classify(double m, double V) {
  Table t{{"m", "V", "trace", "kc_real", "kc_imag", "has_rest_frame", "class", "winding"}, {}, true, {}};
  t.rows.push_back(classify_cells(m, V));
  return t;
}

Table cmd_diagram(double m0, double m1, int nm, double V0, double V1, int nV) {
  if (nm < 0 || nV < 0 || nm > 4096 || nV > 4096) throw DomainError("grid must be 0..4096 per axis");
  Table t{{"m", "V", "trace", "kc_real", "kc_imag", "has_rest_frame", "class", "winding"}, {}, false, {}};
  for (double m : linspace(m0, m1, nm))
    for (double V : linspace(V0, V1, nV)) t.rows.push_back(classify_cells(m, V));
  return t;
}

Table cmd_level_curve(double kc, const std::string& side, double m0, double m1, int n) {
  WedgeSide s;
  if (side == "below_wedge") s = WedgeSide::below_wedge;
  else if (side == "above_wedge") s = WedgeSide::above_wedge;
  else throw DomainError("side must be below_wedge or above_wedge");
  Table t{{"m", "V"}, {}, false, {}};
  for (double m : linspace(m0, m1, n)) t.rows.push_back({m, level_curve(kc, m, s)});
  return t;
}

Table cmd_band(double m, int N, double E0, double E1, int n, bool gaps) {
  if (gaps) {
    Table t{{"lo", "hi"}, {}, false, {}};
    for (const auto& g : numeric_band_gaps(N, m, E1)) t.rows.push_back({g.lo, g.hi});
    return t;
  }
  Table t{{"E", "kappa_ell", "in_gap"}, {}, false, {}};
  for (double E : linspace(E0, E1, n)) {
    if (N == 1) {
      const auto b = crystal_momentum(E, m);
      t.rows.push_back({E, b.kappa_ell, b.in_gap});
    } else {
      const double half = 0.5 * lame_profile_trace(N, m, E);
      const bool gap = std::fabs(half) > 1.0;
      t.rows.push_back({E, gap ? std::nan("") : std::acos(half), gap});
    }
  }
  return t;
}

Table cmd_shoal(const std::string& path, double T, double F, double rho, double g) {
  const auto b = read_bathymetry(path);
  const auto p = shoaling_path(b.h, T, F, rho, g);
  Table t{{"X", "h", "lambda", "m", "V", "kc_real", "kc_imag", "class", "winding", "in_wedge", "wedge_entry",
           "epsilon", "speed"},
          {}, false, {}};
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const auto& q = p.points[i];
    t.rows.push_back({b.X[i], q.h, q.lambda, q.m, q.V, q.kc.real(), q.kc.imag(), to_string(q.orbit.kind),
                      static_cast<long long>(q.orbit.winding), q.in_wedge, p.wedge_entry && *p.wedge_entry == i,
                      q.epsilon, q.speed});
  }
  t.extra = json::object();
  t.extra["critical_m"] = critical_m();
  t.extra["critical_depth"] = critical_depth(T, F, rho, g);
  t.extra["crossing_depth"] = p.crossing_depth ? json(*p.crossing_depth) : json(nullptr);
  return t;
}

Table cmd_check_asymptotics() {
  Table t{{"name", "parameter", "s", "error_s", "s_half", "error_half", "ratio", "lo", "hi", "pass"},
          {}, false, {}};
  bool all = true;
  for (const auto& c : convergence_report()) {
    for (std::size_t k = 0; k < c.ratios.size(); ++k) {
      const bool ok = c.ratios[k] >= c.lo && c.ratios[k] <= c.hi;
      t.rows.push_back({c.name, c.parameter, c.params[2 * k], c.errors[2 * k], c.params[2 * k + 1],
                        c.errors[2 * k + 1], c.ratios[k], c.lo, c.hi, ok});
    }
    all = all && c.pass;
  }
  t.extra = json::object();
  t.extra["all_pass"] = all;
  return t;
}

Table cmd_profile(double m, double V, double c, int n, double tau) {
  if (n < 1) throw DomainError("samples must be positive");
  Table t{{"x", "p"}, {}, false, {}};
  const CnoidalParams cp{m, V, c};
  for (int j = 0; j < n; ++j) {
    const double x = 2 * pi * j / n;
    t.rows.push_back({x, cnoidal_profile(cp, x, tau)});
  }
  return t;
}

Table cmd_oracle(double m, double V, double c, double tau, int steps) {
  const CnoidalParams cp{m, V, c};
  const auto p = Profile::from_function([cp](double x) { return cnoidal_profile(cp, x, 0.0); });
  const auto fl = floquet(p, c);
  const auto oc = classify(m, V);
  const auto evolved = kdv_evolve(p, c, tau, steps);
  double err = 0.0;
  const auto& s = evolved.samples();
  for (std::size_t j = 0; j < s.size(); ++j)
    err = std::max(err, std::fabs(s[j] - cnoidal_profile(cp, 2 * pi * j / s.size(), tau)));
  Table t{{"m", "V", "c", "closed_trace", "floquet_trace", "winding_closed", "winding_numeric",
           "kdv_translation_error"},
          {}, true, {}};
  t.rows.push_back({m, V, c, monodromy_trace(m, V), fl.M.trace(), static_cast<long long>(oc.winding),
                    static_cast<long long>(fl.winding), err});
  return t;
}

void error_json(const char* kind, const std::string& msg) {
  json e;
  e["error"] = kind;
  e["message"] = msg;
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Virasoro orbits of cnoidal KdV waves"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string out_path;
  app.add_flag("--json", as_json, "emit JSON instead of CSV");
  app.add_option("--out", out_path, "write to this file instead of stdout");

  Table result;
  std::function<Table()> run;

  double m = 0.5, V = 0.0, c = 1.0, kc = 0.0;
  auto* classify_cmd = app.add_subcommand("classify", "orbit class of one cnoidal wave");
  classify_cmd->add_option("--m", m, "pointedness")->required();
  classify_cmd->add_option("--V", V, "rescaled velocity")->required();
  classify_cmd->callback([&] { run = [&] { return cmd_classify(m, V); }; });

  double m0 = 0.0, m1 = 0.9, V0 = -1.5, V1 = 1.5;
  int nm = 100, nV = 100;
  auto* diagram = app.add_subcommand("diagram", "classify a grid of (m, V)");
  diagram->add_option("--m-min", m0, "grid range in m");
  diagram->add_option("--m-max", m1);
  diagram->add_option("--m-steps", nm, "grid points in m");
  diagram->add_option("--V-min", V0, "grid range in V");
  diagram->add_option("--V-max", V1);
  diagram->add_option("--V-steps", nV, "grid points in V");
  diagram->callback([&] { run = [&] { return cmd_diagram(m0, m1, nm, V0, V1, nV); }; });

  std::string side = "above_wedge";
  int samples = 100;
  auto* level = app.add_subcommand("level-curve", "V(m) along a level set of k/c");
  level->add_option("--kc", kc, "target k/c")->required();
  level->add_option("--side", side, "below_wedge or above_wedge");
  level->add_option("--m-min", m0);
  level->add_option("--m-max", m1);
  level->add_option("--samples", samples, "points along the curve");
  level->callback([&] { run = [&] { return cmd_level_curve(kc, side, m0, m1, samples); }; });

  int N = 1;
  double E0 = 0.0, E1 = 3.0;
  bool gaps = false;
  auto* band = app.add_subcommand("band", "crystal momentum of the Lame spectrum");
  band->add_option("--m", m, "pointedness")->required();
  band->add_option("--N", N, "Lame index for --gaps");
  band->add_option("--E-min", E0, "energy range");
  band->add_option("--E-max", E1);
  band->add_option("--samples", samples, "energies sampled");
  band->add_flag("--gaps", gaps, "list numerically located gaps instead");
  band->callback([&] { run = [&] { return cmd_band(m, N, E0, E1, samples, gaps); }; });

  std::string bathy, Ts = "10", Fs = "1000", rhos = "1000", gs = "9.81";
  auto* shoal = app.add_subcommand("shoal", "shoaling path over a bathymetry CSV (X,h)");
  shoal->add_option("--bathymetry", bathy, "CSV with columns X,h (metres)")->required();
  shoal->add_option("--T", Ts, "period [s]");
  shoal->add_option("--F", Fs, "energy transport [N]");
  shoal->add_option("--rho", rhos, "density [kg/m^3]");
  shoal->add_option("--g", gs, "gravity [m/s^2]");
  shoal->callback([&] {
    run = [&] {
      return cmd_shoal(bathy, quantity(Ts, {"s"}, "T"), quantity(Fs, {"N", "kg*m/s^2"}, "F"),
                       quantity(rhos, {"kg/m^3"}, "rho"), quantity(gs, {"m/s^2"}, "g"));
    };
  });

  auto* check = app.add_subcommand("check-asymptotics", "convergence orders of the limiting formulas");
  check->callback([&] { run = [] { return cmd_check_asymptotics(); }; });

  double tau = 0.0;
  int steps = 200;
  auto* profile = app.add_subcommand("profile", "sample a cnoidal profile over one period");
  profile->add_option("--m", m)->required();
  profile->add_option("--V", V)->required();
  profile->add_option("--c", c, "central charge");
  profile->add_option("--samples", samples, "points per period");
  profile->add_option("--tau", tau, "KdV time");
  profile->callback([&] { run = [&] { return cmd_profile(m, V, c, samples, tau); }; });

  double otau = 1e-4;
  auto* oracle = app.add_subcommand("oracle", "closed forms against Floquet and KdV integration");
  oracle->add_option("--m", m)->required();
  oracle->add_option("--V", V)->required();
  oracle->add_option("--c", c, "central charge");
  oracle->add_option("--tau", otau, "KdV evolution time");
  oracle->add_option("--steps", steps, "integrator steps");
  oracle->callback([&] { run = [&] { return cmd_oracle(m, V, c, otau, steps); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json("usage_error", e.what());
    return 2;
  }

  try {
    result = run();
    std::ostringstream os;
    write(result, as_json, os);
    if (out_path.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw DomainError("cannot write '" + out_path + "'");
      f << os.str();
    }
  } catch (const DomainError& e) {
    error_json("domain_error", e.what());
    return 2;
  } catch (const NumericalError& e) {
    error_json("numerical_error", e.what());
    return 3;
  } catch (const std::exception& e) {
    error_json("numerical_error", e.what());
    return 3;
  }
  return 0;
}
