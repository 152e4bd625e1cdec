#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cnoidal/asymptotics.hpp"
#include "doctest.h"

#ifndef CNOIDAL_CLI
#error "CNOIDAL_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CNOIDAL_CLI) + " " + args + " 2>/tmp/cnoidal_cli_stderr";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string last_stderr() {
  std::ifstream f("/tmp/cnoidal_cli_stderr");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

using Row = std::map<std::string, std::string>;

std::vector<Row> csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  {
    std::istringstream h(line);
    std::string c;
    while (std::getline(h, c, ',')) cols.push_back(c);
  }
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::istringstream l(line);
    std::string c;
    Row r;
    for (const auto& name : cols) {
      std::getline(l, c, ',');
      r[name] = c;
    }
    rows.push_back(r);
  }
  return rows;
}

double num(const Row& r, const std::string& k) { return std::stod(r.at(k)); }

}  // namespace

TEST_CASE("classify command") {
  auto r = run("classify --m 0.5 --V -0.2");
  CHECK(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["class"] == "Hyperbolic");
  CHECK(rows[0]["winding"] == "1");
  CHECK(rows[0]["has_rest_frame"] == "false");

  rows = csv(run("classify --m 0.5 --V 0.5").out);
  CHECK(rows[0]["class"] == "Parabolic");
  CHECK(num(rows[0], "kc_real") == 0.0);

  r = run("classify --m 2 --V 0");
  CHECK(r.code == 2);
  CHECK(last_stderr().find("\"domain_error\"") != std::string::npos);

  r = run("classify --m 0.5 --V 0.5 --json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"class\": \"Parabolic\"") != std::string::npos);
}

TEST_CASE("diagram command") {
  const auto a = run("diagram --m-min 0 --m-max 0.9 --m-steps 100 --V-min -1.5 --V-max 1.5 --V-steps 100");
  CHECK(a.code == 0);
  const auto rows = csv(a.out);
  REQUIRE(rows.size() == 10000);
  for (const auto& r : rows) {
    const bool wedge = r.at("has_rest_frame") == "false";
    CHECK(wedge == (num(r, "trace") < -2.0));
  }
  // row-major over (m, V)
  CHECK(num(rows[1], "m") == num(rows[0], "m"));
  CHECK(num(rows[100], "m") > num(rows[0], "m"));
  // byte-identical reruns
  CHECK(run("diagram --m-min 0 --m-max 0.9 --m-steps 100 --V-min -1.5 --V-max 1.5 --V-steps 100").out == a.out);

  auto fraction = [](double mmax) {
    const auto rs = csv(run("diagram --m-min 0 --m-max " + std::to_string(mmax) +
                            " --m-steps 40 --V-min -1.5 --V-max 1.5 --V-steps 40")
                            .out);
    int n = 0;
    for (const auto& r : rs) n += r.at("has_rest_frame") == "false";
    return double(n) / rs.size();
  };
  CHECK(fraction(0.9) > fraction(0.5));
  CHECK(fraction(0.5) > fraction(0.2));

  const auto empty = run("diagram --m-steps 0");
  CHECK(empty.code == 0);
  CHECK(empty.out == "m,V,trace,kc_real,kc_imag,has_rest_frame,class,winding\n");
}

TEST_CASE("level-curve command") {
  auto rows = csv(run("level-curve --kc -0.041666666666666667 --side above_wedge --m-min 0.1 --m-max 0.9 --samples 9").out);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) CHECK(std::fabs(num(r, "V") - (2 * num(r, "m") - 1) / 3) < 1e-12);
  rows = csv(run("level-curve --kc 0 --m-min 0.1 --m-max 0.9 --samples 5").out);
  for (const auto& r : rows) CHECK(std::fabs(num(r, "V") - (2 - num(r, "m")) / 3) < 1e-10);
  rows = csv(run("level-curve --kc 0.05 --m-min 0.9999998 --m-max 0.9999999 --samples 2").out);
  REQUIRE(rows.size() == 2);
  const double slope = (num(rows[0], "V") - num(rows[1], "V")) / (num(rows[1], "m") - num(rows[0], "m"));
  const double predicted = (cnoidal::V_near_m1(0.05, 0.5).value - 1.0 / 3) / 0.5;
  CHECK(std::fabs(slope - predicted) < 1e-3);
  CHECK(run("level-curve --kc 0.1 --side below_wedge").code == 2);
}

TEST_CASE("oracle command") {
  auto r = csv(run("oracle --m 0.5 --V -0.2 --c 1").out)[0];
  CHECK(std::fabs(num(r, "closed_trace") - num(r, "floquet_trace")) < 1e-6);
  CHECK(r["winding_closed"] == "1");
  CHECK(r["winding_numeric"] == "1");
  r = csv(run("oracle --m 0.5 --V 1.0 --c -992.20085376799845").out)[0];
  CHECK(r["winding_closed"] == "0");
  CHECK(r["winding_numeric"] == "0");
  r = csv(run("oracle --m 0.5 --V 0.5 --c 1").out)[0];
  CHECK(std::fabs(num(r, "floquet_trace") - 2) < 1e-6);
  CHECK(num(r, "kdv_translation_error") < 1e-6);
}

TEST_CASE("band, profile, check-asymptotics and shoal commands") {
  auto rows = csv(run("band --m 0.6 --E-min 0.7 --E-max 1.8 --samples 12").out);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    const double E = num(r, "E");
    CHECK((r.at("in_gap") == "true") == (E > 1.0 && E < 1.6));
  }
  rows = csv(run("band --m 0.6 --E-max 3 --gaps").out);
  REQUIRE(rows.size() == 1);
  CHECK(std::fabs(num(rows[0], "lo") - 1.0) < 1e-4);
  CHECK(run("band --m 0.05 --N 3 --E-max 3 --gaps").code == 3);
  CHECK(last_stderr().find("\"numerical_error\"") != std::string::npos);

  rows = csv(run("profile --m 0.5 --V 0.1 --c 2 --samples 64").out);
  CHECK(rows.size() == 64);

  const auto ca = run("check-asymptotics --json");
  CHECK(ca.code == 0);
  CHECK(ca.out.find("\"all_pass\": true") != std::string::npos);

  {
    std::ofstream f("/tmp/cnoidal_cli_bathy.csv");
    f << "X[m],h[m]\n0,8\n100,6\n200,4\n300,3\n400,2.5\n500,2\n";
  }
  auto s = run("shoal --bathymetry /tmp/cnoidal_cli_bathy.csv --T 10s --F 1000N --rho 1000kg/m^3 --g 9.81");
  CHECK(s.code == 0);
  rows = csv(s.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[5]["wedge_entry"] == "true");
  CHECK(rows[4]["in_wedge"] == "false");
  CHECK(run("shoal --bathymetry /tmp/cnoidal_cli_bathy.csv --T 10m").code == 2);

  CHECK(run("profile --m 0.5 --V 0.1 --samples 8 --out /tmp/cnoidal_cli_out.csv").out.empty());
  std::ifstream f("/tmp/cnoidal_cli_out.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,p");
}
