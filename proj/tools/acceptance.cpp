#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hsym/cli.hpp"

using namespace hsym;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Line {
  bool pass = true;
  std::string note;
  void need(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + why;
    }
  }
};

std::string worst(const SuiteResult& r) {
  double ratio = 0;
  const CheckStat* w = nullptr;
  for (const CheckStat& c : r.checks)
    if (c.tol > 0 && c.max / c.tol >= ratio) {
      ratio = c.max / c.tol;
      w = &c;
    }
  char buf[200];
  if (!w) return "";
  std::snprintf(buf, sizeof buf, "worst %s %.2e (tol %.0e)", w->name.c_str(), w->max, w->tol);
  return buf;
}

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::istringstream in;
  std::ostringstream o, e;
  int code = run_cli(args, in, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

int main() {
  const std::string dir = HSYM_FIXTURE_DIR;
  BatteryOptions opt;  // seed 42, full counts

  auto t0 = std::chrono::steady_clock::now();
  std::vector<SuiteResult> first = run_battery(opt);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<SuiteResult> second = run_battery(opt);

  std::map<int, std::vector<const SuiteResult*>> by;
  for (const SuiteResult& r : first) by[r.criterion].push_back(&r);
  const std::map<int, double> budget{{1, 5.0}, {2, 10.0}, {5, 30.0}};

  std::vector<Line> lines(13);
  for (int c = 1; c <= 11; ++c) {
    Line& l = lines[c];
    l.need(!by[c].empty(), "no suite");
    double secs = 0;
    for (const SuiteResult* r : by[c]) {
      secs += r->seconds;
      l.need(r->pass, r->name + " failed: " + (r->failures.empty() ? "" : r->failures[0]));
      l.need(r->cases > 0, r->name + " ran no cases");
      if (l.pass) l.note = std::to_string(r->cases) + " cases, " + worst(*r);
    }
    if (budget.count(c)) {
      char b[80];
      std::snprintf(b, sizeof b, "%.2fs over the %.0fs budget", secs, budget.at(c));
      l.need(secs < budget.at(c), b);
    }
  }

  Line& l12 = lines[12];
  for (const SuiteResult* r : by[12]) l12.need(r->pass, r->name + " failed");
  bool all = true;
  for (const SuiteResult& r : first) all = all && r.pass;
  l12.need(all, "battery has failures");
  l12.need(wall < 60.0, "battery took " + std::to_string(wall) + "s");
  l12.need(emit_json(battery_json(opt, first, true, false)) == emit_json(battery_json(opt, second, true, false)),
           "second run with the same seed differs");
  for (const char* name : {"j0_o11.json", "j0_sp2.json", "z_i_sp2.json", "z_minus_i_sp2.json", "v_one_sp2.json",
                           "q_one_sp2c.json"}) {
    std::string text = slurp(dir + "/" + name);
    l12.need(!text.empty() && emit_json(parse_json_text(text)) == text, std::string(name) + " not byte-stable");
  }
  l12.need(run({"check", "--family", "O11", "--model", "Cmodel", "--in", dir + "/j0_o11.json"}) == 0, "J0 check");
  std::string out;
  l12.need(run({"check", "--family", "SP2", "--model", "U+", "--in", dir + "/z_minus_i_sp2.json"}, &out) == 1 &&
               out.find("Im z positive") != std::string::npos,
           "-i check");
  l12.need(run({"check", "--family", "SP2", "--in", dir + "/malformed.json"}) == 2, "malformed exit code");
  l12.need(run({"convert", "--family", "SP2", "--from", "C", "--to", "U+", "--in", dir + "/j0_sp2.json"}, &out) == 0 &&
               out == slurp(dir + "/z_i_sp2.json"),
           "convert output differs from fixture");
  if (l12.pass) {
    char b[80];
    std::snprintf(b, sizeof b, "battery %.2fs, reruns identical, fixtures stable", wall);
    l12.note = b;
  }

  const char* titles[] = {"",
                          "algebra laws",
                          "group closure and membership",
                          "Cartan relations",
                          "basepoint stabilizers",
                          "equivariance of conversions",
                          "round trips",
                          "differentials",
                          "metric",
                          "incarnation",
                          "HKR trace identities",
                          "Hitchin invariance",
                          "CLI determinism and fixtures"};
  int failed = 0;
  for (int c = 1; c <= 12; ++c) {
    std::printf("criterion %2d %s: %s (%s)\n", c, lines[c].pass ? "PASS" : "FAIL", titles[c], lines[c].note.c_str());
    failed += !lines[c].pass;
  }
  return failed ? 1 : 0;
}
