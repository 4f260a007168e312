#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hsym/cli.hpp"
#include "hsym/rng.hpp"

using namespace hsym;

namespace {

const std::string kDir = HSYM_FIXTURE_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return kDir + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp_file(const std::string& name, const std::string& text) {
  std::string p = std::string(HSYM_BUILD_DIR) + "/" + name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("check: J0 lies in the O11 C model") {
  Run r = cli({"check", "--family", "O11", "--model", "Cmodel", "--in", fx("j0_o11.json")});
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["model"] == "C");
  CHECK(j["residuals"].size() == 3);
}

TEST_CASE("check: -i fails the SP2 upper half space on the cone condition") {
  Run r = cli({"check", "--family", "SP2", "--model", "U", "--sign", "+", "--in", fx("z_minus_i_sp2.json")});
  CHECK(r.code == 1);
  Json j = parse_json_text(r.out);
  CHECK(j["pass"] == false);
  bool named = false;
  for (const auto& res : j["residuals"])
    if (res["name"].get<std::string>().find("positive") != std::string::npos) {
      named = true;
      CHECK(res["value"].get<double>() == doctest::Approx(-1.0));
    }
  CHECK(named);
}

TEST_CASE("input errors exit 2") {
  CHECK(cli({"check", "--family", "SP2", "--model", "U", "--in", fx("malformed.json")}).code == 2);
  CHECK(cli({"check", "--family", "SP2", "--model", "U", "--in", fx("missing.json")}).code == 2);
  CHECK(cli({"check", "--family", "NOPE", "--model", "U", "--in", fx("z_i_sp2.json")}).code == 2);
  CHECK(cli({"check", "--family", "SP2", "--model", "Q", "--in", fx("z_i_sp2.json")}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "--family", "SP2", "--in", "-"}, "[1, 2").code == 2);

  std::string good = slurp(fx("z_i_sp2.json"));
  Json j = parse_json_text(good);
  Json short_cell = j;
  short_cell["rows"][0][0] = Json::array({0.0});
  Run r = cli({"check", "--family", "SP2", "--in", "-"}, emit_json(short_cell));
  CHECK(r.code == 2);
  CHECK(r.out.find("exactly 2 entries") != std::string::npos);
  Json bad_sigma = j;
  bad_sigma["alg"]["sigma"] = "nonsense";
  CHECK(cli({"check", "--family", "SP2", "--in", "-"}, emit_json(bad_sigma)).code == 2);
  Json bad_shape = j;
  bad_shape["rows"] = Json::array({Json::array({Json::array({0, 1}), Json::array({0, 1})})});
  CHECK(cli({"check", "--family", "SP2", "--in", "-"}, emit_json(bad_shape)).code == 2);
  // a 2x2 matrix where the U model wants an element
  CHECK(cli({"check", "--family", "SP2", "--model", "U", "--in", fx("j0_sp2.json")}).code == 2);
}

TEST_CASE("convert: J0 of SP2 goes to 0 in the disc") {
  Run r = cli({"convert", "--family", "SP2", "--from", "C", "--to", "B", "--in", fx("j0_sp2.json")});
  REQUIRE(r.code == 0);
  Document d = parse_document(parse_json_text(r.out));
  CHECK(d.shape == DocShape::Element);
  CHECK(norm(d.e) < 1e-15);
  // output documents are themselves byte-stable
  CHECK(emit_json(parse_json_text(r.out)) == r.out);

  Run u = cli({"convert", "--family", "SP2", "--from", "C", "--to", "U+", "--in", fx("j0_sp2.json")});
  CHECK(emit_json(parse_json_text(u.out)) == slurp(fx("z_i_sp2.json")));
}

TEST_CASE("domain errors exit 1 with the error name") {
  Run r = cli({"convert", "--family", "SP2", "--from", "U", "--to", "B", "--in", fx("z_minus_i_sp2.json")});
  CHECK(r.code == 1);
  CHECK(parse_json_text(r.out)["error"] == "NotInModel");
  Run h = cli({"invariants", "--family", "SP2C", "--in", fx("z_i_sp2.json")});
  CHECK(h.code == 1);
  CHECK(parse_json_text(h.out)["error"] == "SpecMismatch");
}

TEST_CASE("metric at i on 1 is 1") {
  Run r = cli({"metric", "--family", "SP2", "--z", fx("z_i_sp2.json"), "--v", fx("v_one_sp2.json")});
  REQUIRE(r.code == 0);
  CHECK(parse_json_text(r.out)["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("act: J0 fixes i") {
  Run r = cli({"act", "--family", "SP2", "--model", "U+", "--g", fx("j0_sp2.json"), "--in", fx("z_i_sp2.json")});
  REQUIRE(r.code == 0);
  Document d = parse_document(parse_json_text(r.out));
  Document want = parse_document(parse_json_text(slurp(fx("z_i_sp2.json"))));
  CHECK(dist(d.e, want.e) < 1e-15);
  // J0 of O11 is not in Sp2
  Run bad = cli({"act", "--family", "SP2", "--model", "U+", "--g", fx("j0_o11.json"), "--in", fx("z_i_sp2.json")});
  CHECK(bad.code == 1);
  CHECK(parse_json_text(bad.out)["error"] == "NotInGroup");
}

TEST_CASE("invariants of q = 1 are binomial coefficients") {
  Run r = cli({"invariants", "--family", "SP2C", "--in", fx("q_one_sp2c.json")});
  REQUIRE(r.code == 0);
  Json c = parse_json_text(r.out)["coefficients"];
  const double want[] = {-4, 6, -4, 1};
  REQUIRE(c.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(c[k][0].get<double>() == doctest::Approx(want[k]));
    CHECK(std::abs(c[k][1].get<double>()) < 1e-12);
  }
}

TEST_CASE("differential and hkr commands") {
  std::string at = fx("z_i_sp2.json"), v = fx("v_one_sp2.json");
  Run an = cli({"differential", "--family", "SP2", "--from", "U", "--to", "B", "--at", at, "--in", v});
  Run fd = cli({"differential", "--family", "SP2", "--from", "U", "--to", "B", "--at", at, "--in", v, "--fd"});
  REQUIRE(an.code == 0);
  REQUIRE(fd.code == 0);
  Document da = parse_document(parse_json_text(an.out)["tangent"]);
  Document df = parse_document(parse_json_text(fd.out)["tangent"]);
  CHECK(dist(da.e, df.e) < 1e-8);
  CHECK(norm(da.e) > 0.1);

  Run h = cli({"hkr", "--q2", "0.3", "--q4", "-0.2"});
  REQUIRE(h.code == 0);
  Json j = parse_json_text(h.out);
  CHECK(j["trace_L2"].get<double>() == doctest::Approx(1.2));
  CHECK(j["trace_L4"].get<double>() == doctest::Approx(4 * (0.09 - 0.2)));
  CHECK(j["recovered"][0].get<double>() == doctest::Approx(0.3));
  CHECK(j["beta"][0][0].get<double>() == -0.2);
}

TEST_CASE("HSYM_TOL sets the default check tolerance") {
  setenv("HSYM_TOL", "0.5", 1);
  Run r = cli({"check", "--family", "O11", "--model", "C", "--in", fx("j0_o11.json")});
  unsetenv("HSYM_TOL");
  CHECK(parse_json_text(r.out)["tol"].get<double>() == 0.5);
  Run d = cli({"check", "--family", "O11", "--model", "C", "--in", fx("j0_o11.json")});
  CHECK(parse_json_text(d.out)["tol"].get<double>() == 1e-9);
  Run e = cli({"check", "--family", "O11", "--model", "C", "--in", fx("j0_o11.json"), "--tol", "1e-3"});
  CHECK(parse_json_text(e.out)["tol"].get<double>() == 1e-3);
}

TEST_CASE("fixtures are byte-stable under parse and emit") {
  for (const char* name : {"j0_o11.json", "j0_sp2.json", "z_i_sp2.json", "z_minus_i_sp2.json", "v_one_sp2.json",
                           "q_one_sp2c.json"}) {
    CAPTURE(name);
    std::string text = slurp(fx(name));
    REQUIRE(!text.empty());
    CHECK(emit_json(parse_json_text(text)) == text);
    Document d = parse_document(parse_json_text(text));
    Json again = d.shape == DocShape::Element ? element_doc(d.e) : d.shape == DocShape::Mat2 ? mat2_doc(d.m) : vec2_doc(d.v);
    CHECK(emit_json(again) == text);
  }
}

TEST_CASE("emitter details") {
  CHECK(emit_json(Json(-0.0)) == "0\n");
  CHECK(emit_json(Json(0.1)) == "0.10000000000000001\n");
  CHECK(emit_json(Json(std::nan(""))) == "null\n");
  CHECK(emit_json(Json::array({1, 2})) == "[1, 2]\n");
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    double x = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
    std::string t = emit_json(Json(x));
    CHECK(parse_json_text(t).get<double>() == x);
  }
}

TEST_CASE("points and tangents round trip through documents") {
  Rng rng(6);
  for (ModelFamily f : {ModelFamily::O11, ModelFamily::SP2, ModelFamily::SP2C})
    for (Kind k : {Kind::C, Kind::P, Kind::U, Kind::B}) {
      ModelId mid{f, k, 1};
      ModelPoint p = sample_point(mid, real_matrices(2), rng);
      Document d = parse_document(parse_json_text(emit_json(point_doc(p))));
      ModelPoint q = point_from_doc(mid, d);
      CHECK(emit_json(point_doc(q)) == emit_json(point_doc(p)));
      TangentVector t = sample_tangent(p, rng);
      TangentVector s = tangent_from_doc(q, parse_document(parse_json_text(emit_json(tangent_doc(t)))));
      CHECK(emit_json(tangent_doc(s)) == emit_json(tangent_doc(t)));
    }
}

TEST_CASE("selftest: filter, determinism, tolerance scale") {
  Run m = cli({"selftest", "--filter", "metric", "--cases", "5", "--no-times"});
  REQUIRE(m.code == 0);
  Json j = parse_json_text(m.out);
  REQUIRE(j["suites"].size() == 1);
  CHECK(j["suites"][0]["name"] == "metric");
  CHECK(!j.contains("wall_seconds"));

  std::vector<std::string> args{"selftest", "--seed", "7", "--cases", "3", "--per-case", "--no-times"};
  Run a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Json ja = parse_json_text(a.out);
  CHECK(ja["suites"].size() == suite_names().size());
  CHECK(ja["seed"] == 7);
  CHECK(!ja["suites"][0]["case_residuals"].empty());

  Run other = cli({"selftest", "--seed", "8", "--cases", "3", "--per-case", "--no-times"});
  CHECK(other.out != a.out);

  // a tolerance scale of 1e-30 leaves no room for rounding
  Run tight = cli({"selftest", "--filter", "equivariance", "--cases", "3", "--tol", "1e-30"});
  CHECK(tight.code == 1);
  CHECK(parse_json_text(tight.out)["pass"] == false);

  CHECK(cli({"selftest", "--filter", "no-such-suite"}).code == 1);
  CHECK(cli({"selftest", "--tol", "-1"}).code == 2);
}

TEST_CASE("battery cases are order independent") {
  BatteryOptions all;
  all.cases = 4;
  BatteryOptions one = all;
  one.filter = "round-trips";
  auto ra = run_battery(all), ro = run_battery(one);
  REQUIRE(ro.size() == 1);
  for (const auto& r : ra)
    if (r.name == "round-trips") CHECK(r.case_residuals == ro[0].case_residuals);
}

TEST_CASE("convert reads and writes files") {
  std::string p = tmp_file("cli_tmp_point.json", slurp(fx("j0_sp2.json")));
  std::string out = std::string(HSYM_BUILD_DIR) + "/cli_tmp_out.json";
  Run r = cli({"convert", "--family", "SP2", "--from", "C", "--to", "P+", "--in", p, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  Document d = parse_document(parse_json_text(slurp(out)));
  CHECK(d.shape == DocShape::Vec2);
}
