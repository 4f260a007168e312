#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hsym/cli.hpp"

namespace hsym {

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

Json load(const std::string& path, Io& io) { return parse_json_text(read_text(path, io.in)); }

void write(const Json& j, const std::string& path, Io& io) {
  std::string text = emit_json(j);
  if (path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot write " + path);
  f << text;
}

int sign_of(const std::string& s) {
  if (s == "+" || s == "1" || s == "+1") return 1;
  if (s == "-" || s == "-1") return -1;
  bad("sign must be + or -");
}

ModelFamily model_family(const std::string& s) { return parse_model_family(s); }

Json residuals_json(const Report& r) {
  Json arr = Json::array();
  for (const Residual& x : r.residuals) {
    Json e;
    e["name"] = x.name;
    e["value"] = x.value;
    arr.push_back(e);
  }
  return arr;
}

Json complex_list(const std::vector<std::complex<double>>& v) {
  Json arr = Json::array();
  for (auto z : v) arr.push_back(Json::array({z.real(), z.imag()}));
  return arr;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

double default_tol() {
  if (const char* s = std::getenv("HSYM_TOL")) {
    char* end = nullptr;
    double t = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(t > 0)) bad("HSYM_TOL must be a positive number");
    return t;
  }
  return kMembershipTol;
}

struct Opts {
  std::string family, model = "U", sign = "+", in = "-", out = "-", from, to, g, z, v, w, at;
  double tol = 0;
  bool fd = false, per_case = false, no_times = false;
  double q2 = 0, q4 = 0;
  std::string ground = "R";
  int n = 1;
  BatteryOptions battery;
};

int cmd_check(const Opts& o, Io& io) {
  Document d = parse_document(load(o.in, io));
  Json j;
  j["command"] = "check";
  j["family"] = o.family;
  Report r;
  if (o.model == "group") {
    GroupId gid{parse_family(o.family), d.alg};
    if (d.shape != DocShape::Mat2) bad("group membership needs a 2x2 matrix document");
    j["model"] = "group";
    r = group_contains(gid, d.m, o.tol);
  } else {
    ModelId mid = parse_model_id(model_family(o.family), o.model, sign_of(o.sign));
    j["model"] = model_id_name(mid);
    r = contains(point_from_doc(mid, d), o.tol);
  }
  j["tol"] = o.tol;
  j["pass"] = r.pass;
  j["residuals"] = residuals_json(r);
  io.out << emit_json(j);
  return r.pass ? 0 : 1;
}

ModelPoint read_point(const std::string& family, const std::string& model, int sign, const std::string& path, Io& io) {
  ModelId mid = parse_model_id(model_family(family), model, sign);
  ModelPoint p = point_from_doc(mid, parse_document(load(path, io)));
  require_contains(p);
  return p;
}

AlgebraSpec base_named(const std::string& ground, int n) {
  if (ground == "R") return real_matrices(n);
  if (ground == "C") return complex_matrices(n, true);
  if (ground == "H") return quaternion_matrices(n, 1);
  bad("ground must be R, C or H");
}

int cmd_basepoint(const Opts& o, Io& io) {
  ModelId mid = parse_model_id(model_family(o.family), o.model, sign_of(o.sign));
  write(point_doc(basepoint(mid, base_named(o.ground, o.n))), o.out, io);
  return 0;
}

int cmd_convert(const Opts& o, Io& io) {
  ModelPoint p = read_point(o.family, o.from, sign_of(o.sign), o.in, io);
  ModelId to = parse_model_id(p.mid.family, o.to, sign_of(o.sign));
  write(point_doc(convert(p, to)), o.out, io);
  return 0;
}

int cmd_act(const Opts& o, Io& io) {
  ModelPoint p = read_point(o.family, o.model, sign_of(o.sign), o.in, io);
  Document g = parse_document(load(o.g, io));
  if (g.shape != DocShape::Mat2) bad("--g needs a 2x2 matrix document");
  GroupId gid = model_group(p.mid.family, p.base);
  Report r = group_contains(gid, g.m);
  if (!r.pass) throw Error(Errc::NotInGroup, r.summary());
  write(point_doc(act(g.m, p)), o.out, io);
  return 0;
}

int cmd_metric(const Opts& o, Io& io) {
  ModelPoint z = read_point(o.family, "U", sign_of(o.sign), o.z, io);
  TangentVector v = tangent_from_doc(z, parse_document(load(o.v, io)));
  TangentVector w = o.w.empty() ? v : tangent_from_doc(z, parse_document(load(o.w, io)));
  Json j;
  j["command"] = "metric";
  j["family"] = o.family;
  j["value"] = metric(z, v.v, w.v);
  io.out << emit_json(j);
  return 0;
}

int cmd_differential(const Opts& o, Io& io) {
  ModelPoint p = read_point(o.family, o.from, sign_of(o.sign), o.at, io);
  TangentVector t = tangent_from_doc(p, parse_document(load(o.in, io)));
  ModelId to = parse_model_id(p.mid.family, o.to, sign_of(o.sign));
  TangentVector d = o.fd ? differential_fd(t, to) : differential(t, to);
  Json j;
  j["command"] = "differential";
  j["at"] = point_doc(d.at);
  j["tangent"] = tangent_doc(d);
  write(j, o.out, io);
  return 0;
}

int cmd_invariants(const Opts& o, Io& io) {
  HiggsFamily f = parse_higgs_family(o.family);
  Document d = parse_document(load(o.in, io));
  if (d.shape != DocShape::Element) bad("invariants need an element document");
  HiggsVector hv = make_higgs(f, d.e);
  Json j;
  j["command"] = "invariants";
  j["family"] = o.family;
  j["norm"] = element_doc(norm_value(hv));
  j["coefficients"] = complex_list(invariants(hv));
  io.out << emit_json(j);
  return 0;
}

int cmd_hkr(const Opts& o, Io& io) {
  HkrSp4 h = hkr_sp4(o.q2, o.q4);
  auto tp = trace_powers(h.blocks, 2);
  auto [r2, r4] = hkr_recover(h.L);
  Json j;
  j["command"] = "hkr";
  j["q2"] = o.q2;
  j["q4"] = o.q4;
  j["beta"] = matrix_json(h.beta);
  j["gamma"] = matrix_json(h.gamma);
  j["L"] = matrix_json(h.L);
  j["trace_L2"] = tp[0].real();
  j["trace_L4"] = tp[1].real();
  j["recovered"] = Json::array({r2, r4});
  io.out << emit_json(j);
  return 0;
}

int cmd_selftest(const Opts& o, Io& io) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SuiteResult> res = run_battery(o.battery);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Json j = battery_json(o.battery, res, o.per_case, !o.no_times);
  if (!o.no_times) j["wall_seconds"] = wall;
  write(j, o.out, io);
  bool pass = true;
  for (const SuiteResult& r : res) {
    pass = pass && r.pass;
    char line[160];
    std::snprintf(line, sizeof line, "%-20s criterion %2d  %6d cases  %s  %.2fs\n", r.name.c_str(), r.criterion,
                  r.cases, r.pass ? "PASS" : "FAIL", r.seconds);
    io.err << line;
    for (const std::string& f : r.failures) io.err << "    " << f << "\n";
  }
  if (res.empty()) {
    io.err << "no suite matches '" << o.battery.filter << "'\n";
    return 1;
  }
  return pass ? 0 : 1;
}

void error_json(std::ostream& out, const char* name, const std::string& message) {
  Json j;
  j["error"] = name;
  j["message"] = message;
  out << emit_json(j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  Opts o;
  CLI::App app{"hsym: models of Hermitian symmetric spaces over involutive algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hsym 0.1.0");

  auto fam = [&](CLI::App* s, const char* help) { s->add_option("--family", o.family, help)->required(); };
  auto sign = [&](CLI::App* s) { s->add_option("--sign", o.sign, "+ or -, used when a model name carries no sign"); };

  CLI::App* check = app.add_subcommand("check", "membership of a point or group element");
  fam(check, "model family (O11 AX OC SP2 SP2C CPT_*) or group family with --model group");
  check->add_option("--model", o.model, "C, P, U, B (optionally with + or -) or group");
  sign(check);
  check->add_option("--in", o.in, "document, - for stdin");
  check->add_option("--tol", o.tol, "membership tolerance (default HSYM_TOL or 1e-9)");

  CLI::App* bp = app.add_subcommand("basepoint", "the base point of a model");
  fam(bp, "model family");
  bp->add_option("--model", o.model, "C, P, U or B");
  sign(bp);
  bp->add_option("--ground", o.ground, "R, C or H");
  bp->add_option("--n", o.n, "matrix size")->check(CLI::Range(1, 64));
  bp->add_option("--out", o.out, "output file, - for stdout");

  CLI::App* conv = app.add_subcommand("convert", "move a point between models");
  fam(conv, "model family");
  conv->add_option("--from", o.from, "source model")->required();
  conv->add_option("--to", o.to, "target model")->required();
  sign(conv);
  conv->add_option("--in", o.in, "document, - for stdin");
  conv->add_option("--out", o.out, "output file, - for stdout");

  CLI::App* actc = app.add_subcommand("act", "apply a group element to a point");
  fam(actc, "model family");
  actc->add_option("--model", o.model, "model of the point");
  sign(actc);
  actc->add_option("--g", o.g, "2x2 matrix document")->required();
  actc->add_option("--in", o.in, "point document");
  actc->add_option("--out", o.out, "output file, - for stdout");

  CLI::App* met = app.add_subcommand("metric", "invariant metric on the U model");
  fam(met, "model family");
  sign(met);
  met->add_option("--z", o.z, "point document")->required();
  met->add_option("--v", o.v, "tangent document")->required();
  met->add_option("--w", o.w, "second tangent document (defaults to --v)");

  CLI::App* diff = app.add_subcommand("differential", "push a tangent vector through a conversion");
  fam(diff, "model family");
  diff->add_option("--from", o.from, "source model")->required();
  diff->add_option("--to", o.to, "target model")->required();
  sign(diff);
  diff->add_option("--at", o.at, "base point document")->required();
  diff->add_option("--in", o.in, "tangent document");
  diff->add_option("--out", o.out, "output file, - for stdout");
  diff->add_flag("--fd", o.fd, "finite differences instead of the analytic formula");

  CLI::App* inv = app.add_subcommand("invariants", "Hitchin invariants of a Higgs vector");
  fam(inv, "SP2C or OC");
  inv->add_option("--in", o.in, "element document");

  CLI::App* hk = app.add_subcommand("hkr", "the Sp4 example section");
  hk->add_option("--q2", o.q2, "quadratic datum")->required();
  hk->add_option("--q4", o.q4, "quartic datum")->required();

  CLI::App* st = app.add_subcommand("selftest", "run the property battery");
  st->add_option("--seed", o.battery.seed, "master seed");
  st->add_option("--cases", o.battery.cases, "cases per group (0: the full counts)")->check(CLI::NonNegativeNumber);
  st->add_option("--tol", o.battery.tol_scale, "multiplies every tolerance")->check(CLI::PositiveNumber);
  st->add_option("--filter", o.battery.filter, "run suites whose name contains this");
  st->add_flag("--per-case", o.per_case, "include per-case residuals");
  st->add_flag("--no-times", o.no_times, "leave timings out of the report");
  st->add_option("--out", o.out, "report file, - for stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed() && o.tol == 0) o.tol = default_tol();
    if (check->parsed()) return cmd_check(o, io);
    if (bp->parsed()) return cmd_basepoint(o, io);
    if (conv->parsed()) return cmd_convert(o, io);
    if (actc->parsed()) return cmd_act(o, io);
    if (met->parsed()) return cmd_metric(o, io);
    if (diff->parsed()) return cmd_differential(o, io);
    if (inv->parsed()) return cmd_invariants(o, io);
    if (hk->parsed()) return cmd_hkr(o, io);
    return cmd_selftest(o, io);
  } catch (const Error& e) {
    error_json(out, errc_name(e.code()), e.what());
    return e.code() == Errc::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    error_json(out, "Internal", e.what());
    return 1;
  }
}

}  // namespace hsym
