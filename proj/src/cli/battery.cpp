#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "hsym/cli.hpp"
#include "hsym/rng.hpp"

namespace hsym {

namespace {

constexpr int kMaxFailures = 8;

class Ctx {
 public:
  Ctx(SuiteResult& r, const BatteryOptions& opt) : r_(r), opt_(opt) {}

  Rng rng_for(int index) const { return Rng(case_seed(opt_.seed, r_.name, std::uint64_t(index))); }

  void begin(int index, std::string label) {
    case_ = index;
    label_ = std::move(label);
    worst_ = 0;
  }

  void end() {
    r_.case_residuals.push_back(worst_);
    ++r_.cases;
  }

  void check(const std::string& name, double value, double tol) {
    tol *= opt_.tol_scale;
    CheckStat& s = stat(name, tol);
    bool ok = value <= tol;  // NaN fails
    if (ok) {
      s.max = std::max(s.max, value);
      worst_ = std::max(worst_, value / tol);
    } else {
      s.max = std::isfinite(value) ? std::max(s.max, value) : 1e300;
      worst_ = 1e300;
      ++s.failed;
      note(name + " = " + std::to_string(value) + " > " + std::to_string(tol));
    }
  }

  void require(const std::string& name, bool ok) { check(name, ok ? 0.0 : 1.0, 0.5); }

  double tol(double t) const { return t * opt_.tol_scale; }

  // A library membership report run at tol(t): every residual is tracked, the report decides.
  void report(const std::string& name, const Report& rep, double t) {
    for (const Residual& res : rep.residuals) {
      CheckStat& s = stat(name + ": " + res.name, tol(t));
      if (std::isfinite(res.value)) s.max = std::max(s.max, std::abs(res.value));
    }
    if (!rep.pass) {
      ++stat(name, 0.5).failed;
      worst_ = 1e300;
      note(name + ": " + rep.summary());
    }
  }

  void fail(const std::string& what) {
    ++stat("exceptions", 0.5).failed;
    worst_ = 1e300;
    note(what);
  }

  int count(int dflt) const { return opt_.cases > 0 ? opt_.cases : dflt; }

 private:
  CheckStat& stat(const std::string& name, double tol) {
    auto it = index_.find(name);
    if (it != index_.end()) return r_.checks[it->second];
    index_[name] = r_.checks.size();
    r_.checks.push_back({name, tol, 0.0, 0});
    return r_.checks.back();
  }

  void note(const std::string& msg) {
    r_.pass = false;
    if (int(r_.failures.size()) < kMaxFailures)
      r_.failures.push_back("case " + std::to_string(case_) + " (" + label_ + "): " + msg);
  }

  SuiteResult& r_;
  const BatteryOptions& opt_;
  std::map<std::string, std::size_t> index_;
  int case_ = 0;
  std::string label_;
  double worst_ = 0;
};

template <class F>
void run_case(Ctx& c, int index, const std::string& label, F&& body) {
  c.begin(index, label);
  try {
    body();
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  c.end();
}

int size_for(int index) { return 1 + index % 3; }

// Mostly Mat_n(R); every fourth case a complex or quaternionic base where the family has one.
AlgebraSpec base_for(const ModelId& mid, int index) {
  const int n = size_for(index);
  if (index % 4 == 3) {
    AlgebraSpec alt = (index / 4) % 2 ? quaternion_matrices(n, 1) : complex_matrices(n, true);
    if (model_supported(mid, alt)) return alt;
  }
  return real_matrices(n);
}

std::vector<AlgebraSpec> towers(int n) {
  AlgebraSpec r = real_matrices(n), cc = complex_matrices(n, true), ct = complex_matrices(n, false);
  AlgebraSpec h0 = quaternion_matrices(n, 0), h1 = quaternion_matrices(n, 1);
  std::vector<AlgebraSpec> out{r, cc, ct, h0, h1};
  for (const AlgebraSpec& b : {r, cc, h1}) {
    out.push_back(complexify(b, 1));
    out.push_back(complexify(b, -1));
    for (int w = 0; w < 4; ++w) out.push_back(quaternionify(b, w));
  }
  out.push_back(with_central(quaternionify(r, 0), 1));
  out.push_back(with_central(quaternionify(r, 1), -1));
  out.push_back(with_central(complexify(cc, -1), -1));
  out.push_back(with_central(quaternionify(h1, 1), -1));
  out.push_back(with_central(r, -1));
  return out;
}

std::vector<GroupId> groups(int n) {
  AlgebraSpec r = real_matrices(n), c = complex_matrices(n, true), h = quaternion_matrices(n, 1);
  AlgebraSpec rc = complexify(r, 1), rcb = complexify(r, -1);
  return {{Family::SP2, r},     {Family::O11, r},     {Family::SP2, c},    {Family::O11, c},
          {Family::SP2, h},     {Family::O11, h},     {Family::SP2, rc},   {Family::O11, rcb},
          {Family::KSP2, r},    {Family::KO11, r},    {Family::KSP2, h},   {Family::KO11, h},
          {Family::KSP2C, rc},  {Family::O_ALG, r},   {Family::O_ALG, h}};
}

std::vector<GroupId> cartan_groups(int n) {
  AlgebraSpec r = real_matrices(n), c = complex_matrices(n, true), h = quaternion_matrices(n, 1);
  AlgebraSpec rc = complexify(r, 1);
  return {{Family::SP2, r}, {Family::O11, r}, {Family::SP2, c}, {Family::O11, c},
          {Family::SP2, h}, {Family::O11, h}, {Family::SP2, rc}};
}

const ModelFamily kNoncompact[] = {ModelFamily::O11, ModelFamily::AX, ModelFamily::OC, ModelFamily::SP2,
                                   ModelFamily::SP2C};
const ModelFamily kAll[] = {ModelFamily::O11,      ModelFamily::AX,       ModelFamily::OC,
                            ModelFamily::SP2,      ModelFamily::SP2C,     ModelFamily::CPT_KO11,
                            ModelFamily::CPT_KSP2, ModelFamily::CPT_KSP2C};

std::vector<ModelId> model_ids(ModelFamily f) {
  if (is_compact(f)) return {{f, Kind::P, 1}, {f, Kind::B, 1}};
  return {{f, Kind::C, 1}, {f, Kind::P, 1}, {f, Kind::P, -1}, {f, Kind::U, 1}, {f, Kind::U, -1}, {f, Kind::B, 1}};
}

std::string model_label(const ModelId& m) { return std::string(model_family_name(m.family)) + "/" + model_id_name(m); }

double rel(double residual, double size) { return residual / std::max(1.0, size); }

// Residual between two points of one model; lines are compared as lines.
double point_gap(const ModelPoint& a, const ModelPoint& b) {
  switch (a.mid.kind) {
    case Kind::C: return rel(dist(a.J, b.J), norm(b.J));
    case Kind::P: return right_factor(a.x, b.x, nullptr) / std::max(1.0, norm(b.x));
    default: return rel(dist(a.z, b.z), norm(b.z));
  }
}

// suites

void algebra_laws(Ctx& c) {
  const int per = c.count(1000);
  std::vector<std::vector<AlgebraSpec>> by_n{towers(1), towers(2), towers(3)};
  const int nt = int(by_n[0].size());
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < per; ++k) {
      const AlgebraSpec& s = by_n[k % 3][t];
      run_case(c, t * per + k, describe(s), [&] {
        Rng rng = c.rng_for(t * per + k);
        Element a = sample(s, Constraint::Free, rng), b = sample(s, Constraint::Free, rng),
                d = sample(s, Constraint::Free, rng);
        double sc = 1 + norm(a) * norm(b) * norm(d);
        c.check("associativity", dist((a * b) * d, a * (b * d)) / sc, 1e-10);
        c.check("sigma anti-homomorphism", dist(sigma(a * b), sigma(b) * sigma(a)) / (1 + norm(a) * norm(b)), 1e-10);
        c.check("sigma involutive", dist(sigma(sigma(a)), a), 1e-10);
        for (Unit u : {Unit::I, Unit::J, Unit::i, Unit::j, Unit::Iext}) {
          if (unit_index(s.tower, u) < 0) continue;
          c.check("theta^2 = Id", dist(apply_theta(u, apply_theta(u, a)), a), 1e-10);
          c.check("theta multiplicative", dist(apply_theta(u, a * b), apply_theta(u, a) * apply_theta(u, b)) / sc, 1e-10);
        }
        Eigen::MatrixXcd ea = embed_complex(a), eb = embed_complex(b);
        c.check("embedding multiplicative", (embed_complex(a * b) - ea * eb).norm() / (1 + norm(a) * norm(b)), 1e-10);
      });
    }
}

void group_closure(Ctx& c) {
  const int per = c.count(1000);
  const int ng = int(groups(1).size());
  std::vector<std::vector<GroupId>> by_n{groups(1), groups(2), groups(3)};
  for (int g = 0; g < ng; ++g)
    for (int k = 0; k < per; ++k) {
      const GroupId& gid = by_n[k % 3][g];
      std::string fam = family_name(gid.family);
      run_case(c, g * per + k, fam + " over " + describe(gid.over), [&] {
        Rng rng = c.rng_for(g * per + k);
        Mat2 a = sample_group(gid, rng), b = sample_group(gid, rng);
        c.report(fam + " product", group_contains(gid, a * b, c.tol(1e-9)), 1e-9);
        c.report(fam + " inverse", group_contains(gid, inv(a), c.tol(1e-9)), 1e-9);
      });
    }
}

void cartan(Ctx& c) {
  const int per = c.count(200);
  const int ng = int(cartan_groups(1).size());
  std::vector<std::vector<GroupId>> by_n{cartan_groups(1), cartan_groups(2), cartan_groups(3)};
  for (int g = 0; g < ng; ++g)
    for (int k = 0; k < per; ++k) {
      const GroupId& gid = by_n[k % 3][g];
      std::string fam = family_name(gid.family);
      run_case(c, g * per + k, fam + " over " + describe(gid.over), [&] {
        Rng rng = c.rng_for(g * per + k);
        Mat2 k1 = sample_k(gid, rng), k2 = sample_k(gid, rng), m1 = sample_m(gid, rng), m2 = sample_m(gid, rng);
        c.report("[k,k] in k", k_pattern(gid, commutator(k1, k2), c.tol(1e-10)), 1e-10);
        c.report("[k,m] in m", m_pattern(gid, commutator(k1, m1), c.tol(1e-10)), 1e-10);
        c.report("[m,m] in k", k_pattern(gid, commutator(m1, m2), c.tol(1e-10)), 1e-10);
      });
    }
}

void stabilizers(Ctx& c) {
  const int per = c.count(100);
  int f_index = 0;
  for (ModelFamily f : kAll) {
    for (int k = 0; k < per; ++k) {
      int idx = f_index * per + k;
      AlgebraSpec a = base_for(model_ids(f)[0], k);
      run_case(c, idx, std::string(model_family_name(f)) + " over " + describe(a), [&] {
        Rng rng = c.rng_for(idx);
        Mat2 g = sample_stabilizer(f, a, rng);
        for (const ModelId& mid : model_ids(f)) {
          ModelPoint p = basepoint(mid, a);
          ModelPoint q = act(g, p);
          c.check("fixes " + model_id_name(mid), point_gap(q, p), 1e-10);
        }
      });
    }
    ++f_index;
  }
}

void equivariance(Ctx& c) {
  const int per = c.count(200);
  int e = 0;
  for (ModelFamily f : kNoncompact)
    for (const MapId& m : primitive_maps(f)) {
      std::string edge = model_label(m.from) + " -> " + model_id_name(m.to);
      for (int k = 0; k < per; ++k, ++e) {
        int idx = e;
        AlgebraSpec a = base_for(m.from, k);
        run_case(c, idx, edge + " over " + describe(a), [&] {
          Rng rng = c.rng_for(idx);
          ModelPoint p = sample_point(m.from, a, rng);
          Mat2 g = sample_model_group(f, a, rng);
          ModelPoint lhs = convert(act(g, p), m.to);
          ModelPoint rhs = act(g, convert(p, m.to));
          c.check("convert(g p) = g convert(p)", point_gap(lhs, rhs), 1e-8);
        });
      }
    }
}

void round_trips(Ctx& c) {
  const int per = c.count(200);
  int e = 0;
  for (ModelFamily f : kNoncompact) {
    for (const MapId& m : primitive_maps(f)) {
      std::string edge = model_label(m.from) + " -> " + model_id_name(m.to);
      for (int k = 0; k < per; ++k, ++e) {
        int idx = e;
        AlgebraSpec a = base_for(m.from, k);
        run_case(c, idx, edge + " over " + describe(a), [&] {
          Rng rng = c.rng_for(idx);
          ModelPoint p = sample_point(m.from, a, rng);
          ModelPoint back = convert(convert(p, m.to), m.from);
          c.check("inverse pair", point_gap(back, p), 1e-8);
        });
      }
    }
    ModelId u{f, Kind::U, 1}, pp{f, Kind::P, 1}, b{f, Kind::B, 1};
    for (int k = 0; k < per; ++k, ++e) {
      int idx = e;
      AlgebraSpec a = base_for(u, k);
      run_case(c, idx, std::string(model_family_name(f)) + " triangle over " + describe(a), [&] {
        Rng rng = c.rng_for(idx);
        ModelPoint z = sample_point(u, a, rng);
        ModelPoint direct = convert(z, b);
        ModelPoint via = convert(convert(z, pp), b);
        c.check("U->B = U->P->B", point_gap(via, direct), 1e-8);
      });
    }
  }
}

void differentials(Ctx& c) {
  const int per = c.count(100);
  int e = 0;
  for (ModelFamily f : kNoncompact) {
    for (const MapId& m : primitive_maps(f)) {
      std::string edge = model_label(m.from) + " -> " + model_id_name(m.to);
      for (int k = 0; k < per; ++k, ++e) {
        int idx = e;
        AlgebraSpec a = base_for(m.from, k);
        run_case(c, idx, edge + " over " + describe(a), [&] {
          Rng rng = c.rng_for(idx);
          ModelPoint p = sample_point(m.from, a, rng);
          TangentVector t = sample_tangent(p, rng);
          TangentVector an = differential(t, m.to);
          TangentVector fd = differential_fd(t, m.to, 1e-5, true);
          c.check("analytic vs FD (relative)", tangent_distance(an, fd) / std::max(1e-300, tangent_size(an)), 1e-5);
        });
      }
    }
    // second order: halving h divides the plain central difference error by 4
    int idx = e++;
    run_case(c, idx, std::string(model_family_name(f)) + " h-halving", [&] {
      AlgebraSpec a = real_matrices(2);
      ModelId from{f, Kind::C, 1}, to{f, Kind::U, 1};
      Rng rng = c.rng_for(idx);
      ModelPoint p = sample_point(from, a, rng);
      TangentVector t = sample_tangent(p, rng);
      TangentVector an = differential(t, to);
      double e1 = tangent_distance(an, differential_fd(t, to, 2e-2, false));
      double e2 = tangent_distance(an, differential_fd(t, to, 1e-2, false));
      c.check("|log2(err(h)/err(h/2)) - 2|", std::abs(std::log2(e1 / e2) - 2.0), 0.1);
    });
  }
}

void metric_suite(Ctx& c) {
  const int per = c.count(200);
  int e = 0;
  for (ModelFamily f : kNoncompact) {
    ModelId u{f, Kind::U, 1};
    for (int k = 0; k < per; ++k, ++e) {
      int idx = e;
      AlgebraSpec a = base_for(u, k);
      run_case(c, idx, std::string(model_family_name(f)) + " over " + describe(a), [&] {
        Rng rng = c.rng_for(idx);
        ModelPoint z = sample_point(u, a, rng);
        TangentVector v = sample_tangent(z, rng), w = sample_tangent(z, rng);
        Mat2 g = sample_model_group(f, a, rng);
        TangentVector gv = act_tangent(g, v), gw = act_tangent(g, w);
        double m0 = metric(z, v.v, w.v), m1 = metric(gv.at, gv.v, gw.v);
        double sc = std::max(metric_norm(z, v.v) * metric_norm(z, w.v), 1e-300);
        c.check("invariance (relative)", std::abs(m0 - m1) / sc, 1e-8);
        if (norm(v.v) > 0) {
          double nn = metric(z, v.v, v.v) / (norm(v.v) * norm(v.v));
          c.require("positive on unit tangents", nn > 0);
        }
        ModelPoint z0 = basepoint(u, a);
        TangentVector v0 = sample_tangent(z0, rng), w0 = sample_tangent(z0, rng);
        double gen = metric(z0, v0.v, w0.v), base = metric_at_base(f, a, v0.v, w0.v);
        c.check("base point formula", std::abs(gen - base) / std::max(1.0, std::abs(base)), 1e-10);
      });
    }
  }
}

void incarnation(Ctx& c) {
  const int per = c.count(100);
  for (int k = 0; k < per; ++k) {
    AlgebraSpec acb = complexify(real_matrices(size_for(k)), -1);
    run_case(c, k, describe(acb), [&] {
      Rng rng = c.rng_for(k);
      Mat2 s = conjugator(ConjugatorId::S_incarn, acb);
      Mat2 g = sample_group({Family::O11, acb}, rng);
      c.report("S g S^-1 in Sp2", group_contains({Family::SP2, acb}, s * g * inv(s), c.tol(1e-9)), 1e-9);
    });
  }
}

void hkr(Ctx& c) {
  const int per = c.count(100);
  for (int k = 0; k < per; ++k)
    run_case(c, k, "hkr", [&] {
      Rng rng = c.rng_for(k);
      double q2 = rng.uniform(-1, 1), q4 = rng.uniform(-1, 1);
      HkrSp4 h = hkr_sp4(q2, q4);
      // brute force powers of the 4x4 matrix first, then the library traces
      Eigen::Matrix4d l2 = h.L * h.L;
      double t2 = l2.trace(), t4 = (l2 * l2).trace();
      c.check("brute Tr L^2 = 4 q2", std::abs(t2 - 4 * q2), 1e-10);
      c.check("brute Tr L^4 = 4 (q2^2 + q4)", std::abs(t4 - 4 * (q2 * q2 + q4)), 1e-10);
      auto tp = trace_powers(h.blocks, 2);
      c.check("Tr L^2", std::abs(tp[0] - 4 * q2), 1e-10);
      c.check("Tr L^4", std::abs(tp[1] - 4 * (q2 * q2 + q4)), 1e-10);
      auto [r2, r4] = hkr_recover(h.L);
      c.check("recover round trip", std::max(std::abs(r2 - q2), std::abs(r4 - q4)), 1e-12);
    });
}

void hitchin_suite(Ctx& c) {
  const int per = c.count(100);
  int e = 0;
  for (HiggsFamily f : {HiggsFamily::SP2C, HiggsFamily::OC})
    for (int k = 0; k < per; ++k, ++e) {
      int idx = e;
      AlgebraSpec a = real_matrices(size_for(k));
      run_case(c, idx, std::string(higgs_family_name(f)) + " over " + describe(a), [&] {
        Rng rng = c.rng_for(idx);
        HiggsVector hv = sample_higgs(f, a, rng);
        Element g = sample_compact(f, a, rng);
        HiggsVector moved = make_higgs(f, compact_act(f, g, hv.q));
        auto c0 = invariants(hv), c1 = invariants(moved);
        double worst = 0;
        for (std::size_t d = 0; d < c0.size(); ++d)
          worst = std::max(worst, std::abs(c0[d] - c1[d]) / std::max(1.0, std::abs(c0[d])));
        c.check("invariants (relative)", worst, 1e-8);
        Element lhs = norm_value(moved), rhs = g * norm_value(hv) * inv(g);
        c.check("norm congruence equivariance", rel(dist(lhs, rhs), norm(rhs)), 1e-9);
      });
    }
}

void documents(Ctx& c) {
  const int per = c.count(100);
  for (int k = 0; k < per; ++k) {
    std::vector<AlgebraSpec> ts = towers(size_for(k));
    const AlgebraSpec& s = ts[k % ts.size()];
    run_case(c, k, describe(s), [&] {
      Rng rng = c.rng_for(k);
      Element e = sample(s, Constraint::Free, rng);
      Mat2 m{sample(s, Constraint::Free, rng), sample(s, Constraint::Free, rng), sample(s, Constraint::Free, rng),
             sample(s, Constraint::Free, rng)};
      Vec2 v{m.a, m.d};
      for (const Json& doc : {element_doc(e), mat2_doc(m), vec2_doc(v)}) {
        std::string text = emit_json(doc);
        std::string again = emit_json(parse_json_text(text));
        c.require("emit(parse(emit)) byte-stable", text == again);
        Document d = parse_document(parse_json_text(text));
        double gap = d.shape == DocShape::Element ? dist(d.e, e) : d.shape == DocShape::Mat2 ? dist(d.m, m) : dist(d.v, v);
        c.check("values survive the round trip", gap, 0.0);
      }
    });
  }
}

struct Suite {
  const char* name;
  int criterion;
  std::function<void(Ctx&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"algebra-laws", 1, algebra_laws},   {"group-closure", 2, group_closure},
      {"cartan", 3, cartan},               {"stabilizers", 4, stabilizers},
      {"equivariance", 5, equivariance},   {"round-trips", 6, round_trips},
      {"differentials", 7, differentials}, {"metric", 8, metric_suite},
      {"incarnation", 9, incarnation},     {"hitchin-hkr", 10, hkr},
      {"hitchin-invariance", 11, hitchin_suite}, {"cli-documents", 12, documents},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : suites()) out.push_back(s.name);
  return out;
}

std::vector<SuiteResult> run_battery(const BatteryOptions& opt) {
  std::vector<SuiteResult> out;
  for (const Suite& s : suites()) {
    if (!opt.filter.empty() && std::string(s.name).find(opt.filter) == std::string::npos) continue;
    SuiteResult r;
    r.name = s.name;
    r.criterion = s.criterion;
    auto t0 = std::chrono::steady_clock::now();
    Ctx c(r, opt);
    s.run(c);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

Json battery_json(const BatteryOptions& opt, const std::vector<SuiteResult>& res, bool per_case, bool with_times) {
  Json j;
  j["command"] = "selftest";
  j["seed"] = opt.seed;
  j["filter"] = opt.filter;
  j["tol_scale"] = opt.tol_scale;
  int total = 0;
  bool pass = true;
  double secs = 0;
  Json arr = Json::array();
  for (const SuiteResult& r : res) {
    total += r.cases;
    pass = pass && r.pass;
    secs += r.seconds;
    Json s;
    s["name"] = r.name;
    s["criterion"] = r.criterion;
    s["cases"] = r.cases;
    s["pass"] = r.pass;
    Json checks = Json::array();
    for (const CheckStat& c : r.checks) {
      Json cj;
      cj["name"] = c.name;
      cj["tol"] = c.tol;
      cj["max"] = c.max;
      cj["failed"] = c.failed;
      checks.push_back(cj);
    }
    s["checks"] = checks;
    s["failures"] = r.failures;
    if (per_case) s["case_residuals"] = r.case_residuals;
    if (with_times) s["seconds"] = r.seconds;
    arr.push_back(s);
  }
  j["cases"] = total;
  j["pass"] = pass;
  j["suites"] = arr;
  if (with_times) j["wall_seconds"] = secs;
  return j;
}

}  // namespace hsym
