#include <cmath>

#include "doctest.h"
#include "hsym/rng.hpp"
#include "hsym/transforms.hpp"

using namespace hsym;

namespace {

const ModelFamily kFamilies[] = {ModelFamily::O11, ModelFamily::AX, ModelFamily::OC, ModelFamily::SP2,
                                 ModelFamily::SP2C};

std::vector<ModelId> ids(ModelFamily f) {
  return {{f, Kind::C, 1}, {f, Kind::P, 1}, {f, Kind::P, -1}, {f, Kind::U, 1}, {f, Kind::U, -1}, {f, Kind::B, 1}};
}

std::vector<AlgebraSpec> bases() {
  std::vector<AlgebraSpec> out;
  for (int n = 1; n <= 2; ++n)
    for (const AlgebraSpec& a : {real_matrices(n), complex_matrices(n, true), quaternion_matrices(n, 1)})
      out.push_back(a);
  return out;
}

std::string label(const ModelId& m) {
  return std::string(model_family_name(m.family)) + "/" + kind_name(m.kind) + (m.sign > 0 ? "+" : "-");
}

double point_dist(const ModelPoint& p, const ModelPoint& q) {
  switch (p.mid.kind) {
    case Kind::C: return dist(p.J, q.J);
    case Kind::P: return right_factor(p.x, q.x, nullptr) / std::max(1.0, norm(q.x));
    default: return dist(p.z, q.z);
  }
}

double point_size(const ModelPoint& p) {
  switch (p.mid.kind) {
    case Kind::C: return norm(p.J);
    case Kind::P: return 1.0;
    default: return norm(p.z);
  }
}

Element cplx(const AlgebraSpec& ac, double re, double im) {
  return Element::scalar(ac, re) + Element::unit(ac, Unit::i, im);
}

// A point whose conversions stay well conditioned enough for 1e-8 checks.
ModelPoint tame_point(const ModelId& mid, const AlgebraSpec& a, Rng& rng) {
  for (;;) {
    ModelPoint p = sample_point(mid, a, rng);
    ModelPoint c = convert(p, {mid.family, Kind::C, 1});
    if (norm(c.J) < 30.0) return p;
  }
}

double sym_off(const AntiInvolution& s, const Element& a) { return norm(a - apply_sigma(s, a)); }

}  // namespace

TEST_CASE("SP2 example chain") {
  AlgebraSpec r = real_matrices(1), rc = complexify(r, 1);
  ModelPoint j0 = basepoint({ModelFamily::SP2, Kind::C, 1}, r);
  ModelPoint p = convert(j0, {ModelFamily::SP2, Kind::P, 1});
  CHECK(line_equal(p.x, {Element::unit(rc, Unit::i), Element::identity(rc)}));
  ModelPoint u = convert(p, {ModelFamily::SP2, Kind::U, 1});
  CHECK(dist(u.z, Element::unit(rc, Unit::i)) < 1e-12);
  ModelPoint b = convert(u, {ModelFamily::SP2, Kind::B, 1});
  CHECK(norm(b.z) < 1e-12);
  CHECK(norm(convert(p, {ModelFamily::SP2, Kind::B, 1}).z) < 1e-12);
  ModelPoint back = convert(b, {ModelFamily::SP2, Kind::C, 1});
  CHECK(dist(back.J, j0.J) < 1e-12);
  ModelPoint pm = convert(j0, {ModelFamily::SP2, Kind::P, -1});
  CHECK(line_equal(pm.x, {Element::unit(rc, Unit::i, -1), Element::identity(rc)}));
}

TEST_CASE("O11 example chain") {
  AlgebraSpec r = real_matrices(1);
  Element one = Element::identity(r);
  ModelPoint j0 = basepoint({ModelFamily::O11, Kind::C, 1}, r);
  ModelPoint p = convert(j0, {ModelFamily::O11, Kind::P, 1});
  CHECK(line_equal(p.x, {one, one}));
  CHECK(dist(convert(p, {ModelFamily::O11, Kind::U, 1}).z, one) < 1e-12);
  ModelPoint pm = convert(j0, {ModelFamily::O11, Kind::P, -1});
  CHECK(line_equal(pm.x, {one, -one}));
  CHECK(dist(convert(pm, {ModelFamily::O11, Kind::U, -1}).z, -one) < 1e-12);
}

TEST_CASE("eigenline examples and residuals") {
  AlgebraSpec r = real_matrices(1), rc = complexify(r, 1), rh = quaternionify(rc, 0);
  ModelPoint sp = basepoint({ModelFamily::SP2, Kind::C, 1}, r);
  CHECK(line_equal(eigenline(sp, 1), {Element::unit(rc, Unit::i), Element::identity(rc)}));
  ModelPoint o = basepoint({ModelFamily::O11, Kind::C, 1}, r);
  Vec2 ox = eigenline(o, 1);
  CHECK(dist(ox.x1, Element::identity(r)) < 1e-12);
  ModelPoint q = basepoint({ModelFamily::SP2C, Kind::C, 1}, r);
  CHECK(line_equal(eigenline(q, 1), {Element::unit(rh, Unit::j), Element::identity(rh)}));
  CHECK(line_equal(eigenline(q, -1), {Element::unit(rh, Unit::j, -1), Element::identity(rh)}));

  Rng rng(3);
  for (const AlgebraSpec& a : bases())
    for (ModelFamily f : kFamilies) {
      ModelId cid{f, Kind::C, 1};
      if (!model_supported(cid, a)) continue;
      for (int k = 0; k < 5; ++k) {
        ModelPoint c = sample_point(cid, a, rng);
        for (int s : {1, -1}) {
          Vec2 x = eigenline(c, s);
          CHECK(is_regular(x));
          const AlgebraSpec& pa = x.spec();
          Vec2 res;
          if (f == ModelFamily::SP2)
            res = lift(c.J, pa) * x - x * Element::unit(pa, Unit::i, -s);
          else if (f == ModelFamily::SP2C) {
            // J_H(x + y j) = J theta(x) + J theta(y) j, written out per component
            auto [c1, q1] = split_quat(x.x1);
            auto [c2, q2] = split_quat(x.x2);
            const AntiInvolution& sg = c.J.spec().sigma;
            Vec2 xc = with_sigma(Vec2{c1, c2}, sg), xq = with_sigma(Vec2{q1, q2}, sg);
            Vec2 jc = c.J * theta(Unit::i, xc), jq = c.J * theta(Unit::i, xq);
            Vec2 jx{join_quat(jc.x1, jq.x1, pa), join_quat(jc.x2, jq.x2, pa)};
            res = jx - x * Element::unit(pa, Unit::j, -s);
          } else {
            res = c.J * x - s * x;
          }
          CHECK(norm(res) < 1e-9 * std::max(1.0, norm(c.J)) * std::max(1.0, norm(x)));
          CHECK(contains(make_p({f, Kind::P, s}, a, x)).pass);
        }
      }
    }
}

TEST_CASE("SP2 eigenline agrees with e1 + i J e1") {
  Rng rng(4);
  for (const AlgebraSpec& a : bases()) {
    ModelId cid{ModelFamily::SP2, Kind::C, 1};
    if (!model_supported(cid, a)) continue;
    AlgebraSpec ac = complexify(a, 1);
    for (int k = 0; k < 10; ++k) {
      ModelPoint c = sample_point(cid, a, rng);
      for (int s : {1, -1}) {
        Vec2 e1{Element::identity(a), Element(a)};
        Vec2 je = c.J * e1;
        Element i = Element::unit(ac, Unit::i, s);
        Vec2 fast{lift(e1.x1, ac) + i * lift(je.x1, ac), lift(e1.x2, ac) + i * lift(je.x2, ac)};
        CHECK(line_equal(eigenline(c, s), fast, 1e-9));
      }
    }
  }
}

TEST_CASE("round trips and path independence") {
  Rng rng(5);
  for (const AlgebraSpec& a : bases())
    for (ModelFamily f : kFamilies) {
      if (!model_supported({f, Kind::C, 1}, a)) continue;
      for (const ModelId& from : ids(f))
        for (int k = 0; k < 3; ++k) {
          ModelPoint p = tame_point(from, a, rng);
          for (const ModelId& to : ids(f)) {
            INFO(label(from), " -> ", label(to), " over ", describe(a));
            ModelPoint q = convert(p, to);
            CHECK(contains(q).pass);
            ModelPoint back = convert(q, from);
            CHECK(point_dist(back, p) < 1e-8 * std::max(1.0, point_size(p)));
            for (const ModelId& via : ids(f)) {
              ModelPoint r = convert(convert(p, via), to);
              if (to.kind == Kind::P)
                CHECK(line_equal(r.x, q.x, 1e-8));
              else
                CHECK(point_dist(r, q) < 1e-8 * std::max(1.0, point_size(q)));
            }
          }
        }
    }
}

TEST_CASE("C to P to C recovers J") {
  Rng rng(6);
  for (const AlgebraSpec& a : bases())
    for (ModelFamily f : kFamilies) {
      ModelId cid{f, Kind::C, 1};
      if (!model_supported(cid, a)) continue;
      for (int k = 0; k < 10; ++k) {
        ModelPoint c = tame_point(cid, a, rng);
        for (int s : {1, -1}) {
          ModelPoint back = convert(convert(c, {f, Kind::P, s}), cid);
          CHECK(dist(back.J, c.J) < 1e-9 * std::max(1.0, norm(c.J)));
        }
      }
    }
}

TEST_CASE("conversions are equivariant") {
  for (ModelFamily f : kFamilies)
    for (const MapId& m : primitive_maps(f)) {
      Rng rng(case_seed(7, label(m.from) + label(m.to), 0));
      int done = 0;
      for (int k = 0; done < 200; ++k) {
        AlgebraSpec a = bases()[k % 6];
        if (!model_supported(m.from, a)) continue;
        ++done;
        ModelPoint p = tame_point(m.from, a, rng);
        Mat2 g = sample_model_group(f, a, rng);
        ModelPoint lhs = convert(act(g, p), m.to);
        ModelPoint rhs = act(g, convert(p, m.to));
        INFO(label(m.from), " -> ", label(m.to), " over ", describe(a));
        if (m.to.kind == Kind::P)
          CHECK(line_equal(lhs.x, rhs.x, 1e-7));
        else
          CHECK(point_dist(lhs, rhs) < 1e-7 * std::max(1.0, point_size(rhs)));
      }
    }
}

TEST_CASE("differential examples") {
  AlgebraSpec r = real_matrices(1);
  Element one = Element::identity(r);
  ModelPoint j0 = basepoint({ModelFamily::O11, Kind::C, 1}, r);
  TangentVector t = tangent_c(j0, mat2_real(r, 1, 0, 0, -1));
  TangentVector d = differential(t, {ModelFamily::O11, Kind::P, 1});
  TangentVector want = tangent_p(d.at, {0.5 * one, -0.5 * one});
  CHECK(line_equal(d.at.x, {one, one}));
  CHECK(tangent_distance(d, want) < 1e-12);
  CHECK(tangent_size(d) > 0.1);

  Rng rng(8);
  for (ModelFamily f : kFamilies)
    for (const ModelId& from : ids(f)) {
      ModelPoint p = sample_point(from, r, rng);
      TangentVector z = sample_tangent(p, rng);
      z.L = 0.0 * z.L;
      z.w = 0.0 * z.w;
      z.v = 0.0 * z.v;
      if (from.kind != Kind::C) z.L = Mat2{};
      if (from.kind != Kind::P) z.w = Vec2{};
      if (from.kind == Kind::C || from.kind == Kind::P) z.v = Element{};
      for (const ModelId& to : ids(f)) CHECK(tangent_size(differential(z, to)) == 0.0);
    }
}

TEST_CASE("differentials match finite differences") {
  for (ModelFamily f : kFamilies)
    for (const MapId& m : primitive_maps(f)) {
      Rng rng(case_seed(9, label(m.from) + label(m.to), 0));
      int done = 0;
      for (int k = 0; done < 100; ++k) {
        AlgebraSpec a = bases()[k % 6];
        if (!model_supported(m.from, a)) continue;
        ++done;
        ModelPoint p = tame_point(m.from, a, rng);
        TangentVector t = sample_tangent(p, rng);
        TangentVector an = differential(t, m.to);
        TangentVector fd = differential_fd(t, m.to);
        INFO(label(m.from), " -> ", label(m.to), " over ", describe(a));
        CHECK(tangent_distance(an, fd) < 1e-5 * std::max(1.0, tangent_size(an)));
        CHECK(tangent_contains(an).pass);
      }
    }
}

TEST_CASE("finite differences converge at second order") {
  AlgebraSpec r = real_matrices(1);
  ModelId cid{ModelFamily::SP2, Kind::C, 1}, uid{ModelFamily::SP2, Kind::U, 1};
  ModelPoint c = sample_point(cid, r, 11);
  TangentVector t = sample_tangent(c, 12);
  TangentVector an = differential(t, uid);
  double e1 = tangent_distance(an, differential_fd(t, uid, 1e-2, false));
  double e2 = tangent_distance(an, differential_fd(t, uid, 5e-3, false));
  CHECK(e2 > 0.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("affine maps differentiate exactly") {
  AlgebraSpec r = real_matrices(2);
  Rng rng(13);
  ModelId uid{ModelFamily::O11, Kind::U, 1};
  ModelPoint p = sample_point(uid, r, rng);
  TangentVector t = sample_tangent(p, rng);
  CHECK(tangent_distance(differential(t, uid), differential_fd(t, uid, 0.1)) < 1e-12 * std::max(1.0, norm(t.v)));
  Element a = sample(r, Constraint::Invertible, rng), b = sample(r, Constraint::Free, rng);
  Mat2 g{a, b, Element(r), inv(a)};
  double h = 0.1;
  Element fd = (moebius(g, p.z + h * t.v) - moebius(g, p.z - h * t.v)) / (2 * h);
  CHECK(dist(fd, moebius_tangent(g, p.z, t.v)) < 1e-12 * std::max(1.0, norm(fd)));
}

TEST_CASE("chain rule") {
  Rng rng(14);
  for (const AlgebraSpec& a : bases())
    for (ModelFamily f : kFamilies) {
      if (!model_supported({f, Kind::C, 1}, a)) continue;
      for (const ModelId& from : ids(f)) {
        ModelPoint p = tame_point(from, a, rng);
        TangentVector t = sample_tangent(p, rng);
        for (const ModelId& via : ids(f))
          for (const ModelId& to : ids(f)) {
            TangentVector direct = differential(t, to);
            TangentVector comp = differential(differential(t, via), to);
            INFO(label(from), " -> ", label(via), " -> ", label(to), " over ", describe(a));
            CHECK(tangent_distance(direct, comp) < 1e-8 * std::max(1.0, tangent_size(direct)));
          }
      }
    }
}

TEST_CASE("metric pulls back through the B chart") {
  Rng rng(15);
  for (const AlgebraSpec& a : bases())
    for (ModelFamily f : kFamilies) {
      ModelId uid{f, Kind::U, 1}, bid{f, Kind::B, 1};
      if (!model_supported(uid, a)) continue;
      for (int k = 0; k < 5; ++k) {
        ModelPoint b = sample_point(bid, a, rng);
        TangentVector v = sample_tangent(b, rng), w = sample_tangent(b, rng);
        TangentVector dv = differential(v, uid), dw = differential(w, uid);
        double g = metric(dv.at, dv.v, dw.v);
        TangentVector bv = differential(dv, bid), bw = differential(dw, bid);
        TangentVector uv = differential(bv, uid), uw = differential(bw, uid);
        double g2 = metric(uv.at, uv.v, uw.v);
        CHECK(std::abs(g - g2) < 1e-8 * std::max(1.0, std::abs(g)));
        // the B tangent at 0 measured with the base formula
        ModelPoint u0 = basepoint(uid, a);
        TangentVector t0 = sample_tangent(u0, rng);
        TangentVector tb = differential(t0, bid);
        TangentVector tu = differential(tb, uid);
        double m0 = metric(u0, t0.v, t0.v), m1 = metric(tu.at, tu.v, tu.v);
        CHECK(std::abs(m0 - m1) < 1e-8 * std::max(1.0, m0));
      }
    }
}

TEST_CASE("canonical coordinates") {
  AlgebraSpec r = real_matrices(1);
  ModelId cid{ModelFamily::SP2, Kind::C, 1};
  ModelPoint j0 = basepoint(cid, r);
  CanonicalCoords z = canonical_tangent_coords(tangent_c(j0, mat2_zero(r)));
  CHECK(norm(z.l) == 0.0);
  CHECK(norm(z.a_plus) < 1e-15);
  CHECK(norm(z.a_minus) < 1e-15);
  CHECK(z.r(0, 0, 0) == doctest::Approx(1.0));

  Rng rng(16);
  for (int n = 1; n <= 3; ++n) {
    AlgebraSpec a = real_matrices(n);
    Involutions iv = involutions(a);
    for (int k = 0; k < 20; ++k) {
      ModelPoint c = tame_point(cid, a, rng);
      TangentVector t = sample_tangent(c, rng);
      CanonicalCoords cc = canonical_tangent_coords(t);
      double sc = std::max(1.0, norm(t.L)) * std::max(1.0, norm(c.J));
      CHECK(sym_off(iv.s_lin, cc.r * cc.l) < 1e-10 * sc * sc);
      CHECK(sym_off(iv.s_lin, cc.a_plus) < 1e-9 * sc * sc);
      CHECK(sym_off(iv.s_lin, cc.a_minus) < 1e-9 * sc * sc);
      CHECK(dist(cc.a_minus, apply_theta(Unit::i, cc.a_plus)) < 1e-9 * sc * sc);
      Element w = eval_form({FormKind::OmegaSymp, iv.s_lin}, cc.v_plus, cc.v_minus);
      CHECK(dist(w, Element::identity(w.spec())) < 1e-9 * sc);
      CHECK(dist(rebuild_from_split(cc), lift(t.L, iv.ac)) < 1e-9 * sc);
    }
  }
}

TEST_CASE("errors") {
  AlgebraSpec r = real_matrices(1);
  ModelId uid{ModelFamily::SP2, Kind::U, 1};
  AlgebraSpec rc = complexify(r, 1);
  ModelPoint bad = make_z(uid, r, cplx(rc, 0, -1));
  CHECK_THROWS_WITH_AS(convert(bad, {ModelFamily::SP2, Kind::B, 1}), doctest::Contains("NotInModel"), Error);
  ModelPoint u = basepoint(uid, r);
  TangentVector ok = tangent_z(u, cplx(rc, 1, 0));
  CHECK_NOTHROW(differential(ok, {ModelFamily::SP2, Kind::C, 1}));
  ModelId ax{ModelFamily::AX, Kind::U, 1};
  AlgebraSpec r2 = real_matrices(2);
  ModelPoint au = basepoint(ax, r2);
  Element skew(r2);
  skew(0, 1, 0) = 1;
  skew(1, 0, 0) = -1;
  CHECK_THROWS_WITH_AS(differential(tangent_z(au, skew), {ModelFamily::AX, Kind::C, 1}), doctest::Contains("NotTangent"),
                       Error);
  ModelPoint cp = basepoint({ModelFamily::CPT_KO11, Kind::P, 1}, r);
  CHECK_THROWS_WITH_AS(convert(cp, {ModelFamily::CPT_KO11, Kind::B, 1}), doctest::Contains("Unsupported"), Error);
  ModelPoint o = basepoint({ModelFamily::O11, Kind::U, 1}, r);
  TangentVector big = tangent_z(o, Element::scalar(r, 1.0));
  CHECK_THROWS_WITH_AS(differential_fd(big, {ModelFamily::O11, Kind::C, 1}, 1.0), doctest::Contains("StepTooLarge"),
                       Error);
}
