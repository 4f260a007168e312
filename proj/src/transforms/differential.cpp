#include "steps.hpp"

namespace hsym {

using namespace detail;

namespace {

TangentVector d_reconstruct(const TangentVector& t, const ModelPoint& c) {
  const ModelPoint& p = t.at;
  const ModelFamily f = p.mid.family;
  const double s = p.mid.sign;
  const Vec2 &x = p.x, &w = t.w;
  const Mat2& j = c.J;
  if (orthogonal_family(f)) {
    const AntiInvolution& sg = p.base.sigma;
    Element q = inv(apply_sigma(sg, x.x2));
    Element one = Element::identity(x.spec());
    Vec2 y{-(q * apply_sigma(sg, x.x1)), one};
    Vec2 yd{q * apply_sigma(sg, w.x2) * q * apply_sigma(sg, x.x1) - q * apply_sigma(sg, w.x1), Element(x.spec())};
    Mat2 pm = from_columns(x, y), pd = from_columns(w, yd);
    Mat2 pinv = inv(pm);
    Mat2 l = pd * mat2_real(x.spec(), s, 0, 0, -s) * pinv - j * pd * pinv;
    return tangent_c(c, with_sigma(l, j.spec().sigma));
  }
  if (f == ModelFamily::SP2) {
    auto parts = [](const Vec2& v) {
      auto [r1, i1] = split_complex(v.x1);
      auto [r2, i2] = split_complex(v.x2);
      return std::pair<Vec2, Vec2>{Vec2{r1, r2}, Vec2{i1, i2}};
    };
    auto [xr, xi] = parts(x);
    auto [wr, wi] = parts(w);
    Mat2 rinv = inv(from_columns(xr, xi));
    Mat2 l = s * from_columns(wi, -1.0 * wr) * rinv - j * from_columns(wr, wi) * rinv;
    return tangent_c(c, with_sigma(l, j.spec().sigma));
  }
  if (f == ModelFamily::SP2C) {
    const AntiInvolution& sg = j.spec().sigma;
    auto parts = [&](const Vec2& v) {
      auto [c1, q1] = split_quat(v.x1);
      auto [c2, q2] = split_quat(v.x2);
      return std::pair<Vec2, Vec2>{with_sigma(Vec2{c1, c2}, sg), with_sigma(Vec2{q1, q2}, sg)};
    };
    auto [xc, xq] = parts(x);
    auto [wc, wq] = parts(w);
    Mat2 rinv = inv(from_columns(theta(Unit::i, xc), theta(Unit::i, xq)));
    Mat2 rd = from_columns(theta(Unit::i, wc), theta(Unit::i, wq));
    Mat2 l = s * from_columns(wq, -1.0 * wc) * rinv - j * rd * rinv;
    return tangent_c(c, with_sigma(l, sg));
  }
  throw Error(Errc::Unsupported, "compact models");
}

TangentVector d_eigenline(const TangentVector& t, const ModelPoint& p) {
  const ModelFamily f = t.at.mid.family;
  const double h = 0.5 * p.mid.sign;
  const Vec2& x = p.x;
  const AlgebraSpec& pa = x.spec();
  if (orthogonal_family(f)) return tangent_p(p, h * (t.L * x));
  if (f == ModelFamily::SP2) return tangent_p(p, h * ((lift(t.L, pa) * x) * Element::unit(pa, Unit::i)));
  if (f == ModelFamily::SP2C)
    return tangent_p(p, h * (apply_quat_structure(t.L, x) * Element::unit(pa, Unit::j)));
  throw Error(Errc::Unsupported, "compact models");
}

}  // namespace

namespace detail {

TangentVector dstep(const TangentVector& t, const ModelId& to) {
  const ModelPoint& p = t.at;
  ModelPoint q = step(p, to);
  const Kind k = p.mid.kind, tk = to.kind;
  if (k == Kind::C && tk == Kind::P) return d_eigenline(t, q);
  if (k == Kind::P && tk == Kind::C) return d_reconstruct(t, q);
  if (k == Kind::P && tk == Kind::U)
    return tangent_z(q, (t.w.x1 - q.z * t.w.x2) * inv(p.x.x2));
  if (k == Kind::U && tk == Kind::P) return tangent_p(q, {t.v, Element(t.v.spec())});
  Mat2 c = b_conjugator(p.mid.family, p.base);
  if (k == Kind::P && tk == Kind::B) {
    Mat2 ci = inv(c);
    Vec2 y = ci * p.x, u = ci * t.w;
    return tangent_z(q, (u.x1 - q.z * u.x2) * inv(y.x2));
  }
  if (k == Kind::B && tk == Kind::P) return tangent_p(q, c * Vec2{t.v, Element(t.v.spec())});
  if (k == Kind::U && tk == Kind::B) return tangent_z(q, moebius_tangent(inv(c), p.z, t.v));
  if (k == Kind::B && tk == Kind::U) return tangent_z(q, moebius_tangent(c, p.z, t.v));
  throw Error(Errc::Unsupported, "not a primitive map");
}

}  // namespace detail

TangentVector differential(const TangentVector& t, const ModelId& to) {
  Report r = tangent_contains(t);
  if (!r.pass) throw Error(Errc::NotTangent, r.summary());
  if (is_compact(t.at.mid.family)) throw Error(Errc::Unsupported, "maps between compact models");
  check_model(to, t.at.base);
  std::vector<ModelId> path = route(t.at.mid, to);
  TangentVector cur = t;
  for (std::size_t i = 1; i < path.size(); ++i) cur = dstep(cur, path[i]);
  return cur;
}

double tangent_distance(const TangentVector& a, const TangentVector& b) {
  switch (a.at.mid.kind) {
    case Kind::C: return dist(a.L, b.L);
    case Kind::P: {
      // x_b = x_a f carries w_a to w_a f
      Element f;
      right_factor(a.at.x, b.at.x, &f);
      return right_factor(b.at.x, a.w * f - b.w, nullptr);
    }
    default: return dist(a.v, b.v);
  }
}

double tangent_size(const TangentVector& t) {
  switch (t.at.mid.kind) {
    case Kind::C: return norm(t.L);
    case Kind::P: return right_factor(t.at.x, t.w, nullptr);
    default: return norm(t.v);
  }
}

}  // namespace hsym
