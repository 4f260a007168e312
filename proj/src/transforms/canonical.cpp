#include "steps.hpp"

namespace hsym {

CanonicalCoords canonical_tangent_coords(const TangentVector& t) {
  const ModelPoint& p = t.at;
  if (p.mid.family != ModelFamily::SP2 || p.mid.kind != Kind::C)
    throw Error(Errc::Unsupported, "canonical coordinates are defined on the SP2 C model");
  Report rep = tangent_contains(t);
  if (!rep.pass) throw Error(Errc::NotTangent, rep.summary());
  Involutions iv = involutions(p.base);
  const Mat2 &j = p.J, &l = t.L;
  const AlgebraSpec ac = iv.ac;
  CanonicalCoords out;
  out.r = lift(-apply_sigma(iv.s, j.c), ac);
  // L(1,0) = (a,0) + J(b,0)
  Element b = inv(j.c) * l.c;
  Element a = l.a - j.a * b;
  out.l = join_complex(a, b, ac);

  ModelPoint c = p;
  Vec2 x = eigenline(c, -1);  // J_C x = x i
  Element i = Element::unit(ac, Unit::i);
  Element m = i * eval_form({FormKind::OmegaSymp, iv.s_lin}, x, theta(Unit::i, x));
  Element dm = inv(sqrt_positive(iv.s_bar, symmetry_part(iv.s_bar, 1, m.with_spec_sigma(iv.s_bar))));
  Element cf = apply_theta(Unit::i, dm).with_spec_sigma(iv.s_lin);
  out.v_plus = x * cf;
  Vec2 vb = theta(Unit::i, out.v_plus);
  out.v_minus = {i * vb.x1, i * vb.x2};
  Mat2 lc = lift(l, ac);
  right_factor(out.v_minus, lc * out.v_plus, &out.a_plus);
  right_factor(out.v_plus, lc * out.v_minus, &out.a_minus);
  out.a_plus = out.a_plus.with_spec_sigma(iv.s_lin);
  out.a_minus = out.a_minus.with_spec_sigma(iv.s_lin);
  return out;
}

Mat2 rebuild_from_split(const CanonicalCoords& c) {
  const AlgebraSpec& sp = c.a_plus.spec();
  Mat2 pm = from_columns(c.v_plus, c.v_minus);
  Mat2 mid{Element(sp), c.a_minus, c.a_plus, Element(sp)};
  return pm * mid * inv(pm);
}

}  // namespace hsym
