#include "steps.hpp"

namespace hsym {

namespace {

// Point at curve parameter tau through t.at with velocity t.
ModelPoint curve(const TangentVector& t, double tau) {
  ModelPoint p = t.at;
  switch (p.mid.kind) {
    case Kind::C: {
      const Mat2& j = p.J;
      if (p.anti_linear) {
        Mat2 x = -0.5 * (t.L * theta(Unit::i, j));
        p.J = expm(tau * x) * j * theta(Unit::i, expm(-tau * x));
      } else {
        Mat2 x = 0.5 * (t.L * inv(j));
        p.J = expm(tau * x) * j * expm(-tau * x);
      }
      p.J = with_sigma(p.J, j.spec().sigma);
      return p;
    }
    case Kind::P: p.x = p.x + tau * t.w; return p;
    case Kind::U:
    case Kind::B: {
      Element a = p.z + tau * t.v;
      if (p.mid.family == ModelFamily::OC && p.mid.kind == Kind::U) {
        const AntiInvolution& s = p.base.sigma;
        a = a * inv(sqrt_positive(s, symmetry_part(s, 1, apply_sigma(s, a) * a)));
      }
      p.z = a;
      return p;
    }
  }
  return p;
}

struct Payload {
  Mat2 L;
  Vec2 w;
  Element v;
};

Payload payload(const ModelPoint& p) {
  switch (p.mid.kind) {
    case Kind::C: return {p.J, {}, {}};
    case Kind::P: return {{}, p.x, {}};
    default: return {{}, {}, p.z};
  }
}

Payload central(const TangentVector& t, const ModelId& to, double h) {
  ModelPoint a, b;
  try {
    a = convert_unchecked(curve(t, h), to);
    b = convert_unchecked(curve(t, -h), to);
  } catch (const Error& e) {
    if (e.code() == Errc::Unsupported || e.code() == Errc::SpecMismatch) throw;
    throw Error(Errc::StepTooLarge, std::string("curve left the model: ") + e.what());
  }
  Payload pa = payload(a), pb = payload(b);
  const double k = 0.5 / h;
  switch (to.kind) {
    case Kind::C: return {k * (pa.L - pb.L), {}, {}};
    case Kind::P: return {{}, k * (pa.w - pb.w), {}};
    default: return {{}, {}, k * (pa.v - pb.v)};
  }
}

}  // namespace

TangentVector differential_fd(const TangentVector& t, const ModelId& to, double h, bool richardson) {
  Report r = tangent_contains(t);
  if (!r.pass) throw Error(Errc::NotTangent, r.summary());
  ModelPoint q = convert(t.at, to);
  Payload d = central(t, to, h);
  if (richardson) {
    Payload d2 = central(t, to, 0.5 * h);
    const double a = 4.0 / 3.0, b = -1.0 / 3.0;
    switch (to.kind) {
      case Kind::C: d.L = a * d2.L + b * d.L; break;
      case Kind::P: d.w = a * d2.w + b * d.w; break;
      default: d.v = a * d2.v + b * d.v; break;
    }
  }
  TangentVector out;
  out.at = q;
  switch (to.kind) {
    case Kind::C: out.L = with_sigma(d.L, q.J.spec().sigma); break;
    case Kind::P: out.w = with_sigma(d.w, q.x.spec().sigma); break;
    default: out.v = d.v.with_spec_sigma(q.z.spec().sigma); break;
  }
  return out;
}

}  // namespace hsym
