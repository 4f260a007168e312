#include <algorithm>
#include <cmath>

#include "hsym/models.hpp"

namespace hsym {

namespace {

struct Frame {
  Element r;     // y^-1/2 lifted to the chart algebra
  Element yinv;  // y^-1 lifted likewise
  AntiInvolution star;
};

Frame frame(const ModelPoint& p) {
  Involutions iv = involutions(p.base);
  const Element& z = p.z;
  const double sg = p.mid.sign;
  switch (p.mid.family) {
    case ModelFamily::O11:
    case ModelFamily::AX:
    case ModelFamily::OC: {
      Element y = sg * symmetry_part(iv.s, 1, z);
      Element rt = sqrt_positive(iv.s, y);
      return {inv(rt), inv(y), iv.s};
    }
    case ModelFamily::SP2: {
      Element y = sg * split_complex(z).second.with_spec_sigma(iv.s);
      Element rt = sqrt_positive(iv.s, y);
      return {lift(inv(rt), z.spec()), lift(inv(y), z.spec()), iv.s_bar};
    }
    case ModelFamily::SP2C: {
      Element y = sg * split_quat(z).second.with_spec_sigma(iv.s_lin);
      Element rt = sqrt_positive(iv.s_bar, symmetry_part(iv.s_bar, 1, y));
      // y j = j bar(y), so the outer factors carry bar(y)
      return {lift(apply_theta(Unit::i, inv(rt)), z.spec()), lift(inv(y), z.spec()), iv.s1};
    }
    default: throw Error(Errc::Unsupported, "no metric on this model");
  }
}

double quad(const Frame& f, const Element& v) {
  return reduced_trace(f.r * apply_sigma(f.star, v) * f.yinv * v * f.r);
}

}  // namespace

double metric(const ModelPoint& z, const Element& v, const Element& w) {
  if (z.mid.kind != Kind::U) throw Error(Errc::Unsupported, "the metric is defined on half-space models");
  require_contains(z);
  if (!same_algebra(v.spec(), z.z.spec()) || !same_algebra(w.spec(), z.z.spec()))
    throw Error(Errc::SpecMismatch, "tangent vectors over the wrong algebra");
  Frame f = frame(z);
  return 0.25 * (quad(f, v + w) - quad(f, v - w));
}

double metric_norm(const ModelPoint& z, const Element& v) { return std::sqrt(std::max(0.0, metric(z, v, v))); }

double metric_at_base(ModelFamily fam, const AlgebraSpec& base, const Element& v, const Element& w) {
  Involutions iv = involutions(base);
  switch (fam) {
    case ModelFamily::O11:
    case ModelFamily::AX:
    case ModelFamily::OC:
      return 0.5 * reduced_trace(apply_sigma(iv.s, v) * w + apply_sigma(iv.s, w) * v);
    case ModelFamily::SP2: {
      auto [vx, vy] = split_complex(v);
      auto [wx, wy] = split_complex(w);
      return reduced_trace(vx * wx) + reduced_trace(vy * wy);
    }
    case ModelFamily::SP2C:
      return 0.5 * reduced_trace(apply_sigma(iv.s1, v) * w + apply_sigma(iv.s1, w) * v);
    default: throw Error(Errc::Unsupported, "no metric on this model");
  }
}

}  // namespace hsym
