#include "hsym/models.hpp"

namespace hsym {

const char* form_name(FormKind k) {
  switch (k) {
    case FormKind::OmegaSymp: return "OmegaSymp";
    case FormKind::OmegaIndef: return "OmegaIndef";
    case FormKind::Bdiag: return "Bdiag";
    case FormKind::H_sp2: return "H_sp2";
    case FormKind::H_sp2c: return "H_sp2c";
    case FormKind::OmegaH: return "OmegaH";
  }
  return "?";
}

Involutions involutions(const AlgebraSpec& base) {
  Involutions v;
  v.a = base;
  v.ac = complexify(base, 1);
  v.ah = quaternionify(v.ac, 0);
  v.s = base.sigma;
  v.s_lin = v.ac.sigma;
  v.s_bar = sigma_bar_of(v.ac);
  v.s0 = v.ah.sigma;
  v.s1 = sigma_q(base.sigma, 1);
  return v;
}

AntiInvolution hermitian_sigma(const AlgebraSpec& spec) {
  switch (spec.tower.ext) {
    case Ext::None: return spec.sigma;
    case Ext::Cplx: return sigma_bar_of(spec);
    case Ext::Quat: return sigma_q(spec.sigma, 1);
  }
  return spec.sigma;
}

AntiInvolution form_twist(const SesquilinearForm& f, const AlgebraSpec& spec) {
  AntiInvolution s = f.sigma;
  if (f.kind == FormKind::H_sp2) {
    if (spec.tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "H_sp2 lives on A_C");
    s.ext[0] = -s.ext[0];
  }
  return s;
}

Element eval_form(const SesquilinearForm& f, const Vec2& x, const Vec2& y) {
  const AlgebraSpec& sp = x.spec();
  if (!same_algebra(sp, x.x2.spec()) || !same_algebra(sp, y.x1.spec()) || !same_algebra(sp, y.x2.spec()))
    throw Error(Errc::SpecMismatch, "form arguments over different algebras");
  if (!compatible(sp.tower, f.sigma)) throw Error(Errc::SpecMismatch, "form sigma does not fit the algebra");
  auto s = [&](const Element& e) { return apply_sigma(f.sigma, e); };
  switch (f.kind) {
    case FormKind::OmegaSymp:
    case FormKind::OmegaH: return s(x.x1) * y.x2 - s(x.x2) * y.x1;
    case FormKind::OmegaIndef: return s(x.x1) * y.x2 + s(x.x2) * y.x1;
    case FormKind::Bdiag: return s(x.x2) * y.x2 - s(x.x1) * y.x1;
    case FormKind::H_sp2: {
      if (sp.tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "H_sp2 lives on A_C");
      Element w = s(apply_theta(Unit::i, x.x1)) * y.x2 - s(apply_theta(Unit::i, x.x2)) * y.x1;
      return Element::unit(sp, Unit::i) * w;
    }
    case FormKind::H_sp2c: {
      if (sp.tower.ext != Ext::Quat) throw Error(Errc::SpecMismatch, "H_sp2c lives on A_H");
      Element j = Element::unit(sp, Unit::j);
      return s(x.x1) * j * y.x2 - s(x.x2) * j * y.x1;
    }
  }
  throw Error(Errc::Unsupported, "form");
}

}  // namespace hsym
