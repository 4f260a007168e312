#include <cmath>

#include "hsym/models.hpp"
#include "hsym/rng.hpp"

namespace hsym {

const char* model_family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::O11: return "O11";
    case ModelFamily::AX: return "AX";
    case ModelFamily::OC: return "OC";
    case ModelFamily::SP2: return "SP2";
    case ModelFamily::SP2C: return "SP2C";
    case ModelFamily::CPT_KO11: return "CPT_KO11";
    case ModelFamily::CPT_KSP2: return "CPT_KSP2";
    case ModelFamily::CPT_KSP2C: return "CPT_KSP2C";
  }
  return "?";
}

ModelFamily parse_model_family(const std::string& s) {
  for (ModelFamily f : {ModelFamily::O11, ModelFamily::AX, ModelFamily::OC, ModelFamily::SP2, ModelFamily::SP2C,
                        ModelFamily::CPT_KO11, ModelFamily::CPT_KSP2, ModelFamily::CPT_KSP2C})
    if (s == model_family_name(f)) return f;
  throw Error(Errc::ParseError, "unknown model family '" + s + "'");
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::C: return "C";
    case Kind::P: return "P";
    case Kind::U: return "U";
    case Kind::B: return "B";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::C, Kind::P, Kind::U, Kind::B})
    if (s == kind_name(k) || s == std::string(kind_name(k)) + "model") return k;
  throw Error(Errc::ParseError, "unknown model kind '" + s + "'");
}

bool is_compact(ModelFamily f) {
  return f == ModelFamily::CPT_KO11 || f == ModelFamily::CPT_KSP2 || f == ModelFamily::CPT_KSP2C;
}

namespace {

bool orthogonal_type(ModelFamily f) {
  return f == ModelFamily::O11 || f == ModelFamily::AX || f == ModelFamily::OC || f == ModelFamily::CPT_KO11;
}
bool sp2_type(ModelFamily f) { return f == ModelFamily::SP2 || f == ModelFamily::CPT_KSP2; }

std::string tag(const ModelId& m) {
  std::string s = std::string(model_family_name(m.family)) + "/" + kind_name(m.kind);
  if (m.kind == Kind::P || m.kind == Kind::U) s += m.sign > 0 ? "+" : "-";
  return s;
}

double sym_off(const AntiInvolution& s, const Element& a, int sign) {
  return norm(a - double(sign) * apply_sigma(s, a));
}

// Symmetric-part residual plus the smallest eigenvalue of sign * a.
void cone(Report& r, const std::string& what, const AntiInvolution& s, const Element& a, int sign, double tol) {
  r.add(what + " sigma-symmetric", sym_off(s, a, 1), tol);
  Element h = double(sign) * symmetry_part(s, 1, a);
  double lo = min_eigenvalue(s, h);
  r.check(what + (sign > 0 ? " positive (min eig)" : " negative (-min eig)"), lo, lo > kEigenTol);
}

void need_spec(const Element& e, const AlgebraSpec& want, const char* what) {
  if (!same_algebra(e.spec(), want))
    throw Error(Errc::SpecMismatch, std::string(what) + " over " + describe(e.spec()) + ", expected " + describe(want));
}

Mat2 omega_s(const AlgebraSpec& a) { return mat2_real(a, 0, 1, -1, 0); }
Mat2 omega_i(const AlgebraSpec& a) { return mat2_real(a, 0, 1, 1, 0); }
Mat2 b_diag(const AlgebraSpec& a) { return mat2_real(a, -1, 0, 0, 1); }

Element one_of(const AlgebraSpec& a) { return Element::identity(a); }

double scale(double x) { return 1.0 + x * x; }

}  // namespace

void check_model(const ModelId& mid, const AlgebraSpec& base) {
  validate(base);
  if (base.tower.ext != Ext::None || base.tower.central || !is_hermitian_pair(base.tower, base.sigma))
    throw Error(Errc::SpecMismatch, "models need an unextended Hermitian base algebra, got " + describe(base));
  if (is_compact(mid.family) && mid.kind != Kind::P && mid.kind != Kind::B)
    throw Error(Errc::Unsupported, std::string(model_family_name(mid.family)) + " has no " + kind_name(mid.kind) +
                                       " model");
  if ((mid.kind == Kind::P || mid.kind == Kind::U) && mid.sign != 1 && mid.sign != -1)
    throw Error(Errc::SpecMismatch, "model sign must be +1 or -1");
  if (!orthogonal_type(mid.family) && base.tower.ground != Ground::R)
    throw Error(Errc::Unsupported, std::string(model_family_name(mid.family)) +
                                       " models need a real base: the complexified cone is not available over " +
                                       describe(base));
}

bool model_supported(const ModelId& mid, const AlgebraSpec& base) {
  try {
    check_model(mid, base);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::Unsupported) return false;
    throw;
  }
}

GroupId model_group(ModelFamily f, const AlgebraSpec& base) {
  switch (f) {
    case ModelFamily::O11: return {Family::O11, base};
    case ModelFamily::AX: return {Family::AX_HAT, base};
    case ModelFamily::OC: return {Family::OC_HAT, base};
    case ModelFamily::SP2: return {Family::SP2, base};
    case ModelFamily::SP2C: return {Family::SP2, complexify(base, 1)};
    case ModelFamily::CPT_KO11: return {Family::KO11, base};
    case ModelFamily::CPT_KSP2: return {Family::KSP2, base};
    case ModelFamily::CPT_KSP2C: return {Family::KSP2C, complexify(base, 1)};
  }
  throw Error(Errc::Unsupported, "model group");
}

AlgebraSpec point_algebra(const ModelId& mid, const AlgebraSpec& base) {
  check_model(mid, base);
  if (mid.kind == Kind::C) return model_group(mid.family, base).over;
  switch (mid.family) {
    case ModelFamily::O11:
    case ModelFamily::AX:
    case ModelFamily::OC:
    case ModelFamily::CPT_KO11: return base;
    case ModelFamily::SP2: return complexify(base, 1);
    case ModelFamily::SP2C: return quaternionify(complexify(base, 1), 0);
    case ModelFamily::CPT_KSP2: return mid.kind == Kind::P ? base : complexify(base, 1);
    case ModelFamily::CPT_KSP2C:
      return mid.kind == Kind::P ? complexify(base, 1) : quaternionify(complexify(base, 1), 0);
  }
  throw Error(Errc::Unsupported, "point algebra");
}

Mat2 b_conjugator(ModelFamily f, const AlgebraSpec& base) {
  if (orthogonal_type(f)) return conjugator(ConjugatorId::R_o11, base);
  if (sp2_type(f)) return conjugator(ConjugatorId::T_sp2, complexify(base, 1));
  return conjugator(ConjugatorId::Q_sp2c, quaternionify(complexify(base, 1), 0));
}

ModelPoint make_c(const ModelId& mid, const AlgebraSpec& base, const Mat2& j) {
  if (mid.kind != Kind::C) throw Error(Errc::SpecMismatch, "make_c needs a C model id");
  check_model(mid, base);
  AlgebraSpec want = point_algebra(mid, base);
  for (const Element* e : {&j.a, &j.b, &j.c, &j.d}) need_spec(*e, want, "J");
  ModelPoint p;
  p.mid = mid;
  p.base = base;
  p.J = with_sigma(j, want.sigma);
  p.anti_linear = mid.family == ModelFamily::SP2C;
  return p;
}

ModelPoint make_p(const ModelId& mid, const AlgebraSpec& base, const Vec2& x) {
  if (mid.kind != Kind::P) throw Error(Errc::SpecMismatch, "make_p needs a P model id");
  AlgebraSpec want = point_algebra(mid, base);
  need_spec(x.x1, want, "x1");
  need_spec(x.x2, want, "x2");
  ModelPoint p;
  p.mid = mid;
  p.base = base;
  p.x = with_sigma(x, want.sigma);
  return p;
}

ModelPoint make_z(const ModelId& mid, const AlgebraSpec& base, const Element& z) {
  if (mid.kind != Kind::U && mid.kind != Kind::B) throw Error(Errc::SpecMismatch, "make_z needs a U or B model id");
  AlgebraSpec want = point_algebra(mid, base);
  need_spec(z, want, "z");
  ModelPoint p;
  p.mid = mid;
  p.base = base;
  p.z = z.with_spec_sigma(want.sigma);
  return p;
}

TangentVector tangent_c(const ModelPoint& p, const Mat2& l) {
  if (p.mid.kind != Kind::C) throw Error(Errc::SpecMismatch, "C tangent at a non-C point");
  for (const Element* e : {&l.a, &l.b, &l.c, &l.d}) need_spec(*e, p.J.spec(), "L");
  TangentVector t;
  t.at = p;
  t.L = with_sigma(l, p.J.spec().sigma);
  return t;
}

TangentVector tangent_p(const ModelPoint& p, const Vec2& w) {
  if (p.mid.kind != Kind::P) throw Error(Errc::SpecMismatch, "P tangent at a non-P point");
  need_spec(w.x1, p.x.spec(), "w1");
  need_spec(w.x2, p.x.spec(), "w2");
  TangentVector t;
  t.at = p;
  t.w = with_sigma(w, p.x.spec().sigma);
  return t;
}

TangentVector tangent_z(const ModelPoint& p, const Element& v) {
  if (p.mid.kind != Kind::U && p.mid.kind != Kind::B) throw Error(Errc::SpecMismatch, "chart tangent at a non-chart point");
  need_spec(v, p.z.spec(), "v");
  TangentVector t;
  t.at = p;
  t.v = v.with_spec_sigma(p.z.spec().sigma);
  return t;
}

bool is_regular(const Vec2& x) {
  AntiInvolution h = hermitian_sigma(x.spec());
  Element g = apply_sigma(h, x.x1) * x.x1 + apply_sigma(h, x.x2) * x.x2;
  return is_positive(h, symmetry_part(h, 1, g)) == Positivity::Positive;
}

namespace {

Report contains_c(const ModelPoint& p, double tol) {
  const ModelFamily f = p.mid.family;
  const Mat2& j = p.J;
  const AlgebraSpec& a = j.spec();
  const AntiInvolution& s = a.sigma;
  Mat2 id = mat2_identity(a);
  double t = tol * scale(norm(j));
  Report r;
  if (f == ModelFamily::SP2C) {
    Involutions iv = involutions(p.base);
    if (!p.anti_linear) r.fail("structure is anti-linear");
    r.add("M theta(M) = -Id", dist(j * theta(Unit::i, j), -id), t);
    Mat2 g = sigma_t(iv.s_lin, j) * omega_s(a);
    r.add("h_J sigma_bar-Hermitian", dist(g, sigma_t(iv.s_bar, g)), t);
    Element gb = to_block(g);
    double lo = min_eigenvalue(iv.s_bar, symmetry_part(iv.s_bar, 1, gb));
    r.check("h_J positive (min eig)", lo, lo > kEigenTol);
    return r;
  }
  if (p.anti_linear) r.fail("structure is linear");
  bool orth = orthogonal_type(f);
  r.add(orth ? "J^2 = Id" : "J^2 = -Id", dist(j * j, orth ? id : -id), t);
  Mat2 g = sigma_t(s, j) * (orth ? omega_i(a) : omega_s(a));
  r.add("h_J sigma-symmetric", dist(g, sigma_t(s, g)), t);
  Element gb = to_block(g);
  double lo = min_eigenvalue(s, symmetry_part(s, 1, gb));
  r.check("h_J positive (min eig)", lo, lo > kEigenTol);
  if (f == ModelFamily::AX)
    r.add("omega(J, J) = -omega", norm(sigma_t(s, j) * omega_s(a) * j + omega_s(a)), t);
  if (f == ModelFamily::OC) r.add("b(J, J) = -b", norm(sigma_t(s, j) * b_diag(a) * j + b_diag(a)), t);
  return r;
}

Report contains_p(const ModelPoint& p, double tol) {
  const ModelFamily f = p.mid.family;
  const Vec2& x = p.x;
  Involutions iv = involutions(p.base);
  double t = tol * scale(norm(x));
  Report r;
  {
    AntiInvolution h = hermitian_sigma(x.spec());
    Element g = apply_sigma(h, x.x1) * x.x1 + apply_sigma(h, x.x2) * x.x2;
    double lo = min_eigenvalue(h, symmetry_part(h, 1, g));
    r.check("regular (min eig of sigma(x)x)", lo, lo > kEigenTol);
  }
  auto zero = [&](const char* name, FormKind k, const AntiInvolution& s) {
    r.add(name, norm(eval_form({k, s}, x, x)), t);
  };
  auto in_cone = [&](const char* name, FormKind k, const AntiInvolution& s, const AntiInvolution& c) {
    cone(r, name, c, eval_form({k, s}, x, x), p.mid.sign, t);
  };
  switch (f) {
    case ModelFamily::O11: in_cone("h(x,x)", FormKind::OmegaIndef, iv.s, iv.s); break;
    case ModelFamily::AX:
      in_cone("h(x,x)", FormKind::OmegaIndef, iv.s, iv.s);
      zero("omega(x,x) = 0", FormKind::OmegaSymp, iv.s);
      break;
    case ModelFamily::OC:
      in_cone("h(x,x)", FormKind::OmegaIndef, iv.s, iv.s);
      zero("b(x,x) = 0", FormKind::Bdiag, iv.s);
      break;
    case ModelFamily::SP2:
      zero("omega_C(x,x) = 0", FormKind::OmegaSymp, iv.s_lin);
      in_cone("h(x,x)", FormKind::H_sp2, iv.s_lin, iv.s_bar);
      break;
    case ModelFamily::SP2C:
      zero("omega_H(x,x) = 0", FormKind::OmegaH, iv.s0);
      in_cone("h(x,x)", FormKind::H_sp2c, iv.s1, iv.s1);
      break;
    case ModelFamily::CPT_KO11: zero("h(x,x) = 0", FormKind::OmegaIndef, iv.s); break;
    case ModelFamily::CPT_KSP2: zero("omega(x,x) = 0", FormKind::OmegaSymp, iv.s); break;
    case ModelFamily::CPT_KSP2C: zero("omega_C(x,x) = 0", FormKind::OmegaSymp, iv.s_lin); break;
  }
  return r;
}

Report contains_u(const ModelPoint& p, double tol) {
  const Element& z = p.z;
  const int sg = p.mid.sign;
  Involutions iv = involutions(p.base);
  double t = tol * scale(norm(z));
  Report r;
  switch (p.mid.family) {
    case ModelFamily::O11: cone(r, "sigma(a) + a", iv.s, apply_sigma(iv.s, z) + z, sg, t); break;
    case ModelFamily::AX: cone(r, "a", iv.s, z, sg, t); break;
    case ModelFamily::OC:
      cone(r, "sigma(a) + a", iv.s, apply_sigma(iv.s, z) + z, sg, t);
      r.add("sigma(a)a = 1", norm(apply_sigma(iv.s, z) * z - one_of(z.spec())), t);
      break;
    case ModelFamily::SP2: {
      r.add("z sigma_C-symmetric", sym_off(iv.s_lin, z, 1), t);
      Element y = split_complex(z).second.with_spec_sigma(iv.s);
      cone(r, "Im z", iv.s, y, sg, t);
      break;
    }
    case ModelFamily::SP2C: {
      r.add("z sigma_0-symmetric", sym_off(iv.s0, z, 1), t);
      Element y = split_quat(z).second.with_spec_sigma(iv.s_lin);
      cone(r, "Im_C z", iv.s_bar, y, sg, t);
      break;
    }
    default: throw Error(Errc::Unsupported, "no half-space model");
  }
  return r;
}

Report contains_b(const ModelPoint& p, double tol) {
  const Element& z = p.z;
  Involutions iv = involutions(p.base);
  double t = tol * scale(norm(z));
  Element one = one_of(z.spec());
  Report r;
  switch (p.mid.family) {
    case ModelFamily::O11: cone(r, "1 - sigma(a)a", iv.s, one - apply_sigma(iv.s, z) * z, 1, t); break;
    case ModelFamily::AX:
      r.add("a sigma-symmetric", sym_off(iv.s, z, 1), t);
      cone(r, "1 - a^2", iv.s, one - z * z, 1, t);
      break;
    case ModelFamily::OC:
      r.add("a sigma-antisymmetric", sym_off(iv.s, z, -1), t);
      cone(r, "1 + a^2", iv.s, one + z * z, 1, t);
      break;
    case ModelFamily::SP2:
      r.add("z sigma_C-symmetric", sym_off(iv.s_lin, z, 1), t);
      cone(r, "1 - bar(z)z", iv.s_bar, one - apply_theta(Unit::i, z) * z, 1, t);
      break;
    case ModelFamily::SP2C:
      r.add("z sigma_0-symmetric", sym_off(iv.s0, z, 1), t);
      cone(r, "1 - sigma_1(z)z", iv.s1, one - apply_sigma(iv.s1, z) * z, 1, t);
      break;
    case ModelFamily::CPT_KO11: r.add("1 - sigma(a)a = 0", norm(one - apply_sigma(iv.s, z) * z), t); break;
    case ModelFamily::CPT_KSP2:
      r.add("z sigma_C-symmetric", sym_off(iv.s_lin, z, 1), t);
      r.add("1 - bar(z)z = 0", norm(one - apply_theta(Unit::i, z) * z), t);
      break;
    case ModelFamily::CPT_KSP2C:
      r.add("z sigma_0-symmetric", sym_off(iv.s0, z, 1), t);
      r.add("1 - sigma_1(z)z = 0", norm(one - apply_sigma(iv.s1, z) * z), t);
      break;
  }
  return r;
}

void check_payload(const ModelPoint& p) {
  AlgebraSpec want = point_algebra(p.mid, p.base);
  switch (p.mid.kind) {
    case Kind::C:
      for (const Element* e : {&p.J.a, &p.J.b, &p.J.c, &p.J.d}) need_spec(*e, want, "J");
      break;
    case Kind::P:
      need_spec(p.x.x1, want, "x1");
      need_spec(p.x.x2, want, "x2");
      break;
    default: need_spec(p.z, want, "z");
  }
}

}  // namespace

Report contains(const ModelPoint& p, double tol) {
  check_payload(p);
  switch (p.mid.kind) {
    case Kind::C: return contains_c(p, tol);
    case Kind::P: return contains_p(p, tol);
    case Kind::U: return contains_u(p, tol);
    case Kind::B: return contains_b(p, tol);
  }
  throw Error(Errc::Unsupported, "contains");
}

void require_contains(const ModelPoint& p) {
  Report r = contains(p);
  if (!r.pass) throw Error(Errc::NotInModel, tag(p.mid) + ": " + r.summary());
}

Report tangent_contains(const TangentVector& tv, double tol) {
  const ModelPoint& p = tv.at;
  const ModelFamily f = p.mid.family;
  if (is_compact(f)) throw Error(Errc::Unsupported, "tangent spaces of compact models");
  require_contains(p);
  Involutions iv = involutions(p.base);
  Report r;
  switch (p.mid.kind) {
    case Kind::C: {
      const Mat2 &j = p.J, &l = tv.L;
      const AlgebraSpec& a = j.spec();
      double t = tol * scale(norm(j)) * std::max(1.0, norm(l));
      if (f == ModelFamily::SP2C) {
        r.add("N theta(M) + M theta(N) = 0", norm(l * theta(Unit::i, j) + j * theta(Unit::i, l)), t);
        Mat2 h = sigma_t(iv.s_lin, l) * omega_s(a);
        r.add("h_N sigma_bar-Hermitian", dist(h, sigma_t(iv.s_bar, h)), t);
        break;
      }
      r.add("LJ + JL = 0", norm(l * j + j * l), t);
      const AntiInvolution& s = a.sigma;
      if (f == ModelFamily::AX) r.add("L infinitesimally symplectic", norm(sigma_t(s, l) * omega_s(a) + omega_s(a) * l), t);
      if (f == ModelFamily::OC) r.add("L preserves b", norm(sigma_t(s, l) * b_diag(a) + b_diag(a) * l), t);
      if (f == ModelFamily::SP2) {
        Mat2 h = sigma_t(s, l) * omega_s(a);
        r.add("h_L sigma-symmetric", dist(h, sigma_t(s, h)), t);
      }
      break;
    }
    case Kind::P: {
      double t = tol * std::max(1.0, norm(p.x)) * std::max(1.0, norm(tv.w));
      switch (f) {
        case ModelFamily::O11: break;
        case ModelFamily::AX:
          r.add("omega(w,x) in A^sigma", sym_off(iv.s, eval_form({FormKind::OmegaSymp, iv.s}, tv.w, p.x), 1), t);
          break;
        case ModelFamily::OC:
          r.add("b(w,x) in A^-sigma", sym_off(iv.s, eval_form({FormKind::Bdiag, iv.s}, tv.w, p.x), -1), t);
          break;
        case ModelFamily::SP2:
          r.add("omega_C(w,x) in A_C^sigma_C",
                sym_off(iv.s_lin, eval_form({FormKind::OmegaSymp, iv.s_lin}, tv.w, p.x), 1), t);
          break;
        case ModelFamily::SP2C:
          r.add("omega_H(w,x) in A_H^sigma_0", sym_off(iv.s0, eval_form({FormKind::OmegaH, iv.s0}, tv.w, p.x), 1), t);
          break;
        default: break;
      }
      break;
    }
    case Kind::U:
    case Kind::B: {
      const Element& v = tv.v;
      double t = tol * std::max(1.0, norm(v));
      switch (f) {
        case ModelFamily::O11: break;
        case ModelFamily::AX: r.add("v in A^sigma", sym_off(iv.s, v, 1), t); break;
        case ModelFamily::OC:
          if (p.mid.kind == Kind::U)
            r.add("a^-1 v in A^-sigma", sym_off(iv.s, inv(p.z) * v, -1), t * scale(norm(p.z)));
          else
            r.add("v in A^-sigma", sym_off(iv.s, v, -1), t);
          break;
        case ModelFamily::SP2: r.add("v in A_C^sigma_C", sym_off(iv.s_lin, v, 1), t); break;
        case ModelFamily::SP2C: r.add("v in A_H^sigma_0", sym_off(iv.s0, v, 1), t); break;
        default: break;
      }
      break;
    }
  }
  return r;
}

ModelPoint basepoint(const ModelId& mid, const AlgebraSpec& base) {
  AlgebraSpec pa = point_algebra(mid, base);
  const double sg = mid.sign;
  const ModelFamily f = mid.family;
  switch (mid.kind) {
    case Kind::C: {
      Mat2 j = orthogonal_type(f) ? mat2_real(pa, 0, 1, 1, 0) : mat2_real(pa, 0, 1, -1, 0);
      return make_c(mid, base, j);
    }
    case Kind::P: {
      if (is_compact(f)) return make_p(mid, base, {one_of(pa), Element(pa)});
      Element one = one_of(pa);
      if (orthogonal_type(f)) return make_p(mid, base, {one, sg * one});
      Unit u = f == ModelFamily::SP2 ? Unit::i : Unit::j;
      return make_p(mid, base, {Element::unit(pa, u, sg), one});
    }
    case Kind::U: {
      if (orthogonal_type(f)) return make_z(mid, base, Element::scalar(pa, sg));
      return make_z(mid, base, Element::unit(pa, f == ModelFamily::SP2 ? Unit::i : Unit::j, sg));
    }
    case Kind::B: {
      switch (f) {
        case ModelFamily::CPT_KO11: return make_z(mid, base, one_of(pa));
        case ModelFamily::CPT_KSP2: return make_z(mid, base, Element::unit(pa, Unit::i));
        case ModelFamily::CPT_KSP2C: return make_z(mid, base, Element::unit(pa, Unit::j));
        default: return make_z(mid, base, Element(pa));
      }
    }
  }
  throw Error(Errc::Unsupported, "basepoint");
}

namespace {

void require_group(const ModelPoint& p, const Mat2& g) {
  GroupId gid = model_group(p.mid.family, p.base);
  if (!same_algebra(g.spec(), gid.over))
    throw Error(Errc::SpecMismatch, "group element over " + describe(g.spec()) + ", expected " + describe(gid.over));
  Report r = group_contains(gid, with_sigma(g, gid.over.sigma), kMembershipTol * scale(norm(g)));
  if (!r.pass) throw Error(Errc::NotInGroup, std::string(family_name(gid.family)) + ": " + r.summary());
}

// The matrix acting on the chart coordinates of p.
Mat2 chart_matrix(const ModelPoint& p, const Mat2& g) {
  AlgebraSpec pa = p.z.spec();
  Mat2 gl = lift(g, pa);
  if (p.mid.kind == Kind::U) return gl;
  Mat2 c = b_conjugator(p.mid.family, p.base);
  return inv(c) * gl * c;
}

}  // namespace

ModelPoint act(const Mat2& g, const ModelPoint& p) {
  require_group(p, g);
  require_contains(p);
  ModelPoint out = p;
  Mat2 gg = with_sigma(g, model_group(p.mid.family, p.base).over.sigma);
  switch (p.mid.kind) {
    case Kind::C:
      out.J = p.anti_linear ? gg * p.J * theta(Unit::i, inv(gg)) : gg * p.J * inv(gg);
      break;
    case Kind::P: out.x = lift(gg, p.x.spec()) * p.x; break;
    case Kind::U:
    case Kind::B: out.z = moebius(chart_matrix(p, gg), p.z); break;
  }
  return out;
}

TangentVector act_tangent(const Mat2& g, const TangentVector& t) {
  const ModelPoint& p = t.at;
  if (is_compact(p.mid.family)) throw Error(Errc::Unsupported, "tangent spaces of compact models");
  TangentVector out;
  out.at = act(g, p);
  Mat2 gg = with_sigma(g, model_group(p.mid.family, p.base).over.sigma);
  switch (p.mid.kind) {
    case Kind::C:
      out.L = p.anti_linear ? gg * t.L * theta(Unit::i, inv(gg)) : gg * t.L * inv(gg);
      break;
    case Kind::P: out.w = lift(gg, p.x.spec()) * t.w; break;
    case Kind::U:
    case Kind::B: out.v = moebius_tangent(chart_matrix(p, gg), p.z, t.v); break;
  }
  return out;
}

double right_factor(const Vec2& x1, const Vec2& x2, Element* a) {
  const AlgebraSpec& sp = x1.spec();
  const int n = sp.n, d = sp.dim(), m = n * d;
  Eigen::MatrixXd lhs(2 * m, m);
  lhs.topRows(m) = left_regular(x1.x1);
  lhs.bottomRows(m) = left_regular(x1.x2);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(lhs);
  Element out(sp);
  double res2 = 0;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd rhs(2 * m);
    rhs.head(m) = column_coeffs(x2.x1, j);
    rhs.tail(m) = column_coeffs(x2.x2, j);
    Eigen::VectorXd sol = qr.solve(rhs);
    res2 += (lhs * sol - rhs).squaredNorm();
    for (int k = 0; k < n; ++k)
      for (int u = 0; u < d; ++u) out(k, j, u) = sol(k * d + u);
  }
  if (a) *a = out;
  return std::sqrt(res2);
}

bool line_equal(const Vec2& l1, const Vec2& l2, double tol) {
  if (!same_algebra(l1.spec(), l2.spec())) throw Error(Errc::SpecMismatch, "lines over different algebras");
  if (!is_regular(l1) || !is_regular(l2)) throw Error(Errc::NotRegular, "line_equal needs regular representatives");
  Element a;
  double res = right_factor(l1, l2, &a);
  if (res > tol * std::max(norm(l2), 1e-300)) return false;
  try {
    inv(a);
  } catch (const Error& e) {
    if (e.code() == Errc::Singular) return false;
    throw;
  }
  return true;
}

Mat2 sample_model_group(ModelFamily f, const AlgebraSpec& base, Rng& rng) {
  GroupId gid = model_group(f, base);
  switch (f) {
    case ModelFamily::AX: {
      Element g = sample(base, Constraint::Invertible, rng);
      return {g, Element(base), Element(base), inv(apply_sigma(base.sigma, g))};
    }
    case ModelFamily::OC: return exp_lie(gid, sample_lie(gid, rng));
    default: return sample_group(gid, rng);
  }
}

Mat2 sample_model_lie(ModelFamily f, const AlgebraSpec& base, Rng& rng) {
  return sample_lie(model_group(f, base), rng);
}

Mat2 sample_stabilizer(ModelFamily f, const AlgebraSpec& base, Rng& rng) {
  GroupId gid = model_group(f, base);
  const AlgebraSpec& o = gid.over;
  Element zero(o);
  auto anti = [&](const AntiInvolution& s) {
    return sample(with_sigma(o, s), Constraint::SigmaAntiSym, rng).with_spec_sigma(o.sigma);
  };
  switch (f) {
    case ModelFamily::O11:
    case ModelFamily::SP2:
    case ModelFamily::SP2C: return exp_lie(gid, sample_k(gid, rng));
    case ModelFamily::AX:
    case ModelFamily::OC:
    case ModelFamily::CPT_KO11:
    case ModelFamily::CPT_KSP2: {
      Element x = anti(o.sigma);
      return exp_lie({Family::KO11, o}, {x, zero, zero, x});
    }
    case ModelFamily::CPT_KSP2C: {
      Element x = anti(sigma_bar_of(o));
      return exp_lie(gid, {x, zero, zero, apply_theta(Unit::i, x)});
    }
  }
  throw Error(Errc::Unsupported, "stabilizer");
}

ModelPoint sample_point(const ModelId& mid, const AlgebraSpec& base, std::uint64_t seed) {
  Rng rng(seed);
  return sample_point(mid, base, rng);
}

ModelPoint sample_point(const ModelId& mid, const AlgebraSpec& base, Rng& rng) {
  ModelPoint b = basepoint(mid, base);
  return act(sample_model_group(mid.family, base, rng), b);
}

TangentVector sample_tangent(const ModelPoint& p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_tangent(p, rng);
}

TangentVector sample_tangent(const ModelPoint& p, Rng& rng) {
  const ModelFamily f = p.mid.family;
  if (is_compact(f)) throw Error(Errc::Unsupported, "tangent spaces of compact models");
  switch (p.mid.kind) {
    case Kind::C: {
      Mat2 y = sample_model_lie(f, p.base, rng);
      if (p.anti_linear) return tangent_c(p, y * p.J - p.J * theta(Unit::i, y));
      return tangent_c(p, y * p.J - p.J * y);
    }
    case Kind::P: {
      Mat2 y = sample_model_lie(f, p.base, rng);
      return tangent_p(p, lift(y, p.x.spec()) * p.x);
    }
    case Kind::U:
    case Kind::B: {
      const AlgebraSpec& pa = p.z.spec();
      Involutions iv = involutions(p.base);
      Element raw = sample(pa, Constraint::Free, rng);
      switch (f) {
        case ModelFamily::O11: return tangent_z(p, raw);
        case ModelFamily::AX: return tangent_z(p, symmetry_part(iv.s, 1, raw));
        case ModelFamily::OC: {
          Element s = symmetry_part(iv.s, -1, raw);
          return tangent_z(p, p.mid.kind == Kind::U ? p.z * s : s);
        }
        case ModelFamily::SP2: return tangent_z(p, symmetry_part(iv.s_lin, 1, raw));
        case ModelFamily::SP2C: return tangent_z(p, symmetry_part(iv.s0, 1, raw));
        default: break;
      }
    }
  }
  throw Error(Errc::Unsupported, "sample_tangent");
}

}  // namespace hsym
