#include "hsym/groups.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsym {

void Report::add(std::string name, double value, double tol) {
  if (!(value <= tol)) pass = false;
  residuals.push_back({std::move(name), value});
}

void Report::fail(std::string name) {
  pass = false;
  residuals.push_back({std::move(name), INFINITY});
}

void Report::check(std::string name, double value, bool ok) {
  if (!ok) pass = false;
  residuals.push_back({std::move(name), value});
}

void Report::merge(const Report& other) {
  if (!other.pass) pass = false;
  residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
}

double Report::max() const {
  double m = 0;
  for (const auto& r : residuals) m = std::max(m, r.value);
  return m;
}

std::string Report::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "fail");
  for (const auto& r : residuals) os << " [" << r.name << " " << r.value << "]";
  return os.str();
}

const char* family_name(Family f) {
  switch (f) {
    case Family::SP2: return "SP2";
    case Family::O11: return "O11";
    case Family::O_ALG: return "O_ALG";
    case Family::AX_HAT: return "AX_HAT";
    case Family::OC_HAT: return "OC_HAT";
    case Family::KSP2: return "KSP2";
    case Family::KO11: return "KO11";
    case Family::KSP2C: return "KSP2C";
    case Family::O2: return "O2";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::SP2, Family::O11, Family::O_ALG, Family::AX_HAT, Family::OC_HAT, Family::KSP2,
                   Family::KO11, Family::KSP2C, Family::O2})
    if (s == family_name(f)) return f;
  throw Error(Errc::ParseError, "unknown group family '" + s + "'");
}

AntiInvolution sigma_bar_of(const AlgebraSpec& s) {
  if (s.tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "needs a Cplx-extended algebra");
  return sigma_cbar(s.sigma);
}

AntiInvolution sigma_lin_of(const AlgebraSpec& s) {
  if (s.tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "needs a Cplx-extended algebra");
  return sigma_c(s.sigma);
}

bool is_complex_symplectic(const GroupId& gid) {
  return (gid.family == Family::SP2 || gid.family == Family::KSP2C) && gid.over.tower.ext == Ext::Cplx &&
         gid.over.sigma.ext[0] == 1 && !gid.over.tower.central;
}

void check_group_spec(const GroupId& gid) {
  validate(gid.over);
  if (gid.family == Family::KSP2C && !is_complex_symplectic(gid))
    throw Error(Errc::SpecMismatch, "KSP2C needs (A_C, sigma_C)");
}

namespace {

Element bar(const Element& x) { return apply_theta(Unit::i, x); }

// distance of x from A^{sign sigma}
double off(const AntiInvolution& s, const Element& x, int sign) {
  return norm(apply_sigma(s, x) - double(sign) * x);
}

void require_over(const GroupId& gid, const Mat2& m) {
  check_group_spec(gid);
  for (const Element* e : {&m.a, &m.b, &m.c, &m.d})
    if (!same_algebra(e->spec(), gid.over))
      throw Error(Errc::SpecMismatch, std::string(family_name(gid.family)) + " over " + describe(gid.over) +
                                          " got " + describe(e->spec()));
}

bool hermitian_over(const GroupId& gid) { return is_hermitian_pair(gid.over.tower, gid.over.sigma); }

Report ksp2c_pattern(const AlgebraSpec& over, const Mat2& x, double tol, bool compact) {
  AntiInvolution sl = sigma_lin_of(over), sb = sigma_bar_of(over);
  Report r;
  if (compact) {
    r.add("c = -bar(b)", norm(x.c + bar(x.b)), tol);
    r.add("d = bar(a)", norm(x.d - bar(x.a)), tol);
    r.add("sigma_bar(a) = -a", off(sb, x.a, -1), tol);
  } else {
    r.add("c = bar(b)", norm(x.c - bar(x.b)), tol);
    r.add("d = -bar(a)", norm(x.d + bar(x.a)), tol);
    r.add("sigma_bar(a) = a", off(sb, x.a, 1), tol);
  }
  r.add("sigma_C(b) = b", off(sl, x.b, 1), tol);
  return r;
}

Report real_k_pattern(Family f, const AntiInvolution& s, const Mat2& x, double tol) {
  Report r;
  if (f == Family::SP2) {
    r.add("c = -b", norm(x.c + x.b), tol);
    r.add("b in A^sigma", off(s, x.b, 1), tol);
  } else {
    r.add("c = b", norm(x.c - x.b), tol);
    r.add("b in A^-sigma", off(s, x.b, -1), tol);
  }
  r.add("d = a", norm(x.d - x.a), tol);
  r.add("a in A^-sigma", off(s, x.a, -1), tol);
  return r;
}

Family ambient(const GroupId& gid) {
  switch (gid.family) {
    case Family::SP2:
    case Family::KSP2:
    case Family::KSP2C: return Family::SP2;
    case Family::O11:
    case Family::KO11: return Family::O11;
    default: throw Error(Errc::Unsupported, std::string("no Cartan decomposition for ") + family_name(gid.family));
  }
}

}  // namespace

Report group_contains(const GroupId& gid, const Mat2& m, double tol) {
  require_over(gid, m);
  const AntiInvolution& s = gid.over.sigma;
  const Element one = Element::identity(gid.over);
  auto sg = [&](const Element& x) { return apply_sigma(s, x); };
  Report r;
  switch (gid.family) {
    case Family::SP2:
      r.add("sigma(a)c in A^sigma", off(s, sg(m.a) * m.c, 1), tol);
      r.add("sigma(b)d in A^sigma", off(s, sg(m.b) * m.d, 1), tol);
      r.add("sigma(a)d - sigma(c)b = 1", norm(sg(m.a) * m.d - sg(m.c) * m.b - one), tol);
      break;
    case Family::O11:
      r.add("sigma(a)c in A^-sigma", off(s, sg(m.a) * m.c, -1), tol);
      r.add("sigma(b)d in A^-sigma", off(s, sg(m.b) * m.d, -1), tol);
      r.add("sigma(a)d + sigma(c)b = 1", norm(sg(m.a) * m.d + sg(m.c) * m.b - one), tol);
      break;
    case Family::O_ALG:
      r.add("diag(a, 1) shape", std::sqrt(std::pow(norm(m.b), 2) + std::pow(norm(m.c), 2) +
                                          std::pow(norm(m.d - one), 2)),
            tol);
      r.add("sigma(a)a = 1", norm(sg(m.a) * m.a - one), tol);
      break;
    case Family::AX_HAT:
      r.add("b = c = 0", std::hypot(norm(m.b), norm(m.c)), tol);
      r.add("sigma(a)d = 1", norm(sg(m.a) * m.d - one), tol);
      break;
    case Family::OC_HAT:
      r.add("d = a", norm(m.d - m.a), tol);
      r.add("c = -b", norm(m.c + m.b), tol);
      r.add("sigma(a)a - sigma(b)b = 1", norm(sg(m.a) * m.a - sg(m.b) * m.b - one), tol);
      r.add("sigma(a)b + sigma(b)a = 0", norm(sg(m.a) * m.b + sg(m.b) * m.a), tol);
      break;
    case Family::KSP2:
      r.add("d = a", norm(m.d - m.a), tol);
      r.add("c = -b", norm(m.c + m.b), tol);
      r.add("sigma(a)a + sigma(b)b = 1", norm(sg(m.a) * m.a + sg(m.b) * m.b - one), tol);
      r.add("sigma(a)b in A^sigma", off(s, sg(m.a) * m.b, 1), tol);
      break;
    case Family::KO11:
      r.add("d = a", norm(m.d - m.a), tol);
      r.add("c = b", norm(m.c - m.b), tol);
      r.add("sigma(a)a + sigma(b)b = 1", norm(sg(m.a) * m.a + sg(m.b) * m.b - one), tol);
      r.add("sigma(a)b in A^-sigma", off(s, sg(m.a) * m.b, -1), tol);
      break;
    case Family::KSP2C: {
      AntiInvolution sl = sigma_lin_of(gid.over), sb = sigma_bar_of(gid.over);
      r.add("c = -bar(b)", norm(m.c + bar(m.b)), tol);
      r.add("d = bar(a)", norm(m.d - bar(m.a)), tol);
      r.add("sigma_bar(a)a + sigma_C(b)bar(b) = 1",
            norm(apply_sigma(sb, m.a) * m.a + apply_sigma(sl, m.b) * bar(m.b) - one), tol);
      r.add("sigma_bar(a)b - sigma_C(b)bar(a) = 0",
            norm(apply_sigma(sb, m.a) * m.b - apply_sigma(sl, m.b) * bar(m.a)), tol);
      break;
    }
    case Family::O2:
      r.add("sigma(m)^t m = Id", dist(sigma_t(s, m) * m, mat2_identity(gid.over)), tol);
      break;
  }
  return r;
}

Report lie_contains(const GroupId& gid, const Mat2& x, double tol) {
  require_over(gid, x);
  const AntiInvolution& s = gid.over.sigma;
  Report r;
  switch (gid.family) {
    case Family::SP2:
    case Family::O11: {
      int sign = gid.family == Family::SP2 ? 1 : -1;
      const char* pat = sign > 0 ? " in A^sigma" : " in A^-sigma";
      r.add("d = -sigma(a)", norm(x.d + apply_sigma(s, x.a)), tol);
      r.add(std::string("b") + pat, off(s, x.b, sign), tol);
      r.add(std::string("c") + pat, off(s, x.c, sign), tol);
      break;
    }
    case Family::O_ALG:
      r.add("diag(x, 0) shape", std::sqrt(std::pow(norm(x.b), 2) + std::pow(norm(x.c), 2) + std::pow(norm(x.d), 2)),
            tol);
      r.add("x in A^-sigma", off(s, x.a, -1), tol);
      break;
    case Family::AX_HAT:
      r.add("b = c = 0", std::hypot(norm(x.b), norm(x.c)), tol);
      r.add("d = -sigma(a)", norm(x.d + apply_sigma(s, x.a)), tol);
      break;
    case Family::OC_HAT:
      r.add("d = a", norm(x.d - x.a), tol);
      r.add("c = -b", norm(x.c + x.b), tol);
      r.add("a in A^-sigma", off(s, x.a, -1), tol);
      r.add("b in A^-sigma", off(s, x.b, -1), tol);
      break;
    case Family::KSP2: return real_k_pattern(Family::SP2, s, x, tol);
    case Family::KO11: return real_k_pattern(Family::O11, s, x, tol);
    case Family::KSP2C: return ksp2c_pattern(gid.over, x, tol, true);
    case Family::O2:
      r.add("sigma(x)^t = -x", norm(sigma_t(s, x) + x), tol);
      break;
  }
  return r;
}

Report k_pattern(const GroupId& gid, const Mat2& x, double tol) {
  require_over(gid, x);
  Family f = ambient(gid);
  if (f == Family::SP2 && is_complex_symplectic(gid)) return ksp2c_pattern(gid.over, x, tol, true);
  if (!hermitian_over(gid)) throw Error(Errc::Unsupported, "Cartan patterns need a Hermitian algebra");
  return real_k_pattern(f, gid.over.sigma, x, tol);
}

Report m_pattern(const GroupId& gid, const Mat2& x, double tol) {
  require_over(gid, x);
  Family f = ambient(gid);
  if (f == Family::SP2 && is_complex_symplectic(gid)) return ksp2c_pattern(gid.over, x, tol, false);
  if (!hermitian_over(gid)) throw Error(Errc::Unsupported, "Cartan patterns need a Hermitian algebra");
  const AntiInvolution& s = gid.over.sigma;
  Report r;
  r.add("d = -a", norm(x.d + x.a), tol);
  r.add("a in A^sigma", off(s, x.a, 1), tol);
  if (f == Family::SP2) {
    r.add("c = b", norm(x.c - x.b), tol);
    r.add("b in A^sigma", off(s, x.b, 1), tol);
  } else {
    r.add("c = -b", norm(x.c + x.b), tol);
    r.add("b in A^-sigma", off(s, x.b, -1), tol);
  }
  return r;
}

CartanSplit cartan_project(const GroupId& gid, const Mat2& xi, double tol) {
  Family f = ambient(gid);
  GroupId amb{f, gid.over};
  Report lr = lie_contains(amb, xi, tol * std::max(1.0, norm(xi)));
  if (!lr.pass) throw Error(Errc::NotInLieAlgebra, lr.summary());
  const AntiInvolution& s = gid.over.sigma;
  Mat2 k;
  if (f == Family::SP2 && is_complex_symplectic(amb)) {
    AntiInvolution sb = sigma_bar_of(gid.over);
    Element ak = 0.5 * (xi.a - apply_sigma(sb, xi.a));
    Element bk = 0.5 * (xi.b - bar(xi.c));
    k = {ak, bk, -bar(bk), bar(ak)};
  } else {
    if (!hermitian_over(amb)) throw Error(Errc::Unsupported, "Cartan decomposition needs a Hermitian algebra");
    Element a = 0.5 * (xi.a - apply_sigma(s, xi.a));
    if (f == Family::SP2) {
      Element b = 0.5 * (xi.b - xi.c);
      k = {a, b, -b, a};
    } else {
      Element b = 0.5 * (xi.b + xi.c);
      k = {a, b, b, a};
    }
  }
  return {k, xi - k};
}

Mat2 conjugator(ConjugatorId id, const AlgebraSpec& over) {
  const double h = 1.0 / std::sqrt(2.0);
  Element one = Element::scalar(over, h), zero(over);
  switch (id) {
    case ConjugatorId::T_sp2: {
      Element i = Element::unit(over, Unit::i, h);
      return {one, i, i, one};
    }
    case ConjugatorId::R_o11: return {one, one, -one, one};
    case ConjugatorId::Q_sp2c: {
      Element j = Element::unit(over, Unit::j, h);
      return {one, j, j, one};
    }
    case ConjugatorId::S_incarn: return {one, zero, zero, Element::unit(over, Unit::i, h)};
  }
  throw Error(Errc::Unsupported, "unknown conjugator");
}

Mat2 transporter(const GroupId& gid, const Element& p) {
  check_group_spec(gid);
  const AlgebraSpec& over = gid.over;
  auto upper = [&](const Element& s, const Element& x, const AntiInvolution& form) {
    Element sinv = inv(apply_sigma(form, s));
    return Mat2{s, x * sinv, Element(over), sinv};
  };
  auto root = [&](const AntiInvolution& cone, const Element& y) {
    try {
      return sqrt_positive(cone, y);
    } catch (const Error& e) {
      if (e.code() == Errc::NotPositive) throw Error(Errc::NotInModel, "imaginary part not in the positive cone");
      throw;
    }
  };
  switch (gid.family) {
    case Family::O11: {
      if (!same_algebra(p.spec(), over)) throw Error(Errc::SpecMismatch, "O11 transporter takes a point of A");
      Element y = symmetry_part(over.sigma, 1, p), x = symmetry_part(over.sigma, -1, p);
      return upper(root(over.sigma, y), x.with_spec_sigma(over.sigma), over.sigma);
    }
    case Family::AX_HAT: {
      if (!same_algebra(p.spec(), over)) throw Error(Errc::SpecMismatch, "AX transporter takes a point of A");
      Element s = root(over.sigma, p);
      return {s, Element(over), Element(over), inv(s)};
    }
    case Family::SP2: {
      if (is_complex_symplectic(gid)) {
        if (p.spec().tower.ext != Ext::Quat) throw Error(Errc::SpecMismatch, "SP2 over A_C takes a point of A_H");
        auto [x, y] = split_quat(p);
        Element yc = project(y, over), xc = project(x, over);
        return upper(root(sigma_bar_of(over), yc), xc, over.sigma);
      }
      if (p.spec().tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "SP2 transporter takes a point of A_C");
      auto [x, y] = split_complex(p);
      Element xr = x.with_spec_sigma(over.sigma), yr = y.with_spec_sigma(over.sigma);
      if (!same_algebra(xr.spec(), over)) throw Error(Errc::SpecMismatch, "SP2 transporter spec");
      return upper(root(over.sigma, yr), xr, over.sigma);
    }
    default:
      throw Error(Errc::Unsupported, std::string("no transporter for ") + family_name(gid.family));
  }
}

Mat2 exp_lie(const GroupId& gid, const Mat2& xi, double t) {
  Report r = lie_contains(gid, xi, kMembershipTol * std::max(1.0, norm(xi)));
  if (!r.pass) throw Error(Errc::NotInLieAlgebra, r.summary());
  Mat2 e = expm(t * xi);
  if (gid.family == Family::O_ALG) e.d = Element::identity(gid.over);
  return e;
}

}  // namespace hsym
