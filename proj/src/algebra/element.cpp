#include <cmath>

#include "hsym/kernels.hpp"
#include "hsym/rng.hpp"
#include "tables.hpp"

namespace hsym {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same(const Element& a, const Element& b, const char* what) {
  if (a.empty() || b.empty() || !same_algebra(a.spec(), b.spec()))
    throw Error(Errc::SpecMismatch, std::string(what) + ": " + describe(a.spec()) + " vs " +
                                        describe(b.spec()));
}

RowMat regular_rows(const Element& a) {
  const auto& tb = detail::table(a.spec().tower);
  const int n = a.n(), d = tb.d;
  RowMat la = RowMat::Zero(n * d, n * d);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const double* ar = a.entry(r, k);
      for (int u = 0; u < d; ++u) {
        if (ar[u] == 0.0) continue;
        const int* ix = &tb.idx[std::size_t(u) * d];
        const double* sg = &tb.sgn[std::size_t(u) * d];
        for (int v = 0; v < d; ++v) la(r * d + ix[v], k * d + v) += sg[v] * ar[u];
      }
    }
  return la;
}

// 1 if the basis unit w contains an odd power of the unit being conjugated.
std::vector<bool> theta_mask(const ScalarTower& t, Unit unit) {
  const auto& tb = detail::table(t);
  std::vector<bool> flip(tb.d, false);
  auto bad = [&] {
    throw Error(Errc::UnknownUnit, std::string("theta_") + unit_name(unit) + " on this tower");
  };
  for (int w = 0; w < tb.d; ++w) {
    int g = tb.g_of[w], e = tb.e_of[w], c = tb.c_of[w];
    switch (unit) {
      case Unit::I:
        if (t.ground == Ground::R) bad();
        flip[w] = g == 1 || g == 3;
        break;
      case Unit::J:
        if (t.ground != Ground::H) bad();
        flip[w] = g == 2 || g == 3;
        break;
      case Unit::i:
        if (t.ext == Ext::None) bad();
        flip[w] = e == 1 || e == 3;
        break;
      case Unit::j:
        if (t.ext != Ext::Quat) bad();
        flip[w] = e == 2 || e == 3;
        break;
      case Unit::Iext:
        if (!t.central) bad();
        flip[w] = c == 1;
        break;
      default:
        bad();
    }
  }
  return flip;
}

bool tower_contains(const ScalarTower& big, const ScalarTower& small) {
  if (big.ground != small.ground) return false;
  if (int(big.ext) < int(small.ext)) return false;
  if (small.central && !big.central) return false;
  return true;
}

Element strip(const Element& a, const AlgebraSpec& target, int cval, int e_lo, int e_step) {
  // Copies coefficients (c, g, e) with c == cval (if cval >= 0) and e = e_lo + e'
  // into the target slot (0 or c, g, e').
  const auto& src = detail::table(a.spec().tower);
  const auto& dst = detail::table(target.tower);
  Element out(target);
  const int n = a.n();
  for (int w = 0; w < src.d; ++w) {
    int c = src.c_of[w], g = src.g_of[w], e = src.e_of[w];
    if (cval >= 0 && c != cval) continue;
    int e2 = e - e_lo;
    if (e2 < 0 || e2 >= e_step) continue;
    int tc = cval >= 0 ? 0 : c;
    int t = dst.index(tc, g, e2);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) out(r, k, t) = a(r, k, w);
  }
  return out;
}

}  // namespace

Element::Element(const AlgebraSpec& spec) : spec_(spec), d_(spec.dim()) {
  validate(spec);
  data_.assign(spec.size(), 0.0);
}

Element Element::identity(const AlgebraSpec& spec) { return scalar(spec, 1.0); }

Element Element::scalar(const AlgebraSpec& spec, double v) {
  Element e(spec);
  for (int r = 0; r < spec.n; ++r) e(r, r, 0) = v;
  return e;
}

Element Element::unit(const AlgebraSpec& spec, Unit u, double c) {
  int w = unit_index(spec.tower, u);
  if (w < 0) throw Error(Errc::UnknownUnit, std::string(unit_name(u)) + " not in " + describe(spec));
  Element e(spec);
  for (int r = 0; r < spec.n; ++r) e(r, r, w) = c;
  return e;
}

Element& Element::operator+=(const Element& o) {
  require_same(*this, o, "add");
  kernels::axpy(data_.size(), 1.0, o.data_.data(), data_.data());
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same(*this, o, "sub");
  kernels::axpy(data_.size(), -1.0, o.data_.data(), data_.data());
  return *this;
}

Element& Element::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Element Element::with_spec_sigma(const AntiInvolution& s) const {
  Element out = *this;
  out.spec_ = with_sigma(spec_, s);
  return out;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator-(Element a) { return a *= -1.0; }
Element operator*(double s, Element a) { return a *= s; }
Element operator*(Element a, double s) { return a *= s; }
Element operator/(Element a, double s) { return a *= 1.0 / s; }

Element operator*(const Element& a, const Element& b) {
  require_same(a, b, "mul");
  const int n = a.n(), d = a.dim();
  RowMat la = regular_rows(a);
  RowMat bt(n, n * d);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int v = 0; v < d; ++v) bt(j, k * d + v) = b(k, j, v);
  std::vector<double> c(std::size_t(n) * d * n);
  kernels::gemm_nt(std::size_t(n) * d, n, std::size_t(n) * d, la.data(), bt.data(), c.data());
  Element out(a.spec());
  for (int r = 0; r < n; ++r)
    for (int w = 0; w < d; ++w)
      for (int j = 0; j < n; ++j) out(r, j, w) = c[std::size_t(r * d + w) * n + j];
  return out;
}

Element arith(ArithOp op, const Element& a, const Element& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Smul: break;
  }
  throw Error(Errc::SpecMismatch, "smul takes a real factor");
}

Element arith(ArithOp op, const Element& a, double s) {
  if (op != ArithOp::Smul) throw Error(Errc::SpecMismatch, "real operand only for smul");
  return a * s;
}

Eigen::MatrixXd left_regular(const Element& a) { return regular_rows(a); }

Eigen::VectorXd column_coeffs(const Element& x, int j) {
  const int n = x.n(), d = x.dim();
  Eigen::VectorXd v(n * d);
  for (int k = 0; k < n; ++k)
    for (int u = 0; u < d; ++u) v(k * d + u) = x(k, j, u);
  return v;
}

Element inv(const Element& a) {
  const int n = a.n(), d = a.dim();
  Eigen::MatrixXd la = regular_rows(a);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(la);
  double rc = lu.rcond();
  if (!(rc > kSingularRcond))
    throw Error(Errc::Singular, "reciprocal condition " + std::to_string(rc));
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n * d, n);
  for (int k = 0; k < n; ++k) rhs(k * d, k) = 1.0;
  Eigen::MatrixXd x = lu.solve(rhs);
  Element out(a.spec());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int v = 0; v < d; ++v) out(k, j, v) = x(k * d + v, j);
  return out;
}

Element apply_sigma(const AntiInvolution& s, const Element& a) {
  if (!compatible(a.spec().tower, s))
    throw Error(Errc::SpecMismatch, "anti-involution does not fit " + describe(a.spec()));
  auto sg = detail::sigma_signs(a.spec().tower, s);
  const int n = a.n(), d = a.dim();
  Element out(a.spec());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double* src = a.entry(c, r);
      double* dst = out.entry(r, c);
      for (int u = 0; u < d; ++u) dst[u] = sg[u] * src[u];
    }
  return out;
}

Element symmetry_part(const AntiInvolution& s, int sign, const Element& a) {
  Element out = apply_sigma(s, a);
  out *= double(sign);
  out += a;
  out *= 0.5;
  return out;
}

Element apply_theta(Unit u, const Element& a) {
  auto flip = theta_mask(a.spec().tower, u);
  Element out = a;
  const int d = a.dim();
  auto& v = out.data();
  for (std::size_t p = 0; p < v.size(); ++p)
    if (flip[p % d]) v[p] = -v[p];
  return out;
}

double reduced_trace(const Element& a) {
  double s = 0;
  for (int r = 0; r < a.n(); ++r) s += a(r, r, 0);
  return s;
}

double norm(const Element& a) {
  const auto& v = a.data();
  return std::sqrt(kernels::dot(v.size(), v.data(), v.data()));
}

double dist(const Element& a, const Element& b) {
  require_same(a, b, "dist");
  double s = 0;
  for (std::size_t p = 0; p < a.data().size(); ++p) {
    double t = a.data()[p] - b.data()[p];
    s += t * t;
  }
  return std::sqrt(s);
}

double max_coeff(const Element& a) { return kernels::max_abs(a.data().size(), a.data().data()); }

Element lift(const Element& a, const AlgebraSpec& target) {
  if (a.n() != target.n || !tower_contains(target.tower, a.spec().tower))
    throw Error(Errc::SpecMismatch, "cannot lift " + describe(a.spec()) + " to " + describe(target));
  if (a.spec().tower == target.tower) {
    Element out = a;
    return out.with_spec_sigma(target.sigma);
  }
  const auto& src = detail::table(a.spec().tower);
  const auto& dst = detail::table(target.tower);
  Element out(target);
  for (int w = 0; w < src.d; ++w) {
    int t = dst.index(src.c_of[w], src.g_of[w], src.e_of[w]);
    for (int r = 0; r < a.n(); ++r)
      for (int k = 0; k < a.n(); ++k) out(r, k, t) = a(r, k, w);
  }
  return out;
}

Element project(const Element& a, const AlgebraSpec& target) {
  if (a.n() != target.n || !tower_contains(a.spec().tower, target.tower))
    throw Error(Errc::SpecMismatch, "cannot project " + describe(a.spec()) + " to " + describe(target));
  return strip(a, target, target.tower.central ? -1 : 0, 0, target.tower.ext_dim());
}

namespace {

AlgebraSpec drop_ext(const AlgebraSpec& s, Ext to) {
  AlgebraSpec out = s;
  out.tower.ext = to;
  AntiInvolution sg = s.sigma;
  if (to == Ext::None) sg.ext = {-1, -1, -1};
  if (to == Ext::Cplx) sg.ext = {s.sigma.ext[0], -1, -1};
  out.sigma = sg;
  return out;
}

AlgebraSpec drop_central(const AlgebraSpec& s) {
  AlgebraSpec out = s;
  out.tower.central = false;
  out.sigma.central = -1;
  return out;
}

}  // namespace

std::pair<Element, Element> split_complex(const Element& a) {
  if (a.spec().tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "split_complex needs Cplx");
  AlgebraSpec part = drop_ext(a.spec(), Ext::None);
  return {strip(a, part, -1, 0, 1), strip(a, part, -1, 1, 1)};
}

Element join_complex(const Element& re, const Element& im, const AlgebraSpec& target) {
  require_same(re, im, "join_complex");
  if (target.tower.ext != Ext::Cplx) throw Error(Errc::SpecMismatch, "join_complex needs Cplx");
  Element out = lift(re, target);
  const auto& tb = detail::table(target.tower);
  const auto& src = detail::table(im.spec().tower);
  for (int w = 0; w < src.d; ++w) {
    int t = tb.index(src.c_of[w], src.g_of[w], 1);
    for (int r = 0; r < re.n(); ++r)
      for (int k = 0; k < re.n(); ++k) out(r, k, t) = im(r, k, w);
  }
  return out;
}

std::pair<Element, Element> split_quat(const Element& a) {
  if (a.spec().tower.ext != Ext::Quat) throw Error(Errc::SpecMismatch, "split_quat needs Quat");
  AlgebraSpec part = drop_ext(a.spec(), Ext::Cplx);
  return {strip(a, part, -1, 0, 2), strip(a, part, -1, 2, 2)};
}

Element join_quat(const Element& x, const Element& y, const AlgebraSpec& target) {
  require_same(x, y, "join_quat");
  if (target.tower.ext != Ext::Quat) throw Error(Errc::SpecMismatch, "join_quat needs Quat");
  Element out = lift(x, target);
  const auto& tb = detail::table(target.tower);
  const auto& src = detail::table(y.spec().tower);
  for (int w = 0; w < src.d; ++w) {
    int t = tb.index(src.c_of[w], src.g_of[w], src.e_of[w] + 2);
    for (int r = 0; r < x.n(); ++r)
      for (int k = 0; k < x.n(); ++k) out(r, k, t) = y(r, k, w);
  }
  return out;
}

std::pair<Element, Element> split_central(const Element& a) {
  if (!a.spec().tower.central) throw Error(Errc::SpecMismatch, "split_central needs Iext");
  AlgebraSpec part = drop_central(a.spec());
  return {strip(a, part, 0, 0, part.tower.ext_dim()), strip(a, part, 1, 0, part.tower.ext_dim())};
}

Element join_central(const Element& a1, const Element& a2, const AlgebraSpec& target) {
  require_same(a1, a2, "join_central");
  if (!target.tower.central) throw Error(Errc::SpecMismatch, "join_central needs Iext");
  Element out = lift(a1, target);
  const auto& tb = detail::table(target.tower);
  const auto& src = detail::table(a2.spec().tower);
  for (int w = 0; w < src.d; ++w) {
    int t = tb.index(1, src.g_of[w], src.e_of[w]);
    for (int r = 0; r < a1.n(); ++r)
      for (int k = 0; k < a1.n(); ++k) out(r, k, t) = a2(r, k, w);
  }
  return out;
}

Element sample(const AlgebraSpec& spec, Constraint c, std::uint64_t seed) {
  Rng rng(seed);
  return sample(spec, c, rng);
}

Element sample(const AlgebraSpec& spec, Constraint c, Rng& rng) {
  auto free = [&] {
    Element e(spec);
    double scale = 1.0 / std::sqrt(double(spec.n) * spec.dim());
    for (double& x : e.data()) x = scale * rng.normal();
    return e;
  };
  switch (c) {
    case Constraint::Free: return free();
    case Constraint::SigmaSym: return symmetry_part(spec.sigma, 1, free());
    case Constraint::SigmaAntiSym: return symmetry_part(spec.sigma, -1, free());
    case Constraint::Invertible: return Element::identity(spec) + 0.3 * free();
    case Constraint::SigmaPositive: {
      Element g = Element::identity(spec) + 0.3 * free();
      return symmetry_part(spec.sigma, 1, g * apply_sigma(spec.sigma, g));
    }
  }
  return free();
}

}  // namespace hsym
