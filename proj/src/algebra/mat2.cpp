#include "hsym/mat2.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace hsym {

namespace {

template <class F>
Mat2 each(const Mat2& m, F f) {
  return {f(m.a), f(m.b), f(m.c), f(m.d)};
}

Element inv_denominator(const Element& den) {
  try {
    return inv(den);
  } catch (const Error& e) {
    if (e.code() == Errc::Singular) throw Error(Errc::SingularDenominator, "cz + d not invertible");
    throw;
  }
}

}  // namespace

Mat2 mat2_identity(const AlgebraSpec& spec) { return mat2_real(spec, 1, 0, 0, 1); }
Mat2 mat2_zero(const AlgebraSpec& spec) { return mat2_real(spec, 0, 0, 0, 0); }

Mat2 mat2_real(const AlgebraSpec& spec, double a, double b, double c, double d) {
  return {Element::scalar(spec, a), Element::scalar(spec, b), Element::scalar(spec, c),
          Element::scalar(spec, d)};
}

Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
Mat2 operator*(const Element& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
Mat2 operator*(const Mat2& x, const Element& s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }

Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x1 + m.b * v.x2, m.c * v.x1 + m.d * v.x2}; }
Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.x1 + y.x1, x.x2 + y.x2}; }
Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.x1 - y.x1, x.x2 - y.x2}; }
Vec2 operator*(double s, const Vec2& x) { return {s * x.x1, s * x.x2}; }
Vec2 operator*(const Vec2& x, const Element& r) { return {x.x1 * r, x.x2 * r}; }

Element to_block(const Mat2& m) {
  const int n = m.spec().n, d = m.spec().dim();
  Element out(resized(m.spec(), 2 * n));
  const Element* parts[2][2] = {{&m.a, &m.b}, {&m.c, &m.d}};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          for (int u = 0; u < d; ++u) out(p * n + r, q * n + c, u) = (*parts[p][q])(r, c, u);
  return out;
}

Mat2 from_block(const Element& e) {
  if (e.n() % 2) throw Error(Errc::ShapeMismatch, "block element of odd size");
  const int n = e.n() / 2, d = e.dim();
  AlgebraSpec spec = resized(e.spec(), n);
  Mat2 m = mat2_zero(spec);
  Element* parts[2][2] = {{&m.a, &m.b}, {&m.c, &m.d}};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          for (int u = 0; u < d; ++u) (*parts[p][q])(r, c, u) = e(p * n + r, q * n + c, u);
  return m;
}

Mat2 inv(const Mat2& m) { return from_block(inv(to_block(m))); }

Mat2 sigma_t(const AntiInvolution& s, const Mat2& m) {
  return {apply_sigma(s, m.a), apply_sigma(s, m.c), apply_sigma(s, m.b), apply_sigma(s, m.d)};
}

Mat2 theta(Unit u, const Mat2& m) {
  return each(m, [u](const Element& x) { return apply_theta(u, x); });
}

Vec2 theta(Unit u, const Vec2& v) { return {apply_theta(u, v.x1), apply_theta(u, v.x2)}; }

Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

Mat2 expm(const Mat2& m) {
  Element blk = to_block(m);
  const int n = blk.n(), d = blk.dim();
  Eigen::MatrixXd e = left_regular(blk).exp();
  Element out(blk.spec());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int v = 0; v < d; ++v) out(k, j, v) = e(k * d + v, j * d);
  return from_block(out);
}

double norm(const Mat2& m) {
  double a = norm(m.a), b = norm(m.b), c = norm(m.c), d = norm(m.d);
  return std::sqrt(a * a + b * b + c * c + d * d);
}

double norm(const Vec2& v) { return std::hypot(norm(v.x1), norm(v.x2)); }
double dist(const Mat2& x, const Mat2& y) { return norm(x - y); }
double dist(const Vec2& x, const Vec2& y) { return norm(x - y); }

Mat2 lift(const Mat2& m, const AlgebraSpec& target) {
  return each(m, [&](const Element& x) { return lift(x, target); });
}

Vec2 lift(const Vec2& v, const AlgebraSpec& target) { return {lift(v.x1, target), lift(v.x2, target)}; }

Mat2 project(const Mat2& m, const AlgebraSpec& target) {
  return each(m, [&](const Element& x) { return project(x, target); });
}

Vec2 project(const Vec2& v, const AlgebraSpec& target) {
  return {project(v.x1, target), project(v.x2, target)};
}

Mat2 with_sigma(const Mat2& m, const AntiInvolution& s) {
  return each(m, [&](const Element& x) { return x.with_spec_sigma(s); });
}

Vec2 with_sigma(const Vec2& v, const AntiInvolution& s) {
  return {v.x1.with_spec_sigma(s), v.x2.with_spec_sigma(s)};
}

Mat2 from_columns(const Vec2& c1, const Vec2& c2) { return {c1.x1, c2.x1, c1.x2, c2.x2}; }

Vec2 column(const Mat2& m, int j) { return j == 0 ? Vec2{m.a, m.c} : Vec2{m.b, m.d}; }

Element moebius(const Mat2& g, const Element& z) {
  return (g.a * z + g.b) * inv_denominator(g.c * z + g.d);
}

Element moebius_tangent(const Mat2& g, const Element& z, const Element& v) {
  Element dinv = inv_denominator(g.c * z + g.d);
  return g.a * v * dinv - (g.a * z + g.b) * dinv * g.c * v * dinv;
}

}  // namespace hsym
