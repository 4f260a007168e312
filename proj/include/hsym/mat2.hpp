#pragma once

#include "hsym/algebra.hpp"

namespace hsym {

struct Vec2 {
  Element x1, x2;
  const AlgebraSpec& spec() const { return x1.spec(); }
};

// [[a, b], [c, d]]
struct Mat2 {
  Element a, b, c, d;
  const AlgebraSpec& spec() const { return a.spec(); }
};

Mat2 mat2_identity(const AlgebraSpec& spec);
Mat2 mat2_zero(const AlgebraSpec& spec);
// Fixed 2x2 matrix of real multiples of the identity.
Mat2 mat2_real(const AlgebraSpec& spec, double a, double b, double c, double d);

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);
Mat2 operator*(const Element& s, const Mat2& x);
Mat2 operator*(const Mat2& x, const Element& s);
Vec2 operator*(const Mat2& m, const Vec2& v);

Vec2 operator+(const Vec2& x, const Vec2& y);
Vec2 operator-(const Vec2& x, const Vec2& y);
Vec2 operator*(double s, const Vec2& x);
// right scalar multiplication x r
Vec2 operator*(const Vec2& x, const Element& r);

Mat2 inv(const Mat2& m);
// [[s(a), s(c)], [s(b), s(d)]]
Mat2 sigma_t(const AntiInvolution& s, const Mat2& m);
Mat2 theta(Unit u, const Mat2& m);
Vec2 theta(Unit u, const Vec2& v);
Mat2 commutator(const Mat2& x, const Mat2& y);
Mat2 expm(const Mat2& m);

// Block element over 2n with entry (p n + r, q n + c).
Element to_block(const Mat2& m);
Mat2 from_block(const Element& e);

double norm(const Mat2& m);
double norm(const Vec2& v);
double dist(const Mat2& x, const Mat2& y);
double dist(const Vec2& x, const Vec2& y);

Mat2 lift(const Mat2& m, const AlgebraSpec& target);
Vec2 lift(const Vec2& v, const AlgebraSpec& target);
Mat2 project(const Mat2& m, const AlgebraSpec& target);
Vec2 project(const Vec2& v, const AlgebraSpec& target);
Mat2 with_sigma(const Mat2& m, const AntiInvolution& s);
Vec2 with_sigma(const Vec2& v, const AntiInvolution& s);

Mat2 from_columns(const Vec2& c1, const Vec2& c2);
Vec2 column(const Mat2& m, int j);

// (a z + b)(c z + d)^-1 and its differential in z along v.
Element moebius(const Mat2& g, const Element& z);
Element moebius_tangent(const Mat2& g, const Element& z, const Element& v);

}  // namespace hsym
