#pragma once
// Independent reference computations used only by tests.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "hsym/algebra.hpp"
#include "hsym/mat2.hpp"

namespace oracle {

using Q = std::array<double, 4>;

inline Q hamilton(const Q& a, const Q& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Q qconj(const Q& a) { return {a[0], -a[1], -a[2], -a[3]}; }

inline Q qinv(const Q& a) {
  double n2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
  Q c = qconj(a);
  for (double& x : c) x /= n2;
  return c;
}

// Product of basis units with index (c * gd + g) * ed + e, by expanding each
// factor as a quaternion product.
inline std::pair<int, double> unit_product(const hsym::ScalarTower& t, int u, int v) {
  int gd = t.ground_dim(), ed = t.ext_dim();
  auto split = [&](int w) { return std::array<int, 3>{w / (gd * ed), (w / ed) % gd, w % ed}; };
  auto a = split(u), b = split(v);
  double sign = (a[0] && b[0]) ? -1.0 : 1.0;
  Q qa{}, qb{}, ea{}, eb{};
  qa[a[1]] = 1;
  qb[b[1]] = 1;
  ea[a[2]] = 1;
  eb[b[2]] = 1;
  Q g = hamilton(qa, qb), e = hamilton(ea, eb);
  int gi = 0, ei = 0;
  for (int p = 0; p < 4; ++p) {
    if (g[p] != 0) {
      gi = p;
      sign *= g[p];
    }
    if (e[p] != 0) {
      ei = p;
      sign *= e[p];
    }
  }
  return {((a[0] ^ b[0]) * gd + gi) * ed + ei, sign};
}

inline hsym::Element naive_mul(const hsym::Element& a, const hsym::Element& b) {
  hsym::Element out(a.spec());
  const int n = a.n(), d = a.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int k = 0; k < n; ++k)
        for (int u = 0; u < d; ++u)
          for (int v = 0; v < d; ++v) {
            auto [w, s] = unit_product(a.spec().tower, u, v);
            out(r, c, w) += s * a(r, k, u) * b(k, c, v);
          }
  return out;
}

// Roots of a monic real quadratic x^2 + p x + q (real case only).
inline std::array<double, 2> quadratic_roots(double p, double q) {
  double disc = std::sqrt(p * p / 4 - q);
  return {-p / 2 - disc, -p / 2 + disc};
}

// Eigenvalues of a symmetric 2x2 real matrix from its characteristic polynomial.
inline std::array<double, 2> sym2_eigen(double a, double b, double d) {
  return quadratic_roots(-(a + d), a * d - b * b);
}

inline hsym::Element real_matrix(int n, std::initializer_list<double> v) {
  hsym::Element e(hsym::real_matrices(n));
  int p = 0;
  for (double x : v) {
    e(p / n, p % n, 0) = x;
    ++p;
  }
  return e;
}

// Brute-force 4x4 real product.
using M4 = std::array<std::array<double, 4>, 4>;
inline M4 mul4(const M4& a, const M4& b) {
  M4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}
inline double trace4(const M4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

}  // namespace oracle
