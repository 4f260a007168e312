#include <cmath>

#include "doctest.h"
#include "hsym/algebra.hpp"
#include "hsym/kernels.hpp"
#include "hsym/mat2.hpp"
#include "hsym/rng.hpp"
#include "oracles.hpp"

using namespace hsym;

namespace {

std::vector<AlgebraSpec> towers(int n) {
  AlgebraSpec r = real_matrices(n), cc = complex_matrices(n, true), ct = complex_matrices(n, false);
  AlgebraSpec h0 = quaternion_matrices(n, 0), h1 = quaternion_matrices(n, 1);
  std::vector<AlgebraSpec> out{r, cc, ct, h0, h1};
  for (const AlgebraSpec& b : {r, cc, h1}) {
    out.push_back(complexify(b, 1));
    out.push_back(complexify(b, -1));
    for (int w = 0; w < 4; ++w) out.push_back(quaternionify(b, w));
  }
  out.push_back(with_central(quaternionify(r, 0), 1));
  out.push_back(with_central(quaternionify(r, 1), -1));
  out.push_back(with_central(complexify(cc, -1), -1));
  out.push_back(with_central(quaternionify(h1, 1), -1));
  out.push_back(with_central(r, -1));
  return out;
}

std::vector<AlgebraSpec> hermitian_specs(int n) {
  std::vector<AlgebraSpec> out;
  for (const auto& s : towers(n))
    if (is_hermitian_pair(s.tower, s.sigma)) out.push_back(s);
  return out;
}

Element unit_scalar(const AlgebraSpec& s, Unit u, double c = 1.0) { return Element::unit(s, u, c); }

}  // namespace

TEST_CASE("arith examples") {
  AlgebraSpec rc = complexify(real_matrices(2), -1);
  Element a = sample(rc, Constraint::Free, 3);
  CHECK(dist(Element::identity(rc) * a, a) < 1e-15);
  Element i = unit_scalar(rc, Unit::i);
  CHECK(dist(i * i, Element::scalar(rc, -1)) < 1e-15);

  AlgebraSpec h = quaternionify(real_matrices(1), 1);
  Element j = unit_scalar(h, Unit::j), k = unit_scalar(h, Unit::k);
  CHECK(dist(j * k, unit_scalar(h, Unit::i)) < 1e-15);
  CHECK(arith(ArithOp::Smul, j, 2.0)(0, 0, 2) == 2.0);
  CHECK_THROWS_AS(arith(ArithOp::Add, j, Element::identity(real_matrices(1))), Error);
}

TEST_CASE("inverse examples") {
  AlgebraSpec r = real_matrices(3);
  CHECK(dist(inv(Element::identity(r)), Element::identity(r)) < 1e-15);
  CHECK(dist(inv(Element::scalar(r, 2)), Element::scalar(r, 0.5)) < 1e-15);
  AlgebraSpec h = quaternion_matrices(1, 1);
  Element j = unit_scalar(h, Unit::J);
  CHECK(dist(inv(j), unit_scalar(h, Unit::J, -1)) < 1e-15);
  // q^-1 = conj(q)/|q|^2
  Element q(h);
  oracle::Q qq{0.3, -1.2, 0.7, 2.0};
  for (int u = 0; u < 4; ++u) q(0, 0, u) = qq[u];
  oracle::Q qi = oracle::qinv(qq);
  Element iq = inv(q);
  for (int u = 0; u < 4; ++u) CHECK(iq(0, 0, u) == doctest::Approx(qi[u]).epsilon(1e-14));
  CHECK_THROWS_AS(inv(oracle::real_matrix(2, {1, 2, 2, 4})), Error);
}

TEST_CASE("sigma examples") {
  Element m = oracle::real_matrix(2, {1, 2, 3, 4});
  Element t = apply_sigma(m.spec().sigma, m);
  CHECK(t(0, 1, 0) == 3);
  CHECK(t(1, 0, 0) == 2);
  AlgebraSpec rc = complexify(real_matrices(2), -1);
  CHECK(dist(sigma(unit_scalar(rc, Unit::i)), unit_scalar(rc, Unit::i, -1)) == 0);
  AlgebraSpec rh = quaternionify(complexify(real_matrices(1), 1), 1);
  CHECK(dist(sigma(unit_scalar(rh, Unit::j)), unit_scalar(rh, Unit::j, -1)) == 0);

  Element s = oracle::real_matrix(2, {1, 5, 5, 2});
  CHECK(dist(symmetry_part(s.spec().sigma, 1, s), s) == 0);
  CHECK(norm(symmetry_part(s.spec().sigma, -1, s)) == 0);
  Element e = oracle::real_matrix(2, {0, 1, 0, 0});
  CHECK(dist(symmetry_part(e.spec().sigma, 1, e), oracle::real_matrix(2, {0, 0.5, 0.5, 0})) == 0);
}

TEST_CASE("theta examples") {
  AlgebraSpec rh = quaternionify(real_matrices(1), 1);
  Element x = Element::scalar(rh, 2.5);
  CHECK(dist(apply_theta(Unit::i, x), x) == 0);
  Element z = x + unit_scalar(rh, Unit::i, 3);
  CHECK(dist(apply_theta(Unit::i, z), x - unit_scalar(rh, Unit::i, 3)) == 0);
  Element j = unit_scalar(rh, Unit::j);
  CHECK(dist(apply_theta(Unit::i, j), j) == 0);
  CHECK_THROWS_AS(apply_theta(Unit::k, j), Error);
  CHECK_THROWS_AS(apply_theta(Unit::I, j), Error);
}

TEST_CASE("positivity examples against characteristic polynomial") {
  AlgebraSpec r = real_matrices(2);
  CHECK(is_positive(r.sigma, Element::identity(r)) == Positivity::Positive);
  auto ev1 = oracle::sym2_eigen(1, 2, 1);
  CHECK(ev1[0] == doctest::Approx(-1));
  CHECK(is_positive(r.sigma, oracle::real_matrix(2, {1, 2, 2, 1})) == Positivity::Neither);
  auto ev2 = oracle::sym2_eigen(2, 1, 2);
  CHECK(ev2[0] == doctest::Approx(1));
  CHECK(is_positive(r.sigma, oracle::real_matrix(2, {2, 1, 1, 2})) == Positivity::Positive);
  CHECK(is_positive(r.sigma, oracle::real_matrix(2, {1, 0, 0, 0})) == Positivity::NonNegative);
  CHECK(is_positive(r.sigma, oracle::real_matrix(2, {2, 1, 0, 2})) == Positivity::Neither);
  AlgebraSpec ct = complex_matrices(2, false);
  CHECK_THROWS_AS(is_positive(ct.sigma, Element::identity(ct)), Error);
}

TEST_CASE("sqrt examples") {
  AlgebraSpec r = real_matrices(2);
  CHECK(dist(sqrt_positive(r.sigma, Element::identity(r)), Element::identity(r)) < 1e-14);
  CHECK(dist(sqrt_positive(r.sigma, oracle::real_matrix(2, {4, 0, 0, 9})), oracle::real_matrix(2, {2, 0, 0, 3})) <
        1e-14);
  Element a = oracle::real_matrix(2, {2, 1, 1, 2});
  // eigenvalues 3 and 1 with eigenvectors (1,1), (1,-1)
  double p = (std::sqrt(3.0) + 1) / 2, q = (std::sqrt(3.0) - 1) / 2;
  Element s = sqrt_positive(r.sigma, a);
  CHECK(dist(s, oracle::real_matrix(2, {p, q, q, p})) < 1e-14);
  CHECK(dist(s * s, a) < 1e-12);
  CHECK_THROWS_AS(sqrt_positive(r.sigma, oracle::real_matrix(2, {1, 2, 2, 1})), Error);
}

TEST_CASE("reduced trace examples") {
  CHECK(reduced_trace(Element::identity(real_matrices(2))) == 2);
  CHECK(reduced_trace(unit_scalar(complexify(real_matrices(2), -1), Unit::i)) == 0);
  CHECK(reduced_trace(oracle::real_matrix(2, {0, 1, 1, 0})) == 0);
}

TEST_CASE("embedding examples") {
  Element m = oracle::real_matrix(2, {1, 2, 3, 4});
  Eigen::MatrixXcd e = embed_complex(m);
  CHECK(e.rows() == 2);
  CHECK(e(1, 0) == std::complex<double>(3, 0));
  AlgebraSpec h = quaternion_matrices(1, 1);
  Element q(h);
  q(0, 0, 0) = 1;
  q(0, 0, 1) = 2;
  q(0, 0, 2) = 3;
  q(0, 0, 3) = 4;
  Eigen::MatrixXcd eq = embed_complex(q);
  using cd = std::complex<double>;
  CHECK(eq(0, 0) == cd(1, 2));
  CHECK(eq(0, 1) == cd(3, 4));
  CHECK(eq(1, 0) == cd(-3, 4));
  CHECK(eq(1, 1) == cd(1, -2));
  // a1 + a2 Iext -> (a1 + a2 i, a1 - a2 i)
  AlgebraSpec ce = with_central(complexify(real_matrices(1), -1), -1);
  Element z = Element::scalar(ce, 1.5) + unit_scalar(ce, Unit::Iext, 0.5);
  Eigen::MatrixXcd ez = embed_complex(z);
  CHECK(ez.rows() == 2);
  CHECK(ez(0, 0) == cd(1.5, 0.5));
  CHECK(ez(1, 1) == cd(1.5, -0.5));
}

TEST_CASE("sampling is deterministic and honors constraints") {
  AlgebraSpec s = complexify(real_matrices(3), -1);
  CHECK(sample(s, Constraint::Free, 11).data() == sample(s, Constraint::Free, 11).data());
  CHECK(sample(s, Constraint::Free, 11).data() != sample(s, Constraint::Free, 12).data());
  Element y = sample(s, Constraint::SigmaSym, 5);
  CHECK(norm(y - symmetry_part(s.sigma, 1, y)) < 1e-12);
  Element w = sample(s, Constraint::SigmaAntiSym, 5);
  CHECK(norm(w + sigma(w)) < 1e-12);
  for (const auto& h : hermitian_specs(2))
    CHECK(is_positive(h.sigma, sample(h, Constraint::SigmaPositive, 9)) == Positivity::Positive);
}

TEST_CASE("sigma names round trip") {
  for (const auto& s : towers(1)) {
    std::string name = sigma_name(s.tower, s.sigma);
    CHECK(parse_sigma(s.tower, name) == s.sigma);
  }
  ScalarTower t{Ground::R, Ext::Quat, false};
  CHECK(sigma_name(t, parse_sigma(t, "transpose:q2")) == "transpose:q2");
  CHECK_THROWS_AS(parse_sigma(t, "transpose"), Error);
  CHECK_THROWS_AS(parse_sigma(t, "conj:q1"), Error);
}

TEST_CASE("algebra laws on every tower") {
  Rng rng(2024);
  for (int n : {1, 2, 3}) {
    for (const auto& s : towers(n)) {
      CAPTURE(describe(s));
      for (int t = 0; t < 5; ++t) {
        Element a = sample(s, Constraint::Free, rng), b = sample(s, Constraint::Free, rng),
                c = sample(s, Constraint::Free, rng);
        CHECK(dist(a * b, oracle::naive_mul(a, b)) < 1e-13);
        CHECK(dist((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(dist(sigma(a * b), sigma(b) * sigma(a)) < 1e-13);
        CHECK(dist(sigma(sigma(a)), a) == 0);
        for (Unit u : {Unit::I, Unit::J, Unit::i, Unit::j, Unit::Iext}) {
          if (unit_index(s.tower, u) < 0) continue;
          CHECK(dist(apply_theta(u, apply_theta(u, a)), a) == 0);
          CHECK(dist(apply_theta(u, a * b), apply_theta(u, a) * apply_theta(u, b)) < 1e-13);
        }
        Eigen::MatrixXcd ea = embed_complex(a), eb = embed_complex(b);
        CHECK((embed_complex(a * b) - ea * eb).norm() < 1e-12);
        CHECK(dist(pull_back(s, ea), a) < 1e-13);
        if (is_hermitian_pair(s.tower, s.sigma)) CHECK((embed_complex(sigma(a)) - ea.adjoint()).norm() < 1e-13);
        Element g = sample(s, Constraint::Invertible, rng);
        CHECK(dist(g * inv(g), Element::identity(s)) < 1e-10);
        CHECK(dist(inv(g) * g, Element::identity(s)) < 1e-10);
      }
    }
  }
}

TEST_CASE("cone and square root properties") {
  Rng rng(99);
  for (int n : {1, 2, 3})
    for (const auto& s : hermitian_specs(n)) {
      CAPTURE(describe(s));
      Element g = sample(s, Constraint::Invertible, rng);
      Element p = sample(s, Constraint::SigmaPositive, rng);
      Element gp = g * p * sigma(g);
      CHECK(is_positive(s.sigma, symmetry_part(s.sigma, 1, gp)) == Positivity::Positive);
      Element r = sqrt_positive(s.sigma, p);
      CHECK(dist(r * r, p) < 1e-10);
      CHECK(dist(sigma(r), r) < 1e-13);
      CHECK(is_positive(s.sigma, r) == Positivity::Positive);
      // orthogonal u from the polar part of g
      Element gg = symmetry_part(s.sigma, 1, sigma(g) * g);
      Element u = g * inv(sqrt_positive(s.sigma, gg));
      CHECK(dist(u * sigma(u), Element::identity(s)) < 1e-10);
      Element lhs = sqrt_positive(s.sigma, symmetry_part(s.sigma, 1, u * p * sigma(u)));
      CHECK(dist(lhs, u * r * sigma(u)) < 1e-9);
    }
}

TEST_CASE("tower inclusions and splittings") {
  AlgebraSpec a = real_matrices(2), ac = complexify(a, 1), ah = quaternionify(ac, 0);
  AlgebraSpec ahI = with_central(ah, 1);
  Element x = sample(ac, Constraint::Free, 1), y = sample(ac, Constraint::Free, 2);
  Element q = join_quat(x, y, ah);
  Element jq = lift(x, ah) + lift(y, ah) * Element::unit(ah, Unit::j);
  CHECK(dist(q, jq) < 1e-15);
  auto [x2, y2] = split_quat(q);
  CHECK(dist(x2, x) == 0);
  CHECK(dist(y2, y) == 0);
  auto [re, im] = split_complex(x);
  CHECK(dist(join_complex(re, im, ac), x) == 0);
  Element z = join_central(q, jq, ahI);
  auto [z1, z2] = split_central(z);
  CHECK(dist(z1, q) == 0);
  CHECK(dist(lift(z2, ahI) * Element::unit(ahI, Unit::Iext) + lift(z1, ahI), z) < 1e-15);
  CHECK(dist(project(lift(x, ahI), ac), x) == 0);
}

TEST_CASE("products agree across kernel variants") {
  AlgebraSpec s = with_central(quaternionify(real_matrices(3), 1), -1);
  Element a = sample(s, Constraint::Free, 1), b = sample(s, Constraint::Free, 2);
  kernels::Isa before = kernels::active_isa();
  kernels::select_isa(kernels::Isa::Scalar);
  Element ref = a * b;
  Element ri = inv(Element::identity(s) + 0.3 * a);
  for (kernels::Isa isa : {kernels::Isa::Avx2, kernels::Isa::Neon}) {
    if (!kernels::select_isa(isa)) continue;
    CHECK(dist(a * b, ref) < 1e-13);
    CHECK(dist(inv(Element::identity(s) + 0.3 * a), ri) < 1e-12);
  }
  kernels::select_isa(before);
}

TEST_CASE("mat2 helpers") {
  AlgebraSpec s = complexify(real_matrices(2), -1);
  Mat2 m{sample(s, Constraint::Invertible, 1), sample(s, Constraint::Free, 2), sample(s, Constraint::Free, 3),
         sample(s, Constraint::Invertible, 4)};
  CHECK(dist(from_block(to_block(m)), m) == 0);
  CHECK(dist(m * inv(m), mat2_identity(s)) < 1e-10);
  Mat2 x{sample(s, Constraint::Free, 5), sample(s, Constraint::Free, 6), sample(s, Constraint::Free, 7),
         sample(s, Constraint::Free, 8)};
  CHECK(dist(expm(x) * expm(-1.0 * x), mat2_identity(s)) < 1e-10);
  AlgebraSpec r1 = real_matrices(1);
  double t = 0.7;
  Mat2 rot = expm(t * mat2_real(r1, 0, 1, -1, 0));
  CHECK(dist(rot, mat2_real(r1, std::cos(t), std::sin(t), -std::sin(t), std::cos(t))) < 1e-14);
}
