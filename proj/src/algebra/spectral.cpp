#include <cmath>

#include "tables.hpp"

namespace hsym {

namespace {

using CMat = Eigen::MatrixXcd;

Eigen::MatrixXcd hermitian_image(const AntiInvolution& s, const Element& a, Positivity* verdict,
                                 double tol) {
  if (!is_hermitian_pair(a.spec().tower, s))
    throw Error(Errc::NotHermitianPair, sigma_name(a.spec().tower, s) + " on " + describe(a.spec()));
  Element sa = apply_sigma(s, a);
  if (dist(sa, a) > kMembershipTol * std::max(1.0, norm(a))) {
    *verdict = Positivity::Neither;
    return {};
  }
  CMat m = embed_complex(a);
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  *verdict = lo > tol ? Positivity::Positive : lo >= -tol ? Positivity::NonNegative : Positivity::Neither;
  return m;
}

}  // namespace

int embedding_size(const AlgebraSpec& spec) {
  const auto& tb = detail::table(spec.tower);
  return tb.blocks * spec.n * tb.bsize;
}

Eigen::MatrixXcd embed_complex(const Element& a) {
  const auto& tb = detail::table(a.spec().tower);
  const int n = a.n(), b = tb.bsize, nb = n * b;
  CMat m = CMat::Zero(tb.blocks * nb, tb.blocks * nb);
  for (int blk = 0; blk < tb.blocks; ++blk)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        auto sub = m.block(blk * nb + r * b, blk * nb + c * b, b, b);
        const double* co = a.entry(r, c);
        for (int u = 0; u < tb.d; ++u)
          if (co[u] != 0.0) sub += co[u] * tb.images[u][blk];
      }
  return m;
}

Element pull_back(const AlgebraSpec& spec, const Eigen::MatrixXcd& m) {
  const auto& tb = detail::table(spec.tower);
  const int n = spec.n, b = tb.bsize, nb = n * b;
  if (m.rows() != tb.blocks * nb || m.cols() != tb.blocks * nb)
    throw Error(Errc::ShapeMismatch, "embedded matrix has the wrong size for " + describe(spec));
  Element out(spec);
  Eigen::VectorXd rhs(tb.d);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      rhs.setZero();
      for (int blk = 0; blk < tb.blocks; ++blk) {
        auto sub = m.block(blk * nb + r * b, blk * nb + c * b, b, b);
        for (int u = 0; u < tb.d; ++u) rhs(u) += tb.images[u][blk].cwiseProduct(sub.conjugate()).sum().real();
      }
      Eigen::VectorXd s = tb.gram_inv * rhs;
      double* dst = out.entry(r, c);
      for (int u = 0; u < tb.d; ++u) dst[u] = s(u);
    }
  return out;
}

const char* positivity_name(Positivity p) {
  switch (p) {
    case Positivity::Positive: return "Positive";
    case Positivity::NonNegative: return "NonNegative";
    case Positivity::Neither: return "Neither";
  }
  return "?";
}

Positivity is_positive(const AntiInvolution& s, const Element& a, double tol) {
  Positivity p;
  hermitian_image(s, a, &p, tol);
  return p;
}

double min_eigenvalue(const AntiInvolution& s, const Element& a) {
  if (!is_hermitian_pair(a.spec().tower, s))
    throw Error(Errc::NotHermitianPair, sigma_name(a.spec().tower, s) + " on " + describe(a.spec()));
  CMat m = embed_complex(a);
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Element sqrt_positive(const AntiInvolution& s, const Element& a) {
  Positivity p;
  CMat m = hermitian_image(s, a, &p, kEigenTol);
  if (p != Positivity::Positive) throw Error(Errc::NotPositive, "sqrt of a non-positive element");
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  Eigen::VectorXd root = es.eigenvalues().cwiseSqrt();
  CMat r = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  return symmetry_part(s, 1, pull_back(a.spec(), r));
}

}  // namespace hsym
