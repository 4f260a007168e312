#include "hsym/hitchin.hpp"

#include <Eigen/Eigenvalues>

#include "hsym/rng.hpp"

namespace hsym {

namespace {

AntiInvolution linear_ext(AntiInvolution s) { return with_central_sign(s, 1); }

void need_real_base(const AlgebraSpec& base) {
  if (base.tower.ext != Ext::None || base.tower.central || !is_hermitian_pair(base.tower, base.sigma))
    throw Error(Errc::SpecMismatch, "Higgs vectors need an unextended Hermitian base");
}

double off(const AntiInvolution& s, const Element& a, int sign) {
  return norm(a - sign * apply_sigma(s, a));
}

}  // namespace

const char* higgs_family_name(HiggsFamily f) { return f == HiggsFamily::SP2C ? "SP2C" : "OC"; }

HiggsFamily parse_higgs_family(const std::string& s) {
  if (s == "SP2C") return HiggsFamily::SP2C;
  if (s == "OC") return HiggsFamily::OC;
  throw Error(Errc::ParseError, "unknown Higgs family " + s);
}

AlgebraSpec higgs_algebra(HiggsFamily f, const AlgebraSpec& base) {
  need_real_base(base);
  AlgebraSpec ac = complexify(base, 1);
  if (f == HiggsFamily::OC) return ac;
  AlgebraSpec ah = quaternionify(ac, 0);
  return with_central(ah, 1);
}

Report higgs_pattern(const HiggsVector& hv, double tol) {
  const Element& q = hv.q;
  const AlgebraSpec& sp = q.spec();
  Report r;
  double t = tol * std::max(1.0, norm(q));
  if (hv.family == HiggsFamily::SP2C) {
    if (!sp.tower.central || sp.tower.ext != Ext::Quat) throw Error(Errc::SpecMismatch, "SP2C Higgs vectors live on A_H(I)");
    auto [q1, q2] = split_central(q);
    AntiInvolution s0 = q1.spec().sigma;
    r.add("real part sigma_0-fixed", off(s0, q1, 1), t);
    r.add("I part sigma_0-fixed", off(s0, q2, 1), t);
  } else {
    if (sp.tower.ext != Ext::Cplx || sp.tower.central) throw Error(Errc::SpecMismatch, "OC Higgs vectors live on A_C");
    r.add("sigma_C(q) = -q", off(sp.sigma, q, -1), t);
  }
  return r;
}

HiggsVector make_higgs(HiggsFamily f, const Element& q) {
  AlgebraSpec want = higgs_algebra(f, base_of(q.spec()));
  if (!same_algebra(want, q.spec())) throw Error(Errc::SpecMismatch, "Higgs vector over " + describe(q.spec()));
  HiggsVector hv{f, q.with_spec_sigma(want.sigma)};
  Report r = higgs_pattern(hv);
  if (!r.pass) throw Error(Errc::NotPattern, r.summary());
  return hv;
}

Element norm_value(const HiggsVector& hv) {
  Report r = higgs_pattern(hv);
  if (!r.pass) throw Error(Errc::NotPattern, r.summary());
  const Element& q = hv.q;
  if (hv.family == HiggsFamily::SP2C) {
    AntiInvolution s1 = linear_ext(sigma_q(base_of(q.spec()).sigma, 1));
    return (q * apply_sigma(s1, q)).with_spec_sigma(s1);
  }
  return -(q * q);
}

Element real_norm_value(const HiggsVector& hv) {
  Element nv = norm_value(hv);
  if (hv.family == HiggsFamily::SP2C) {
    Element re = split_central(nv).first;
    return re.with_spec_sigma(sigma_q(base_of(re.spec()).sigma, 1));
  }
  Element re = split_complex(nv).first;
  return re.with_spec_sigma(base_of(re.spec()).sigma);
}

std::vector<std::complex<double>> charpoly(const Eigen::MatrixXcd& m) {
  const int n = int(m.rows());
  std::vector<std::complex<double>> c(n + 1, 0.0);
  c[0] = 1.0;
  if (n == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  // prod (x - mu), coefficient k of x^(n-k)
  for (int k = 0; k < n; ++k) {
    std::complex<double> mu = es.eigenvalues()(k);
    for (int p = k + 1; p >= 1; --p) c[p] -= mu * c[p - 1];
  }
  return {c.begin() + 1, c.end()};
}

std::vector<std::complex<double>> invariants(const HiggsVector& hv) {
  return charpoly(embed_complex(norm_value(hv)));
}

std::vector<std::complex<double>> trace_powers(const Mat2& l, int dmax) {
  Mat2 l2 = l * l;
  Mat2 p = l2;
  std::vector<std::complex<double>> out;
  for (int d = 1; d <= dmax; ++d) {
    Element b = to_block(p);
    Eigen::MatrixXcd e = embed_complex(b);
    out.push_back(e.trace() * double(b.n()) / double(e.rows()));
    p = p * l2;
  }
  return out;
}

HkrSp4 hkr_sp4(double q2, double q4) {
  HkrSp4 h;
  h.beta << q4, q2, q2, 1;
  h.gamma << 0, 1, 1, 0;
  h.L.setZero();
  h.L.block<2, 2>(0, 2) = h.beta;
  h.L.block<2, 2>(2, 0) = h.gamma;
  AlgebraSpec r2 = real_matrices(2);
  auto el = [&](const Eigen::Matrix2d& m) {
    Element e(r2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e(i, j, 0) = m(i, j);
    return e;
  };
  h.blocks = {Element(r2), el(h.beta), el(h.gamma), Element(r2)};
  return h;
}

std::pair<double, double> hkr_recover(const Eigen::MatrixXd& l) {
  if (l.rows() != 4 || l.cols() != 4) throw Error(Errc::ShapeMismatch, "expected a 4x4 matrix");
  if (l.block(0, 0, 2, 2).norm() != 0.0 || l.block(2, 2, 2, 2).norm() != 0.0)
    throw Error(Errc::ShapeMismatch, "expected zero diagonal blocks");
  Eigen::MatrixXd l2 = l * l;
  double t2 = l2.trace(), t4 = (l2 * l2).trace();
  double q2 = t2 / 4.0;
  return {q2, t4 / 4.0 - q2 * q2};
}

Element sample_compact(HiggsFamily f, const AlgebraSpec& base, Rng& rng) {
  AlgebraSpec hs = higgs_algebra(f, base);
  if (f == HiggsFamily::SP2C) {
    Mat2 k = sample_group({Family::KSP2C, complexify(base, 1)}, rng);
    AlgebraSpec ah = quaternionify(complexify(base, 1), 0);
    return lift(join_quat(k.a, k.b, ah), hs);
  }
  Mat2 k = sample_group({Family::O_ALG, base}, rng);
  return lift(k.a, hs);
}

Element compact_act(HiggsFamily f, const Element& k, const Element& q) {
  if (f == HiggsFamily::SP2C) return k * q * apply_sigma(q.spec().sigma, k);
  return k * q * inv(k);
}

HiggsVector sample_higgs(HiggsFamily f, const AlgebraSpec& base, Rng& rng, bool real_locus) {
  AlgebraSpec hs = higgs_algebra(f, base);
  if (f == HiggsFamily::SP2C) {
    AlgebraSpec ah = quaternionify(complexify(base, 1), 0);
    Element q1 = sample(ah, Constraint::SigmaSym, rng);
    Element q2 = real_locus ? Element(ah) : sample(ah, Constraint::SigmaSym, rng);
    return make_higgs(f, join_central(q1, q2, hs));
  }
  Element q = sample(hs, Constraint::SigmaAntiSym, rng);
  if (real_locus) q = lift(split_complex(q).first, hs);
  return make_higgs(f, q);
}

}  // namespace hsym
