#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hsym/groups.hpp"

namespace hsym {

enum class HiggsFamily { SP2C, OC };
const char* higgs_family_name(HiggsFamily f);
HiggsFamily parse_higgs_family(const std::string& s);

// SP2C: q in A_H^sigma_0 tensor C{I}; OC: q in A_C^-sigma_C.
struct HiggsVector {
  HiggsFamily family = HiggsFamily::SP2C;
  Element q;
};

AlgebraSpec higgs_algebra(HiggsFamily f, const AlgebraSpec& base);
Report higgs_pattern(const HiggsVector& hv, double tol = 1e-10);
// Checks the pattern, NotPattern otherwise.
HiggsVector make_higgs(HiggsFamily f, const Element& q);

// q sigma_1(q) for SP2C, -q^2 for OC.
Element norm_value(const HiggsVector& hv);
// Part of the norm value seen by the real form: drops I for SP2C, keeps the
// real part for OC. Hermitian pair attached.
Element real_norm_value(const HiggsVector& hv);

// c_1 .. c_N of the monic characteristic polynomial of the embedded norm value.
std::vector<std::complex<double>> invariants(const HiggsVector& hv);
std::vector<std::complex<double>> charpoly(const Eigen::MatrixXcd& m);

// Traces of L^2, L^4, .., L^(2 dmax) in the embedded representation, scaled so
// the identity of Mat_2(A) has trace 2n.
std::vector<std::complex<double>> trace_powers(const Mat2& l, int dmax);

struct HkrSp4 {
  Eigen::Matrix2d beta, gamma;
  Eigen::Matrix4d L;
  Mat2 blocks;  // L over Mat_2(R)
};
HkrSp4 hkr_sp4(double q2, double q4);
std::pair<double, double> hkr_recover(const Eigen::MatrixXd& l);

// Compact group acting on the Higgs vectors: a + b j with sigma_1(k) k = 1 for
// SP2C, O(A, sigma) for OC. k is returned over the Higgs algebra.
Element sample_compact(HiggsFamily f, const AlgebraSpec& base, Rng& rng);
// k q sigma_0(k) for SP2C, k q k^-1 for OC.
Element compact_act(HiggsFamily f, const Element& k, const Element& q);
HiggsVector sample_higgs(HiggsFamily f, const AlgebraSpec& base, Rng& rng, bool real_locus = false);

}  // namespace hsym
