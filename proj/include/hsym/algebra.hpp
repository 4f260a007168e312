#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsym/error.hpp"

namespace hsym {

class Rng;

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kEigenTol = 1e-7;
inline constexpr double kSingularRcond = 1e-13;

enum class Ground : std::uint8_t { R, C, H };
enum class Ext : std::uint8_t { None, Cplx, Quat };
// I, J, K live in the ground field, i, j, k in the extension, Iext is the
// optional extra central unit.
enum class Unit : std::uint8_t { I, J, K, i, j, k, Iext };

struct ScalarTower {
  Ground ground = Ground::R;
  Ext ext = Ext::None;
  bool central = false;

  int ground_dim() const { return ground == Ground::R ? 1 : ground == Ground::C ? 2 : 4; }
  int ext_dim() const { return ext == Ext::None ? 1 : ext == Ext::Cplx ? 2 : 4; }
  int central_dim() const { return central ? 2 : 1; }
  int dim() const { return ground_dim() * ext_dim() * central_dim(); }

  friend bool operator==(const ScalarTower&, const ScalarTower&) = default;
};

enum class BaseKind : std::uint8_t { Transpose, ConjTranspose, QuatSigma0, QuatSigma1 };

// sigma = (transpose composed with a sign pattern on ground units) tensor
// (signs on the extension units) tensor (sign on Iext).
struct AntiInvolution {
  BaseKind base = BaseKind::Transpose;
  std::array<int, 3> ext{-1, -1, -1};
  int central = -1;

  friend bool operator==(const AntiInvolution&, const AntiInvolution&) = default;
};

// Extension patterns. sigma_c fixes i, sigma_cbar negates it; sigma_q(.., w)
// is the quaternionic sigma_w of the list sigma_0 .. sigma_3.
AntiInvolution sigma_c(AntiInvolution base);
AntiInvolution sigma_cbar(AntiInvolution base);
AntiInvolution sigma_q(AntiInvolution base, int which);
AntiInvolution with_central_sign(AntiInvolution s, int sign);

struct AlgebraSpec {
  int n = 1;
  ScalarTower tower;
  AntiInvolution sigma;

  int dim() const { return tower.dim(); }
  std::size_t size() const { return std::size_t(n) * n * dim(); }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

bool compatible(const ScalarTower& t, const AntiInvolution& s);
void validate(const AlgebraSpec& spec);
// Same underlying algebra; the distinguished sigma may differ.
bool same_algebra(const AlgebraSpec& a, const AlgebraSpec& b);
bool is_hermitian_pair(const ScalarTower& t, const AntiInvolution& s);

std::string sigma_name(const ScalarTower& t, const AntiInvolution& s);
AntiInvolution parse_sigma(const ScalarTower& t, const std::string& name);
std::string describe(const AlgebraSpec& spec);

AlgebraSpec real_matrices(int n);
AlgebraSpec complex_matrices(int n, bool conjugate);
AlgebraSpec quaternion_matrices(int n, int which);
AlgebraSpec complexify(const AlgebraSpec& base, int isign);
AlgebraSpec quaternionify(const AlgebraSpec& base, int which);
AlgebraSpec with_central(const AlgebraSpec& spec, int sign);
AlgebraSpec with_sigma(const AlgebraSpec& spec, const AntiInvolution& s);
AlgebraSpec resized(const AlgebraSpec& spec, int n);
// Drops the extension and the central unit, keeping the ground sigma.
AlgebraSpec base_of(const AlgebraSpec& spec);

// Basis index of a single unit inside the tower, -1 if absent.
int unit_index(const ScalarTower& t, Unit u);
const char* unit_name(Unit u);

class Element {
 public:
  Element() = default;
  explicit Element(const AlgebraSpec& spec);

  static Element identity(const AlgebraSpec& spec);
  static Element scalar(const AlgebraSpec& spec, double v);
  // c * u * Id
  static Element unit(const AlgebraSpec& spec, Unit u, double c = 1.0);

  const AlgebraSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int dim() const { return d_; }
  bool empty() const { return data_.empty(); }

  double* entry(int r, int c) { return data_.data() + (std::size_t(r) * spec_.n + c) * d_; }
  const double* entry(int r, int c) const {
    return data_.data() + (std::size_t(r) * spec_.n + c) * d_;
  }
  double& operator()(int r, int c, int u) { return entry(r, c)[u]; }
  double operator()(int r, int c, int u) const { return entry(r, c)[u]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(double s);

  // Replaces the distinguished sigma; the coefficients are untouched.
  Element with_spec_sigma(const AntiInvolution& s) const;

 private:
  AlgebraSpec spec_;
  int d_ = 0;
  std::vector<double> data_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(Element a);
Element operator*(const Element& a, const Element& b);
Element operator*(double s, Element a);
Element operator*(Element a, double s);
Element operator/(Element a, double s);

enum class ArithOp { Add, Sub, Mul, Smul };
Element arith(ArithOp op, const Element& a, const Element& b);
Element arith(ArithOp op, const Element& a, double s);

Element inv(const Element& a);
Element apply_sigma(const AntiInvolution& s, const Element& a);
inline Element sigma(const Element& a) { return apply_sigma(a.spec().sigma, a); }
// (a + sign * s(a)) / 2
Element symmetry_part(const AntiInvolution& s, int sign, const Element& a);
Element apply_theta(Unit u, const Element& a);

enum class Positivity { Positive, NonNegative, Neither };
const char* positivity_name(Positivity p);
Positivity is_positive(const AntiInvolution& s, const Element& a, double tol = kEigenTol);
Element sqrt_positive(const AntiInvolution& s, const Element& a);
// Smallest eigenvalue of the Hermitian part of the embedded image.
double min_eigenvalue(const AntiInvolution& s, const Element& a);
double reduced_trace(const Element& a);

// Block-diagonal complex image; sigma goes to the conjugate transpose for
// Hermitian pairs.
Eigen::MatrixXcd embed_complex(const Element& a);
// Least-squares inverse of embed_complex on its image.
Element pull_back(const AlgebraSpec& spec, const Eigen::MatrixXcd& m);
int embedding_size(const AlgebraSpec& spec);

// Real matrix of x -> a x acting on one column: (n d) x (n d).
Eigen::MatrixXd left_regular(const Element& a);
// Column j of x stacked as entries (k, j), k = 0..n-1.
Eigen::VectorXd column_coeffs(const Element& x, int j);

double norm(const Element& a);
double dist(const Element& a, const Element& b);
// Largest absolute coefficient.
double max_coeff(const Element& a);

// Tower inclusions A -> A_C -> A_H -> A_H (x) C{Iext}. The target must contain
// every unit of the source.
Element lift(const Element& a, const AlgebraSpec& target);
// Keeps only the coefficients the target tower can hold.
Element project(const Element& a, const AlgebraSpec& target);

// a = re + im * i for an extension by Cplx (re, im over base_of-like spec
// with the extension removed).
std::pair<Element, Element> split_complex(const Element& a);
Element join_complex(const Element& re, const Element& im, const AlgebraSpec& target);
// a = x + y j with x, y in the Cplx-extended algebra.
std::pair<Element, Element> split_quat(const Element& a);
Element join_quat(const Element& x, const Element& y, const AlgebraSpec& target);
// a = a1 + a2 Iext.
std::pair<Element, Element> split_central(const Element& a);
Element join_central(const Element& a1, const Element& a2, const AlgebraSpec& target);

enum class Constraint { Free, SigmaSym, SigmaAntiSym, SigmaPositive, Invertible };
Element sample(const AlgebraSpec& spec, Constraint c, std::uint64_t seed);
Element sample(const AlgebraSpec& spec, Constraint c, Rng& rng);

}  // namespace hsym
