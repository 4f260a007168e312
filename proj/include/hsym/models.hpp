#pragma once

#include <cstdint>
#include <string>

#include "hsym/groups.hpp"

namespace hsym {

enum class ModelFamily { O11, AX, OC, SP2, SP2C, CPT_KO11, CPT_KSP2, CPT_KSP2C };
enum class Kind { C, P, U, B };

const char* model_family_name(ModelFamily f);
ModelFamily parse_model_family(const std::string& s);
const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);
bool is_compact(ModelFamily f);

// sign picks P+/P- and U+/U-; C and B ignore it.
struct ModelId {
  ModelFamily family = ModelFamily::SP2;
  Kind kind = Kind::U;
  int sign = 1;
};

// Throws Unsupported for kinds a family does not have, or for SP2-type families
// over a non-real base, and SpecMismatch unless base is an unextended
// Hermitian algebra.
void check_model(const ModelId& mid, const AlgebraSpec& base);
bool model_supported(const ModelId& mid, const AlgebraSpec& base);

// Group acting on the model and the algebra its matrices live in.
GroupId model_group(ModelFamily f, const AlgebraSpec& base);
// Algebra holding the point payload: A, A_C (sigma_C) or A_H (sigma_0).
AlgebraSpec point_algebra(const ModelId& mid, const AlgebraSpec& base);
// R, T or Q over the algebra of the precompact model.
Mat2 b_conjugator(ModelFamily f, const AlgebraSpec& base);

// Forms sigma(x)^t G y.
enum class FormKind { OmegaSymp, OmegaIndef, Bdiag, H_sp2, H_sp2c, OmegaH };
struct SesquilinearForm {
  FormKind kind = FormKind::OmegaSymp;
  AntiInvolution sigma;
};
const char* form_name(FormKind k);
Element eval_form(const SesquilinearForm& f, const Vec2& x, const Vec2& y);
// The anti-involution r -> s(r) with eval(x r, y) = s(r) eval(x, y).
AntiInvolution form_twist(const SesquilinearForm& f, const AlgebraSpec& spec);

struct ModelPoint {
  ModelId mid;
  AlgebraSpec base;
  Mat2 J;  // C; for SP2C the structure is x -> J theta_i(x)
  bool anti_linear = false;
  Vec2 x;     // P, a representative of x A
  Element z;  // U, B
};

struct TangentVector {
  ModelPoint at;
  Mat2 L;     // C, anti-linear exactly when at.J is
  Vec2 w;     // P, class of [x, w]
  Element v;  // U, B
};

ModelPoint make_c(const ModelId& mid, const AlgebraSpec& base, const Mat2& j);
ModelPoint make_p(const ModelId& mid, const AlgebraSpec& base, const Vec2& x);
ModelPoint make_z(const ModelId& mid, const AlgebraSpec& base, const Element& z);
TangentVector tangent_c(const ModelPoint& p, const Mat2& l);
TangentVector tangent_p(const ModelPoint& p, const Vec2& w);
TangentVector tangent_z(const ModelPoint& p, const Element& v);

Report contains(const ModelPoint& p, double tol = kMembershipTol);
Report tangent_contains(const TangentVector& t, double tol = kMembershipTol);
void require_contains(const ModelPoint& p);

ModelPoint basepoint(const ModelId& mid, const AlgebraSpec& base);

// g is taken from model_group; precompact models conjugate it internally.
ModelPoint act(const Mat2& g, const ModelPoint& p);
TangentVector act_tangent(const Mat2& g, const TangentVector& t);

// Least-squares a with x2 = x1 a; returns the residual norm.
double right_factor(const Vec2& x1, const Vec2& x2, Element* a);
bool line_equal(const Vec2& l1, const Vec2& l2, double tol = kMembershipTol);
bool is_regular(const Vec2& x);

// Invariant Riemannian metric on the half-space model.
double metric(const ModelPoint& z, const Element& v, const Element& w);
double metric_norm(const ModelPoint& z, const Element& v);
// Simplified closed form at the half-space base point.
double metric_at_base(ModelFamily f, const AlgebraSpec& base, const Element& v, const Element& w);

Mat2 sample_model_group(ModelFamily f, const AlgebraSpec& base, Rng& rng);
Mat2 sample_model_lie(ModelFamily f, const AlgebraSpec& base, Rng& rng);
// Elements fixing every basepoint of the family.
Mat2 sample_stabilizer(ModelFamily f, const AlgebraSpec& base, Rng& rng);

ModelPoint sample_point(const ModelId& mid, const AlgebraSpec& base, std::uint64_t seed);
ModelPoint sample_point(const ModelId& mid, const AlgebraSpec& base, Rng& rng);
TangentVector sample_tangent(const ModelPoint& p, std::uint64_t seed);
TangentVector sample_tangent(const ModelPoint& p, Rng& rng);

// Anti-involutions attached to a Hermitian base algebra (A, sigma).
struct Involutions {
  AlgebraSpec a, ac, ah;  // A, (A_C, sigma_C), (A_H, sigma_0)
  AntiInvolution s, s_lin, s_bar, s0, s1;
};
Involutions involutions(const AlgebraSpec& base);
// The Hermitian anti-involution used for regularity on the point algebra.
AntiInvolution hermitian_sigma(const AlgebraSpec& spec);

}  // namespace hsym
