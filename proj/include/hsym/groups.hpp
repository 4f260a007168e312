#pragma once

#include <string>
#include <vector>

#include "hsym/algebra.hpp"
#include "hsym/mat2.hpp"

namespace hsym {

class Rng;

struct Residual {
  std::string name;
  double value = 0.0;
};

// Outcome of a membership test; every defining condition gets its residual.
struct Report {
  bool pass = true;
  std::vector<Residual> residuals;

  void add(std::string name, double value, double tol);
  void fail(std::string name);
  // Records a value whose acceptance is decided by the caller.
  void check(std::string name, double value, bool ok);
  void merge(const Report& other);
  double max() const;
  std::string summary() const;
};

enum class Family { SP2, O11, O_ALG, AX_HAT, OC_HAT, KSP2, KO11, KSP2C, O2 };
const char* family_name(Family f);
Family parse_family(const std::string& s);

struct GroupId {
  Family family = Family::SP2;
  AlgebraSpec over;
};

void check_group_spec(const GroupId& gid);
// Sp2 over (A_C, sigma_C): the group whose compact part is KSP2C.
bool is_complex_symplectic(const GroupId& gid);

Report group_contains(const GroupId& gid, const Mat2& m, double tol = kMembershipTol);
Report lie_contains(const GroupId& gid, const Mat2& m, double tol = kMembershipTol);

struct CartanSplit {
  Mat2 k, m;
};
// Residuals of the compact / symmetric patterns for the ambient SP2 or O11 group.
Report k_pattern(const GroupId& gid, const Mat2& x, double tol = kMembershipTol);
Report m_pattern(const GroupId& gid, const Mat2& x, double tol = kMembershipTol);
CartanSplit cartan_project(const GroupId& gid, const Mat2& xi, double tol = kMembershipTol);

enum class ConjugatorId { T_sp2, R_o11, Q_sp2c, S_incarn };
Mat2 conjugator(ConjugatorId id, const AlgebraSpec& over);

// Carries the U+ base point to p. p lives in the half-space algebra of the
// family: A for O11 and AX_HAT, A_C for SP2 over A, A_H for SP2 over A_C.
Mat2 transporter(const GroupId& gid, const Element& p);
Mat2 exp_lie(const GroupId& gid, const Mat2& xi, double t = 1.0);

Mat2 sample_lie(const GroupId& gid, Rng& rng);
// Random element of the maximal compact subalgebra of SP2 / O11 / complex SP2.
Mat2 sample_k(const GroupId& gid, Rng& rng);
Mat2 sample_m(const GroupId& gid, Rng& rng);
Mat2 sample_group(const GroupId& gid, std::uint64_t seed);
Mat2 sample_group(const GroupId& gid, Rng& rng);

// sigma-bar and sigma-C on a Cplx-extended spec.
AntiInvolution sigma_bar_of(const AlgebraSpec& s);
AntiInvolution sigma_lin_of(const AlgebraSpec& s);

}  // namespace hsym
