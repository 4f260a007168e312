#include "hsym/groups.hpp"
#include "hsym/rng.hpp"

namespace hsym {

namespace {

Element draw(const AlgebraSpec& over, const AntiInvolution& s, Constraint c, Rng& rng) {
  return sample(with_sigma(over, s), c, rng).with_spec_sigma(over.sigma);
}

Element bar(const Element& x) { return apply_theta(Unit::i, x); }

Mat2 k_sample(const GroupId& gid, Rng& rng) {
  const AlgebraSpec& o = gid.over;
  const AntiInvolution& s = o.sigma;
  if (is_complex_symplectic(gid)) {
    Element a = draw(o, sigma_bar_of(o), Constraint::SigmaAntiSym, rng);
    Element b = draw(o, sigma_lin_of(o), Constraint::SigmaSym, rng);
    return {a, b, -bar(b), bar(a)};
  }
  Element a = draw(o, s, Constraint::SigmaAntiSym, rng);
  bool sp = gid.family == Family::SP2 || gid.family == Family::KSP2;
  Element b = draw(o, s, sp ? Constraint::SigmaSym : Constraint::SigmaAntiSym, rng);
  return sp ? Mat2{a, b, -b, a} : Mat2{a, b, b, a};
}

Element cone_point(const AlgebraSpec& o, const AntiInvolution& s, Rng& rng) {
  return draw(o, s, Constraint::SigmaPositive, rng);
}

}  // namespace

Mat2 sample_lie(const GroupId& gid, Rng& rng) {
  check_group_spec(gid);
  const AlgebraSpec& o = gid.over;
  const AntiInvolution& s = o.sigma;
  Element zero(o);
  switch (gid.family) {
    case Family::SP2:
    case Family::O11: {
      Constraint c = gid.family == Family::SP2 ? Constraint::SigmaSym : Constraint::SigmaAntiSym;
      Element x = draw(o, s, Constraint::Free, rng);
      Element y = draw(o, s, c, rng), z = draw(o, s, c, rng);
      return {x, z, y, -apply_sigma(s, x)};
    }
    case Family::KSP2:
    case Family::KO11:
    case Family::KSP2C: return k_sample(gid, rng);
    case Family::O_ALG: return {draw(o, s, Constraint::SigmaAntiSym, rng), zero, zero, zero};
    case Family::AX_HAT: {
      Element x = draw(o, s, Constraint::Free, rng);
      return {x, zero, zero, -apply_sigma(s, x)};
    }
    case Family::OC_HAT: {
      Element a = draw(o, s, Constraint::SigmaAntiSym, rng), b = draw(o, s, Constraint::SigmaAntiSym, rng);
      return {a, b, -b, a};
    }
    case Family::O2: {
      Mat2 m{draw(o, s, Constraint::Free, rng), draw(o, s, Constraint::Free, rng), draw(o, s, Constraint::Free, rng),
             draw(o, s, Constraint::Free, rng)};
      return 0.5 * (m - sigma_t(s, m));
    }
  }
  throw Error(Errc::Unsupported, "sample_lie");
}

Mat2 sample_k(const GroupId& gid, Rng& rng) {
  check_group_spec(gid);
  switch (gid.family) {
    case Family::SP2:
    case Family::O11:
    case Family::KSP2:
    case Family::KO11:
    case Family::KSP2C: return k_sample(gid, rng);
    default: throw Error(Errc::Unsupported, std::string("no compact part for ") + family_name(gid.family));
  }
}

Mat2 sample_m(const GroupId& gid, Rng& rng) {
  check_group_spec(gid);
  const AlgebraSpec& o = gid.over;
  const AntiInvolution& s = o.sigma;
  if (is_complex_symplectic(gid)) {
    Element a = draw(o, sigma_bar_of(o), Constraint::SigmaSym, rng);
    Element b = draw(o, sigma_lin_of(o), Constraint::SigmaSym, rng);
    return {a, b, bar(b), -bar(a)};
  }
  Element a = draw(o, s, Constraint::SigmaSym, rng);
  if (gid.family == Family::SP2) {
    Element b = draw(o, s, Constraint::SigmaSym, rng);
    return {a, b, b, -a};
  }
  if (gid.family == Family::O11) {
    Element b = draw(o, s, Constraint::SigmaAntiSym, rng);
    return {a, b, -b, -a};
  }
  throw Error(Errc::Unsupported, std::string("no symmetric part for ") + family_name(gid.family));
}

Mat2 sample_group(const GroupId& gid, std::uint64_t seed) {
  Rng rng(seed);
  return sample_group(gid, rng);
}

Mat2 sample_group(const GroupId& gid, Rng& rng) {
  check_group_spec(gid);
  const AlgebraSpec& o = gid.over;
  const AntiInvolution& s = o.sigma;
  bool herm = is_hermitian_pair(o.tower, s);
  switch (gid.family) {
    case Family::SP2:
    case Family::O11: {
      if (is_complex_symplectic(gid)) {
        AlgebraSpec ah = quaternionify(o, 0);
        Element x = draw(o, s, Constraint::SigmaSym, rng);
        Element y = cone_point(o, sigma_bar_of(o), rng);
        Element p = join_quat(x, y, ah);
        return transporter(gid, p) * exp_lie(gid, k_sample(gid, rng));
      }
      if (herm) {
        Element y = cone_point(o, s, rng);
        if (gid.family == Family::O11) {
          Element x = draw(o, s, Constraint::SigmaAntiSym, rng);
          return transporter(gid, x + y) * exp_lie(gid, k_sample(gid, rng));
        }
        if (o.tower.ext != Ext::None) {
          Mat2 g1 = exp_lie(gid, 0.5 * sample_lie(gid, rng));
          return g1 * exp_lie(gid, 0.5 * sample_lie(gid, rng));
        }
        Element x = draw(o, s, Constraint::SigmaSym, rng);
        AlgebraSpec ac = complexify(o, 1);
        return transporter(gid, join_complex(x, y, ac)) * exp_lie(gid, k_sample(gid, rng));
      }
      Mat2 g1 = exp_lie(gid, 0.5 * sample_lie(gid, rng));
      return g1 * exp_lie(gid, 0.5 * sample_lie(gid, rng));
    }
    case Family::KSP2:
    case Family::KO11:
    case Family::KSP2C:
    case Family::O_ALG: return exp_lie(gid, sample_lie(gid, rng));
    default:
      throw Error(Errc::Unsupported, std::string("sample_group does not cover ") + family_name(gid.family));
  }
}

}  // namespace hsym
