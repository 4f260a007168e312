#include <array>
#include <mutex>
#include <sstream>

#include "tables.hpp"

namespace hsym {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::Singular: return "Singular";
    case Errc::NotHermitianPair: return "NotHermitianPair";
    case Errc::NotPositive: return "NotPositive";
    case Errc::UnknownUnit: return "UnknownUnit";
    case Errc::NotInLieAlgebra: return "NotInLieAlgebra";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::NotInModel: return "NotInModel";
    case Errc::SingularDenominator: return "SingularDenominator";
    case Errc::NotRegular: return "NotRegular";
    case Errc::NonTransverse: return "NonTransverse";
    case Errc::KernelRankMismatch: return "KernelRankMismatch";
    case Errc::NotTangent: return "NotTangent";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::NotPattern: return "NotPattern";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

// quaternion units 1, i, j, k
constexpr int kQIdx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr double kQSgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};

constexpr std::array<std::array<int, 3>, 4> kQuatPatterns{{
    {1, 1, -1},
    {-1, -1, -1},
    {-1, 1, 1},
    {1, -1, 1},
}};

using CMat = Eigen::MatrixXcd;
using cd = std::complex<double>;

CMat rho(int q) {
  CMat m = CMat::Zero(2, 2);
  const cd I(0, 1);
  switch (q) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << I, 0, 0, -I; break;
    case 2: m << 0, 1, -1, 0; break;
    default: m << 0, I, I, 0; break;
  }
  return m;
}

CMat left_q(int q) {
  CMat m = CMat::Zero(4, 4);
  for (int b = 0; b < 4; ++b) m(kQIdx[q][b], b) = kQSgn[q][b];
  return m;
}

CMat right_q(int p) {
  CMat m = CMat::Zero(4, 4);
  for (int b = 0; b < 4; ++b) m(kQIdx[b][p], b) = kQSgn[b][p];
  return m;
}

detail::TowerTable build(const ScalarTower& t) {
  detail::TowerTable tb;
  tb.tower = t;
  tb.gd = t.ground_dim();
  tb.ed = t.ext_dim();
  tb.cd = t.central_dim();
  tb.d = t.dim();
  const int d = tb.d;
  tb.idx.assign(std::size_t(d) * d, 0);
  tb.sgn.assign(std::size_t(d) * d, 0.0);
  tb.g_of.resize(d);
  tb.e_of.resize(d);
  tb.c_of.resize(d);
  for (int c = 0; c < tb.cd; ++c)
    for (int g = 0; g < tb.gd; ++g)
      for (int e = 0; e < tb.ed; ++e) {
        int u = tb.index(c, g, e);
        tb.c_of[u] = c;
        tb.g_of[u] = g;
        tb.e_of[u] = e;
      }
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      int c = tb.c_of[u] ^ tb.c_of[v];
      double s = (tb.c_of[u] && tb.c_of[v]) ? -1.0 : 1.0;
      int g = kQIdx[tb.g_of[u]][tb.g_of[v]];
      s *= kQSgn[tb.g_of[u]][tb.g_of[v]];
      int e = kQIdx[tb.e_of[u]][tb.e_of[v]];
      s *= kQSgn[tb.e_of[u]][tb.e_of[v]];
      tb.idx[u * d + v] = tb.index(c, g, e);
      tb.sgn[u * d + v] = s;
    }

  const cd I(0, 1);
  // ground images, one block
  std::vector<CMat> gimg(tb.gd);
  if (t.ground == Ground::H) {
    for (int g = 0; g < 4; ++g) gimg[g] = rho(g);
  } else {
    for (int g = 0; g < tb.gd; ++g) gimg[g] = CMat::Constant(1, 1, g ? I : cd(1));
  }

  // ground x extension images, indexed g * ed + e
  std::vector<std::vector<CMat>> ge(tb.gd * tb.ed);
  for (int g = 0; g < tb.gd; ++g)
    for (int e = 0; e < tb.ed; ++e) {
      auto& out = ge[g * tb.ed + e];
      if (t.ext == Ext::None) {
        out = {gimg[g]};
      } else if (t.ext == Ext::Cplx) {
        if (t.ground == Ground::C) {
          for (double s : {1.0, -1.0}) out.push_back(gimg[g] * (e ? s * I : cd(1)));
        } else {
          out = {gimg[g] * (e ? I : cd(1))};
        }
      } else if (t.ground == Ground::R) {
        out = {rho(e)};
      } else if (t.ground == Ground::C) {
        out = {(g ? I : cd(1)) * rho(e)};
      } else {
        CMat r = right_q(e);
        if (e) r = -r;
        out = {left_q(g) * r};
      }
    }

  tb.images.resize(d);
  for (int u = 0; u < d; ++u) {
    const auto& base = ge[tb.g_of[u] * tb.ed + tb.e_of[u]];
    if (!t.central) {
      tb.images[u] = base;
      continue;
    }
    for (double s : {1.0, -1.0})
      for (const auto& m : base) tb.images[u].push_back(tb.c_of[u] ? CMat(m * (s * I)) : m);
  }
  tb.blocks = int(tb.images[0].size());
  tb.bsize = int(tb.images[0][0].rows());

  Eigen::MatrixXd gram(d, d);
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      double s = 0;
      for (int b = 0; b < tb.blocks; ++b)
        s += (tb.images[u][b].adjoint() * tb.images[v][b]).trace().real();
      gram(u, v) = s;
    }
  tb.gram_inv = gram.inverse();
  return tb;
}

AntiInvolution normalized(const ScalarTower& t, AntiInvolution s) {
  if (t.ext == Ext::None) s.ext = {-1, -1, -1};
  if (t.ext == Ext::Cplx) s.ext[1] = s.ext[2] = -1;
  if (!t.central) s.central = -1;
  return s;
}

}  // namespace

namespace detail {

const TowerTable& table(const ScalarTower& t) {
  static std::once_flag once;
  static std::vector<TowerTable> all;
  std::call_once(once, [] {
    for (Ground g : {Ground::R, Ground::C, Ground::H})
      for (Ext e : {Ext::None, Ext::Cplx, Ext::Quat})
        for (bool c : {false, true}) all.push_back(build(ScalarTower{g, e, c}));
  });
  return all[(int(t.ground) * 3 + int(t.ext)) * 2 + (t.central ? 1 : 0)];
}

std::vector<double> sigma_signs(const ScalarTower& t, const AntiInvolution& s) {
  std::array<double, 4> sg{1, 1, 1, 1};
  switch (s.base) {
    case BaseKind::Transpose: break;
    case BaseKind::ConjTranspose: sg = {1, -1, 1, 1}; break;
    case BaseKind::QuatSigma0: sg = {1, 1, 1, -1}; break;
    case BaseKind::QuatSigma1: sg = {1, -1, -1, -1}; break;
  }
  std::array<double, 4> se{1, double(s.ext[0]), double(s.ext[1]), double(s.ext[2])};
  const auto& tb = table(t);
  std::vector<double> out(tb.d);
  for (int u = 0; u < tb.d; ++u)
    out[u] = sg[tb.g_of[u]] * se[tb.e_of[u]] * (tb.c_of[u] ? double(s.central) : 1.0);
  return out;
}

}  // namespace detail

AntiInvolution sigma_c(AntiInvolution base) {
  base.ext = {1, -1, -1};
  return base;
}

AntiInvolution sigma_cbar(AntiInvolution base) {
  base.ext = {-1, -1, -1};
  return base;
}

AntiInvolution sigma_q(AntiInvolution base, int which) {
  if (which < 0 || which > 3) throw Error(Errc::SpecMismatch, "quaternionic sigma index");
  base.ext = kQuatPatterns[which];
  return base;
}

AntiInvolution with_central_sign(AntiInvolution s, int sign) {
  s.central = sign;
  return s;
}

bool compatible(const ScalarTower& t, const AntiInvolution& s) {
  switch (t.ground) {
    case Ground::R:
      if (s.base != BaseKind::Transpose) return false;
      break;
    case Ground::C:
      if (s.base != BaseKind::Transpose && s.base != BaseKind::ConjTranspose) return false;
      break;
    case Ground::H:
      if (s.base != BaseKind::QuatSigma0 && s.base != BaseKind::QuatSigma1) return false;
      break;
  }
  auto pm = [](int x) { return x == 1 || x == -1; };
  if (t.ext == Ext::Cplx && !pm(s.ext[0])) return false;
  if (t.ext == Ext::Quat) {
    if (!pm(s.ext[0]) || !pm(s.ext[1])) return false;
    if (s.ext[2] != -s.ext[0] * s.ext[1]) return false;
  }
  if (t.central && !pm(s.central)) return false;
  return true;
}

void validate(const AlgebraSpec& spec) {
  if (spec.n < 1) throw Error(Errc::SpecMismatch, "matrix size must be positive");
  if (!compatible(spec.tower, spec.sigma))
    throw Error(Errc::SpecMismatch, "anti-involution does not fit the tower");
}

bool same_algebra(const AlgebraSpec& a, const AlgebraSpec& b) {
  return a.n == b.n && a.tower == b.tower;
}

bool is_hermitian_pair(const ScalarTower& t, const AntiInvolution& s) {
  if (!compatible(t, s)) return false;
  auto sg = detail::sigma_signs(t, s);
  for (std::size_t u = 1; u < sg.size(); ++u)
    if (sg[u] != -1.0) return false;
  return true;
}

std::string sigma_name(const ScalarTower& t, const AntiInvolution& s) {
  std::string out;
  switch (s.base) {
    case BaseKind::Transpose: out = "transpose"; break;
    case BaseKind::ConjTranspose: out = "conj"; break;
    case BaseKind::QuatSigma0: out = "h0"; break;
    case BaseKind::QuatSigma1: out = "h1"; break;
  }
  if (t.ext == Ext::Cplx) out += s.ext[0] > 0 ? ":c" : ":cbar";
  if (t.ext == Ext::Quat) {
    for (int w = 0; w < 4; ++w)
      if (kQuatPatterns[w] == s.ext) out += ":q" + std::to_string(w);
  }
  if (t.central) out += s.central > 0 ? ":I+" : ":I-";
  return out;
}

AntiInvolution parse_sigma(const ScalarTower& t, const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  std::size_t want = 1 + (t.ext != Ext::None ? 1 : 0) + (t.central ? 1 : 0);
  if (parts.size() != want) throw Error(Errc::ParseError, "sigma name '" + name + "' does not fit tower");
  AntiInvolution s;
  const std::string& b = parts[0];
  if (b == "transpose") s.base = BaseKind::Transpose;
  else if (b == "conj") s.base = BaseKind::ConjTranspose;
  else if (b == "h0") s.base = BaseKind::QuatSigma0;
  else if (b == "h1") s.base = BaseKind::QuatSigma1;
  else throw Error(Errc::ParseError, "unknown sigma base '" + b + "'");
  std::size_t k = 1;
  if (t.ext == Ext::Cplx) {
    if (parts[k] == "c") s = sigma_c(s);
    else if (parts[k] == "cbar") s = sigma_cbar(s);
    else throw Error(Errc::ParseError, "unknown complex sigma tag '" + parts[k] + "'");
    ++k;
  } else if (t.ext == Ext::Quat) {
    const std::string& q = parts[k];
    if (q.size() != 2 || q[0] != 'q' || q[1] < '0' || q[1] > '3')
      throw Error(Errc::ParseError, "unknown quaternionic sigma tag '" + q + "'");
    s = sigma_q(s, q[1] - '0');
    ++k;
  }
  if (t.central) {
    if (parts[k] == "I+") s.central = 1;
    else if (parts[k] == "I-") s.central = -1;
    else throw Error(Errc::ParseError, "unknown central sigma tag '" + parts[k] + "'");
  }
  s = normalized(t, s);
  if (!compatible(t, s)) throw Error(Errc::ParseError, "sigma '" + name + "' does not fit tower");
  return s;
}

std::string describe(const AlgebraSpec& spec) {
  static const char* g[] = {"R", "C", "H"};
  std::string out = "Mat_" + std::to_string(spec.n) + "(" + g[int(spec.tower.ground)] + ")";
  if (spec.tower.ext == Ext::Cplx) out += "_C";
  if (spec.tower.ext == Ext::Quat) out += "_H";
  if (spec.tower.central) out += "[Iext]";
  return out + "{" + sigma_name(spec.tower, spec.sigma) + "}";
}

AlgebraSpec real_matrices(int n) { return AlgebraSpec{n, {}, {}}; }

AlgebraSpec complex_matrices(int n, bool conjugate) {
  AlgebraSpec s{n, {Ground::C, Ext::None, false}, {}};
  s.sigma.base = conjugate ? BaseKind::ConjTranspose : BaseKind::Transpose;
  return s;
}

AlgebraSpec quaternion_matrices(int n, int which) {
  AlgebraSpec s{n, {Ground::H, Ext::None, false}, {}};
  s.sigma.base = which == 0 ? BaseKind::QuatSigma0 : BaseKind::QuatSigma1;
  return s;
}

AlgebraSpec complexify(const AlgebraSpec& base, int isign) {
  if (base.tower.ext != Ext::None || base.tower.central)
    throw Error(Errc::SpecMismatch, "complexify needs an unextended algebra");
  AlgebraSpec s = base;
  s.tower.ext = Ext::Cplx;
  s.sigma = normalized(s.tower, isign > 0 ? sigma_c(base.sigma) : sigma_cbar(base.sigma));
  return s;
}

AlgebraSpec quaternionify(const AlgebraSpec& base, int which) {
  if (base.tower.ext == Ext::Quat || base.tower.central)
    throw Error(Errc::SpecMismatch, "quaternionify needs an unextended or complex algebra");
  AlgebraSpec s = base;
  s.tower.ext = Ext::Quat;
  s.sigma = sigma_q(base.sigma, which);
  return s;
}

AlgebraSpec with_central(const AlgebraSpec& spec, int sign) {
  AlgebraSpec s = spec;
  s.tower.central = true;
  s.sigma.central = sign;
  return s;
}

AlgebraSpec with_sigma(const AlgebraSpec& spec, const AntiInvolution& s) {
  AlgebraSpec out = spec;
  out.sigma = normalized(spec.tower, s);
  validate(out);
  return out;
}

AlgebraSpec resized(const AlgebraSpec& spec, int n) {
  AlgebraSpec out = spec;
  out.n = n;
  return out;
}

AlgebraSpec base_of(const AlgebraSpec& spec) {
  AlgebraSpec out = spec;
  out.tower.ext = Ext::None;
  out.tower.central = false;
  out.sigma = normalized(out.tower, spec.sigma);
  return out;
}

int unit_index(const ScalarTower& t, Unit u) {
  const auto& tb = detail::table(t);
  switch (u) {
    case Unit::I: return t.ground != Ground::R ? tb.index(0, 1, 0) : -1;
    case Unit::J: return t.ground == Ground::H ? tb.index(0, 2, 0) : -1;
    case Unit::K: return t.ground == Ground::H ? tb.index(0, 3, 0) : -1;
    case Unit::i: return t.ext != Ext::None ? tb.index(0, 0, 1) : -1;
    case Unit::j: return t.ext == Ext::Quat ? tb.index(0, 0, 2) : -1;
    case Unit::k: return t.ext == Ext::Quat ? tb.index(0, 0, 3) : -1;
    case Unit::Iext: return t.central ? tb.index(1, 0, 0) : -1;
  }
  return -1;
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::I: return "I";
    case Unit::J: return "J";
    case Unit::K: return "K";
    case Unit::i: return "i";
    case Unit::j: return "j";
    case Unit::k: return "k";
    case Unit::Iext: return "Iext";
  }
  return "?";
}

}  // namespace hsym
