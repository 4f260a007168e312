#include <array>
#include <deque>

#include <Eigen/SVD>

#include "steps.hpp"

namespace hsym {

namespace detail {

bool orthogonal_family(ModelFamily f) {
  return f == ModelFamily::O11 || f == ModelFamily::AX || f == ModelFamily::OC || f == ModelFamily::CPT_KO11;
}

// 0 C, 1 P+, 2 P-, 3 U+, 4 U-, 5 B
int node_of(const ModelId& m) {
  switch (m.kind) {
    case Kind::C: return 0;
    case Kind::P: return m.sign > 0 ? 1 : 2;
    case Kind::U: return m.sign > 0 ? 3 : 4;
    case Kind::B: return 5;
  }
  return 0;
}

ModelId model_of(ModelFamily f, int node) {
  static const std::array<Kind, 6> kinds{Kind::C, Kind::P, Kind::P, Kind::U, Kind::U, Kind::B};
  static const std::array<int, 6> signs{1, 1, -1, 1, -1, 1};
  return {f, kinds[node], signs[node]};
}

Vec2 apply_quat_structure(const Mat2& m, const Vec2& w) {
  const AlgebraSpec& ah = w.spec();
  auto [x1, y1] = split_quat(w.x1);
  auto [x2, y2] = split_quat(w.x2);
  Vec2 x = with_sigma(Vec2{x1, x2}, m.spec().sigma), y = with_sigma(Vec2{y1, y2}, m.spec().sigma);
  Vec2 jx = m * theta(Unit::i, x), jy = m * theta(Unit::i, y);
  return {join_quat(jx.x1, jy.x1, ah), join_quat(jx.x2, jy.x2, ah)};
}

}  // namespace detail

using namespace detail;

namespace {

const std::array<std::array<bool, 6>, 6>& adjacency() {
  static const std::array<std::array<bool, 6>, 6> adj = [] {
    std::array<std::array<bool, 6>, 6> a{};
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = true; };
    link(0, 1);
    link(0, 2);
    link(1, 3);
    link(2, 4);
    link(1, 5);
    link(3, 5);
    return a;
  }();
  return adj;
}

Element safe_inv(const Element& e, const char* what) {
  try {
    return inv(e);
  } catch (const Error& err) {
    if (err.code() == Errc::Singular) throw Error(Errc::NonTransverse, what);
    throw;
  }
}

Mat2 safe_inv(const Mat2& m, const char* what) {
  try {
    return inv(m);
  } catch (const Error& err) {
    if (err.code() == Errc::Singular) throw Error(Errc::NonTransverse, what);
    throw;
  }
}

// Eigen equation J_ext(w) = w u on the P algebra.
struct EigenProblem {
  AlgebraSpec pa;
  Mat2 jx;  // J lifted to pa (linear) or the A_C structure (SP2C)
  bool quat = false;
  Element u;

  Vec2 apply(const Vec2& w) const {
    Vec2 jw = quat ? apply_quat_structure(jx, w) : jx * w;
    return jw - w * u;
  }
};

EigenProblem eigen_problem(const ModelPoint& c, int sign) {
  EigenProblem e;
  e.pa = point_algebra({c.mid.family, Kind::P, sign}, c.base);
  const ModelFamily f = c.mid.family;
  if (orthogonal_family(f)) {
    e.jx = c.J;
    e.u = Element::scalar(e.pa, sign);
  } else if (f == ModelFamily::SP2) {
    e.jx = lift(c.J, e.pa);
    e.u = Element::unit(e.pa, Unit::i, -sign);
  } else if (f == ModelFamily::SP2C) {
    e.jx = c.J;
    e.quat = true;
    e.u = Element::unit(e.pa, Unit::j, -sign);
  } else {
    throw Error(Errc::Unsupported, "eigenlines of compact models");
  }
  return e;
}

ModelPoint reconstruct(const ModelPoint& p) {
  const ModelFamily f = p.mid.family;
  const double s = p.mid.sign;
  ModelId cid{f, Kind::C, 1};
  AlgebraSpec ga = point_algebra(cid, p.base);
  const Vec2& x = p.x;
  if (orthogonal_family(f)) {
    const AntiInvolution& sg = p.base.sigma;
    Element q = safe_inv(apply_sigma(sg, x.x2), "x2 not invertible");
    Vec2 y{-(q * apply_sigma(sg, x.x1)), Element::identity(x.spec())};
    Mat2 pm = from_columns(x, y);
    Mat2 j = pm * mat2_real(x.spec(), s, 0, 0, -s) * safe_inv(pm, "line meets its complement");
    return make_c(cid, p.base, with_sigma(j, ga.sigma));
  }
  if (f == ModelFamily::SP2) {
    auto [r1, i1] = split_complex(x.x1);
    auto [r2, i2] = split_complex(x.x2);
    Vec2 xr{r1, r2}, xi{i1, i2};
    Mat2 rm = from_columns(xr, xi);
    Mat2 j = s * from_columns(xi, -1.0 * xr) * safe_inv(rm, "line meets its conjugate");
    return make_c(cid, p.base, with_sigma(j, ga.sigma));
  }
  if (f == ModelFamily::SP2C) {
    auto [c1, q1] = split_quat(x.x1);
    auto [c2, q2] = split_quat(x.x2);
    Vec2 xc = with_sigma(Vec2{c1, c2}, ga.sigma), xq = with_sigma(Vec2{q1, q2}, ga.sigma);
    Mat2 rm = from_columns(theta(Unit::i, xc), theta(Unit::i, xq));
    Mat2 m = s * from_columns(xq, -1.0 * xc) * safe_inv(rm, "line meets its j-translate");
    return make_c(cid, p.base, with_sigma(m, ga.sigma));
  }
  throw Error(Errc::Unsupported, "compact models");
}

}  // namespace

Vec2 eigenline(const ModelPoint& c, int sign) {
  if (c.mid.kind != Kind::C) throw Error(Errc::SpecMismatch, "eigenline needs a C point");
  EigenProblem e = eigen_problem(c, sign);
  const int n = e.pa.n, d = e.pa.dim(), m = n * d;
  Eigen::MatrixXd phi(2 * m, 2 * m);
  for (int k = 0; k < 2 * m; ++k) {
    Vec2 w{Element(e.pa), Element(e.pa)};
    int blk = k / m, rem = k % m;
    (blk == 0 ? w.x1 : w.x2)(rem / d, 0, rem % d) = 1.0;
    Vec2 out = e.apply(w);
    phi.block(0, k, m, 1) = column_coeffs(out.x1, 0);
    phi.block(m, k, m, 1) = column_coeffs(out.x2, 0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double tol = 1e-8 * std::max(1.0, sv(0));
  if (sv(m - 1) <= tol || sv(m) > tol)
    throw Error(Errc::KernelRankMismatch, "eigenspace of the wrong real dimension");
  Eigen::MatrixXd ker = svd.matrixV().rightCols(m);
  Eigen::MatrixXd lower = ker.bottomRows(m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lower);
  if (!lu.isInvertible() || lu.rcond() < kSingularRcond) throw Error(Errc::NonTransverse, "eigenline meets (1,0)");
  Vec2 x{Element(e.pa), Element::identity(e.pa)};
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd target = Eigen::VectorXd::Zero(m);
    target(j * d) = 1.0;
    Eigen::VectorXd col = ker * lu.solve(target);
    for (int r = 0; r < n; ++r)
      for (int u = 0; u < d; ++u) x.x1(r, j, u) = col(r * d + u);
  }
  return x;
}

bool is_primitive(const ModelId& from, const ModelId& to) {
  return adjacency()[node_of(from)][node_of(to)];
}

std::vector<MapId> primitive_maps(ModelFamily f) {
  std::vector<MapId> out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (adjacency()[i][j]) out.push_back({f, model_of(f, i), model_of(f, j)});
  return out;
}

std::vector<ModelId> route(const ModelId& from, const ModelId& to) {
  if (from.family != to.family) throw Error(Errc::SpecMismatch, "maps stay inside one family");
  int a = node_of(from), b = node_of(to);
  std::array<int, 6> prev;
  prev.fill(-1);
  prev[a] = a;
  std::deque<int> q{a};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v = 0; v < 6; ++v)
      if (adjacency()[u][v] && prev[v] < 0) {
        prev[v] = u;
        q.push_back(v);
      }
  }
  std::vector<ModelId> path;
  for (int v = b; v != a; v = prev[v]) path.push_back(model_of(from.family, v));
  path.push_back(from);
  return {path.rbegin(), path.rend()};
}

namespace detail {

ModelPoint step(const ModelPoint& p, const ModelId& to) {
  const ModelFamily f = p.mid.family;
  const Kind k = p.mid.kind;
  const Kind tk = to.kind;
  if (k == Kind::C && tk == Kind::P) return make_p(to, p.base, eigenline(p, to.sign));
  if (k == Kind::P && tk == Kind::C) return reconstruct(p);
  if (k == Kind::P && tk == Kind::U)
    return make_z(to, p.base, p.x.x1 * safe_inv(p.x.x2, "x2 not invertible"));
  if (k == Kind::U && tk == Kind::P)
    return make_p(to, p.base, {p.z, Element::identity(p.z.spec())});
  Mat2 c = b_conjugator(f, p.base);
  if (k == Kind::P && tk == Kind::B) {
    Vec2 y = inv(c) * p.x;
    return make_z(to, p.base, y.x1 * safe_inv(y.x2, "y2 not invertible"));
  }
  if (k == Kind::B && tk == Kind::P)
    return make_p(to, p.base, c * Vec2{p.z, Element::identity(p.z.spec())});
  try {
    if (k == Kind::U && tk == Kind::B) return make_z(to, p.base, moebius(inv(c), p.z));
    if (k == Kind::B && tk == Kind::U) return make_z(to, p.base, moebius(c, p.z));
  } catch (const Error& err) {
    if (err.code() == Errc::Singular || err.code() == Errc::SingularDenominator)
      throw Error(Errc::NonTransverse, "chart denominator");
    throw;
  }
  throw Error(Errc::Unsupported, "not a primitive map");
}

}  // namespace detail

ModelPoint convert_unchecked(const ModelPoint& p, const ModelId& to) {
  if (is_compact(p.mid.family)) throw Error(Errc::Unsupported, "maps between compact models");
  check_model(to, p.base);
  std::vector<ModelId> path = route(p.mid, to);
  ModelPoint cur = p;
  for (std::size_t i = 1; i < path.size(); ++i) cur = step(cur, path[i]);
  return cur;
}

ModelPoint convert(const ModelPoint& p, const ModelId& to) {
  require_contains(p);
  return convert_unchecked(p, to);
}

}  // namespace hsym
