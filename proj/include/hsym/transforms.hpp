#pragma once

#include <utility>
#include <vector>

#include "hsym/models.hpp"

namespace hsym {

// A map between two models of one family.
struct MapId {
  ModelFamily family = ModelFamily::SP2;
  ModelId from, to;
};

// Edges C<->P+-, P+-<->U+-, P+<->B, U+<->B.
bool is_primitive(const ModelId& from, const ModelId& to);
std::vector<MapId> primitive_maps(ModelFamily f);
// Shortest chain of models from `from` to `to`, both ends included.
std::vector<ModelId> route(const ModelId& from, const ModelId& to);

// Generator of the eigenline of J: the +-1 line for the orthogonal families,
// the -+i line of J_C for SP2 and the line with J_H(v) = -+v j for SP2C. The
// representative is normalized to x2 = 1.
Vec2 eigenline(const ModelPoint& c, int sign);

ModelPoint convert(const ModelPoint& p, const ModelId& to);
TangentVector differential(const TangentVector& t, const ModelId& to);

// Central differences of convert along a curve through t.at with velocity
// t; one Richardson level unless richardson is false.
TangentVector differential_fd(const TangentVector& t, const ModelId& to, double h = 1e-5, bool richardson = true);

// Distance between tangents at the same point; P tangents are compared
// modulo the line.
double tangent_distance(const TangentVector& a, const TangentVector& b);
double tangent_size(const TangentVector& t);

// SP2 coordinates of L at J: r = omega(J e1, e1), l with L(e1) = f_J^-1(l),
// and (a+, a-) with L_C v+- = v-+ a+- in a normalized eigenbasis.
struct CanonicalCoords {
  Element r, l;
  Element a_plus, a_minus;
  Vec2 v_plus, v_minus;
};
CanonicalCoords canonical_tangent_coords(const TangentVector& t);
// L_C rebuilt from the coordinates; compare with lift(L, A_C).
Mat2 rebuild_from_split(const CanonicalCoords& c);

// Internal steps shared by the oracle; no membership checks.
ModelPoint convert_unchecked(const ModelPoint& p, const ModelId& to);

}  // namespace hsym
