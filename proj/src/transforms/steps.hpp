#pragma once

#include "hsym/transforms.hpp"

namespace hsym::detail {

bool orthogonal_family(ModelFamily f);
int node_of(const ModelId& m);
ModelId model_of(ModelFamily f, int node);

// x -> J theta_i(x) + (J theta_i(y)) j for x + y j.
Vec2 apply_quat_structure(const Mat2& m, const Vec2& w);

ModelPoint step(const ModelPoint& p, const ModelId& to);
TangentVector dstep(const TangentVector& t, const ModelId& to);

}  // namespace hsym::detail
