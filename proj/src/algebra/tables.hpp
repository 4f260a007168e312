#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hsym/algebra.hpp"

namespace hsym::detail {

// Per-tower multiplication table, sigma sign helpers and complex embedding.
struct TowerTable {
  ScalarTower tower;
  int d = 1, gd = 1, ed = 1, cd = 1;
  std::vector<int> idx;     // idx[u * d + v]: basis index of e_u e_v
  std::vector<double> sgn;  // sign of e_u e_v
  std::vector<int> g_of, e_of, c_of;
  // embedding: images[u][blk], each b x b
  int blocks = 1, bsize = 1;
  std::vector<std::vector<Eigen::MatrixXcd>> images;
  Eigen::MatrixXd gram_inv;

  int index(int c, int g, int e) const { return (c * gd + g) * ed + e; }
};

const TowerTable& table(const ScalarTower& t);
// sigma sign for every basis unit under s (transpose applied separately).
std::vector<double> sigma_signs(const ScalarTower& t, const AntiInvolution& s);

}  // namespace hsym::detail
