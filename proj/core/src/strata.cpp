#include "morsecup/strata.hpp"

#include <cmath>

namespace morsecup {

Eigen::VectorXd Point::embedded() const {
  if (!y) return base;
  Eigen::VectorXd v(base.size() + 1);
  v << base, *y;
  return v;
}

Eigen::VectorXd canonical_projective(const Eigen::VectorXd& v, double eps) {
  Eigen::VectorXd u = v.normalized();
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > eps) {
      if (u(i) < 0) u = -u;
      break;
    }
  }
  return u;
}

}  // namespace morsecup
