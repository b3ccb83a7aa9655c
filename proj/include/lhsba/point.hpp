#ifndef LHSBA_POINT_HPP
#define LHSBA_POINT_HPP

#include <Eigen/Core>

namespace lhsba {

// A point of the (flattened, normalized) input space.
using Point = Eigen::VectorXd;

// Coordinatewise clamp into [lo, hi]. Throws DomainError unless lo < hi.
Point clip(const Point& x, double lo = 0.0, double hi = 1.0);

inline double l2_distance(const Point& a, const Point& b) { return (a - b).norm(); }

}  // namespace lhsba

#endif  // LHSBA_POINT_HPP
