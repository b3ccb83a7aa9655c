#include "lhsba/point.hpp"

#include "lhsba/error.hpp"

namespace lhsba {

Point clip(const Point& x, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("clip: require lo < hi");
  return x.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace lhsba
