#include "funcord/aitken.hpp"

namespace funcord {

Vector aitken_delta2(const Vector& s0, const Vector& s1, const Vector& s2,
                     double guard, int* accelerated) {
  Vector out = s2;
  int count = 0;
  for (Eigen::Index i = 0; i < s2.size(); ++i) {
    const Complex step = s2(i) - s1(i);
    const Complex denom = step - (s1(i) - s0(i));
    if (std::abs(denom) < guard) continue;
    out(i) = s2(i) - step * step / denom;
    ++count;
  }
  if (accelerated) *accelerated = count;
  return out;
}

}  // namespace funcord
