#pragma once

#include <cmath>

namespace wf::test {

inline bool near_abs(double actual, double expected, double tolerance) {
  return std::abs(actual - expected) <= tolerance;
}

inline bool near_rel(double actual, double expected, double relative_tolerance) {
  return std::abs(actual - expected) <= relative_tolerance * std::abs(expected);
}

}  // namespace wf::test
