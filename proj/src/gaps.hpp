#pragma once

#include <cmath>
#include <limits>

namespace lowdisc::detail {

// Smallest double t with t - base >= eps under float subtraction. A plain
// base + eps can round so that the measured gap falls below eps. Chain bounds
// can sit far outside [0,1], so the correction must step away from base, not
// toward a fixed landmark.
inline double gap_up(double base, double eps) {
  double t = base + eps;
  while (t - base < eps)
    t = std::nextafter(t, std::numeric_limits<double>::infinity());
  return t;
}

// Largest double t with base - t >= eps under float subtraction.
inline double gap_down(double base, double eps) {
  double t = base - eps;
  while (base - t < eps)
    t = std::nextafter(t, -std::numeric_limits<double>::infinity());
  return t;
}

}  // namespace lowdisc::detail
