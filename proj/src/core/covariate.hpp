#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace ppl {

// Covariates live on the periodic domain [0, 360)^D with D in {1, 2}.
inline constexpr double kPeriod = 360.0;
inline constexpr int kMaxDim = 2;

// A covariate vector. Components beyond the active dimension are ignored and
// kept at zero.
using Point = std::array<double, kMaxDim>;

inline double wrap360(double v) {
  double r = std::fmod(v, kPeriod);
  if (r < 0.0) r += kPeriod;
  // fmod of a tiny negative value can round back up to exactly 360
  if (r >= kPeriod) r = 0.0;
  return r;
}

inline Point wrap360(const Point& p, int dim) {
  Point out{};
  for (int d = 0; d < dim; ++d) out[d] = wrap360(p[d]);
  return out;
}

inline double periodic_delta(double a, double b) {
  double diff = std::fabs(wrap360(a) - wrap360(b));
  return diff > kPeriod - diff ? kPeriod - diff : diff;
}

// Per-component min(|a-b|, 360-|a-b|), combined Euclidean.
inline double periodic_distance2(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    double dd = periodic_delta(a[d], b[d]);
    s += dd * dd;
  }
  return s;
}

}  // namespace ppl
