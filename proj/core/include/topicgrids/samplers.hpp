#pragma once

#include "topicgrids/types.hpp"

#include <cstdint>

namespace topicgrids {

// Parameterized 2-D sampling scheme.  The CLI string forms are
// "uniform:rho=1" and "gaussian:theta=0.7853981634,phi=2"; omitted
// parameters default to rho=1, theta=0, phi=1.
struct SamplerSpec {
  enum class Family { uniform, gaussian };
  Family family = Family::uniform;
  double rho = 1.0;
  double theta = 0.0;
  double phi = 1.0;

  static SamplerSpec parse(const std::string& text);
  std::string str() const;
};

// n points (rho * X, Y) with X, Y independent uniform on (-0.5, 0.5).
// Per point, X is drawn first, then Y.  Output carries no ids.
PointCloud sample_uniform(std::size_t n, double rho, std::uint64_t seed);

// n points from the row-vector product (X, Y) * diag(phi, 1) * R(theta)
// with   R(theta) = [[cos t, sin t], [-sin t, cos t]]
// and (X, Y) standard bivariate normal, i.e.
//   x = phi X cos t - Y sin t,   y = phi X sin t + Y cos t.
// Covariance is R(t)^T diag(phi^2, 1) R(t).  One Box-Muller pair per point.
PointCloud sample_gaussian(std::size_t n, double theta, double phi,
                           std::uint64_t seed);

// Dispatch on spec.family.
PointCloud sample(const SamplerSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace topicgrids
