#include "topicgrids/samplers.hpp"

#include "topicgrids/rng.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace topicgrids {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  double v = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw ValidationError("bad numeric value '" + text + "' for " + what);
  return v;
}

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

SamplerSpec SamplerSpec::parse(const std::string& text) {
  SamplerSpec spec;
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  if (family == "uniform") {
    spec.family = Family::uniform;
  } else if (family == "gaussian") {
    spec.family = Family::gaussian;
  } else {
    throw ValidationError("unknown sampler family '" + family +
                          "' (expected uniform or gaussian)");
  }
  if (colon == std::string::npos) return spec;

  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError("sampler parameter '" + item +
                            "' is not key=value");
    const std::string key = item.substr(0, eq);
    const double value = parse_double(item.substr(eq + 1), key);
    if (spec.family == Family::uniform && key == "rho") {
      spec.rho = value;
    } else if (spec.family == Family::gaussian && key == "theta") {
      spec.theta = value;
    } else if (spec.family == Family::gaussian && key == "phi") {
      spec.phi = value;
    } else {
      throw ValidationError("unknown sampler parameter '" + key + "' for " +
                            family);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (spec.family == Family::uniform && !(spec.rho > 0))
    throw ValidationError("uniform sampler needs rho > 0");
  if (spec.family == Family::gaussian && !(spec.phi > 0))
    throw ValidationError("gaussian sampler needs phi > 0");
  return spec;
}

std::string SamplerSpec::str() const {
  if (family == Family::uniform) return "uniform:rho=" + fmt_param(rho);
  return "gaussian:theta=" + fmt_param(theta) + ",phi=" + fmt_param(phi);
}

PointCloud sample_uniform(std::size_t n, double rho, std::uint64_t seed) {
  if (!(rho > 0)) throw ValidationError("uniform sampler needs rho > 0");
  RandomStream rs(seed);
  std::vector<double> coords(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rs.uniform_centered();
    const double y = rs.uniform_centered();
    coords[2 * i] = rho * x;
    coords[2 * i + 1] = y;
  }
  PointCloud cloud;
  cloud.dims = 2;
  cloud.coords = std::move(coords);
  return cloud;
}

PointCloud sample_gaussian(std::size_t n, double theta, double phi,
                           std::uint64_t seed) {
  if (!(phi > 0)) throw ValidationError("gaussian sampler needs phi > 0");
  RandomStream rs(seed);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> coords(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [gx, gy] = rs.normal_pair();
    coords[2 * i] = phi * gx * c - gy * s;
    coords[2 * i + 1] = phi * gx * s + gy * c;
  }
  PointCloud cloud;
  cloud.dims = 2;
  cloud.coords = std::move(coords);
  return cloud;
}

PointCloud sample(const SamplerSpec& spec, std::size_t n, std::uint64_t seed) {
  if (spec.family == SamplerSpec::Family::uniform)
    return sample_uniform(n, spec.rho, seed);
  return sample_gaussian(n, spec.theta, spec.phi, seed);
}

}  // namespace topicgrids
