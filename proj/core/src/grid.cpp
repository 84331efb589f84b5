#include "pgamma/grid.hpp"

#include <cmath>
#include <numbers>

#include "pgamma/error.hpp"

namespace pgamma {

void GridSpec::validate() const {
  if (count < 2) {
    throw Error(ErrorCode::DomainError, "grid needs at least 2 points");
  }
  if (kind == GridKind::circle) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw Error(ErrorCode::DomainError, "circle grid needs a positive finite radius");
    }
  } else if (start == end) {
    throw Error(ErrorCode::DomainError, "interval grid has equal endpoints");
  }
}

std::vector<std::complex<double>> GridSpec::points() const {
  validate();
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (kind == GridKind::circle) {
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / count;
      out.push_back(j == 0 ? center + radius : center + std::polar(radius, theta));
    }
    return out;
  }
  const std::complex<double> span = end - start;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(i == count - 1 ? end : start + t * span);
  }
  const std::complex<double> step = span / std::abs(span) * kOpenEndpointNudge;
  if (endpoint == EndpointPolicy::open_left) {
    out.front() = start + step;
  } else if (endpoint == EndpointPolicy::open_right) {
    out.back() = end - step;
  }
  return out;
}

GridSpec GridSpec::half_open_unit(int count) {
  GridSpec g;
  g.kind = GridKind::interval;
  g.start = {0.5, 0.0};
  g.end = {2.0, 0.0};
  g.count = count;
  g.endpoint = EndpointPolicy::open_left;
  return g;
}

std::string_view to_string(GridKind kind) noexcept {
  return kind == GridKind::circle ? "circle" : "interval";
}

std::string_view to_string(EndpointPolicy policy) noexcept {
  switch (policy) {
    case EndpointPolicy::closed: return "closed";
    case EndpointPolicy::open_left: return "open_left";
    case EndpointPolicy::open_right: return "open_right";
  }
  return "closed";
}

}  // namespace pgamma
