#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace pgamma {

enum class GridKind { interval, circle };
enum class EndpointPolicy { closed, open_left, open_right };

/// Offset applied to an excluded interval endpoint.
inline constexpr double kOpenEndpointNudge = 0x1p-20;

/// Deterministic sampling grid: a straight segment in the complex plane or a
/// circle. The same GridSpec always yields bit-identical points.
struct GridSpec {
  GridKind kind = GridKind::interval;
  std::complex<double> start{0.5, 0.0};
  std::complex<double> end{2.0, 0.0};
  std::complex<double> center{0.5, 0.0};
  double radius = 0.0;
  int count = 64;
  EndpointPolicy endpoint = EndpointPolicy::closed;

  /// Throws DomainError when count < 2, a circle has radius <= 0, or an
  /// interval is degenerate.
  void validate() const;

  /// Interval: count equally spaced points from start to end, an open end
  /// replaced by the endpoint moved 2^-20 inward. Circle: count points
  /// center + radius e^(2 pi i j / count), j = 0 .. count-1.
  std::vector<std::complex<double>> points() const;

  /// The default real-axis grid on (1/2, 2].
  static GridSpec half_open_unit(int count = 64);
};

std::string_view to_string(GridKind kind) noexcept;
std::string_view to_string(EndpointPolicy policy) noexcept;

}  // namespace pgamma
