#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgamma/classical.hpp"
#include "pgamma/grid.hpp"
#include "pgamma/nabla.hpp"
#include "pgamma/real.hpp"

namespace pgamma::harness {

/// Malformed or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorOptions {
  std::vector<double> u{0.6, 1.0, 2.0};
  /// Extra k to check; decimal strings because k reaches 2^160.
  std::vector<std::string> k;
  /// Toy runs with N <= 2^exhaustive_max_exponent check every k.
  int exhaustive_max_exponent = 20;
};

struct SymmetryOptions {
  int nabla_points = 50;
  double nabla_radius = 2.0;
  int xi_points = 20;
  std::uint64_t seed = 1;
};

struct Prop2Options {
  std::optional<double> radius;  // defaults to R
  int angles = 64;
};

/// Everything a campaign depends on. R, Omega and alpha are kept as decimal
/// text so the extended back-end parses them at full precision.
struct RunConfig {
  nabla::Regime regime = nabla::Regime::toy;
  std::string R = "100";
  std::string omega = "1";
  std::string alpha = "0.25";
  std::optional<int> k_override;
  std::optional<PrecisionMode> precision;  // unset: extended for paper, standard for toy
  classical::SeriesTolerance tolerance{};
  GridSpec grid = GridSpec::half_open_unit(64);
  FactorOptions factors;
  SymmetryOptions symmetry;
  Prop2Options prop2;
  int funceq_points = 30;
  std::string out;

  PrecisionMode effective_precision() const;

  /// Throws ConfigError for inconsistent settings: a K override or standard
  /// precision in regime "paper", standard precision at R >= 2 T0 - 1,
  /// unparsable numbers, bad grids.
  void validate() const;

  nlohmann::json to_json() const;
};

/// Reads the documented schema; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

std::string_view to_string(PrecisionMode mode) noexcept;
PrecisionMode parse_precision(std::string_view text);
nabla::Regime parse_regime(std::string_view text);

/// "2", "0.3+2i", "0.3-2i", "-1.5i" or "0.3,2".
std::complex<double> parse_complex(std::string_view text);

}  // namespace pgamma::harness
