#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "harness/config.hpp"
#include "pgamma/nabla.hpp"

namespace pgamma::harness {

enum class Target { nabla, zeta, gamma, xi };
enum class Suite { theorem1, symmetry, factors, funceq, prop2 };

Target parse_target(std::string_view text);
Suite parse_suite(std::string_view text);
std::string_view to_string(Target target) noexcept;
std::string_view to_string(Suite suite) noexcept;

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitDomainError = 2;

/// Prints the value at s as a cartesian number (when in range), then its
/// log-modulus and argument. 0 on success, 2 on a domain or config error.
int cmd_eval(Target target, std::complex<double> s, const RunConfig& config, std::ostream& out,
             std::ostream& err);

/// Runs one suite and writes the JSON report to config.out (stdout when
/// empty); wall time goes to a separate <out>.meta.json. 0 iff every
/// asserted check holds, 1 otherwise, 2 on a domain or config error.
int cmd_verify(Suite suite, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Evaluates target on config.grid and writes CSV to config.out (stdout
/// when empty). Per-point failures become error rows.
int cmd_scan(Target target, const RunConfig& config, std::ostream& out, std::ostream& err);

/// The report cmd_verify writes, without timing.
nlohmann::json verify_report(Suite suite, const RunConfig& config);

/// The CSV cmd_scan writes.
std::string scan_csv(Target target, const RunConfig& config);

/// One record of a report: name, paper_eq, lhs, rhs, margin, holds, regime,
/// notes and the per-stage detail.
nlohmann::json report_json(const nabla::BoundReport& report);

/// Worker count: hardware concurrency capped by PSEUDOGAMMA_THREADS.
int thread_cap();

/// Runs body(i) for i in [0, n) on up to thread_cap() threads. Callers
/// write into per-index slots, so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pgamma::harness
