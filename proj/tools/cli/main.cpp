#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness/commands.hpp"

namespace h = pgamma::harness;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> regime;
  std::optional<std::string> R;
  std::optional<std::string> omega;
  std::optional<std::string> alpha;
  std::optional<int> k_override;
  std::optional<std::string> precision;
  std::optional<std::string> out;
  std::optional<double> rel_tol;
  std::optional<int> max_terms;
};

struct GridFlags {
  std::optional<std::string> from;
  std::optional<std::string> to;
  std::optional<std::string> center;
  std::optional<double> radius;
  std::optional<int> count;
  std::optional<std::string> endpoint;
};

void add_common(CLI::App& app, CommonFlags& f) {
  app.add_option("--config", f.config_path, "JSON run configuration");
  app.add_option("--regime", f.regime, "paper or toy");
  app.add_option("--R", f.R, "R (decimal string, read at working precision)");
  app.add_option("--omega", f.omega, "Omega");
  app.add_option("--alpha", f.alpha, "alpha");
  app.add_option("--k-override", f.k_override, "K instead of the formula (toy regime only)");
  app.add_option("--precision", f.precision, "standard or extended");
  app.add_option("--out", f.out, "output file (stdout when absent)");
  app.add_option("--rel-tol", f.rel_tol, "series stopping tolerance");
  app.add_option("--max-terms", f.max_terms, "series term cap");
}

h::RunConfig build_config(const CommonFlags& f) {
  h::RunConfig c = f.config_path.empty() ? h::RunConfig{} : h::load_config(f.config_path);
  if (f.regime) c.regime = h::parse_regime(*f.regime);
  if (f.R) c.R = *f.R;
  if (f.omega) c.omega = *f.omega;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.k_override) c.k_override = *f.k_override;
  if (f.precision) c.precision = h::parse_precision(*f.precision);
  if (f.out) c.out = *f.out;
  if (f.rel_tol) c.tolerance.rel_tol = *f.rel_tol;
  if (f.max_terms) c.tolerance.max_terms = *f.max_terms;
  return c;
}

void apply_grid(const GridFlags& g, pgamma::GridSpec& grid) {
  if (g.center || g.radius) {
    grid.kind = pgamma::GridKind::circle;
    if (g.center) grid.center = h::parse_complex(*g.center);
    if (g.radius) grid.radius = *g.radius;
  } else if (g.from || g.to) {
    grid.kind = pgamma::GridKind::interval;
    if (g.from) grid.start = h::parse_complex(*g.from);
    if (g.to) grid.end = h::parse_complex(*g.to);
  }
  if (g.count) grid.count = *g.count;
  if (g.endpoint) {
    if (*g.endpoint == "closed") {
      grid.endpoint = pgamma::EndpointPolicy::closed;
    } else if (*g.endpoint == "open_left") {
      grid.endpoint = pgamma::EndpointPolicy::open_left;
    } else if (*g.endpoint == "open_right") {
      grid.endpoint = pgamma::EndpointPolicy::open_right;
    } else {
      throw h::ConfigError("endpoint must be closed, open_left or open_right");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-Gamma evaluation and bound verification"};
  app.require_subcommand(1);
  CommonFlags common;
  add_common(app, common);
  app.fallthrough();

  auto* eval = app.add_subcommand("eval", "evaluate nabla, zeta, gamma or xi at one point");
  std::string eval_target;
  std::string eval_point;
  eval->add_option("target", eval_target)->required();
  eval->add_option("s", eval_point, "complex point, e.g. 0.5, 2+3i, -1.5i")->required();

  auto* verify = app.add_subcommand("verify", "run a check suite and write a JSON report");
  std::string suite_name;
  std::vector<double> us;
  std::vector<std::string> ks;
  GridFlags verify_grid;
  verify->add_option("suite", suite_name, "theorem1, symmetry, factors, funceq or prop2")->required();
  verify->add_option("--u", us, "real points for the factors suite")->delimiter(',');
  verify->add_option("--k", ks, "extra rotation indices for the factors suite")->delimiter(',');
  verify->add_option("--from", verify_grid.from, "grid start");
  verify->add_option("--to", verify_grid.to, "grid end");
  verify->add_option("--count", verify_grid.count, "grid size");
  verify->add_option("--endpoint", verify_grid.endpoint, "closed, open_left or open_right");

  auto* scan = app.add_subcommand("scan", "evaluate on a grid and write CSV");
  std::string scan_target;
  GridFlags scan_grid;
  scan->add_option("target", scan_target)->required();
  scan->add_option("--from", scan_grid.from, "segment start");
  scan->add_option("--to", scan_grid.to, "segment end");
  scan->add_option("--center", scan_grid.center, "circle centre");
  scan->add_option("--radius", scan_grid.radius, "circle radius");
  scan->add_option("--count", scan_grid.count, "number of points");
  scan->add_option("--endpoint", scan_grid.endpoint, "closed, open_left or open_right");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kExitDomainError;
  }

  try {
    h::RunConfig config = build_config(common);
    if (*eval) {
      return h::cmd_eval(h::parse_target(eval_target), h::parse_complex(eval_point), config,
                         std::cout, std::cerr);
    }
    if (*verify) {
      if (!us.empty()) config.factors.u = us;
      if (!ks.empty()) config.factors.k = ks;
      apply_grid(verify_grid, config.grid);
      return h::cmd_verify(h::parse_suite(suite_name), config, std::cout, std::cerr);
    }
    apply_grid(scan_grid, config.grid);
    return h::cmd_scan(h::parse_target(scan_target), config, std::cout, std::cerr);
  } catch (const h::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const pgamma::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return h::kExitDomainError;
}
