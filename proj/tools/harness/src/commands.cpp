#include "harness/commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "pgamma/classical.hpp"

namespace pgamma::harness {

namespace {

using nlohmann::json;
using nabla::BoundReport;
using nabla::BoundStage;
using nabla::RootIndex;

template <class Real>
Real parse_real(const std::string& text);
template <>
double parse_real<double>(const std::string& text) {
  return std::stod(text);
}
template <>
Quad parse_real<Quad>(const std::string& text) {
  return parse_quad(text);
}

template <class Real>
nabla::Params<Real> make_params(const RunConfig& c) {
  return nabla::params_from<Real>(parse_real<Real>(c.R), parse_real<Real>(c.omega),
                                  parse_real<Real>(c.alpha), c.regime, c.k_override);
}

template <class F>
void with_precision(const RunConfig& c, F&& f) {
  if (c.effective_precision() == PrecisionMode::extended) {
    f(Quad{});
  } else {
    f(double{});
  }
}

std::string_view formula(Target t) {
  switch (t) {
    case Target::nabla: return "nabla(s) = (w2/w1)^q [prod_k (z - e^(ik pi/2^K) w1)/(z - e^(ik pi/2^K) w2)]^(q/N)";
    case Target::zeta: return "zeta(s) = 1/(1 - 2^(1-s)) sum_n 2^-(n+1) sum_k (-1)^k C(n,k) (k+1)^-s";
    case Target::gamma: return "1/Gamma(s) = s e^(gamma0 s) prod_n (1 + s/n) e^(-s/n)";
    case Target::xi: return "xi(s) = pi^(-s/2) (s/2) Gamma(s/2) (s-1) zeta(s)";
  }
  return "";
}

template <class Real>
std::string cartesian_text(const BasicLogComplex<Real>& v, int digits) {
  if (!v.in_floating_range()) return "out of floating range";
  const auto c = v.to_cartesian();
  std::string text = format_real(c.re, digits);
  if (c.im != Real(0)) {
    text += c.im < Real(0) ? "-" : "+";
    text += format_real(c.im < Real(0) ? -c.im : c.im, digits) + "i";
  }
  return text;
}

template <class Real>
void print_value(std::ostream& out, const BasicLogComplex<Real>& v) {
  out << cartesian_text(v, RealTraits<Real>::sig_digits) << "\n"
      << "log_mod " << format_real(v.log_mod()) << "\n"
      << "arg " << format_real(v.arg() + Real(0)) << "\n";
}

LogComplex classical_value(Target target, std::complex<double> s,
                           const classical::SeriesTolerance& tol) {
  switch (target) {
    case Target::zeta: {
      const auto z = classical::zeta_hasse(s, tol);
      return LogComplex::from_cartesian(z.real(), z.imag());
    }
    case Target::gamma: return classical::gamma_weierstrass(s, tol);
    case Target::xi: return classical::xi(s, tol);
    case Target::nabla: break;
  }
  throw ConfigError("not a classical target");
}

std::string complex_label(std::complex<double> s) {
  std::string t = format_real(s.real());
  t += s.imag() < 0 ? "-" : "+";
  return t + format_real(std::fabs(s.imag())) + "i";
}

template <class Real>
json params_json(const nabla::Params<Real>& p) {
  return {{"R", format_real(p.R)},
          {"T", format_real(p.T)},
          {"Omega", format_real(p.Omega)},
          {"alpha", format_real(p.alpha)},
          {"gamma_grave", format_real(p.gamma_grave)},
          {"W1", format_real(p.W1)},
          {"W2", format_real(p.W2)},
          {"q", format_real(p.q)},
          {"K", p.K},
          {"N", "2^" + std::to_string(p.n_exponent())},
          {"regime", std::string(nabla::to_string(p.regime))},
          {"k_override", p.k_override ? json(*p.k_override) : json(nullptr)},
          {"provenance", p.provenance}};
}

/// Report for "each value <= limit" style checks on plain doubles.
BoundReport threshold_report(std::string name, std::string identity,
                             const std::vector<std::pair<std::string, double>>& values,
                             double limit, nabla::Regime regime, bool k_override_active) {
  BoundReport r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.regime = regime;
  r.k_override_active = k_override_active;
  double worst = 0;
  for (const auto& [label, v] : values) {
    BoundStage st;
    st.label = label + " <= " + format_real(limit, 3);
    st.lhs = v;
    st.rhs = limit;
    st.margin = limit - v;
    st.holds = v <= limit;
    st.lhs_text = format_real(v);
    st.rhs_text = format_real(limit);
    st.margin_text = format_real(st.margin);
    r.stages.push_back(std::move(st));
    worst = std::max(worst, v);
  }
  r.lhs = worst;
  r.rhs = limit;
  r.margin = limit - worst;
  r.holds = std::all_of(r.stages.begin(), r.stages.end(), [](const auto& s) { return s.holds; });
  return r;
}

std::complex<double> random_in_disc(std::mt19937_64& rng, std::complex<double> centre, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double t = 2 * std::numbers::pi * u(rng);
  return centre + std::polar(r, t);
}

void suite_theorem1(const RunConfig& c, std::vector<BoundReport>& out, json& extra) {
  with_precision(c, [&](auto tag) {
    using Real = decltype(tag);
    const auto p = make_params<Real>(c);
    extra["parameters"] = params_json(p);
    out.push_back(nabla::theorem1_check(p, c.grid));
  });
}

void suite_symmetry(const RunConfig& c, std::vector<BoundReport>& out, json& extra) {
  std::mt19937_64 rng(c.symmetry.seed);
  std::vector<std::complex<double>> nabla_pts;
  for (int i = 0; i < c.symmetry.nabla_points; ++i) {
    nabla_pts.push_back(random_in_disc(rng, {0.5, 0.0}, c.symmetry.nabla_radius));
  }
  std::vector<std::complex<double>> xi_pts;
  std::uniform_real_distribution<double> re(0.1, 0.9);
  std::uniform_real_distribution<double> im(-10.0, 10.0);
  for (int i = 0; i < c.symmetry.xi_points; ++i) xi_pts.emplace_back(re(rng), im(rng));

  std::vector<BoundReport> nabla_reports(nabla_pts.size());
  with_precision(c, [&](auto tag) {
    using Real = decltype(tag);
    const auto p = make_params<Real>(c);
    extra["parameters"] = params_json(p);
    const bool direct = p.n_exponent() <= 20;
    auto f = [&](classical::Complex s) {
      const Cplx<Real> x{static_cast<Real>(s.real()), static_cast<Real>(s.imag())};
      return direct ? nabla::nabla_direct(x, p) : nabla::nabla_closed(x, p);
    };
    parallel_for(nabla_pts.size(), [&](std::size_t i) {
      const auto r = classical::double_symmetry_residual(f, nabla_pts[i]);
      auto rep = threshold_report(
          "nabla_symmetry(s=" + complex_label(nabla_pts[i]) + ")",
          "nabla(conj s) = conj nabla(s) and nabla(1 - s) = nabla(s)",
          {{"|nabla(conj s) - conj nabla(s)| / |nabla(s)|", r.conjugate},
           {"|nabla(1 - s) - nabla(s)| / |nabla(s)|", r.reflection}},
          1e-9, p.regime, p.k_override.has_value());
      rep.notes.push_back(direct ? "evaluator direct" : "evaluator closed");
      nabla_reports[i] = std::move(rep);
    });
  });
  out.insert(out.end(), nabla_reports.begin(), nabla_reports.end());

  std::vector<BoundReport> xi_reports(xi_pts.size());
  auto f = [&](classical::Complex s) { return classical::xi(s, c.tolerance); };
  parallel_for(xi_pts.size(), [&](std::size_t i) {
    const auto r = classical::double_symmetry_residual(f, xi_pts[i]);
    xi_reports[i] = threshold_report("xi_symmetry(s=" + complex_label(xi_pts[i]) + ")",
                                     "xi(conj s) = conj xi(s) and xi(1 - s) = xi(s)",
                                     {{"|xi(conj s) - conj xi(s)| / |xi(s)|", r.conjugate},
                                      {"|xi(1 - s) - xi(s)| / |xi(s)|", r.reflection}},
                                     1e-8, c.regime, c.k_override.has_value());
  });
  out.insert(out.end(), xi_reports.begin(), xi_reports.end());
}

void suite_factors(const RunConfig& c, std::vector<BoundReport>& out, json& extra) {
  with_precision(c, [&](auto tag) {
    using Real = decltype(tag);
    const auto p = make_params<Real>(c);
    extra["parameters"] = params_json(p);
    const int e = p.n_exponent();
    std::vector<RootIndex> ks;
    const bool exhaustive =
        p.regime == nabla::Regime::toy && e <= c.factors.exhaustive_max_exponent;
    if (exhaustive) {
      const std::uint64_t n = std::uint64_t{1} << e;
      for (std::uint64_t k = 1; k <= n; ++k) ks.emplace_back(k);
    } else {
      ks = {RootIndex(1), RootIndex(1) << p.K, RootIndex(1) << e};
    }
    for (const auto& k : c.factors.k) ks.emplace_back(k);
    extra["factor_k"] = exhaustive ? json("all 2^" + std::to_string(e))
                                   : json(std::to_string(ks.size()) + " sampled");

    const std::size_t per_u = ks.size();
    const std::size_t total = per_u * c.factors.u.size();
    std::vector<BoundReport> bound(total);
    std::vector<BoundReport> nonzero(total);
    parallel_for(total, [&](std::size_t i) {
      const Real u = static_cast<Real>(c.factors.u[i / per_u]);
      const RootIndex& k = ks[i % per_u];
      bound[i] = nabla::factor_bound_check(u, k, p);
      nonzero[i] = nabla::nonvanishing_check(u, k, p);
    });
    out.insert(out.end(), bound.begin(), bound.end());
    out.insert(out.end(), nonzero.begin(), nonzero.end());
  });
}

void suite_funceq(const RunConfig& c, std::vector<BoundReport>& out, json& extra) {
  const auto& tol = c.tolerance;
  const double res[] = {-1.5, 0.25, 0.6, 1.5, 2.5, 3.5};
  const double ims[] = {0.5, 2.0, 5.0, 10.0, 18.0};
  std::vector<std::complex<double>> pts;
  for (double a : res) {
    for (double b : ims) pts.emplace_back(a, b);
  }
  pts.resize(static_cast<std::size_t>(c.funceq_points));
  std::vector<BoundReport> fe(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    fe[i] = threshold_report(
        "functional_equation(s=" + complex_label(pts[i]) + ")",
        "pi^(-s/2) Gamma(s/2) zeta(s) = pi^(-(1-s)/2) Gamma((1-s)/2) zeta(1-s)",
        {{"|L - R| / (|L| + |R|)", classical::functional_eq_residual(pts[i], tol)}}, 1e-8,
        c.regime, false);
  });
  out.insert(out.end(), fe.begin(), fe.end());

  // Binomial series against the integral form, which reports its own tail.
  constexpr std::int64_t kIntervals = 20000;
  std::mt19937_64 rng(c.symmetry.seed);
  std::uniform_real_distribution<double> sigma(0.1, 3.0);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  std::vector<std::complex<double>> zp;
  while (zp.size() < 50) {
    const std::complex<double> s(sigma(rng), t(rng));
    bool near_excluded = false;
    for (int m = -3; m <= 3; ++m) {
      const std::complex<double> x(1.0, 2 * std::numbers::pi * m / std::numbers::ln2);
      near_excluded = near_excluded || std::abs(s - x) < 0.05;
    }
    if (!near_excluded) zp.push_back(s);
  }
  std::vector<BoundReport> zr(zp.size());
  parallel_for(zp.size(), [&](std::size_t i) {
    const auto h = classical::zeta_hasse(zp[i], tol);
    const auto g = classical::zeta_integral(zp[i], kIntervals);
    const double allowed = g.tail_bound + 10 * tol.rel_tol * std::max(1.0, std::abs(h));
    auto r = threshold_report("zeta_methods(s=" + complex_label(zp[i]) + ")",
                              "binomial series = s/(s-1) - s int_1^inf (v - [v]) v^(-s-1) dv",
                              {{"|zeta_series - zeta_integral|", std::abs(h - g.value)}}, allowed,
                              c.regime, false);
    r.notes.push_back("integral cut after " + std::to_string(kIntervals) +
                      " intervals; the allowance is the analytic tail bound plus 10 rel_tol");
    zr[i] = std::move(r);
  });
  out.insert(out.end(), zr.begin(), zr.end());

  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
  const auto g5 = classical::gamma_weierstrass(5.0, tol).to_cartesian();
  out.push_back(threshold_report("zeta(2)", "zeta(2) = pi^2/6",
                                 {{"|zeta(2) - pi^2/6|", std::abs(classical::zeta_hasse(2.0, tol) - pi2_6)}},
                                 1e-10, c.regime, false));
  out.push_back(threshold_report("zeta(0)", "zeta(0) = -1/2",
                                 {{"|zeta(0) + 1/2|", std::abs(classical::zeta_hasse(0.0, tol) + 0.5)}},
                                 1e-8, c.regime, false));
  out.push_back(threshold_report("gamma(5)", "Gamma(n+1) = n!",
                                 {{"|Gamma(5) - 24| / 24", std::hypot(g5.re - 24.0, g5.im) / 24.0}},
                                 1e-10, c.regime, false));
  extra["funceq_points"] = pts.size();
}

void suite_prop2(const RunConfig& c, std::vector<BoundReport>& out, json& extra) {
  with_precision(c, [&](auto tag) {
    using Real = decltype(tag);
    const auto p = make_params<Real>(c);
    extra["parameters"] = params_json(p);
    const Real radius = c.prop2.radius ? static_cast<Real>(*c.prop2.radius) : p.R;
    out.push_back(nabla::prop2_circle_report(p, nabla::Prop2Constants{}, radius, c.prop2.angles));
  });
}

}  // namespace

Target parse_target(std::string_view text) {
  if (text == "nabla") return Target::nabla;
  if (text == "zeta") return Target::zeta;
  if (text == "gamma") return Target::gamma;
  if (text == "xi") return Target::xi;
  throw ConfigError("target must be nabla, zeta, gamma or xi");
}

Suite parse_suite(std::string_view text) {
  if (text == "theorem1") return Suite::theorem1;
  if (text == "symmetry") return Suite::symmetry;
  if (text == "factors") return Suite::factors;
  if (text == "funceq") return Suite::funceq;
  if (text == "prop2") return Suite::prop2;
  throw ConfigError("suite must be theorem1, symmetry, factors, funceq or prop2");
}

std::string_view to_string(Target target) noexcept {
  switch (target) {
    case Target::nabla: return "nabla";
    case Target::zeta: return "zeta";
    case Target::gamma: return "gamma";
    case Target::xi: return "xi";
  }
  return "";
}

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::theorem1: return "theorem1";
    case Suite::symmetry: return "symmetry";
    case Suite::factors: return "factors";
    case Suite::funceq: return "funceq";
    case Suite::prop2: return "prop2";
  }
  return "";
}

int thread_cap() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PSEUDOGAMMA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json report_json(const BoundReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"label", s.label},
                      {"lhs", s.lhs},
                      {"rhs", s.rhs},
                      {"margin", s.margin},
                      {"tolerance", s.tolerance},
                      {"strict", s.strict},
                      {"holds", s.holds},
                      {"lhs_text", s.lhs_text},
                      {"rhs_text", s.rhs_text},
                      {"margin_text", s.margin_text}});
  }
  return {{"name", r.name},
          {"paper_eq", r.identity},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"margin", r.margin},
          {"holds", r.holds},
          {"asserted", r.asserted},
          {"regime", std::string(nabla::to_string(r.regime))},
          {"k_override_active", r.k_override_active},
          {"notes", r.notes},
          {"stages", stages}};
}

json verify_report(Suite suite, const RunConfig& config) {
  config.validate();
  std::vector<BoundReport> reports;
  json extra = json::object();
  switch (suite) {
    case Suite::theorem1: suite_theorem1(config, reports, extra); break;
    case Suite::symmetry: suite_symmetry(config, reports, extra); break;
    case Suite::factors: suite_factors(config, reports, extra); break;
    case Suite::funceq: suite_funceq(config, reports, extra); break;
    case Suite::prop2: suite_prop2(config, reports, extra); break;
  }
  json checks = json::array();
  int asserted = 0;
  int failed = 0;
  int report_only = 0;
  for (const auto& r : reports) {
    checks.push_back(report_json(r));
    if (!r.asserted) {
      ++report_only;
    } else {
      ++asserted;
      if (!r.holds) ++failed;
    }
  }
  const auto mode = config.effective_precision();
  json j;
  j["suite"] = std::string(to_string(suite));
  j["config"] = config.to_json();
  j["precision"] = {{"mode", std::string(to_string(mode))},
                    {"sig_digits", mode == PrecisionMode::extended
                                       ? precision_profile<Quad>().sig_digits
                                       : precision_profile<double>().sig_digits}};
  j["context"] = extra;
  j["checks"] = checks;
  j["summary"] = {{"asserted", asserted},
                  {"asserted_failed", failed},
                  {"report_only", report_only},
                  {"passed", failed == 0}};
  return j;
}

int cmd_eval(Target target, std::complex<double> s, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
  try {
    config.validate();
    if (target == Target::nabla) {
      with_precision(config, [&](auto tag) {
        using Real = decltype(tag);
        const auto p = make_params<Real>(config);
        const Cplx<Real> x{static_cast<Real>(s.real()), static_cast<Real>(s.imag())};
        print_value(out, nabla::nabla_closed(x, p));
      });
    } else {
      print_value(out, classical_value(target, s, config.tolerance));
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << " [" << formula(target) << "]\n";
  }
  return kExitDomainError;
}

int cmd_verify(Suite suite, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  json report;
  try {
    report = verify_report(suite, config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = report.dump(2) + "\n";
  const auto& summary = report["summary"];
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    std::ofstream meta(config.out + ".meta.json", std::ios::binary);
    if (!file || !meta) {
      err << "error: cannot write " << config.out << "\n";
      return kExitDomainError;
    }
    file << text;
    meta << json{{"suite", std::string(to_string(suite))},
                 {"wall_time_seconds", seconds},
                 {"threads", thread_cap()}}
                .dump(2)
         << "\n";
    out << to_string(suite) << ": " << summary["asserted"].get<int>() -
                                           summary["asserted_failed"].get<int>()
        << "/" << summary["asserted"].get<int>() << " asserted checks hold, "
        << summary["report_only"].get<int>() << " report-only -> " << config.out << "\n";
  }
  return summary["passed"].get<bool>() ? kExitOk : kExitCheckFailed;
}

std::string scan_csv(Target target, const RunConfig& config) {
  config.validate();
  const auto pts = config.grid.points();
  std::vector<std::string> rows(pts.size());
  auto prefix = [&](std::size_t i) {
    return std::to_string(i) + "," + format_real(pts[i].real()) + "," + format_real(pts[i].imag());
  };
  auto error_row = [&](std::size_t i, const Error& e) {
    return prefix(i) + ",,,error:" + std::string(to_string(e.code()));
  };

  if (target == Target::nabla) {
    with_precision(config, [&](auto tag) {
      using Real = decltype(tag);
      const auto p = make_params<Real>(config);
      const bool theorem_params = p.Omega == Real(1) && p.alpha == Real(0.25);
      const Real bound = rm::log(p.R) / (Real(44088) / Real(10000) * p.R);
      parallel_for(pts.size(), [&](std::size_t i) {
        try {
          const Cplx<Real> s{static_cast<Real>(pts[i].real()), static_cast<Real>(pts[i].imag())};
          const auto v = nabla::nabla_closed(s, p);
          std::string extra;
          if (theorem_params && pts[i].imag() == 0.0 && pts[i].real() > 0.5 && pts[i].real() <= 2.0) {
            extra = format_real(bound - v.log_mod());
          }
          rows[i] = prefix(i) + "," + format_real(v.log_mod()) + "," + format_real(v.arg() + Real(0)) + "," + extra;
        } catch (const Error& e) {
          rows[i] = error_row(i, e);
        }
      });
    });
  } else {
    parallel_for(pts.size(), [&](std::size_t i) {
      try {
        const auto v = classical_value(target, pts[i], config.tolerance);
        rows[i] = prefix(i) + "," + format_real(v.log_mod()) + "," + format_real(v.arg() + 0.0) + ",";
      } catch (const Error& e) {
        rows[i] = error_row(i, e);
      }
    });
  }
  std::string csv = "index,re_s,im_s,log_mod,arg,extra\n";
  for (const auto& r : rows) csv += r + "\n";
  return csv;
}

int cmd_scan(Target target, const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string csv;
  try {
    csv = scan_csv(target, config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  if (config.out.empty()) {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << config.out << "\n";
    return kExitDomainError;
  }
  file << csv;
  return kExitOk;
}

}  // namespace pgamma::harness
