#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "harness/commands.hpp"
#include "pgamma/classical.hpp"

namespace h = pgamma::harness;
using nlohmann::json;

namespace {

h::RunConfig toy(int k) {
  h::RunConfig c;
  c.R = "100";
  c.k_override = k;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  const auto c = h::config_from_json(json::object());
  EXPECT_EQ(c.regime, pgamma::nabla::Regime::toy);
  EXPECT_EQ(c.effective_precision(), pgamma::PrecisionMode::standard);
  EXPECT_EQ(c.grid.count, 64);
  const auto again = h::config_from_json(c.to_json());
  EXPECT_EQ(again.to_json(), c.to_json());
}

TEST(Config, FullScaleDefaultsToExtended) {
  const auto c = h::config_from_json(json{{"regime", "paper"}, {"R", "4891999109997"}});
  EXPECT_EQ(c.effective_precision(), pgamma::PrecisionMode::extended);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, Rejections) {
  EXPECT_THROW(h::config_from_json(json{{"bogus", 1}}), h::ConfigError);
  EXPECT_THROW(h::config_from_json(json{{"grid", {{"cnt", 3}}}}), h::ConfigError);
  EXPECT_THROW(h::config_from_json(json{{"regime", "paper"}, {"R", "4891999109997"}, {"k_override", 8}})
                   .validate(),
               h::ConfigError);
  EXPECT_THROW(h::config_from_json(json{{"regime", "paper"}, {"R", "4891999109997"},
                                        {"precision", "standard"}})
                   .validate(),
               h::ConfigError);
  EXPECT_THROW(h::config_from_json(json{{"funceq", {{"points", 31}}}}).validate(), h::ConfigError);
  EXPECT_THROW(h::parse_regime("nope"), h::ConfigError);
  EXPECT_THROW(h::parse_target("eta"), h::ConfigError);
  EXPECT_THROW(h::parse_suite("all"), h::ConfigError);
}

TEST(Config, GridForms) {
  const auto c = h::config_from_json(
      json{{"grid", {{"start", "2-3i"}, {"end", json::array({2.0, 3.0})}, {"count", 7}}}});
  EXPECT_EQ(c.grid.start, std::complex<double>(2, -3));
  EXPECT_EQ(c.grid.end, std::complex<double>(2, 3));
  EXPECT_EQ(c.grid.count, 7);
}

TEST(Config, ParseComplex) {
  EXPECT_EQ(h::parse_complex("2"), std::complex<double>(2, 0));
  EXPECT_EQ(h::parse_complex("0.3+2i"), std::complex<double>(0.3, 2));
  EXPECT_EQ(h::parse_complex("-1.5i"), std::complex<double>(0, -1.5));
  EXPECT_EQ(h::parse_complex("0.3,2"), std::complex<double>(0.3, 2));
  EXPECT_EQ(h::parse_complex("1-i"), std::complex<double>(1, -1));
  EXPECT_THROW(h::parse_complex("x"), h::ConfigError);
}

TEST(Eval, PrintsCartesianThenLogPolar) {
  std::ostringstream out, err;
  EXPECT_EQ(h::cmd_eval(h::Target::nabla, {0.5, 0}, toy(8), out, err), h::kExitOk);
  EXPECT_EQ(lines(out.str()), (std::vector<std::string>{"1", "log_mod 0", "arg 0"}));

  std::ostringstream g, gerr;
  EXPECT_EQ(h::cmd_eval(h::Target::gamma, {5, 0}, h::RunConfig{}, g, gerr), h::kExitOk);
  EXPECT_EQ(lines(g.str()).front(), "24");
}

TEST(Eval, DomainErrorsExitTwo) {
  std::ostringstream out, err;
  EXPECT_EQ(h::cmd_eval(h::Target::zeta, {1, 0}, h::RunConfig{}, out, err), h::kExitDomainError);
  EXPECT_NE(err.str().find("PoleAtOne"), std::string::npos);
  EXPECT_NE(err.str().find("zeta(s) ="), std::string::npos);

  std::ostringstream out2, err2;
  EXPECT_EQ(h::cmd_eval(h::Target::gamma, {-3, 0}, h::RunConfig{}, out2, err2),
            h::kExitDomainError);
  EXPECT_NE(err2.str().find("PoleAtNonpositiveInteger"), std::string::npos);
}

TEST(Verify, FactorsExhaustiveCount) {
  auto c = toy(8);
  c.factors.u = {2.0};
  const auto rep = h::verify_report(h::Suite::factors, c);
  int bound = 0;
  int nonzero = 0;
  for (const auto& chk : rep["checks"]) {
    EXPECT_TRUE(chk["holds"].get<bool>());
    EXPECT_TRUE(chk.contains("paper_eq"));
    const auto name = chk["name"].get<std::string>();
    if (name.rfind("factor_bound", 0) == 0) ++bound;
    if (name.rfind("nonvanishing", 0) == 0) ++nonzero;
  }
  EXPECT_EQ(bound, 512);
  EXPECT_EQ(nonzero, 512);
  EXPECT_TRUE(rep["summary"]["passed"].get<bool>());
}

TEST(Verify, ReportIsDeterministic) {
  for (auto suite : {h::Suite::theorem1, h::Suite::symmetry, h::Suite::funceq, h::Suite::prop2}) {
    const auto a = h::verify_report(suite, toy(8)).dump();
    const auto b = h::verify_report(suite, toy(8)).dump();
    EXPECT_EQ(a, b) << h::to_string(suite);
  }
}

TEST(Verify, HypothesisViolationExitsTwo) {
  auto c = toy(8);
  c.omega = "2";
  std::ostringstream out, err;
  EXPECT_EQ(h::cmd_verify(h::Suite::theorem1, c, out, err), h::kExitDomainError);
  EXPECT_NE(err.str().find("HypothesisViolation"), std::string::npos);
}

TEST(Verify, FailingCheckExitsOne) {
  // Below R = phi^4 the factor bound's second stage is false.
  h::RunConfig c;
  c.R = "6";
  c.k_override = 3;
  c.factors.u = {2.0};
  std::ostringstream out, err;
  EXPECT_EQ(h::cmd_verify(h::Suite::factors, c, out, err), h::kExitCheckFailed);
  const auto rep = json::parse(out.str());
  EXPECT_FALSE(rep["summary"]["passed"].get<bool>());
  EXPECT_GT(rep["summary"]["asserted_failed"].get<int>(), 0);
}

TEST(Verify, Prop2IsReportOnly) {
  const auto rep = h::verify_report(h::Suite::prop2, toy(8));
  ASSERT_EQ(rep["checks"].size(), 1U);
  EXPECT_FALSE(rep["checks"][0]["asserted"].get<bool>());
  EXPECT_TRUE(rep["summary"]["passed"].get<bool>());
  EXPECT_EQ(rep["summary"]["report_only"].get<int>(), 1);
}

TEST(Scan, ZetaMatchesPointCallsExactly) {
  h::RunConfig c;
  c.grid.start = {2.0, -30.0};
  c.grid.end = {2.0, 30.0};
  c.grid.count = 41;
  const auto rows = lines(h::scan_csv(h::Target::zeta, c));
  ASSERT_EQ(rows.size(), 42U);
  EXPECT_EQ(rows[0], "index,re_s,im_s,log_mod,arg,extra");
  const auto pts = c.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto z = pgamma::classical::zeta_hasse(pts[i], c.tolerance);
    const auto v = pgamma::LogComplex::from_cartesian(z.real(), z.imag());
    const std::string expect = std::to_string(i) + "," + pgamma::format_real(pts[i].real()) + "," +
                               pgamma::format_real(pts[i].imag()) + "," +
                               pgamma::format_real(v.log_mod()) + "," +
                               pgamma::format_real(v.arg() + 0.0) + ",";
    EXPECT_EQ(rows[i + 1], expect);
  }
  EXPECT_EQ(h::scan_csv(h::Target::zeta, c), h::scan_csv(h::Target::zeta, c));
}

TEST(Scan, ErrorRowsKeepGoing) {
  h::RunConfig c;
  c.grid.start = {-2.0, 0.0};
  c.grid.end = {2.0, 0.0};
  c.grid.count = 5;
  c.grid.endpoint = pgamma::EndpointPolicy::closed;
  const auto rows = lines(h::scan_csv(h::Target::gamma, c));
  ASSERT_EQ(rows.size(), 6U);
  EXPECT_EQ(rows[1], "0,-2,0,,,error:PoleAtNonpositiveInteger");
  EXPECT_EQ(rows[3], "2,0,0,,,error:PoleAtNonpositiveInteger");
  ASSERT_EQ(rows[5].rfind("4,2,0,", 0), 0U);
  EXPECT_NEAR(std::stod(rows[5].substr(6)), 0.0, 1e-14);  // log Gamma(2) = 0
}

TEST(Scan, NablaMarginColumn) {
  const auto rows = lines(h::scan_csv(h::Target::nabla, toy(8)));
  ASSERT_EQ(rows.size(), 65U);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto extra = rows[i].substr(rows[i].rfind(',') + 1);
    ASSERT_FALSE(extra.empty()) << rows[i];
    EXPECT_GT(std::stod(extra), 0.0);
  }
}

TEST(Parallel, SlotsIndependentOfScheduling) {
  std::vector<int> slots(1000, -1);
  h::parallel_for(slots.size(), [&](std::size_t i) { slots[i] = static_cast<int>(i * i % 97); });
  for (std::size_t i = 0; i < slots.size(); ++i) EXPECT_EQ(slots[i], static_cast<int>(i * i % 97));
  EXPECT_THROW(h::parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw pgamma::Error(pgamma::ErrorCode::DomainError, "x");
               }),
               pgamma::Error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("PSEUDOGAMMA_THREADS", "1", 1);
  EXPECT_EQ(h::thread_cap(), 1);
  ::unsetenv("PSEUDOGAMMA_THREADS");
  EXPECT_GE(h::thread_cap(), 1);
}
