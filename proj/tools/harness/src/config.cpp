#include "harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>

namespace pgamma::harness {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::string_view where, const std::set<std::string>& allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

std::string number_text(const json& v, std::string_view key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ConfigError(std::string(key) + " must be a number or a decimal string");
}

double as_double(const json& v, std::string_view key) {
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, std::string_view key) {
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return v.get<int>();
}

std::complex<double> as_complex(const json& v, std::string_view key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw ConfigError(std::string(key) + " must be a number, [re, im] or a complex string");
}

GridSpec grid_from_json(const json& j) {
  check_keys(j, "grid", {"kind", "start", "end", "center", "radius", "count", "endpoint"});
  GridSpec g;
  if (j.contains("kind")) {
    const auto k = j["kind"].get<std::string>();
    if (k == "interval") g.kind = GridKind::interval;
    else if (k == "circle") g.kind = GridKind::circle;
    else throw ConfigError("grid.kind must be interval or circle");
  }
  if (j.contains("start")) g.start = as_complex(j["start"], "grid.start");
  if (j.contains("end")) g.end = as_complex(j["end"], "grid.end");
  if (j.contains("center")) g.center = as_complex(j["center"], "grid.center");
  if (j.contains("radius")) g.radius = as_double(j["radius"], "grid.radius");
  if (j.contains("count")) g.count = as_int(j["count"], "grid.count");
  if (j.contains("endpoint")) {
    const auto e = j["endpoint"].get<std::string>();
    if (e == "closed") g.endpoint = EndpointPolicy::closed;
    else if (e == "open_left") g.endpoint = EndpointPolicy::open_left;
    else if (e == "open_right") g.endpoint = EndpointPolicy::open_right;
    else throw ConfigError("grid.endpoint must be closed, open_left or open_right");
  }
  return g;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

bool parses_as_number(const std::string& text) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(v);
}

}  // namespace

std::string_view to_string(PrecisionMode mode) noexcept {
  return mode == PrecisionMode::extended ? "extended" : "standard";
}

PrecisionMode parse_precision(std::string_view text) {
  if (text == "standard") return PrecisionMode::standard;
  if (text == "extended") return PrecisionMode::extended;
  throw ConfigError("precision must be standard or extended");
}

nabla::Regime parse_regime(std::string_view text) {
  if (text == "paper") return nabla::Regime::paper;
  if (text == "toy") return nabla::Regime::toy;
  throw ConfigError("regime must be paper or toy");
}

std::complex<double> parse_complex(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (c != ' ') t.push_back(c);
  }
  auto num = [&](std::string_view part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    double v = 0;
    const auto* end = part.data() + part.size();
    const auto* begin = part.data() + (part.front() == '+' ? 1 : 0);
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw ConfigError("cannot parse complex number '" + std::string(text) + "'");
    }
    return v;
  };
  if (t.empty()) throw ConfigError("empty complex number");
  if (const auto comma = t.find(','); comma != std::string::npos) {
    return {num(std::string_view(t).substr(0, comma)), num(std::string_view(t).substr(comma + 1))};
  }
  if (t.back() != 'i') return {num(t), 0.0};
  t.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(t)};
  return {num(std::string_view(t).substr(0, split)), num(std::string_view(t).substr(split))};
}

PrecisionMode RunConfig::effective_precision() const {
  if (precision) return *precision;
  return regime == nabla::Regime::paper ? PrecisionMode::extended : PrecisionMode::standard;
}

void RunConfig::validate() const {
  for (const auto& [name, text] : {std::pair{"R", &R}, std::pair{"omega", &omega},
                                   std::pair{"alpha", &alpha}}) {
    if (!parses_as_number(*text)) {
      throw ConfigError(std::string(name) + " is not a finite number: '" + *text + "'");
    }
  }
  if (regime == nabla::Regime::paper) {
    if (k_override) throw ConfigError("InvalidOverride: k_override is not allowed in regime 'paper'");
    if (precision == PrecisionMode::standard) {
      throw ConfigError("regime 'paper' needs extended precision");
    }
  }
  if (effective_precision() == PrecisionMode::standard &&
      std::stod(R) >= static_cast<double>(2 * nabla::kT0 - 1)) {
    throw ConfigError("R >= 2 T0 - 1 needs extended precision");
  }
  try {
    tolerance.validate();
    grid.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (factors.u.empty()) throw ConfigError("factors.u must not be empty");
  for (const auto& k : factors.k) {
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("factors.k entries must be positive decimal integers");
    }
  }
  if (symmetry.nabla_points < 1 || symmetry.xi_points < 1 || !(symmetry.nabla_radius > 0)) {
    throw ConfigError("symmetry settings must be positive");
  }
  if (prop2.angles < 8) throw ConfigError("prop2.angles must be at least 8");
  if (funceq_points < 1 || funceq_points > 30) throw ConfigError("funceq.points must lie in 1 .. 30");
}

json RunConfig::to_json() const {
  json j;
  j["regime"] = std::string(nabla::to_string(regime));
  j["R"] = R;
  j["omega"] = omega;
  j["alpha"] = alpha;
  j["k_override"] = k_override ? json(*k_override) : json(nullptr);
  j["precision"] = std::string(to_string(effective_precision()));
  j["tolerance"] = {{"rel_tol", tolerance.rel_tol}, {"max_terms", tolerance.max_terms}};
  j["grid"] = {{"kind", std::string(pgamma::to_string(grid.kind))},
               {"start", complex_json(grid.start)},
               {"end", complex_json(grid.end)},
               {"center", complex_json(grid.center)},
               {"radius", grid.radius},
               {"count", grid.count},
               {"endpoint", std::string(pgamma::to_string(grid.endpoint))}};
  j["factors"] = {{"u", factors.u}, {"k", factors.k},
                  {"exhaustive_max_exponent", factors.exhaustive_max_exponent}};
  j["symmetry"] = {{"nabla_points", symmetry.nabla_points},
                   {"nabla_radius", symmetry.nabla_radius},
                   {"xi_points", symmetry.xi_points},
                   {"seed", symmetry.seed}};
  j["prop2"] = {{"radius", prop2.radius ? json(*prop2.radius) : json(nullptr)},
                {"angles", prop2.angles}};
  j["funceq"] = {{"points", funceq_points}};
  return j;
}

RunConfig config_from_json(const json& j) {
  check_keys(j, "config",
             {"regime", "R", "omega", "alpha", "k_override", "precision", "tolerance", "grid",
              "factors", "symmetry", "prop2", "funceq", "out"});
  RunConfig c;
  try {
    if (j.contains("regime")) c.regime = parse_regime(j["regime"].get<std::string>());
    if (j.contains("R")) c.R = number_text(j["R"], "R");
    if (j.contains("omega")) c.omega = number_text(j["omega"], "omega");
    if (j.contains("alpha")) c.alpha = number_text(j["alpha"], "alpha");
    if (j.contains("k_override") && !j["k_override"].is_null()) {
      c.k_override = as_int(j["k_override"], "k_override");
    }
    if (j.contains("precision")) c.precision = parse_precision(j["precision"].get<std::string>());
    if (j.contains("tolerance")) {
      const auto& t = j["tolerance"];
      check_keys(t, "tolerance", {"rel_tol", "max_terms"});
      if (t.contains("rel_tol")) c.tolerance.rel_tol = as_double(t["rel_tol"], "rel_tol");
      if (t.contains("max_terms")) c.tolerance.max_terms = as_int(t["max_terms"], "max_terms");
    }
    if (j.contains("grid")) c.grid = grid_from_json(j["grid"]);
    if (j.contains("factors")) {
      const auto& f = j["factors"];
      check_keys(f, "factors", {"u", "k", "exhaustive_max_exponent"});
      if (f.contains("u")) c.factors.u = f["u"].get<std::vector<double>>();
      if (f.contains("k")) {
        c.factors.k.clear();
        for (const auto& k : f["k"]) c.factors.k.push_back(number_text(k, "factors.k"));
      }
      if (f.contains("exhaustive_max_exponent")) {
        c.factors.exhaustive_max_exponent =
            as_int(f["exhaustive_max_exponent"], "exhaustive_max_exponent");
      }
    }
    if (j.contains("symmetry")) {
      const auto& s = j["symmetry"];
      check_keys(s, "symmetry", {"nabla_points", "nabla_radius", "xi_points", "seed"});
      if (s.contains("nabla_points")) c.symmetry.nabla_points = as_int(s["nabla_points"], "nabla_points");
      if (s.contains("nabla_radius")) c.symmetry.nabla_radius = as_double(s["nabla_radius"], "nabla_radius");
      if (s.contains("xi_points")) c.symmetry.xi_points = as_int(s["xi_points"], "xi_points");
      if (s.contains("seed")) c.symmetry.seed = s["seed"].get<std::uint64_t>();
    }
    if (j.contains("prop2")) {
      const auto& p = j["prop2"];
      check_keys(p, "prop2", {"radius", "angles"});
      if (p.contains("radius") && !p["radius"].is_null()) c.prop2.radius = as_double(p["radius"], "radius");
      if (p.contains("angles")) c.prop2.angles = as_int(p["angles"], "angles");
    }
    if (j.contains("funceq")) {
      const auto& f = j["funceq"];
      check_keys(f, "funceq", {"points"});
      if (f.contains("points")) c.funceq_points = as_int(f["points"], "funceq.points");
    }
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

}  // namespace pgamma::harness
