#include "slowdiff/config.hpp"

#include <fstream>
#include <stdexcept>

#include "slowdiff/io.hpp"
#include "slowdiff/resonant.hpp"

namespace slowdiff {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void reject(const std::string& rule, const std::string& detail) {
  throw std::invalid_argument("config: rule \"" + rule + "\" violated: " + detail);
}

FourierSeries parse_fourier(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sin") return FourierSeries::sine();
    if (s == "cos") return FourierSeries::cosine();
    if (s == "zero") return FourierSeries::zero();
    if (s == "one") return FourierSeries::constant(1.0);
    reject("map.F", "unknown shorthand \"" + s + "\" (known: sin, cos, zero, one)");
  }
  if (!j.is_object()) reject("map.F", "expected object or shorthand string");
  std::vector<FourierHarmonic> hs;
  for (const auto& h : j.value("harmonics", json::array())) {
    hs.push_back({h.at("m").get<std::int64_t>(), h.value("a", 0.0), h.value("b", 0.0)});
  }
  try {
    return FourierSeries(j.value("c0", 0.0), std::move(hs));
  } catch (const std::exception& e) {
    reject("map.F", e.what());
  }
}

RotationNumber parse_alpha(const json& j) {
  try {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "golden" || s == "silver" || s == "sqrt3") return RotationNumber::quadratic(s);
      reject("map.alpha", "unknown shorthand \"" + s + "\" (known: golden, silver, sqrt3)");
    }
    if (j.is_number()) return RotationNumber::explicit_value(j.get<double>());
    if (!j.is_object()) reject("map.alpha", "expected object, number or shorthand string");
    const std::string family = j.value("family", "explicit");
    if (family == "explicit") return RotationNumber::explicit_value(j.at("value").get<double>());
    if (family == "quadratic-irrational") return RotationNumber::quadratic(j.at("name").get<std::string>());
    if (family == "liouville") {
      return RotationNumber::liouville(j.value("base", 2), j.at("depth").get<int>());
    }
    if (family == "cf-constant") return RotationNumber::cf_constant(j.value("quotient", 2));
    reject("map.alpha", "unknown family \"" + family + "\"");
  } catch (const std::invalid_argument& e) {
    reject("map.alpha", e.what());
  }
}

MapVariant parse_variant(const std::string& s) {
  if (s == "chart") return MapVariant::Chart;
  if (s == "example1") return MapVariant::Example1;
  if (s == "example2") return MapVariant::Example2;
  reject("map.variant", "expected chart|example1|example2, got \"" + s + "\"");
}

}  // namespace

PsiSpec parse_psi(const json& j) {
  try {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "log") return PsiSpec::log();
      if (s == "loglog") return PsiSpec::loglog();
      if (s.rfind("power:", 0) == 0) return PsiSpec::power(std::stod(s.substr(6)));
      reject("psi", "unknown shorthand \"" + s + "\" (power:<beta>, log, loglog)");
    }
    if (!j.is_object()) reject("psi", "expected object or shorthand string");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return PsiSpec::power(j.at("beta").get<double>());
    if (kind == "log") return PsiSpec::log();
    if (kind == "loglog") return PsiSpec::loglog();
    if (kind == "table") {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      return PsiSpec::table(std::move(pts));
    }
    reject("psi", "unknown kind \"" + kind + "\"");
  } catch (const std::invalid_argument& e) {
    reject("psi", e.what());
  }
}

std::vector<std::int64_t> parse_schedule(const json& j) {
  std::vector<std::int64_t> out;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("dyadic:", 0) == 0) return dyadic_schedule(std::stoll(s.substr(7)));
    if (s.rfind("list:", 0) == 0) {
      std::string rest = s.substr(5);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        std::size_t next = rest.find(',', pos);
        if (next == std::string::npos) next = rest.size();
        out.push_back(std::stoll(rest.substr(pos, next - pos)));
        pos = next + 1;
      }
      return out;
    }
    reject("schedule", "expected dyadic:<max> or list:<n1,n2,...>");
  }
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<std::int64_t>());
    return out;
  }
  reject("schedule", "expected string or array");
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  if (!j.is_object()) reject("root", "config must be a JSON object");

  if (j.contains("map")) {
    const json& m = j.at("map");
    cfg.map.variant = parse_variant(m.value("variant", "chart"));
    const int d = m.value("d", 1);
    if (d < 1) reject("map.d", "disc dimension must be >= 1");

    double rp = 0.3, rs = 0.6;
    if (m.contains("A")) {
      rp = m.at("A").value("r_plateau", 0.3);
      rs = m.at("A").value("r_support", 0.6);
    }
    try {
      cfg.map.A = BumpProfile(d, rp, rs);
    } catch (const std::exception& e) {
      reject("bump radii", e.what());
    }

    if (m.contains("resonant")) {
      if (m.contains("F") || m.contains("alpha")) {
        reject("map.resonant", "resonant block replaces explicit F and alpha");
      }
      const json& r = m.at("resonant");
      const PsiSpec rpsi = parse_psi(r.value("psi", json("power:0.5")));
      const int depth = r.value("depth", 12);
      const int quotient = r.value("quotient", 2);
      try {
        ResonantPair pair = resonant_pair(rpsi, depth, quotient);
        cfg.map.F = std::move(pair.F);
        cfg.map.alpha = std::move(pair.alpha);
      } catch (const std::exception& e) {
        reject("map.resonant", e.what());
      }
      cfg.from_resonant = true;
      cfg.resonant_depth = depth;
      cfg.resonant_quotient = quotient;
      cfg.resonant_psi = rpsi.describe();
    } else {
      if (m.contains("F")) cfg.map.F = parse_fourier(m.at("F"));
      if (m.contains("alpha")) cfg.map.alpha = parse_alpha(m.at("alpha"));
    }

    if (cfg.map.variant != MapVariant::Chart && d != 1) {
      reject("map.d", "S^1 x S^2 example variants require d = 1");
    }
  }

  if (j.contains("psi")) cfg.psi = parse_psi(j.at("psi"));

  if (j.contains("grids")) {
    const json& g = j.at("grids");
    cfg.grids.phi_grid = g.value("phi_grid", std::int64_t(0));
    cfg.grids.u_grid = g.value("u_grid", std::int64_t(257));
    cfg.grids.sphere_grid = g.value("sphere_grid", std::int64_t(64));
    if (cfg.grids.phi_grid < 0) reject("grids.phi_grid", "must be 0 (auto) or positive");
    if (cfg.grids.u_grid < 2) reject("grids.u_grid", "must be >= 2");
    if (cfg.grids.sphere_grid < 2) reject("grids.sphere_grid", "must be >= 2");
  }

  if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule"));
  for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
    if (cfg.schedule[i] < 1 || (i > 0 && cfg.schedule[i] <= cfg.schedule[i - 1])) {
      reject("schedule", "entries must be >= 1 and strictly increasing");
    }
  }
  if (cfg.schedule.empty()) reject("schedule", "must not be empty");

  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: parse error at byte " + std::to_string(e.byte) +
                                ": " + e.what());
  }
  return config_from_json(j);
}

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json m;
  m["variant"] = variant_name(cfg.map.variant);
  m["d"] = cfg.map.A.dim();
  if (cfg.from_resonant) {
    m["resonant"] = {{"psi", cfg.resonant_psi},
                     {"depth", cfg.resonant_depth},
                     {"quotient", cfg.resonant_quotient}};
  }
  ordered_json fh = ordered_json::array();
  for (const auto& h : cfg.map.F.harmonics()) {
    fh.push_back({{"m", h.m}, {"a", h.a}, {"b", h.b}});
  }
  m["F"] = {{"c0", cfg.map.F.c0()}, {"harmonics", fh}};
  ordered_json alpha;
  alpha["family"] = cfg.map.alpha.family_string();
  alpha["name"] = cfg.map.alpha.name();
  alpha["value"] = cfg.map.alpha.value();
  alpha["value_g17"] = fmt_g17(cfg.map.alpha.value());
  alpha["degenerate"] = cfg.map.alpha.degenerate();
  ordered_json conv = ordered_json::array();
  for (const auto& c : cfg.map.alpha.convergents()) conv.push_back({{"p", c.p}, {"q", c.q}});
  alpha["convergents"] = conv;
  m["alpha"] = alpha;
  m["A"] = {{"r_plateau", cfg.map.A.r_plateau()}, {"r_support", cfg.map.A.r_support()}};

  ordered_json root;
  root["map"] = m;
  root["psi"] = cfg.psi.describe();
  root["grids"] = {{"phi_grid", cfg.grids.phi_grid},
                   {"u_grid", cfg.grids.u_grid},
                   {"sphere_grid", cfg.grids.sphere_grid}};
  root["schedule"] = cfg.schedule;
  root["seed"] = cfg.seed;
  root["output"] = cfg.output;
  return root;
}

}  // namespace slowdiff
