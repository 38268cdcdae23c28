#include "qnd/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace qnd::cli {

namespace {

struct Entry {
  std::string value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  [[noreturn]] void error(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    std::ostringstream msg;
    msg << source_;
    if (it != entries_.end()) msg << ":" << it->second.line;
    msg << ": field '" << key << "': " << what;
    throw ConfigError(msg.str());
  }

  std::string text(const std::string& key) const { return entries_.at(key).value; }

  double real(const std::string& key) const {
    const std::string& v = entries_.at(key).value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      error(key, "expected a finite number, got '" + v + "'");
    }
    return out;
  }

  std::uint64_t integer(const std::string& key) const {
    const std::string& v = entries_.at(key).value;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      error(key, "expected a non-negative integer, got '" + v + "'");
    }
    return out;
  }

  void set(const std::string& key, double& dst) const {
    if (has(key)) dst = real(key);
  }
  template <typename Int>
  void set_int(const std::string& key, Int& dst) const {
    if (has(key)) dst = static_cast<Int>(integer(key));
  }

 private:
  std::map<std::string, Entry> entries_;
  std::string source_;
};

const char* const kKnownKeys[] = {
    "signal",         "signal.variance", "signal.mean",      "signal.n",
    "signal.displacement", "signal.parity", "probe.r",       "probe.direction",
    "setup.phi",      "setup.tau1",      "grid.n_points",    "grid.x_max",
    "sweep.x_lo",     "sweep.x_hi",      "sweep.n_points",   "simulate.n_samples",
    "simulate.seed"};

bool known(std::string_view key) {
  for (const char* k : kKnownKeys) {
    if (key == k) return true;
  }
  return false;
}

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("field '" + field + "': " + what);
}

}  // namespace

RunConfig ScenarioConfig::run_for(std::string_view command) const {
  if (command == "sweep") return sweep;
  if (command == "optimize") return OptimizeRun{};
  if (command == "simulate") return simulate;
  if (command == "validate") return ValidateRun{};
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

ScenarioConfig parse_config(std::string_view text, std::string_view source) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::ostringstream where;
    where << source << ":" << line_no << ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where.str() + "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known(key)) throw ConfigError(where.str() + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where.str() + "field '" + key + "' has no value");
    if (entries.count(key)) throw ConfigError(where.str() + "duplicate key '" + key + "'");
    entries.emplace(key, Entry{value, line_no});
  }

  const Reader in(std::move(entries), std::string(source));
  ScenarioConfig cfg;

  if (!in.has("signal")) {
    throw ConfigError(std::string(source) + ": missing required field 'signal'");
  }
  const std::string kind = in.text("signal");
  if (kind == "gaussian") {
    GaussianSignal g;
    in.set("signal.variance", g.variance);
    in.set("signal.mean", g.mean);
    cfg.signal = g;
  } else if (kind == "fock") {
    FockSignal f;
    in.set_int("signal.n", f.n);
    cfg.signal = f;
  } else if (kind == "cat") {
    CatSignal c;
    in.set("signal.displacement", c.displacement);
    if (in.has("signal.parity")) {
      const std::string p = in.text("signal.parity");
      if (p != "even" && p != "odd") in.error("signal.parity", "expected even or odd");
      c.even = p == "even";
    }
    cfg.signal = c;
  } else {
    in.error("signal", "expected gaussian, fock or cat, got '" + kind + "'");
  }

  double r = 0.0;
  in.set("probe.r", r);
  auto direction = SqueezeDirection::Squeezed;
  if (in.has("probe.direction")) {
    const std::string d = in.text("probe.direction");
    if (d == "squeezed") {
      direction = SqueezeDirection::Squeezed;
    } else if (d == "antisqueezed") {
      direction = SqueezeDirection::AntiSqueezed;
    } else {
      in.error("probe.direction", "expected squeezed or antisqueezed");
    }
  }
  if (!(r >= 0.0)) in.error("probe.r", "must be non-negative");
  cfg.probe = ProbeSpec(r, direction);

  if (in.has("setup.phi") && in.has("setup.tau1")) {
    in.error("setup.tau1", "setup.phi and setup.tau1 are mutually exclusive");
  }
  if (in.has("setup.phi")) {
    cfg.phi = in.real("setup.phi");
    if (!(cfg.phi > 0.0 && cfg.phi < std::numbers::pi / 2)) in.error("setup.phi", "must lie in (0, pi/2)");
  } else if (in.has("setup.tau1")) {
    const double tau1 = in.real("setup.tau1");
    if (!(tau1 > 0.0 && tau1 < 1.0)) in.error("setup.tau1", "must lie in (0, 1)");
    cfg.phi = SetupParams::from_tau1(tau1).phi();
  }

  in.set_int("grid.n_points", cfg.grid_points);
  in.set("grid.x_max", cfg.x_max);
  in.set("sweep.x_lo", cfg.sweep.x_lo);
  in.set("sweep.x_hi", cfg.sweep.x_hi);
  in.set_int("sweep.n_points", cfg.sweep.n_points);
  in.set_int("simulate.n_samples", cfg.simulate.n_samples);
  in.set_int("simulate.seed", cfg.simulate.seed);

  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_config(buf.str(), path.string());
}

void apply_overrides(ScenarioConfig& config, const Overrides& overrides) {
  if (overrides.grid_points) config.grid_points = *overrides.grid_points;
  if (overrides.x_max) config.x_max = *overrides.x_max;
  if (overrides.seed) config.simulate.seed = *overrides.seed;
  validate(config);
}

void validate(const ScenarioConfig& c) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianSignal>) {
          check(s.variance > 0.0 && std::isfinite(s.variance), "signal.variance", "must be positive");
          check(std::isfinite(s.mean), "signal.mean", "must be finite");
        } else if constexpr (std::is_same_v<S, FockSignal>) {
          check(s.n <= 60, "signal.n", "must be at most 60");
        } else {
          check(std::isfinite(s.displacement) && s.displacement != 0.0, "signal.displacement",
                "must be finite and non-zero");
        }
      },
      c.signal);
  check(c.phi > 0.0 && c.phi < std::numbers::pi / 2, "setup.phi", "must lie in (0, pi/2)");
  check(c.grid_points >= 16, "grid.n_points", "must be at least 16");
  check(c.x_max > 0.0 && std::isfinite(c.x_max), "grid.x_max", "must be positive");
  check(c.sweep.x_lo > 0.0 && c.sweep.x_hi > c.sweep.x_lo, "sweep.x_lo",
        "need 0 < sweep.x_lo < sweep.x_hi");
  check(c.sweep.n_points >= 2, "sweep.n_points", "must be at least 2");
  check(c.simulate.n_samples >= 1, "simulate.n_samples", "must be at least 1");
}

std::string describe(const SignalConfig& signal) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        std::ostringstream out;
        if constexpr (std::is_same_v<S, GaussianSignal>) {
          out << "gaussian(variance=" << s.variance << ", mean=" << s.mean << ")";
        } else if constexpr (std::is_same_v<S, FockSignal>) {
          out << "fock(n=" << s.n << ")";
        } else {
          out << "cat(displacement=" << s.displacement << ", " << (s.even ? "even" : "odd") << ")";
        }
        return out.str();
      },
      signal);
}

}  // namespace qnd::cli
