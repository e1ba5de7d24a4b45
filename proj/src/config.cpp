#include "apdlr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "apdlr/errors.hpp"
#include "format.hpp"

namespace apdlr {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::full: return "full";
    case SolverKind::dlra: return "dlra";
    case SolverKind::diffusion: return "diffusion";
  }
  return "full";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "full") return SolverKind::full;
  if (name == "dlra") return SolverKind::dlra;
  if (name == "diffusion") return SolverKind::diffusion;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected full, dlra or diffusion)");
}

std::string_view to_string(InitialKind kind) {
  return kind == InitialKind::plane_source ? "plane_source" : "custom";
}

InitialKind parse_initial_kind(std::string_view name) {
  if (name == "plane_source") return InitialKind::plane_source;
  if (name == "custom") return InitialKind::custom;
  throw ConfigError("unknown initial condition '" + std::string(name) +
                    "' (expected plane_source or custom)");
}

namespace {

using Value = std::variant<double, std::string, bool, std::vector<double>>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    return std::nullopt;
  }
  return value;
}

// Drops a trailing '#' comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

Value parse_value(std::string_view raw, const std::string& where) {
  const std::string_view v = trim(raw);
  if (v.empty()) throw ConfigError(where + ": missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"' || v.substr(1, v.size() - 2).find('"') != std::string_view::npos) {
      throw ConfigError(where + ": malformed string " + std::string(v));
    }
    return std::string(v.substr(1, v.size() - 2));
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '[') {
    if (v.back() != ']') throw ConfigError(where + ": unterminated list");
    std::vector<double> out;
    std::string_view body = trim(v.substr(1, v.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = trim(body.substr(0, comma));
      const auto number = parse_number(item);
      if (!number) throw ConfigError(where + ": bad list entry '" + std::string(item) + "'");
      out.push_back(*number);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
      if (trim(body).empty()) throw ConfigError(where + ": trailing comma in list");
    }
    return out;
  }
  if (const auto number = parse_number(v)) return *number;
  throw ConfigError(where + ": cannot parse value '" + std::string(v) +
                    "' (strings must be quoted)");
}

template <typename T>
const T& expect(const Value& value, const std::string& where, const char* kind) {
  if (const auto* p = std::get_if<T>(&value)) return *p;
  throw ConfigError(where + ": expected " + kind);
}

long expect_integer(const Value& value, const std::string& where) {
  const double d = expect<double>(value, where, "an integer");
  if (std::floor(d) != d || std::abs(d) > 1e15) {
    throw ConfigError(where + ": expected an integer, got " + format_double(d));
  }
  return static_cast<long>(d);
}

using Setter = std::function<void(SolverConfig&, const Value&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"physics.eps", [](SolverConfig& c, const Value& v, const std::string& w) { c.eps = expect<double>(v, w, "a number"); }},
      {"physics.sigma", [](SolverConfig& c, const Value& v, const std::string& w) { c.sigma = expect<double>(v, w, "a number"); }},
      {"physics.sigma_file", [](SolverConfig& c, const Value& v, const std::string& w) { c.sigma_file = expect<std::string>(v, w, "a string"); }},
      {"physics.initial", [](SolverConfig& c, const Value& v, const std::string& w) { c.initial = parse_initial_kind(expect<std::string>(v, w, "a string")); }},
      {"physics.source_std", [](SolverConfig& c, const Value& v, const std::string& w) { c.source_std = expect<double>(v, w, "a number"); }},
      {"physics.rho_file", [](SolverConfig& c, const Value& v, const std::string& w) { c.rho_file = expect<std::string>(v, w, "a string"); }},
      {"physics.g_file", [](SolverConfig& c, const Value& v, const std::string& w) { c.g_file = expect<std::string>(v, w, "a string"); }},
      {"grid.x_left", [](SolverConfig& c, const Value& v, const std::string& w) { c.x_left = expect<double>(v, w, "a number"); }},
      {"grid.x_right", [](SolverConfig& c, const Value& v, const std::string& w) { c.x_right = expect<double>(v, w, "a number"); }},
      {"grid.nx", [](SolverConfig& c, const Value& v, const std::string& w) { c.nx = expect_integer(v, w); }},
      {"grid.boundary", [](SolverConfig& c, const Value& v, const std::string& w) { c.boundary = parse_boundary(expect<std::string>(v, w, "a string")); }},
      {"solver.method", [](SolverConfig& c, const Value& v, const std::string& w) { c.method = parse_solver_kind(expect<std::string>(v, w, "a string")); }},
      {"solver.moments", [](SolverConfig& c, const Value& v, const std::string& w) { c.moments = expect_integer(v, w); }},
      {"solver.rank", [](SolverConfig& c, const Value& v, const std::string& w) { c.rank = expect_integer(v, w); }},
      {"solver.t_end", [](SolverConfig& c, const Value& v, const std::string& w) { c.t_end = expect<double>(v, w, "a number"); }},
      {"solver.cfl_safety", [](SolverConfig& c, const Value& v, const std::string& w) { c.cfl_safety = expect<double>(v, w, "a number"); }},
      {"solver.concurrent_basis_update", [](SolverConfig& c, const Value& v, const std::string& w) { c.concurrent_basis_update = expect<bool>(v, w, "true or false"); }},
      {"output.directory", [](SolverConfig& c, const Value& v, const std::string& w) { c.directory = expect<std::string>(v, w, "a string"); }},
      {"output.profile_times", [](SolverConfig& c, const Value& v, const std::string& w) { c.profile_times = expect<std::vector<double>>(v, w, "a list of numbers"); }},
      {"output.energy_trace", [](SolverConfig& c, const Value& v, const std::string& w) { c.energy_trace = expect<bool>(v, w, "true or false"); }},
  };
  return table;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

SolverConfig parse_config(std::string_view text) {
  static const std::set<std::string> sections = {"physics", "grid", "solver", "output"};
  SolverConfig config;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": malformed section header");
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (!sections.contains(section)) {
        throw ConfigError(where + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const std::string key(trim(body.substr(0, eq)));
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any section");
    const std::string full_key = section + "." + key;
    const auto it = setters().find(full_key);
    if (it == setters().end()) {
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
    }
    if (!seen.insert(full_key).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
    it->second(config, parse_value(body.substr(eq + 1), where), where + " (" + key + ")");
  }
  if (seen.contains("physics.sigma") && seen.contains("physics.sigma_file")) {
    throw ConfigError("sigma and sigma_file are mutually exclusive");
  }
  return config;
}

SolverConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  SolverConfig config;
  try {
    config = parse_config(buffer.str());
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](std::string& file) {
    if (!file.empty() && std::filesystem::path(file).is_relative()) {
      file = (base / file).lexically_normal().string();
    }
  };
  resolve(config.sigma_file);
  resolve(config.rho_file);
  resolve(config.g_file);
  return config;
}

std::string serialize_config(const SolverConfig& c) {
  std::ostringstream out;
  out << "[physics]\n";
  out << "eps = " << format_double(c.eps) << "\n";
  if (c.sigma_file.empty()) {
    out << "sigma = " << format_double(c.sigma) << "\n";
  } else {
    out << "sigma_file = " << quote(c.sigma_file) << "\n";
  }
  out << "initial = " << quote(std::string(to_string(c.initial))) << "\n";
  out << "source_std = " << format_double(c.source_std) << "\n";
  if (!c.rho_file.empty()) out << "rho_file = " << quote(c.rho_file) << "\n";
  if (!c.g_file.empty()) out << "g_file = " << quote(c.g_file) << "\n";
  out << "\n[grid]\n";
  out << "x_left = " << format_double(c.x_left) << "\n";
  out << "x_right = " << format_double(c.x_right) << "\n";
  out << "nx = " << c.nx << "\n";
  out << "boundary = " << quote(std::string(to_string(c.boundary))) << "\n";
  out << "\n[solver]\n";
  out << "method = " << quote(std::string(to_string(c.method))) << "\n";
  out << "moments = " << c.moments << "\n";
  out << "rank = " << c.rank << "\n";
  out << "t_end = " << format_double(c.t_end) << "\n";
  out << "cfl_safety = " << format_double(c.cfl_safety) << "\n";
  out << "concurrent_basis_update = " << (c.concurrent_basis_update ? "true" : "false") << "\n";
  out << "\n[output]\n";
  out << "directory = " << quote(c.directory) << "\n";
  out << "profile_times = [";
  for (std::size_t i = 0; i < c.profile_times.size(); ++i) {
    out << (i ? ", " : "") << format_double(c.profile_times[i]);
  }
  out << "]\n";
  out << "energy_trace = " << (c.energy_trace ? "true" : "false") << "\n";
  return out.str();
}

std::vector<std::string> validate(const SolverConfig& c) {
  std::vector<std::string> warnings;
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(std::isfinite(c.eps) && c.eps > 0.0, "eps must be positive");
  require(!c.sigma_file.empty() || (std::isfinite(c.sigma) && c.sigma > 0.0),
          "sigma must be positive");
  require(std::isfinite(c.x_left) && std::isfinite(c.x_right) && c.x_right > c.x_left,
          "grid requires x_left < x_right");
  require(c.nx >= 2, "nx must be at least 2");
  require(c.moments >= 1, "moments must be at least 1");
  require(std::isfinite(c.t_end) && c.t_end >= 0.0, "t_end must be non-negative");
  require(std::isfinite(c.cfl_safety) && c.cfl_safety > 0.0, "cfl_safety must be positive");
  if (c.cfl_safety > 1.0) {
    warnings.push_back("cfl_safety > 1 exceeds the energy-stability bound");
  }
  if (c.initial == InitialKind::plane_source) {
    require(std::isfinite(c.source_std) && c.source_std > 0.0, "source_std must be positive");
  } else {
    require(!c.rho_file.empty(), "initial = \"custom\" requires rho_file");
  }
  if (c.method == SolverKind::dlra) {
    const long interfaces = c.boundary == Boundary::periodic ? c.nx : c.nx + 1;
    require(c.rank >= 1 && c.rank <= std::min(interfaces, c.moments),
            "rank must lie in [1, min(interface count, moments)]");
  }
  for (const double t : c.profile_times) {
    require(std::isfinite(t) && t >= 0.0, "profile_times must be non-negative");
    if (t > c.t_end) warnings.push_back("profile time " + format_double(t) + " lies beyond t_end");
  }
  return warnings;
}

}  // namespace apdlr
