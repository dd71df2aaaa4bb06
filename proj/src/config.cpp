// config.cpp - key-value configuration text: parsing and serialization
//
// Format: '[section]' headers, 'key = value' lines, '#' comments. Numbers
// accept a trailing "pi" multiplier, axes accept linspace(min, max, count).
// Recognized layout:
//
//   [model]   epsilon, n_max (integer or "auto"), truncation_tol
//   [baths]   alpha, omega_c
//   [grid]    theta, lambda, dT, T_mean (fixed number or linspace)
//   [output]  quantities (subset of current, g2, g2_approx, populations),
//             path, format (csv | json)

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qrtherm/io.hpp"
#include "qrtherm/sweep.hpp"

namespace qrtherm::config {

using sweep::Axis;
using sweep::ConfigError;
using sweep::SweepConfig;

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_plain_number(const std::string& token) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("config: not a number: '" + token + "'");
  }
  if (consumed != token.size()) {
    throw ConfigError("config: trailing characters in number: '" + token + "'");
  }
  return value;
}

int parse_integer(const std::string& token, const std::string& key) {
  const double v = parse_plain_number(token);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-9) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" +
                      token + "'");
  }
  return i;
}

Axis parse_axis(const std::string& value, const std::string& key) {
  if (value.rfind("linspace", 0) == 0) {
    const auto open = value.find('(');
    const auto close = value.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        trim(value.substr(8, open - 8)) != "" ||
        trim(value.substr(close + 1)) != "") {
      throw ConfigError("config: malformed linspace for key '" + key + "'");
    }
    const auto args = split(value.substr(open + 1, close - open - 1), ',');
    if (args.size() != 3) {
      throw ConfigError("config: linspace expects (min, max, count) for key '" +
                        key + "'");
    }
    return Axis::linspace(parse_number(args[0]), parse_number(args[1]),
                          parse_integer(args[2], key));
  }
  return Axis::fixed(parse_number(value));
}

}  // namespace

double parse_number(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) {
    throw ConfigError("config: empty number literal");
  }
  if (t == "pi") return M_PI;
  if (t.size() > 2 && t.substr(t.size() - 2) == "pi") {
    return parse_plain_number(t.substr(0, t.size() - 2)) * M_PI;
  }
  return parse_plain_number(t);
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::string section;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(stream, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "baths" && section != "grid" &&
          section != "output") {
        throw ConfigError("config: unknown section '" + section + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected 'key = value' at line " +
                        std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: empty key or value at line " +
                        std::to_string(line_no));
    }

    if (section == "model") {
      if (key == "epsilon") {
        cfg.epsilon = parse_number(value);
      } else if (key == "n_max") {
        if (value == "auto") {
          cfg.auto_truncation = true;
        } else {
          cfg.auto_truncation = false;
          cfg.n_max = parse_integer(value, key);
        }
      } else if (key == "truncation_tol") {
        cfg.truncation_tol = parse_number(value);
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [model]");
      }
    } else if (section == "baths") {
      if (key == "alpha") {
        cfg.alpha = parse_number(value);
      } else if (key == "omega_c") {
        cfg.omega_c = parse_number(value);
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [baths]");
      }
    } else if (section == "grid") {
      if (key == "theta") {
        cfg.theta = parse_axis(value, key);
      } else if (key == "lambda") {
        cfg.lambda = parse_axis(value, key);
      } else if (key == "dT") {
        cfg.dT = parse_axis(value, key);
      } else if (key == "T_mean") {
        cfg.T_mean = parse_axis(value, key);
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [grid]");
      }
    } else if (section == "output") {
      if (key == "quantities") {
        cfg.want_current = cfg.want_g2 = cfg.want_g2_approx = cfg.want_populations = false;
        for (const std::string& q : split(value, ',')) {
          if (q == "current") {
            cfg.want_current = true;
          } else if (q == "g2") {
            cfg.want_g2 = true;
          } else if (q == "g2_approx") {
            cfg.want_g2_approx = true;
          } else if (q == "populations") {
            cfg.want_populations = true;
          } else {
            throw ConfigError("config: unknown quantity '" + q + "'");
          }
        }
      } else if (key == "path") {
        cfg.out_path = value;
      } else if (key == "format") {
        if (value == "csv") {
          cfg.format = sweep::Format::Csv;
        } else if (value == "json") {
          cfg.format = sweep::Format::Json;
        } else {
          throw ConfigError("config: unknown format '" + value + "'");
        }
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [output]");
      }
    } else {
      throw ConfigError("config: key '" + key + "' outside any section");
    }
  }

  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string write_config(const SweepConfig& cfg) {
  const auto axis_text = [](const Axis& axis) {
    if (!axis.is_grid()) return io::format_number(axis.min);
    return "linspace(" + io::format_number(axis.min) + ", " +
           io::format_number(axis.max) + ", " + std::to_string(axis.count) + ")";
  };

  std::ostringstream out;
  out << "[model]\n";
  out << "epsilon = " << io::format_number(cfg.epsilon) << "\n";
  if (cfg.auto_truncation) {
    out << "n_max = auto\n";
    out << "truncation_tol = " << io::format_number(cfg.truncation_tol) << "\n";
  } else {
    out << "n_max = " << cfg.n_max << "\n";
  }
  out << "\n[baths]\n";
  out << "alpha = " << io::format_number(cfg.alpha) << "\n";
  out << "omega_c = " << io::format_number(cfg.omega_c) << "\n";
  out << "\n[grid]\n";
  out << "theta = " << axis_text(cfg.theta) << "\n";
  out << "lambda = " << axis_text(cfg.lambda) << "\n";
  out << "dT = " << axis_text(cfg.dT) << "\n";
  out << "T_mean = " << axis_text(cfg.T_mean) << "\n";
  out << "\n[output]\n";
  out << "quantities =";
  bool first = true;
  for (const auto& [on, name] :
       {std::pair{cfg.want_current, "current"}, {cfg.want_g2, "g2"},
        {cfg.want_g2_approx, "g2_approx"}, {cfg.want_populations, "populations"}}) {
    if (!on) continue;
    out << (first ? " " : ", ") << name;
    first = false;
  }
  out << "\n";
  if (!cfg.out_path.empty()) {
    out << "path = " << cfg.out_path << "\n";
  }
  out << "format = " << (cfg.format == sweep::Format::Csv ? "csv" : "json") << "\n";
  return out.str();
}

}  // namespace qrtherm::config
