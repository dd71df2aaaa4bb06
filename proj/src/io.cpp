// io.cpp - CSV/JSON record writers

#include "qrtherm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qrtherm::io {

namespace {

constexpr const char* kBaseColumns[] = {
    "theta_rad", "lambda", "epsilon", "T_R", "T_Q", "alpha", "omega_c",
    "n_max_used", "converged", "J_over_alpha_omega0", "g2", "g2_approx",
    "wall_time_ms"};

constexpr const char* kExtendedColumns[] = {"E0", "E1", "E2", "E3", "P0", "P1",
                                            "P2", "P3", "A1", "B2"};

std::string observable_text(const std::optional<double>& v) {
  if (!v.has_value() || !std::isfinite(*v)) return "undef";
  return format_number(*v);
}

// Field values in column order, shared by both encoders.
std::vector<std::string> record_fields(const sweep::SweepRecord& r, bool extended) {
  std::vector<std::string> f;
  f.reserve(extended ? 23 : 13);
  f.push_back(format_number(r.theta));
  f.push_back(format_number(r.lambda));
  f.push_back(format_number(r.epsilon));
  f.push_back(format_number(r.t_r));
  f.push_back(format_number(r.t_q));
  f.push_back(format_number(r.alpha));
  f.push_back(format_number(r.omega_c));
  f.push_back(std::to_string(r.n_max_used));
  f.push_back(r.converged ? "true" : "false");
  f.push_back(observable_text(r.current_over_alpha));
  f.push_back(observable_text(r.g2));
  f.push_back(observable_text(r.g2_approx));
  f.push_back(std::to_string(r.wall_time_ms));
  if (extended) {
    for (int k = 0; k < 4; ++k) {
      f.push_back(r.energies ? format_number((*r.energies)[k]) : "undef");
    }
    for (int k = 0; k < 4; ++k) {
      f.push_back(r.populations ? format_number((*r.populations)[k]) : "undef");
    }
    f.push_back(observable_text(r.coeff_a1));
    f.push_back(observable_text(r.coeff_b2));
  }
  return f;
}

std::vector<std::string> column_names(bool extended) {
  std::vector<std::string> names(std::begin(kBaseColumns), std::end(kBaseColumns));
  if (extended) {
    names.insert(names.end(), std::begin(kExtendedColumns),
                 std::end(kExtendedColumns));
  }
  return names;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string to_csv(const std::vector<sweep::SweepRecord>& records, bool extended) {
  std::string out;
  const auto names = column_names(extended);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += (i ? "," : "") + names[i];
  }
  out += "\n";
  for (const auto& rec : records) {
    const auto fields = record_fields(rec, extended);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i ? "," : "") + fields[i];
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const std::vector<sweep::SweepRecord>& records, bool extended) {
  const auto names = column_names(extended);
  std::string out = "[\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto fields = record_fields(records[r], extended);
    out += "  {";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i ? ", " : "") + ("\"" + names[i] + "\": ");
      // numbers and true/false pass through; only "undef" needs quoting
      out += fields[i] == "undef" ? "\"undef\"" : fields[i];
    }
    out += r + 1 < records.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace qrtherm::io
