// io.hpp - record serialization (CSV and JSON) with stable formatting

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qrtherm/sweep.hpp"

namespace qrtherm::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 12 significant digits; the one float formatter used for every file so CSV
// and JSON encodings of the same sweep carry identical values.
std::string format_number(double value);

// Column order is fixed:
//   theta_rad,lambda,epsilon,T_R,T_Q,alpha,omega_c,n_max_used,converged,
//   J_over_alpha_omega0,g2,g2_approx,wall_time_ms
// and, when `extended` (populations output requested):
//   ,E0,E1,E2,E3,P0,P1,P2,P3,A1,B2
// Undefined or non-finite observables are serialized as the literal "undef".
std::string to_csv(const std::vector<sweep::SweepRecord>& records, bool extended);

// Array of flat objects with the same field names and number formatting.
std::string to_json(const std::vector<sweep::SweepRecord>& records, bool extended);

void write_file(const std::string& path, const std::string& content);

}  // namespace qrtherm::io
