// sweep.hpp - sweep configuration, grid records, presets, and the runner
//
// Sweeps are pure functions of their configuration: grid points are mutually
// independent, may be evaluated concurrently, and records are always emitted
// in grid order with deterministic values.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrtherm/pipeline.hpp"

namespace qrtherm::sweep {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fixed value (count == 1) or linspace(min, max, count).
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  static Axis fixed(double value) { return {value, value, 1}; }
  static Axis linspace(double lo, double hi, int n);

  bool is_grid() const { return count > 1; }
  double at(int i) const;
};

enum class Format { Csv, Json };

struct SweepConfig {
  // model
  double epsilon = 1.5;
  int n_max = 30;
  bool auto_truncation = false;
  double truncation_tol = 1e-6;
  // baths (shared dissipation strength and cutoff)
  double alpha = 1e-3;
  double omega_c = 10.0;
  // grid: T_R = T_mean + dT/2, T_Q = T_mean - dT/2; at most two grid axes
  Axis theta = Axis::fixed(0.0);
  Axis lambda = Axis::fixed(0.0);
  Axis dT = Axis::fixed(0.0);
  Axis T_mean = Axis::fixed(1.0);
  // requested outputs
  bool want_current = true;
  bool want_g2 = false;
  bool want_g2_approx = false;
  bool want_populations = false;  // adds the extended columns
  // output
  std::string out_path;
  Format format = Format::Csv;

  void validate() const;
  int grid_total() const;
  bool extended_records() const { return want_populations; }
};

struct SweepRecord {
  double theta = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;
  double t_r = 0.0;
  double t_q = 0.0;
  double alpha = 0.0;
  double omega_c = 0.0;
  int n_max_used = 0;
  bool converged = false;
  std::optional<double> current_over_alpha;  // J_Q / (alpha omega0)
  std::optional<double> g2;
  std::optional<double> g2_approx;
  std::int64_t wall_time_ms = 0;
  // extended outputs
  std::optional<std::array<double, 4>> energies;     // E0..E3
  std::optional<std::array<double, 4>> populations;  // P0..P3
  std::optional<double> coeff_a1;
  std::optional<double> coeff_b2;
};

struct RunOptions {
  int jobs = 0;             // 0 = hardware concurrency
  bool zero_timing = false; // reproducible files: wall_time_ms forced to 0
};

// One record per grid point, ordered by grid index. A failing point yields a
// flagged record (converged = false, observables undefined) instead of
// aborting the sweep.
std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                   const RunOptions& options = {});

enum class PresetId { Fig1b, Fig2a, Fig2b, Fig2c, Fig3, Fig4a, Fig4bcde };

PresetId parse_preset_id(const std::string& name);
const char* preset_name(PresetId id);

// Reproduction grids: epsilon = 1.5, alpha = 1e-3, omega_c = 10 throughout.
// Grid resolution defaults to 60 points per axis (a preset parameter).
SweepConfig preset(PresetId id, int resolution = 60);

// (lambda, argmax-theta, max J/(alpha omega0)) trace over a (theta, lambda)
// sweep; companion output for the angle-resolved current map.
struct ArgmaxEntry {
  double lambda = 0.0;
  double theta = 0.0;
  double current_over_alpha = 0.0;
};
std::vector<ArgmaxEntry> argmax_theta_trace(const SweepConfig& config,
                                            const std::vector<SweepRecord>& records);

}  // namespace qrtherm::sweep

namespace qrtherm::config {

// Parse the key-value config format (sections, '#' comments, "pi" suffix,
// linspace(min, max, count)). Unknown sections or keys are rejected by name.
sweep::SweepConfig parse_config(const std::string& text);
sweep::SweepConfig load_config(const std::string& path);

// Serialize a config back to the same text format (round-trips via parse).
std::string write_config(const sweep::SweepConfig& config);

// Number literal with optional "pi" suffix: "0.25pi" -> 0.25*pi, "pi" -> pi.
double parse_number(const std::string& token);

}  // namespace qrtherm::config
