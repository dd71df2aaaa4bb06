// qrtherm.cpp - command-line front end
//
// Subcommands: sweep, point, preset, oracle, eig. Exit codes: 0 success,
// 1 configuration error, 2 numerical failure (--strict with unconverged
// records), 3 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qrtherm/io.hpp"
#include "qrtherm/oracles.hpp"
#include "qrtherm/sweep.hpp"

namespace {

using namespace qrtherm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct StrictFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit_records(const sweep::SweepConfig& cfg,
                  const std::vector<sweep::SweepRecord>& records,
                  const std::string& out_path, sweep::Format format) {
  const bool extended = cfg.extended_records();
  const std::string content = format == sweep::Format::Csv
                                  ? io::to_csv(records, extended)
                                  : io::to_json(records, extended);
  if (out_path.empty()) {
    std::cout << content;
  } else {
    io::write_file(out_path, content);
  }
}

void check_strict(bool strict, const std::vector<sweep::SweepRecord>& records) {
  if (!strict) return;
  int bad = 0;
  for (const auto& rec : records) {
    if (!rec.converged) ++bad;
  }
  if (bad > 0) {
    throw StrictFailure(std::to_string(bad) + " unconverged record(s)");
  }
}

std::string argmax_csv(const std::vector<sweep::ArgmaxEntry>& trace) {
  std::string out = "lambda,theta_argmax_rad,J_over_alpha_omega0\n";
  for (const auto& e : trace) {
    out += io::format_number(e.lambda) + "," + io::format_number(e.theta) + "," +
           io::format_number(e.current_over_alpha) + "\n";
  }
  return out;
}

std::string sibling_path(const std::string& path, const std::string& tag) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

void print_current(const oracle::WeakCouplingCurrent& current, std::ostream& os) {
  for (const auto& component : current.components) {
    os << component.name << " = " << io::format_number(component.value) << "\n";
  }
  os << "prefactor = " << io::format_number(current.prefactor) << "\n";
  os << "total = " << io::format_number(current.total) << "\n";
  if (current.regime_warning) {
    os << "warning = outside weak-coupling regime (|epsilon - omega0| < 10 lambda)\n";
  }
  if (current.degenerate_edge) {
    os << "note = gated frequency at the w -> 0 limit\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"qrtherm - dissipative qubit-resonator heat transport and "
               "photon statistics"};
  app.require_subcommand(1);

  // ---- sweep ----
  auto* cmd_sweep = app.add_subcommand("sweep", "run a configured parameter sweep");
  std::string sweep_config_path;
  std::string sweep_out;
  std::string sweep_format;
  int sweep_jobs = 0;
  bool sweep_strict = false;
  bool sweep_repro = false;
  cmd_sweep->add_option("--config", sweep_config_path, "configuration file")
      ->required();
  cmd_sweep->add_option("--out", sweep_out, "output path (default: from config)");
  cmd_sweep->add_option("--format", sweep_format, "csv or json (default: from config)");
  cmd_sweep->add_option("--jobs", sweep_jobs, "worker threads (default: hardware)");
  cmd_sweep->add_flag("--strict", sweep_strict,
                      "exit 2 when any record is unconverged");
  cmd_sweep->add_flag("--repro", sweep_repro,
                      "zero the wall_time_ms column for byte-reproducible files");

  // ---- point ----
  auto* cmd_point = app.add_subcommand("point", "evaluate one parameter point");
  double pt_theta = 0.0;
  double pt_lambda = 0.0;
  double pt_dt = 0.0;
  double pt_tmean = 1.0;
  double pt_epsilon = 1.5;
  double pt_alpha = 1e-3;
  double pt_omega_c = 10.0;
  int pt_nmax = 30;
  cmd_point->add_option("--theta", pt_theta, "composite angle (rad)")->required();
  cmd_point->add_option("--lambda", pt_lambda, "coupling strength")->required();
  cmd_point->add_option("--dT", pt_dt, "temperature bias")->required();
  cmd_point->add_option("--T-mean", pt_tmean, "mean temperature (default 1)");
  cmd_point->add_option("--epsilon", pt_epsilon, "qubit splitting (default 1.5)");
  cmd_point->add_option("--alpha", pt_alpha, "dissipation strength (default 1e-3)");
  cmd_point->add_option("--omega-c", pt_omega_c, "bath cutoff (default 10)");
  cmd_point->add_option("--nmax", pt_nmax, "Fock truncation (default 30)");

  // ---- preset ----
  auto* cmd_preset = app.add_subcommand("preset", "run a figure-reproduction grid");
  std::string preset_id;
  std::string preset_out;
  std::string preset_format = "csv";
  int preset_jobs = 0;
  int preset_resolution = 60;
  bool preset_repro = false;
  bool preset_print_config = false;
  cmd_preset->add_option("id", preset_id,
                         "fig1b, fig2a, fig2b, fig2c, fig3, fig4a, fig4bcde")
      ->required();
  cmd_preset->add_option("--out", preset_out, "output path (default: stdout)");
  cmd_preset->add_option("--format", preset_format, "csv or json (default csv)");
  cmd_preset->add_option("--jobs", preset_jobs, "worker threads");
  cmd_preset->add_option("--resolution", preset_resolution,
                         "grid points per axis (default 60)");
  cmd_preset->add_flag("--repro", preset_repro,
                       "zero the wall_time_ms column for byte-reproducible files");
  cmd_preset->add_flag("--print-config", preset_print_config,
                       "print the preset's configuration instead of running it");

  // ---- oracle ----
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "evaluate a closed-form weak-coupling expression");
  std::string oracle_which;
  double or_epsilon = 1.5;
  double or_lambda = 0.01;
  double or_tr = 1.5;
  double or_tq = 0.5;
  double or_alpha = 1e-3;
  double or_omega_c = 10.0;
  int or_n = 0;
  int or_nprime = 0;
  double or_g = 0.0;
  int or_nmax = 30;
  std::string or_limit = "theta0";
  std::string oracle_out;
  cmd_oracle->add_option("which", oracle_which,
                         "jx, jz, overlap_exact, overlap_2nd, populations")
      ->required();
  cmd_oracle->add_option("--epsilon", or_epsilon, "qubit splitting");
  cmd_oracle->add_option("--lambda", or_lambda, "coupling strength");
  cmd_oracle->add_option("--T-R", or_tr, "resonator bath temperature");
  cmd_oracle->add_option("--T-Q", or_tq, "qubit bath temperature");
  cmd_oracle->add_option("--alpha", or_alpha, "dissipation strength");
  cmd_oracle->add_option("--omega-c", or_omega_c, "bath cutoff");
  cmd_oracle->add_option("--n", or_n, "overlap index n");
  cmd_oracle->add_option("--nprime", or_nprime, "overlap index n'");
  cmd_oracle->add_option("--g", or_g, "overlap displacement lambda/omega0");
  cmd_oracle->add_option("--nmax", or_nmax, "photon cutoff for populations");
  cmd_oracle->add_option("--limit", or_limit, "populations limit: theta0 or theta90");
  cmd_oracle->add_option("--out", oracle_out, "also write the table to this path");

  // ---- eig ----
  auto* cmd_eig = app.add_subcommand("eig", "print the lowest eigenenergies");
  double eig_theta = 0.0;
  double eig_lambda = 0.0;
  double eig_epsilon = 1.5;
  int eig_nmax = 30;
  int eig_levels = 8;
  cmd_eig->add_option("--theta", eig_theta, "composite angle (rad)")->required();
  cmd_eig->add_option("--lambda", eig_lambda, "coupling strength")->required();
  cmd_eig->add_option("--epsilon", eig_epsilon, "qubit splitting (default 1.5)");
  cmd_eig->add_option("--nmax", eig_nmax, "Fock truncation (default 30)");
  cmd_eig->add_option("--levels", eig_levels, "levels to print (default 8)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_sweep->parsed()) {
    sweep::SweepConfig cfg = config::load_config(sweep_config_path);
    if (!sweep_out.empty()) cfg.out_path = sweep_out;
    if (!sweep_format.empty()) {
      if (sweep_format == "csv") {
        cfg.format = sweep::Format::Csv;
      } else if (sweep_format == "json") {
        cfg.format = sweep::Format::Json;
      } else {
        throw sweep::ConfigError("unknown format: " + sweep_format);
      }
    }
    const auto records = sweep::run_sweep(cfg, {sweep_jobs, sweep_repro});
    emit_records(cfg, records, cfg.out_path, cfg.format);
    check_strict(sweep_strict, records);
    return kExitOk;
  }

  if (cmd_point->parsed()) {
    sweep::SweepConfig cfg;
    cfg.epsilon = pt_epsilon;
    cfg.n_max = pt_nmax;
    cfg.alpha = pt_alpha;
    cfg.omega_c = pt_omega_c;
    cfg.theta = sweep::Axis::fixed(pt_theta);
    cfg.lambda = sweep::Axis::fixed(pt_lambda);
    cfg.dT = sweep::Axis::fixed(pt_dt);
    cfg.T_mean = sweep::Axis::fixed(pt_tmean);
    cfg.want_current = true;
    cfg.want_g2 = true;
    cfg.want_g2_approx = true;
    const auto records = sweep::run_sweep(cfg, {1, false});
    std::cout << io::to_csv(records, false);
    return kExitOk;
  }

  if (cmd_preset->parsed()) {
    const sweep::PresetId id = sweep::parse_preset_id(preset_id);
    sweep::SweepConfig cfg = sweep::preset(id, preset_resolution);
    if (preset_format == "csv") {
      cfg.format = sweep::Format::Csv;
    } else if (preset_format == "json") {
      cfg.format = sweep::Format::Json;
    } else {
      throw sweep::ConfigError("unknown format: " + preset_format);
    }
    if (preset_print_config) {
      std::cout << config::write_config(cfg);
      return kExitOk;
    }
    const auto records = sweep::run_sweep(cfg, {preset_jobs, preset_repro});
    emit_records(cfg, records, preset_out, cfg.format);
    if (id == sweep::PresetId::Fig3 && !preset_out.empty()) {
      const auto trace = sweep::argmax_theta_trace(cfg, records);
      io::write_file(sibling_path(preset_out, "_argmax"), argmax_csv(trace));
    }
    return kExitOk;
  }

  if (cmd_oracle->parsed()) {
    model::ModelParams params{or_epsilon, or_lambda, 0.0, or_nmax};
    const bath::BathSpec bath_r{bath::Label::R, or_alpha, or_omega_c, or_tr};
    const bath::BathSpec bath_q{bath::Label::Q, or_alpha, or_omega_c, or_tq};
    std::ostringstream table;
    if (oracle_which == "jx" || oracle_which == "jz") {
      params.theta = oracle_which == "jx" ? 0.0 : M_PI / 2.0;
      const auto current = oracle_which == "jx"
                               ? oracle::jx_weak(params, bath_r, bath_q)
                               : oracle::jz_weak(params, bath_r, bath_q);
      print_current(current, table);
      table << "total_over_alpha_omega0 = "
            << io::format_number(current.total / (or_alpha * model::kOmega0))
            << "\n";
    } else if (oracle_which == "overlap_exact") {
      table << io::format_number(oracle::sigma_x_overlap_exact(or_n, or_nprime, or_g))
            << "\n";
    } else if (oracle_which == "overlap_2nd") {
      table << io::format_number(
                   oracle::sigma_x_overlap_second_order(or_n, or_nprime, or_g))
            << "\n";
    } else if (oracle_which == "populations") {
      oracle::WeakLimit limit;
      if (or_limit == "theta0") {
        limit = oracle::WeakLimit::Theta0;
      } else if (or_limit == "theta90") {
        limit = oracle::WeakLimit::Theta90;
      } else {
        throw sweep::ConfigError("unknown limit: " + or_limit);
      }
      const auto pops = oracle::zeroth_populations(params, bath_r, bath_q, limit);
      table << "photon,branch,population\n";
      for (const auto& entry : pops.table) {
        table << entry.photon << ","
              << (entry.branch == oracle::Branch::Upper ? "upper" : "lower") << ","
              << io::format_number(entry.value) << "\n";
      }
      if (pops.zero_temperature_limit) {
        table << "# evaluated in the T_Q -> 0 limit\n";
      }
    } else {
      throw sweep::ConfigError("unknown oracle: " + oracle_which);
    }
    std::cout << table.str();
    if (!oracle_out.empty()) io::write_file(oracle_out, table.str());
    return kExitOk;
  }

  if (cmd_eig->parsed()) {
    model::ModelParams params{eig_epsilon, eig_lambda, eig_theta, eig_nmax};
    const auto eig = model::diagonalize(model::build_hamiltonian(params), params);
    const int levels = std::min<int>(eig_levels, static_cast<int>(eig.dim()));
    for (int k = 0; k < levels; ++k) {
      std::cout << k << " " << io::format_number(eig.energies(k)) << "\n";
    }
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const StrictFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qrtherm::io::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qrtherm::sweep::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
