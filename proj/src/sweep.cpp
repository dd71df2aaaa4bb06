// sweep.cpp - grid enumeration, parallel runner, figure presets

#include "qrtherm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace qrtherm::sweep {

Axis Axis::linspace(double lo, double hi, int n) {
  if (n < 2) {
    throw ConfigError("linspace: count must be >= 2");
  }
  return {lo, hi, n};
}

double Axis::at(int i) const {
  if (i < 0 || i >= count) {
    throw std::out_of_range("Axis::at: index out of range");
  }
  if (count == 1) return min;
  const double t = static_cast<double>(i) / (count - 1);
  return min + t * (max - min);
}

void SweepConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be > 0");
  if (!auto_truncation && n_max < 5) throw ConfigError("config: n_max must be >= 5");
  if (auto_truncation && !(truncation_tol > 0.0)) {
    throw ConfigError("config: truncation_tol must be > 0");
  }
  if (!(alpha > 0.0)) throw ConfigError("config: alpha must be > 0");
  if (!(omega_c > 0.0)) throw ConfigError("config: omega_c must be > 0");

  int grids = 0;
  for (const Axis* axis : {&theta, &lambda, &dT, &T_mean}) {
    if (axis->count < 1) throw ConfigError("config: axis count must be >= 1");
    if (axis->is_grid()) ++grids;
  }
  if (grids > 2) {
    throw ConfigError("config: at most 2 axes may be grids");
  }
  // T_Q = T_mean - dT/2 must stay >= 0 over the whole grid; the worst corner
  // pairs the smallest T_mean with the largest dT.
  const double t_mean_min = std::min(T_mean.min, T_mean.max);
  const double dt_max = std::max(dT.min, dT.max);
  if (t_mean_min - 0.5 * dt_max < -1e-12) {
    std::ostringstream msg;
    msg << "config: T_Q < 0 at grid corner (T_mean = " << t_mean_min
        << ", dT = " << dt_max << ")";
    throw ConfigError(msg.str());
  }
  for (const Axis* axis : {&theta, &lambda, &dT, &T_mean}) {
    for (int i : {0, axis->count - 1}) {
      if (!std::isfinite(axis->at(i))) {
        throw ConfigError("config: non-finite axis endpoint");
      }
    }
  }
  if (std::min(theta.min, theta.max) < -1e-12 ||
      std::max(theta.min, theta.max) > M_PI / 2.0 + 1e-12) {
    throw ConfigError("config: theta must lie in [0, pi/2]");
  }
  if (std::min(lambda.min, lambda.max) < 0.0) {
    throw ConfigError("config: lambda must be >= 0");
  }
}

int SweepConfig::grid_total() const {
  return theta.count * lambda.count * dT.count * T_mean.count;
}

namespace {

struct GridPoint {
  double theta;
  double lambda;
  double dT;
  double t_mean;
};

// Deterministic grid order: theta is the slowest axis, then lambda, dT, T_mean.
GridPoint grid_point(const SweepConfig& c, int index) {
  const int n3 = c.T_mean.count;
  const int n2 = c.dT.count * n3;
  const int n1 = c.lambda.count * n2;
  const int i_theta = index / n1;
  const int i_lambda = (index % n1) / n2;
  const int i_dt = (index % n2) / n3;
  const int i_tm = index % n3;
  return {c.theta.at(i_theta), c.lambda.at(i_lambda), c.dT.at(i_dt),
          c.T_mean.at(i_tm)};
}

SweepRecord evaluate_record(const SweepConfig& c, int index) {
  const GridPoint pt = grid_point(c, index);
  SweepRecord rec;
  rec.theta = pt.theta;
  rec.lambda = pt.lambda;
  rec.epsilon = c.epsilon;
  rec.t_r = pt.t_mean + 0.5 * pt.dT;
  rec.t_q = pt.t_mean - 0.5 * pt.dT;
  if (rec.t_q < 0.0 && rec.t_q > -1e-12) rec.t_q = 0.0;  // grid-corner dust
  rec.alpha = c.alpha;
  rec.omega_c = c.omega_c;

  const auto start = std::chrono::steady_clock::now();
  try {
    pipeline::PointRequest req;
    req.params = {c.epsilon, pt.lambda, pt.theta,
                  c.auto_truncation ? 30 : c.n_max};
    req.bath_r = {bath::Label::R, c.alpha, c.omega_c, rec.t_r};
    req.bath_q = {bath::Label::Q, c.alpha, c.omega_c, rec.t_q};
    req.want_g2 = c.want_g2 || c.want_populations;
    req.want_g2_approx = c.want_g2_approx || c.want_populations;

    pipeline::PointResult result;
    if (c.auto_truncation) {
      pipeline::TruncationScan scan =
          pipeline::converge_truncation(req, c.truncation_tol);
      rec.n_max_used = scan.n_max;
      rec.converged = scan.converged;
      result = std::move(scan.result);
    } else {
      result = pipeline::evaluate_point(req);
      rec.n_max_used = req.params.n_max;
      rec.converged = true;
    }

    if (c.want_current) {
      rec.current_over_alpha = result.current_over_alpha_omega0();
    }
    if (result.g2.has_value()) {
      if (c.want_g2 && !result.g2->undefined) rec.g2 = result.g2->value;
      if (!result.g2->truncation_converged) rec.converged = false;
    }
    if (c.want_g2_approx && result.g2_approx.has_value()) {
      rec.g2_approx = result.g2_approx->value;
    }
    if (c.want_populations) {
      std::array<double, 4> e{};
      std::array<double, 4> p{};
      for (int k = 0; k < 4; ++k) {
        e[k] = result.eig.energies(k);
        p[k] = result.steady.populations(k);
      }
      rec.energies = e;
      rec.populations = p;
      rec.coeff_a1 = obs::ladder_coefficient_a(result.eig, 1);
      rec.coeff_b2 = obs::ladder_coefficient_b(result.eig, 2);
    }
  } catch (const std::exception&) {
    // flagged record: converged = false, observables left undefined
    rec.converged = false;
    rec.n_max_used = c.auto_truncation ? 0 : c.n_max;
  }
  const auto stop = std::chrono::steady_clock::now();
  rec.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                   const RunOptions& options) {
  config.validate();
  const int total = config.grid_total();
  std::vector<SweepRecord> records(total);

  int jobs = options.jobs;
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
  }
  jobs = std::min(jobs, total);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int index = next.fetch_add(1);
      if (index >= total) break;
      records[index] = evaluate_record(config, index);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (options.zero_timing) {
    for (auto& rec : records) rec.wall_time_ms = 0;
  }
  return records;
}

PresetId parse_preset_id(const std::string& name) {
  if (name == "fig1b") return PresetId::Fig1b;
  if (name == "fig2a") return PresetId::Fig2a;
  if (name == "fig2b") return PresetId::Fig2b;
  if (name == "fig2c") return PresetId::Fig2c;
  if (name == "fig3") return PresetId::Fig3;
  if (name == "fig4a") return PresetId::Fig4a;
  if (name == "fig4bcde") return PresetId::Fig4bcde;
  throw ConfigError("unknown preset id: " + name +
                    " (expected fig1b, fig2a, fig2b, fig2c, fig3, fig4a, fig4bcde)");
}

const char* preset_name(PresetId id) {
  switch (id) {
    case PresetId::Fig1b: return "fig1b";
    case PresetId::Fig2a: return "fig2a";
    case PresetId::Fig2b: return "fig2b";
    case PresetId::Fig2c: return "fig2c";
    case PresetId::Fig3: return "fig3";
    case PresetId::Fig4a: return "fig4a";
    case PresetId::Fig4bcde: return "fig4bcde";
  }
  throw ConfigError("unknown preset id");
}

SweepConfig preset(PresetId id, int resolution) {
  if (resolution < 2) {
    throw ConfigError("preset: resolution must be >= 2");
  }
  const double half_pi = M_PI / 2.0;
  SweepConfig c;
  c.epsilon = 1.5;
  c.alpha = 1e-3;
  c.omega_c = 10.0;
  c.auto_truncation = true;
  c.truncation_tol = 1e-4;  // 0.01% per observable, far below figure resolution
  // lambda spans (0, 2]: the grid starts one step above zero.
  const Axis lambda_span = Axis::linspace(2.0 / resolution, 2.0, resolution);

  switch (id) {
    case PresetId::Fig1b:
      c.lambda = Axis::fixed(0.01);
      c.theta = Axis::linspace(0.0, half_pi, resolution);
      c.dT = Axis::linspace(0.0, 1.9, resolution);
      c.T_mean = Axis::fixed(1.0);
      break;
    case PresetId::Fig2a:
    case PresetId::Fig2b:
    case PresetId::Fig2c:
      c.theta = Axis::fixed(id == PresetId::Fig2a   ? 0.0
                            : id == PresetId::Fig2b ? M_PI / 4.0
                                                    : half_pi);
      c.lambda = lambda_span;
      c.dT = Axis::linspace(0.0, 1.9, resolution);
      c.T_mean = Axis::fixed(1.0);
      break;
    case PresetId::Fig3:
      c.theta = Axis::linspace(0.0, half_pi, resolution);
      c.lambda = lambda_span;
      c.dT = Axis::fixed(2.0);  // T_R = 2, T_Q = 0
      c.T_mean = Axis::fixed(1.0);
      break;
    case PresetId::Fig4a:
      c.theta = Axis::linspace(0.0, half_pi, resolution);
      c.lambda = lambda_span;
      c.dT = Axis::fixed(0.0);
      c.T_mean = Axis::fixed(0.1);
      c.want_current = false;
      c.want_g2 = true;
      break;
    case PresetId::Fig4bcde:
      c.theta = Axis::linspace(0.0, half_pi, resolution);
      c.lambda = Axis::fixed(1.0);
      c.dT = Axis::fixed(0.0);
      c.T_mean = Axis::fixed(0.1);
      c.want_current = false;
      c.want_g2 = true;
      c.want_g2_approx = true;
      c.want_populations = true;
      break;
  }
  return c;
}

std::vector<ArgmaxEntry> argmax_theta_trace(const SweepConfig& config,
                                            const std::vector<SweepRecord>& records) {
  if (!config.theta.is_grid() || !config.lambda.is_grid()) {
    throw ConfigError("argmax_theta_trace: needs theta and lambda grid axes");
  }
  std::map<double, ArgmaxEntry> best;
  for (const SweepRecord& rec : records) {
    if (!rec.current_over_alpha.has_value()) continue;
    auto it = best.find(rec.lambda);
    if (it == best.end() || rec.current_over_alpha.value() > it->second.current_over_alpha) {
      best[rec.lambda] = {rec.lambda, rec.theta, rec.current_over_alpha.value()};
    }
  }
  std::vector<ArgmaxEntry> trace;
  trace.reserve(best.size());
  for (const auto& [lambda, entry] : best) trace.push_back(entry);
  return trace;
}

}  // namespace qrtherm::sweep
