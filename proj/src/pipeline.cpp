// pipeline.cpp - point evaluation and truncation convergence scan

#include "qrtherm/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qrtherm::pipeline {

double PointResult::current_over_alpha_omega0() const {
  return current_q.total / (alpha * model::kOmega0);
}

PointResult evaluate_point(const PointRequest& request) {
  request.params.validate();
  request.bath_r.validate();
  request.bath_q.validate();

  PointResult out;
  out.alpha = request.bath_q.alpha;
  out.eig = model::diagonalize(model::build_hamiltonian(request.params),
                               request.params);
  const rates::TransitionRateTable table =
      rates::transition_rates(out.eig, {request.bath_r, request.bath_q});
  const rates::RateMatrix w = rates::build_rate_matrix(table);
  out.steady = rates::solve_steady_state(w);
  out.current_q = obs::heat_current(out.eig, table, out.steady, bath::Label::Q);
  out.current_r_total =
      obs::heat_current(out.eig, table, out.steady, bath::Label::R).total;
  if (request.want_g2) {
    out.g2 = obs::g2_zero(out.eig, out.steady);
  }
  if (request.want_g2_approx) {
    out.g2_approx = obs::g2_approx(out.eig, out.steady);
  }
  return out;
}

namespace {

// Relative agreement with an absolute floor: observables that sit at the
// solver noise level (an equilibrium current, say) count as converged.
bool metric_close(double a, double b, double tol) {
  if (std::isinf(tol)) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

// Convergence metrics of a point: normalized current and (when computed) g2.
struct Metrics {
  double current = 0.0;
  double g2 = 0.0;
  bool g2_defined = false;
};

Metrics metrics_of(const PointResult& r) {
  Metrics m;
  m.current = r.current_over_alpha_omega0();
  if (r.g2.has_value() && !r.g2->undefined) {
    m.g2 = r.g2->value;
    m.g2_defined = true;
  }
  return m;
}

}  // namespace

TruncationScan converge_truncation(const PointRequest& request,
                                   double observable_tol) {
  if (!(observable_tol > 0.0)) {
    throw std::invalid_argument("converge_truncation: tolerance must be > 0");
  }
  constexpr int kStart = 10;
  constexpr int kStep = 5;
  constexpr int kCap = 60;

  PointRequest probe = request;
  probe.params.n_max = kStart;
  PointResult prev = evaluate_point(probe);
  Metrics prev_metrics = metrics_of(prev);

  TruncationScan scan;
  for (int n = kStart + kStep; n <= kCap; n += kStep) {
    probe.params.n_max = n;
    PointResult cur = evaluate_point(probe);
    const Metrics cur_metrics = metrics_of(cur);

    bool close = metric_close(prev_metrics.current, cur_metrics.current,
                              observable_tol);
    if (request.want_g2) {
      if (prev_metrics.g2_defined != cur_metrics.g2_defined) {
        close = false;
      } else if (prev_metrics.g2_defined) {
        close = close &&
                metric_close(prev_metrics.g2, cur_metrics.g2, observable_tol);
      }
    }
    scan.previous_current = prev_metrics.current;
    scan.last_current = cur_metrics.current;
    scan.previous_g2 = prev_metrics.g2;
    scan.last_g2 = cur_metrics.g2;
    if (close) {
      scan.n_max = n - kStep;
      scan.converged = true;
      scan.result = std::move(prev);
      return scan;
    }
    prev = std::move(cur);
    prev_metrics = cur_metrics;
  }
  scan.n_max = kCap;
  scan.converged = false;
  scan.result = std::move(prev);
  return scan;
}

int required_truncation(const PointRequest& request, double observable_tol) {
  const TruncationScan scan = converge_truncation(request, observable_tol);
  if (!scan.converged) {
    std::ostringstream msg;
    msg << "converge_truncation: not converged by n_max = 60; last two samples"
        << " J/(alpha omega0) = " << scan.previous_current << " -> "
        << scan.last_current;
    if (request.want_g2) {
      msg << ", g2 = " << scan.previous_g2 << " -> " << scan.last_g2;
    }
    throw std::runtime_error(msg.str());
  }
  return scan.n_max;
}

}  // namespace qrtherm::pipeline
