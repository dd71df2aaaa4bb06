// pipeline.hpp - one-shot evaluation of a parameter point and truncation control

#pragma once

#include <optional>

#include "qrtherm/observables.hpp"

namespace qrtherm::pipeline {

struct PointRequest {
  model::ModelParams params;
  bath::BathSpec bath_r;
  bath::BathSpec bath_q;
  bool want_g2 = true;
  bool want_g2_approx = true;
};

struct PointResult {
  model::EigenSystem eig;
  rates::SteadyState steady;
  obs::CurrentBreakdown current_q;
  double current_r_total = 0.0;
  double alpha = 0.0;  // dissipation strength used, for normalized reporting
  std::optional<obs::G2Result> g2;
  std::optional<obs::G2Approx> g2_approx;

  double current_over_alpha_omega0() const;  // J_Q / (alpha omega0)
};

// Hamiltonian -> eigensystem -> rates -> steady state -> observables.
PointResult evaluate_point(const PointRequest& request);

struct TruncationScan {
  int n_max = 0;          // accepted truncation (smallest converged candidate)
  bool converged = false;
  PointResult result;     // evaluation at the accepted truncation
  // Last two samples of the convergence metric, reported on failure.
  double last_current = 0.0;
  double previous_current = 0.0;
  double last_g2 = 0.0;
  double previous_g2 = 0.0;
};

// Smallest n_max (from 10 in steps of 5, capped at 60) whose requested
// observables move by less than observable_tol (relative) when n_max grows
// by 5. The request's n_max field is ignored.
TruncationScan converge_truncation(const PointRequest& request,
                                   double observable_tol);

// Contract form of the scan: returns the truncation or throws on
// non-convergence, quoting the last two observable values.
int required_truncation(const PointRequest& request, double observable_tol);

}  // namespace qrtherm::pipeline
