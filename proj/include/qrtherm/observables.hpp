// observables.hpp - steady-state heat current and dressed two-photon statistics

#pragma once

#include <vector>

#include "qrtherm/rates.hpp"

namespace qrtherm::obs {

struct TransitionContribution {
  int upper = 0;
  int lower = 0;
  double gap = 0.0;
  double value = 0.0;  // signed contribution to the current
};

struct CurrentBreakdown {
  double total = 0.0;  // energy per unit time into the bath, units omega0^2
  std::vector<TransitionContribution> contributions;
};

// J = sum over pairs (E_n > E_n') of E_nn' [Gamma^-(E_nn') P_n - Gamma^+(E_nn') P_n']
// for the requested bath. Positive = energy flows into that bath. Degenerate
// pairs transport no energy and are excluded.
CurrentBreakdown heat_current(const model::EigenSystem& eig,
                              const rates::TransitionRateTable& table,
                              const rates::SteadyState& ss, bath::Label which);

// Dressed emission operator X^- = -i sum_{k>j} Delta_kj X_jk |phi_j><phi_k|
// with X_jk = <phi_j|(a^dag + a)|phi_k>, in the eigenbasis. X^+ is its adjoint.
fock::OperatorMatrix x_minus_operator(const model::EigenSystem& eig);

struct G2Result {
  double value = 0.0;
  double numerator = 0.0;          // <X+ X+ X- X->
  double denominator = 0.0;        // <X+ X->^2
  double one_photon_weight = 0.0;  // <X+ X->
  bool undefined = false;          // denominator below 1e-30 (dark state)
  // Occupied states in the top 20% of the spectrum must contribute less than
  // 1e-6 of the numerator, else the value is flagged as truncation-limited.
  bool truncation_converged = true;
};

// G2(0) = Tr[rho X+ X+ X- X-] / Tr[rho X+ X-]^2 with rho = diag(P).
G2Result g2_zero(const model::EigenSystem& eig, const rates::SteadyState& ss);

// Downward-ladder coefficients of the low-temperature expansion:
//   A_n = sum_{l<n} (Delta_nl X_nl)^2
//   B_n = sum_{p<l<n} (Delta_nl Delta_lp X_nl X_lp)^2
double ladder_coefficient_a(const model::EigenSystem& eig, int n);
double ladder_coefficient_b(const model::EigenSystem& eig, int n);

struct G2Approx {
  double value = 0.0;
  // Low-temperature ordering P1 < 0.2 P0; the value is still returned when
  // this fails, marked as out of regime.
  bool precondition_ok = true;
};

// Concise two-photon estimate P2 B2 / (P1 A1)^2.
G2Approx g2_approx(const model::EigenSystem& eig, const rates::SteadyState& ss);

// Equilibrium oracle: P_n proportional to exp(-E_n / T).
rates::SteadyState gibbs_populations(const model::EigenSystem& eig,
                                     double temperature);

}  // namespace qrtherm::obs
