// oracles.hpp - closed-form weak-coupling currents and displaced-basis overlaps
//
// Independent cross-checks for the numeric master-equation pipeline: leading
// order currents in the transverse (cotunneling) and longitudinal (cyclic)
// limits, the exact displaced-oscillator sigma_x overlap, its second-order
// expansion, and the factorized zeroth-order populations.

#pragma once

#include <string>
#include <vector>

#include "qrtherm/bath.hpp"
#include "qrtherm/model.hpp"

namespace qrtherm::oracle {

struct CurrentComponent {
  std::string name;
  double value = 0.0;
};

struct WeakCouplingCurrent {
  double total = 0.0;  // same units as the numeric current (omega0^2)
  double prefactor = 0.0;
  std::vector<CurrentComponent> components;
  bool regime_warning = false;   // |epsilon - omega0| < 10 lambda
  bool degenerate_edge = false;  // a gated frequency hit the w -> 0 limit
};

// Transverse-limit (theta = 0) cotunneling current
//   J = (lambda/(epsilon-omega0))^2 (omega0 I_x1 + epsilon I_x2).
// epsilon = omega0 makes the prefactor singular and is rejected.
WeakCouplingCurrent jx_weak(const model::ModelParams& p, const bath::BathSpec& bath_r,
                            const bath::BathSpec& bath_q);

// Longitudinal-limit (theta = pi/2) cyclic current
//   J = (2 lambda/omega0)^2 omega0 (I_z1 + I_z2 + I_z3),
// components gated by the step function theta(x) = 1 for x >= 0, so the
// third component only enters for epsilon < omega0. At epsilon = omega0 the
// vanishing-frequency factors use the finite w -> 0 rate limit and the
// result is flagged.
WeakCouplingCurrent jz_weak(const model::ModelParams& p, const bath::BathSpec& bath_r,
                            const bath::BathSpec& bath_q);

// Exact overlap <phi_up_n| sigma_x |phi_down_n'> between the displaced
// ladders (g = lambda/omega0), evaluated with log-factorials and the l-sum
// accumulated in descending magnitude order:
//   exp(-2g^2) sqrt(n! n'!) sum_l (-1)^l (2g)^(n+n'-2l) / ((n-l)!(n'-l)!l!).
// Phase convention: at g = 0 the value is (-1)^n delta_{nn'} (the closed
// form's down-branch states carry a parity phase relative to the plain
// displaced kets; physical rates only use the square). |value| < 1e-14 is
// reported as exact zero. Requires n, n' <= 60 and 0 <= g <= 2.
double sigma_x_overlap_exact(int n, int n_prime, double g);

// Expansion of the same overlap through O(g^2):
//   (-1)^n { [1-(n+1/2)(2g)^2] d_{n,n'} + 2g(sqrt(n+1) d_{n,n'-1}
//            - sqrt(n) d_{n,n'+1}) + (2g)^2/2 [sqrt(n(n-1)) d_{n,n'+2}
//            + sqrt((n+1)(n+2)) d_{n,n'-2}] }.
double sigma_x_overlap_second_order(int n, int n_prime, double g);

enum class WeakLimit { Theta0, Theta90 };
enum class Branch : int { Upper = 0, Lower = 1 };  // qubit up / down families

struct ZerothPopulationEntry {
  int photon = 0;  // resonator quanta carried by the state
  Branch branch = Branch::Upper;
  double value = 0.0;
};

struct ZerothPopulations {
  std::vector<ZerothPopulationEntry> table;  // normalized to unit sum
  bool zero_temperature_limit = false;       // T_Q = 0 handled in the limit
};

// Boltzmann-factorized zeroth-order populations: the qubit branch carries the
// weight exp(-eps/T_Q), the photon ladder decays as exp(-n omega0/T_R). Both
// weak-coupling limits share this product once states are labeled by their
// photon count; in the transverse limit the lower dressed manifold at index n
// holds n+1 photons, so its manifold-indexed expression is the same table
// shifted by one rung (and the lone ground state completes the sum to 1).
ZerothPopulations zeroth_populations(const model::ModelParams& p,
                                     const bath::BathSpec& bath_r,
                                     const bath::BathSpec& bath_q, WeakLimit limit);

}  // namespace qrtherm::oracle
