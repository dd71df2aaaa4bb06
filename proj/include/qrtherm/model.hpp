// model.hpp - composite qubit-resonator Hamiltonian and its limiting spectra
//
// H = (epsilon/2) sigma_z + omega0 a^dag a
//     + lambda (cos(theta) sigma_x + sin(theta) sigma_z)(a^dag + a)
//
// omega0 == 1 fixes the unit system (hbar = kB = 1); every energy and
// temperature in this codebase is expressed in units of omega0.

#pragma once

#include <vector>

#include "qrtherm/fock.hpp"

namespace qrtherm::model {

inline constexpr double kOmega0 = 1.0;

struct ModelParams {
  double epsilon = 1.5;  // qubit splitting
  double lambda = 0.0;   // qubit-resonator coupling strength
  double theta = 0.0;    // composite angle, [0, pi/2]
  int n_max = 30;        // Fock truncation

  void validate() const;
};

fock::OperatorMatrix build_hamiltonian(const ModelParams& p);

struct EigenSystem {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // column k = |phi_k>
  ModelParams params;

  Eigen::Index dim() const { return energies.size(); }
};

// Hermitian eigendecomposition with post-checks: unitary columns within
// 1e-10 and residual ||H v - E v|| <= 1e-10 ||H||_2 per level.
EigenSystem diagonalize(const fock::OperatorMatrix& hamiltonian,
                        const ModelParams& params);

// Jaynes-Cummings limit (theta = 0, weak coupling). Doublet n pairs
// |n, up> with |n+1, down>; the ground level |0, down> sits alone.
struct JCLevel {
  double energy_plus;
  double energy_minus;
  double mixing_angle;  // tan(angle) = 2 lambda sqrt(n+1) / (epsilon - omega0)
};
struct JCSolution {
  double ground_energy;         // -epsilon/2
  std::vector<JCLevel> levels;  // manifolds n = 0 .. n_max-1
};
JCSolution jc_solution(const ModelParams& p);

// Longitudinal limit (theta = pi/2): displaced ladders, exact at any lambda.
struct LongitudinalSolution {
  std::vector<double> energy_up;    // omega0 n + epsilon/2 - lambda^2/omega0
  std::vector<double> energy_down;  // omega0 n - epsilon/2 - lambda^2/omega0
  double displacement_amplitude;    // lambda / omega0
};
LongitudinalSolution longitudinal_solution(const ModelParams& p);

// Operator rewritten in the eigenbasis: V^dag A V.
Eigen::MatrixXcd eigenbasis_operator(const EigenSystem& eig,
                                     const fock::OperatorMatrix& op);

}  // namespace qrtherm::model
