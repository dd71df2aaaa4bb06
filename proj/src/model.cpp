// model.cpp - Hamiltonian assembly, diagonalization, limiting eigensolutions

#include "qrtherm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qrtherm::model {

void ModelParams::validate() const {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("ModelParams: epsilon must be > 0");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("ModelParams: lambda must be >= 0");
  }
  if (!(theta >= 0.0 && theta <= M_PI / 2.0 + 1e-12)) {
    throw std::invalid_argument("ModelParams: theta must lie in [0, pi/2]");
  }
  if (n_max < 5) {
    throw std::invalid_argument("ModelParams: n_max must be >= 5");
  }
}

fock::OperatorMatrix build_hamiltonian(const ModelParams& p) {
  p.validate();
  const fock::OperatorMatrix a = fock::annihilation(p.n_max);
  const fock::OperatorMatrix quad = a + a.adjoint().eval();
  const fock::OperatorMatrix id_res = fock::identity(p.n_max + 1);
  const fock::OperatorMatrix id_qubit = fock::identity(2);
  const fock::OperatorMatrix sx = fock::pauli(fock::PauliAxis::X);
  const fock::OperatorMatrix sz = fock::pauli(fock::PauliAxis::Z);

  fock::OperatorMatrix h =
      0.5 * p.epsilon * fock::tensor(id_res, sz) +
      kOmega0 * fock::tensor(fock::number_operator(p.n_max), id_qubit) +
      p.lambda * fock::tensor(quad, std::cos(p.theta) * sx + std::sin(p.theta) * sz);
  return h;
}

EigenSystem diagonalize(const fock::OperatorMatrix& hamiltonian,
                        const ModelParams& params) {
  params.validate();
  if (!fock::is_hermitian(hamiltonian)) {
    throw std::invalid_argument("diagonalize: input is not Hermitian");
  }
  const fock::HermitianEigen he = fock::eigh(hamiltonian);

  EigenSystem eig{he.values, he.vectors, params};

  const Eigen::Index dim = eig.dim();
  const double unitarity =
      (eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (unitarity > 1e-10) {
    throw std::runtime_error("diagonalize: eigenvectors not unitary to 1e-10");
  }
  // ||H||_2 = max |E_k| for Hermitian input.
  const double h_norm = eig.energies.cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd residual =
      hamiltonian * eig.vectors - eig.vectors * eig.energies.asDiagonal();
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (residual.col(k).norm() > 1e-10 * h_norm) {
      throw std::runtime_error("diagonalize: eigenpair residual above 1e-10 ||H||");
    }
  }
  return eig;
}

JCSolution jc_solution(const ModelParams& p) {
  p.validate();
  const double detuning = p.epsilon - kOmega0;
  if (detuning == 0.0 && p.lambda == 0.0) {
    throw std::invalid_argument(
        "jc_solution: mixing angle undefined at resonance with lambda = 0");
  }
  JCSolution sol;
  sol.ground_energy = -0.5 * p.epsilon;
  sol.levels.reserve(p.n_max);
  for (int n = 0; n < p.n_max; ++n) {
    const double coupling = 2.0 * p.lambda * std::sqrt(n + 1.0);
    const double split = std::sqrt(0.25 * detuning * detuning +
                                   p.lambda * p.lambda * (n + 1.0));
    JCLevel level;
    level.energy_plus = (n + 0.5) * kOmega0 + split;
    level.energy_minus = (n + 0.5) * kOmega0 - split;
    level.mixing_angle = std::atan2(coupling, detuning);
    sol.levels.push_back(level);
  }
  return sol;
}

LongitudinalSolution longitudinal_solution(const ModelParams& p) {
  p.validate();
  LongitudinalSolution sol;
  sol.displacement_amplitude = p.lambda / kOmega0;
  const double shift = p.lambda * p.lambda / kOmega0;
  sol.energy_up.reserve(p.n_max + 1);
  sol.energy_down.reserve(p.n_max + 1);
  for (int n = 0; n <= p.n_max; ++n) {
    sol.energy_up.push_back(kOmega0 * n + 0.5 * p.epsilon - shift);
    sol.energy_down.push_back(kOmega0 * n - 0.5 * p.epsilon - shift);
  }
  return sol;
}

Eigen::MatrixXcd eigenbasis_operator(const EigenSystem& eig,
                                     const fock::OperatorMatrix& op) {
  if (op.rows() != eig.dim() || op.cols() != eig.dim()) {
    throw std::invalid_argument("eigenbasis_operator: dimension mismatch");
  }
  return eig.vectors.adjoint() * op * eig.vectors;
}

}  // namespace qrtherm::model
