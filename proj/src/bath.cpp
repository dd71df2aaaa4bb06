// bath.cpp - Ohmic spectral function and Bose factors

#include "qrtherm/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace qrtherm::bath {

void BathSpec::validate() const {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("BathSpec: alpha must be > 0");
  }
  if (!(omega_c > 0.0)) {
    throw std::invalid_argument("BathSpec: omega_c must be > 0");
  }
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("BathSpec: temperature must be >= 0");
  }
}

double ohmic_density(double omega, const BathSpec& b) {
  if (omega < 0.0) {
    throw std::invalid_argument("ohmic_density: omega must be >= 0 (pass |omega|)");
  }
  return M_PI * b.alpha * omega * std::exp(-omega / b.omega_c);
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("bose_occupation: omega must be > 0");
  }
  if (temperature == 0.0) return 0.0;
  // 1/expm1 keeps full precision both for w >> T and w << T.
  return 1.0 / std::expm1(omega / temperature);
}

fock::OperatorMatrix coupling_operator(Label label, int n_max) {
  const fock::OperatorMatrix a = fock::annihilation(n_max);
  if (label == Label::R) {
    return fock::tensor(a + a.adjoint().eval(), fock::identity(2));
  }
  return fock::tensor(fock::identity(n_max + 1), fock::pauli(fock::PauliAxis::X));
}

const char* label_name(Label label) { return label == Label::R ? "R" : "Q"; }

}  // namespace qrtherm::bath
