// bath.hpp - Ohmic reservoir description and occupation factors

#pragma once

#include "qrtherm/fock.hpp"

namespace qrtherm::bath {

// Two reservoirs: R couples to the resonator through a^dag + a, Q couples to
// the qubit through sigma_x.
enum class Label : int { R = 0, Q = 1 };

struct BathSpec {
  Label label = Label::R;
  double alpha = 1e-3;       // dimensionless dissipation strength
  double omega_c = 10.0;     // cutoff, units of omega0
  double temperature = 1.0;  // units of omega0

  void validate() const;
};

// Ohmic spectral density gamma(w) = pi * alpha * w * exp(-w/omega_c).
// Callers pass |w|; negative arguments are rejected.
double ohmic_density(double omega, const BathSpec& b);

// Bose-Einstein occupation 1/(exp(w/T) - 1); T = 0 gives 0. Requires w > 0
// (the zero-frequency limit is handled by the rate builder).
double bose_occupation(double omega, double temperature);

// Full-space coupling operator for the labelled bath: (a^dag + a) (x) I for R,
// I (x) sigma_x for Q.
fock::OperatorMatrix coupling_operator(Label label, int n_max);

const char* label_name(Label label);

}  // namespace qrtherm::bath
