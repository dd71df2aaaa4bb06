// oracles.cpp - perturbative currents, displaced-basis overlaps, zeroth populations

#include "qrtherm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrtherm/rates.hpp"

namespace qrtherm::oracle {

namespace {

struct RatePair {
  double absorb;  // gamma(w) n(w)
  double emit;    // gamma(w) (1 + n(w))
};

// Golden-rule factors at frequency w >= 0; at and below the degeneracy
// threshold both limits equal pi alpha T.
RatePair rate_factors(double omega, const bath::BathSpec& b, bool* hit_edge) {
  if (omega <= rates::kDegenerateGap) {
    if (hit_edge != nullptr) *hit_edge = true;
    const double limit = M_PI * b.alpha * b.temperature;
    return {limit, limit};
  }
  const double gamma = bath::ohmic_density(omega, b);
  const double occupation = bath::bose_occupation(omega, b.temperature);
  return {gamma * occupation, gamma * (1.0 + occupation)};
}

double occupation_or_zero(double omega, double temperature) {
  return bath::bose_occupation(omega, temperature);
}

void check_baths(const bath::BathSpec& bath_r, const bath::BathSpec& bath_q) {
  bath_r.validate();
  bath_q.validate();
  if (bath_r.label != bath::Label::R || bath_q.label != bath::Label::Q) {
    throw std::invalid_argument("weak-coupling current: baths must be labelled R and Q");
  }
}

}  // namespace

WeakCouplingCurrent jx_weak(const model::ModelParams& p, const bath::BathSpec& bath_r,
                            const bath::BathSpec& bath_q) {
  p.validate();
  check_baths(bath_r, bath_q);
  const double detuning = p.epsilon - model::kOmega0;
  if (detuning == 0.0) {
    throw std::invalid_argument("jx_weak: prefactor singular at epsilon = omega0");
  }

  WeakCouplingCurrent out;
  out.regime_warning = std::abs(detuning) < 10.0 * p.lambda;
  out.prefactor = (p.lambda / detuning) * (p.lambda / detuning);

  // Detailed-balance bracket n_R(w)(1+n_Q(w)) - (1+n_R(w)) n_Q(w).
  const auto bracket = [&](double omega) {
    const double n_r = occupation_or_zero(omega, bath_r.temperature);
    const double n_q = occupation_or_zero(omega, bath_q.temperature);
    return n_r * (1.0 + n_q) - (1.0 + n_r) * n_q;
  };

  const double i_x1 =
      bath::ohmic_density(model::kOmega0, bath_q) * bracket(model::kOmega0);
  const double n_q_eps = occupation_or_zero(p.epsilon, bath_q.temperature);
  const double i_x2 = bath::ohmic_density(p.epsilon, bath_r) /
                      (2.0 * n_q_eps + 1.0) * bracket(p.epsilon);

  out.components = {{"I_x1", i_x1}, {"I_x2", i_x2}};
  out.total = out.prefactor * (model::kOmega0 * i_x1 + p.epsilon * i_x2);
  return out;
}

WeakCouplingCurrent jz_weak(const model::ModelParams& p, const bath::BathSpec& bath_r,
                            const bath::BathSpec& bath_q) {
  p.validate();
  check_baths(bath_r, bath_q);

  WeakCouplingCurrent out;
  out.regime_warning = std::abs(p.epsilon - model::kOmega0) < 10.0 * p.lambda;
  const double ratio = 2.0 * p.lambda / model::kOmega0;
  out.prefactor = ratio * ratio;

  const double n_r_w0 = occupation_or_zero(model::kOmega0, bath_r.temperature);
  const double n_q_eps = occupation_or_zero(p.epsilon, bath_q.temperature);
  const double norm = 2.0 * n_q_eps + 1.0;

  // Step function theta(x) = 1 for x >= 0 gates each cyclic component.
  const double up_gap = p.epsilon + model::kOmega0;    // always open
  const double down_gap = p.epsilon - model::kOmega0;  // open for epsilon >= omega0
  const double inverted_gap = model::kOmega0 - p.epsilon;

  const RatePair k_up = rate_factors(up_gap, bath_q, &out.degenerate_edge);
  double i_z1 = (k_up.emit * n_q_eps * n_r_w0 -
                 k_up.absorb * (1.0 + n_q_eps) * (1.0 + n_r_w0)) /
                norm;

  double i_z2 = 0.0;
  if (down_gap >= 0.0) {
    const RatePair k = rate_factors(down_gap, bath_q, &out.degenerate_edge);
    i_z2 = (k.absorb * (1.0 + n_q_eps) * n_r_w0 -
            k.emit * n_q_eps * (1.0 + n_r_w0)) /
           norm;
  }

  double i_z3 = 0.0;
  if (inverted_gap >= 0.0) {
    const RatePair k = rate_factors(inverted_gap, bath_q, &out.degenerate_edge);
    i_z3 = (k.emit * (1.0 + n_q_eps) * n_r_w0 -
            k.absorb * n_q_eps * (1.0 + n_r_w0)) /
           norm;
  }

  out.components = {{"I_z1", i_z1}, {"I_z2", i_z2}, {"I_z3", i_z3}};
  out.total = out.prefactor * model::kOmega0 * (i_z1 + i_z2 + i_z3);
  return out;
}

double sigma_x_overlap_exact(int n, int n_prime, double g) {
  if (n < 0 || n_prime < 0 || n > 60 || n_prime > 60) {
    throw std::invalid_argument("sigma_x_overlap_exact: n, n' must lie in [0, 60]");
  }
  if (!(g >= 0.0 && g <= 2.0)) {
    throw std::invalid_argument("sigma_x_overlap_exact: g must lie in [0, 2]");
  }
  if (g == 0.0) {
    return n == n_prime ? (n % 2 == 0 ? 1.0 : -1.0) : 0.0;
  }

  const int l_max = std::min(n, n_prime);
  const double log_2g = std::log(2.0 * g);
  const double log_root_factorials =
      0.5 * (std::lgamma(n + 1.0) + std::lgamma(n_prime + 1.0));

  struct Term {
    double log_mag;
    double sign;
  };
  std::vector<Term> terms;
  terms.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    const double log_mag = -2.0 * g * g + log_root_factorials +
                           (n + n_prime - 2 * l) * log_2g -
                           std::lgamma(n - l + 1.0) -
                           std::lgamma(n_prime - l + 1.0) - std::lgamma(l + 1.0);
    terms.push_back({log_mag, l % 2 == 0 ? 1.0 : -1.0});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.log_mag > b.log_mag; });

  // Kahan accumulation, largest magnitudes first.
  double sum = 0.0;
  double carry = 0.0;
  for (const Term& t : terms) {
    const double value = t.sign * std::exp(t.log_mag) - carry;
    const double next = sum + value;
    carry = (next - sum) - value;
    sum = next;
  }
  return std::abs(sum) < 1e-14 ? 0.0 : sum;
}

double sigma_x_overlap_second_order(int n, int n_prime, double g) {
  if (n < 0 || n_prime < 0) {
    throw std::invalid_argument("sigma_x_overlap_second_order: n, n' must be >= 0");
  }
  const double two_g = 2.0 * g;
  const double parity = n % 2 == 0 ? 1.0 : -1.0;
  double value = 0.0;
  if (n == n_prime) {
    value = 1.0 - (n + 0.5) * two_g * two_g;
  } else if (n == n_prime - 1) {
    value = two_g * std::sqrt(n + 1.0);
  } else if (n == n_prime + 1) {
    value = -two_g * std::sqrt(static_cast<double>(n));
  } else if (n == n_prime + 2) {
    value = 0.5 * two_g * two_g * std::sqrt(n * (n - 1.0));
  } else if (n == n_prime - 2) {
    value = 0.5 * two_g * two_g * std::sqrt((n + 1.0) * (n + 2.0));
  }
  return parity * value;
}

ZerothPopulations zeroth_populations(const model::ModelParams& p,
                                     const bath::BathSpec& bath_r,
                                     const bath::BathSpec& bath_q, WeakLimit limit) {
  p.validate();
  check_baths(bath_r, bath_q);
  (void)limit;  // the photon-labeled product form is shared by both limits

  ZerothPopulations out;
  // Upper-branch weight 1/(exp(eps/T_Q) + 1), evaluated stably; at T_Q = 0
  // the lower branch saturates.
  double upper_weight;
  if (bath_q.temperature == 0.0) {
    upper_weight = 0.0;
    out.zero_temperature_limit = true;
  } else {
    const double boltz = std::exp(-p.epsilon / bath_q.temperature);
    upper_weight = boltz / (1.0 + boltz);
  }
  const double lower_weight = 1.0 - upper_weight;

  const double ladder =
      bath_r.temperature == 0.0 ? 0.0
                                : std::exp(-model::kOmega0 / bath_r.temperature);

  out.table.reserve(2 * (p.n_max + 1));
  double sum = 0.0;
  for (int n = 0; n <= p.n_max; ++n) {
    const double rung = (1.0 - ladder) * std::pow(ladder, n);
    const double up = upper_weight * rung;
    const double down = lower_weight * rung;
    out.table.push_back({n, Branch::Upper, up});
    out.table.push_back({n, Branch::Lower, down});
    sum += up + down;
  }
  if (sum <= 0.0) {
    throw std::runtime_error("zeroth_populations: table sums to zero");
  }
  for (auto& entry : out.table) {
    entry.value /= sum;
  }
  return out;
}

}  // namespace qrtherm::oracle
