// observables.cpp - heat current and two-photon correlation evaluation

#include "qrtherm/observables.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qrtherm::obs {

namespace {

// Delta-weighted emission amplitudes: Y(j, k) = (E_k - E_j) X_jk for k > j,
// zero elsewhere. X^- = -i Y; all correlators below only need Y.
Eigen::MatrixXcd emission_amplitudes(const model::EigenSystem& eig) {
  const Eigen::MatrixXcd x = model::eigenbasis_operator(
      eig, bath::coupling_operator(bath::Label::R, eig.params.n_max));
  const Eigen::Index dim = eig.dim();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      y(j, k) = (eig.energies(k) - eig.energies(j)) * x(j, k);
    }
  }
  return y;
}

double coefficient_a(const Eigen::MatrixXcd& y, int n) {
  double sum = 0.0;
  for (int l = 0; l < n; ++l) {
    sum += std::norm(y(l, n));
  }
  return sum;
}

double coefficient_b(const Eigen::MatrixXcd& y, int n) {
  double sum = 0.0;
  for (int l = 1; l < n; ++l) {
    for (int p = 0; p < l; ++p) {
      sum += std::norm(y(l, n)) * std::norm(y(p, l));
    }
  }
  return sum;
}

}  // namespace

CurrentBreakdown heat_current(const model::EigenSystem& eig,
                              const rates::TransitionRateTable& table,
                              const rates::SteadyState& ss, bath::Label which) {
  if (table.dim != eig.dim() || ss.populations.size() != eig.dim()) {
    throw std::invalid_argument("heat_current: mismatched dimensions");
  }
  CurrentBreakdown out;
  const int mu = static_cast<int>(which);
  long double total = 0.0L;
  for (const rates::Transition& tr : table.transitions) {
    if (tr.degenerate) continue;
    const rates::BathChannel& ch = tr.channel[mu];
    if (ch.overlap_sq == 0.0) continue;
    const double value = tr.gap * (ch.down * ss.populations(tr.upper) -
                                   ch.up * ss.populations(tr.lower));
    total += static_cast<long double>(value);
    out.contributions.push_back({tr.upper, tr.lower, tr.gap, value});
  }
  out.total = static_cast<double>(total);
  return out;
}

fock::OperatorMatrix x_minus_operator(const model::EigenSystem& eig) {
  return std::complex<double>(0.0, -1.0) * emission_amplitudes(eig);
}

G2Result g2_zero(const model::EigenSystem& eig, const rates::SteadyState& ss) {
  if (ss.populations.size() != eig.dim()) {
    throw std::invalid_argument("g2_zero: mismatched dimensions");
  }
  const Eigen::MatrixXcd y = emission_amplitudes(eig);
  const Eigen::MatrixXcd yy = y * y;
  const Eigen::Index dim = eig.dim();

  G2Result res;
  long double numerator = 0.0L;
  long double one_photon = 0.0L;
  long double numerator_top = 0.0L;
  const Eigen::Index top_start = (4 * dim + 4) / 5;  // ceil(0.8 dim)
  for (Eigen::Index n = 0; n < dim; ++n) {
    const double p = ss.populations(n);
    if (p == 0.0) continue;
    const double two_photon_weight = yy.col(n).squaredNorm();
    numerator += static_cast<long double>(p) * two_photon_weight;
    one_photon += static_cast<long double>(p) * y.col(n).squaredNorm();
    if (n >= top_start) {
      numerator_top += static_cast<long double>(p) * two_photon_weight;
    }
  }
  res.numerator = static_cast<double>(numerator);
  res.one_photon_weight = static_cast<double>(one_photon);
  res.denominator = res.one_photon_weight * res.one_photon_weight;
  if (res.denominator < 1e-30) {
    res.undefined = true;
    res.value = 0.0;
  } else {
    res.value = res.numerator / res.denominator;
  }
  if (res.numerator > 0.0) {
    res.truncation_converged =
        static_cast<double>(numerator_top) <= 1e-6 * res.numerator;
  }
  return res;
}

double ladder_coefficient_a(const model::EigenSystem& eig, int n) {
  if (n < 0 || n >= eig.dim()) {
    throw std::invalid_argument("ladder_coefficient_a: index out of range");
  }
  return coefficient_a(emission_amplitudes(eig), n);
}

double ladder_coefficient_b(const model::EigenSystem& eig, int n) {
  if (n < 0 || n >= eig.dim()) {
    throw std::invalid_argument("ladder_coefficient_b: index out of range");
  }
  return coefficient_b(emission_amplitudes(eig), n);
}

G2Approx g2_approx(const model::EigenSystem& eig, const rates::SteadyState& ss) {
  if (eig.dim() < 3 || ss.populations.size() != eig.dim()) {
    throw std::invalid_argument("g2_approx: need at least three levels");
  }
  const double p0 = ss.populations(0);
  const double p1 = ss.populations(1);
  const double p2 = ss.populations(2);

  G2Approx res;
  res.precondition_ok = p1 < 0.2 * p0;
  if (p2 == 0.0) {
    res.value = 0.0;
    return res;
  }
  const Eigen::MatrixXcd y = emission_amplitudes(eig);
  const double denom = p1 * coefficient_a(y, 1);
  res.value = p2 * coefficient_b(y, 2) / (denom * denom);
  return res;
}

rates::SteadyState gibbs_populations(const model::EigenSystem& eig,
                                     double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("gibbs_populations: temperature must be > 0");
  }
  const Eigen::Index dim = eig.dim();
  Eigen::VectorXd p(dim);
  const double e0 = eig.energies(0);
  for (Eigen::Index n = 0; n < dim; ++n) {
    p(n) = std::exp(-(eig.energies(n) - e0) / temperature);
  }
  p /= p.sum();
  return {std::move(p)};
}

}  // namespace qrtherm::obs
