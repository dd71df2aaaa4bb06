// rates.hpp - dressed transition rates, population generator, steady state
//
// Only populations are propagated: in the dressed (eigenbasis) master
// equation the dissipator decouples populations from coherences, and the
// steady state of interest is diagonal in the eigenbasis. No Lamb-shift
// renormalization is applied.

#pragma once

#include <vector>

#include "qrtherm/bath.hpp"
#include "qrtherm/model.hpp"

namespace qrtherm::rates {

// Gaps at or below this (units of omega0) are treated as degenerate: both
// directions get the analytic w->0 limit pi*alpha*T*|A|^2 of the Ohmic
// gamma(w) n(w), and the pair transports no energy.
inline constexpr double kDegenerateGap = 1e-8;

// |<phi_n|A|phi_m>|^2 below this is stored as exact zero so the generator's
// sparsity pattern is stable and the connectivity check is meaningful.
inline constexpr double kOverlapFloor = 1e-24;

struct BathChannel {
  double up = 0.0;          // Gamma^+: lower -> upper
  double down = 0.0;        // Gamma^-: upper -> lower
  double overlap_sq = 0.0;  // |<phi_upper|A|phi_lower>|^2
};

struct Transition {
  int upper = 0;  // eigenstate indices in ascending-energy order
  int lower = 0;
  double gap = 0.0;           // E_upper - E_lower >= 0
  BathChannel channel[2];     // indexed by bath::Label
  bool degenerate = false;    // gap <= kDegenerateGap
};

struct TransitionRateTable {
  Eigen::Index dim = 0;
  bath::BathSpec bath_r;
  bath::BathSpec bath_q;
  std::vector<Transition> transitions;  // every ordered pair upper > lower

  const bath::BathSpec& spec(bath::Label label) const {
    return label == bath::Label::R ? bath_r : bath_q;
  }
};

// Rates per Fermi-golden-rule channels between exact eigenstates:
//   Gamma^+ = gamma(E_nm) n(E_nm) |<n|A|m>|^2
//   Gamma^- = gamma(E_nm) (1 + n(E_nm)) |<n|A|m>|^2
// `baths` must contain exactly one R and one Q reservoir.
TransitionRateTable transition_rates(const model::EigenSystem& eig,
                                     const std::vector<bath::BathSpec>& baths);

// Classical generator over populations: W(n, m) is the total rate m -> n for
// n != m, and each diagonal entry closes its column to zero sum.
struct RateMatrix {
  Eigen::MatrixXd generator;
  Eigen::Index dim() const { return generator.rows(); }
};

RateMatrix build_rate_matrix(const TransitionRateTable& table);

struct SteadyState {
  Eigen::VectorXd populations;  // >= 0, sums to 1
};

// Null vector of W with sum(P) = 1, via the bordered system (one redundant
// row replaced by the normalization constraint) solved with full pivoting in
// extended precision. Residual contract: ||W P||_inf <= 1e-10 max|W|.
// A generator whose undirected connectivity graph splits into several blocks
// has no unique steady state; that case is reported naming the blocks.
SteadyState solve_steady_state(const RateMatrix& w);

// exp(W t) p0 by scaling and squaring; relaxation cross-check for the
// null-space solver.
Eigen::VectorXd evolve_populations(const RateMatrix& w, const Eigen::VectorXd& p0,
                                   double t);

}  // namespace qrtherm::rates
