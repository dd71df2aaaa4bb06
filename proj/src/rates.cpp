// rates.cpp - rate table, generator assembly, steady-state and relaxation solvers

#include "qrtherm/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qrtherm::rates {

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// Undirected connected components of the non-zero off-diagonal pattern.
std::vector<std::vector<int>> connected_components(const Eigen::MatrixXd& w) {
  const int dim = static_cast<int>(w.rows());
  std::vector<int> component(dim, -1);
  std::vector<std::vector<int>> blocks;
  for (int seed = 0; seed < dim; ++seed) {
    if (component[seed] >= 0) continue;
    std::vector<int> stack{seed};
    component[seed] = static_cast<int>(blocks.size());
    std::vector<int> block{seed};
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < dim; ++j) {
        if (j == i || component[j] >= 0) continue;
        if (w(i, j) != 0.0 || w(j, i) != 0.0) {
          component[j] = component[seed];
          block.push_back(j);
          stack.push_back(j);
        }
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace

TransitionRateTable transition_rates(const model::EigenSystem& eig,
                                     const std::vector<bath::BathSpec>& baths) {
  const bath::BathSpec* spec_r = nullptr;
  const bath::BathSpec* spec_q = nullptr;
  for (const auto& b : baths) {
    b.validate();
    if (b.label == bath::Label::R) spec_r = &b;
    if (b.label == bath::Label::Q) spec_q = &b;
  }
  if (baths.size() != 2 || spec_r == nullptr || spec_q == nullptr) {
    throw std::invalid_argument(
        "transition_rates: exactly one R bath and one Q bath required");
  }

  const Eigen::Index dim = eig.dim();
  const double unitarity =
      (eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (unitarity > 1e-8) {
    throw std::invalid_argument("transition_rates: eigensystem not normalized");
  }

  TransitionRateTable table;
  table.dim = dim;
  table.bath_r = *spec_r;
  table.bath_q = *spec_q;
  table.transitions.reserve(static_cast<std::size_t>(dim) * (dim - 1) / 2);

  const Eigen::MatrixXcd op_eig[2] = {
      model::eigenbasis_operator(
          eig, bath::coupling_operator(bath::Label::R, eig.params.n_max)),
      model::eigenbasis_operator(
          eig, bath::coupling_operator(bath::Label::Q, eig.params.n_max)),
  };
  const bath::BathSpec* specs[2] = {spec_r, spec_q};

  for (Eigen::Index hi = 1; hi < dim; ++hi) {
    for (Eigen::Index lo = 0; lo < hi; ++lo) {
      Transition tr;
      tr.upper = static_cast<int>(hi);
      tr.lower = static_cast<int>(lo);
      tr.gap = eig.energies(hi) - eig.energies(lo);
      tr.degenerate = tr.gap <= kDegenerateGap;
      for (int mu = 0; mu < 2; ++mu) {
        double overlap_sq = std::norm(op_eig[mu](hi, lo));
        if (overlap_sq < kOverlapFloor) overlap_sq = 0.0;
        BathChannel& ch = tr.channel[mu];
        ch.overlap_sq = overlap_sq;
        if (overlap_sq == 0.0) continue;
        const bath::BathSpec& b = *specs[mu];
        if (tr.degenerate) {
          const double limit = M_PI * b.alpha * b.temperature * overlap_sq;
          ch.up = limit;
          ch.down = limit;
        } else {
          const double gamma = bath::ohmic_density(tr.gap, b);
          const double occupation = bath::bose_occupation(tr.gap, b.temperature);
          ch.up = gamma * occupation * overlap_sq;
          ch.down = gamma * (1.0 + occupation) * overlap_sq;
        }
      }
      table.transitions.push_back(tr);
    }
  }
  return table;
}

RateMatrix build_rate_matrix(const TransitionRateTable& table) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(table.dim, table.dim);
  for (const Transition& tr : table.transitions) {
    for (const BathChannel& ch : tr.channel) {
      w(tr.upper, tr.lower) += ch.up;
      w(tr.lower, tr.upper) += ch.down;
    }
  }
  for (Eigen::Index j = 0; j < table.dim; ++j) {
    double out = 0.0;
    for (Eigen::Index i = 0; i < table.dim; ++i) {
      if (i != j) out += w(i, j);
    }
    w(j, j) = -out;
  }
  return {std::move(w)};
}

SteadyState solve_steady_state(const RateMatrix& w) {
  const Eigen::Index dim = w.dim();
  if (dim < 1 || w.generator.cols() != dim) {
    throw std::invalid_argument("solve_steady_state: invalid generator");
  }
  const double scale = w.generator.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    // No dynamics at all; every distribution is stationary. Reject rather
    // than pick one silently.
    throw std::runtime_error("solve_steady_state: zero generator has no unique fixed point");
  }

  const auto blocks = connected_components(w.generator);
  if (blocks.size() > 1) {
    std::ostringstream msg;
    msg << "solve_steady_state: state space splits into " << blocks.size()
        << " disconnected blocks:";
    for (const auto& block : blocks) {
      msg << " {";
      for (std::size_t k = 0; k < block.size(); ++k) {
        msg << (k ? "," : "") << block[k];
      }
      msg << "}";
    }
    throw std::runtime_error(msg.str());
  }

  // Bordered system in extended precision: row 0 -> normalization.
  MatrixXld a = w.generator.cast<long double>();
  a.row(0).setOnes();
  VectorXld b = VectorXld::Zero(dim);
  b(0) = 1.0L;

  const Eigen::FullPivLU<MatrixXld> lu(a);
  VectorXld x = lu.solve(b);
  // One step of iterative refinement.
  const VectorXld residual = b - a * x;
  x += lu.solve(residual);

  Eigen::VectorXd p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double v = static_cast<double>(x(i));
    if (v < -1e-10) {
      throw std::runtime_error(
          "solve_steady_state: significantly negative population, solve failed");
    }
    p(i) = v < 0.0 ? 0.0 : v;
  }
  p /= p.sum();

  const double res = (w.generator * p).cwiseAbs().maxCoeff();
  if (res > 1e-10 * scale) {
    throw std::runtime_error("solve_steady_state: residual above 1e-10 max|W|");
  }
  return {std::move(p)};
}

Eigen::VectorXd evolve_populations(const RateMatrix& w, const Eigen::VectorXd& p0,
                                   double t) {
  if (t < 0.0) {
    throw std::invalid_argument("evolve_populations: t must be >= 0");
  }
  if (p0.size() != w.dim()) {
    throw std::invalid_argument("evolve_populations: dimension mismatch");
  }
  if (std::abs(p0.sum() - 1.0) > 1e-8) {
    throw std::invalid_argument("evolve_populations: p0 must be normalized");
  }
  if (t == 0.0) return p0;

  // Scaling and squaring: exp(M) = exp(M/2^s)^(2^s) with a Taylor series on
  // the scaled matrix (||M||_1 / 2^s <= 1/2 makes the series converge fast).
  const Eigen::MatrixXd m = w.generator * t;
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  const Eigen::MatrixXd scaled = m / std::pow(2.0, squarings);

  const Eigen::Index dim = w.dim();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
  for (int k = 1; k <= 20; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }

  Eigen::VectorXd p = result * p0;
  if (std::abs(p.sum() - 1.0) > 1e-10) {
    throw std::runtime_error("evolve_populations: normalization drift above 1e-10");
  }
  return p;
}

}  // namespace qrtherm::rates
