// Generator assembly, steady-state solve, and relaxation cross-checks.

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "qrtherm/observables.hpp"
#include "qrtherm/rates.hpp"

using namespace qrtherm;

namespace {

bath::BathSpec make_r(double temperature) {
  return {bath::Label::R, 1e-3, 10.0, temperature};
}
bath::BathSpec make_q(double temperature) {
  return {bath::Label::Q, 1e-3, 10.0, temperature};
}

// Hand-built two-level table with a single Q channel.
rates::TransitionRateTable two_level_table(double up, double down) {
  rates::TransitionRateTable table;
  table.dim = 2;
  table.bath_r = make_r(1.0);
  table.bath_q = make_q(1.0);
  rates::Transition tr;
  tr.upper = 1;
  tr.lower = 0;
  tr.gap = 1.0;
  tr.channel[1] = {up, down, 1.0};
  table.transitions.push_back(tr);
  return table;
}

}  // namespace

TEST_CASE("two-level generator and its fixed point") {
  const auto w = rates::build_rate_matrix(two_level_table(1.0, 2.0));
  CHECK(w.generator(1, 0) == doctest::Approx(1.0));
  CHECK(w.generator(0, 1) == doctest::Approx(2.0));
  CHECK(w.generator(0, 0) == doctest::Approx(-1.0));
  CHECK(w.generator(1, 1) == doctest::Approx(-2.0));

  const auto ss = rates::solve_steady_state(w);
  CHECK(ss.populations(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(ss.populations(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("all-zero rate table gives the zero generator") {
  const auto w = rates::build_rate_matrix(two_level_table(0.0, 0.0));
  CHECK(w.generator.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(rates::solve_steady_state(w), std::runtime_error);
}

TEST_CASE("generator columns sum to zero for random tables") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> rate(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    rates::TransitionRateTable table;
    table.dim = 6;
    table.bath_r = make_r(1.0);
    table.bath_q = make_q(1.0);
    for (int hi = 1; hi < 6; ++hi) {
      for (int lo = 0; lo < hi; ++lo) {
        rates::Transition tr;
        tr.upper = hi;
        tr.lower = lo;
        tr.gap = hi - lo;
        tr.channel[0] = {rate(rng), rate(rng), 1.0};
        tr.channel[1] = {rate(rng), rate(rng), 1.0};
        table.transitions.push_back(tr);
      }
    }
    const auto w = rates::build_rate_matrix(table);
    const double scale = w.generator.cwiseAbs().maxCoeff();
    for (int j = 0; j < 6; ++j) {
      CHECK(std::abs(w.generator.col(j).sum()) <= 1e-12 * scale);
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (i != j) CHECK(w.generator(i, j) >= 0.0);
      }
    }
  }
}

TEST_CASE("equal bath temperatures thermalize to Gibbs") {
  for (double t : {0.2, 1.0}) {
    model::ModelParams p{1.5, 0.8, 0.6, 24};
    const auto eig = model::diagonalize(model::build_hamiltonian(p), p);
    const auto table = rates::transition_rates(eig, {make_r(t), make_q(t)});
    const auto ss = rates::solve_steady_state(rates::build_rate_matrix(table));
    const auto gibbs = obs::gibbs_populations(eig, t);
    for (int n = 0; n < eig.dim(); ++n) {
      if (gibbs.populations(n) > 1e-10) {
        CHECK(ss.populations(n) ==
              doctest::Approx(gibbs.populations(n)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("decoupled system factorizes into qubit and resonator Gibbs") {
  const double t_r = 1.4;
  const double t_q = 0.3;
  model::ModelParams p{1.5, 0.0, 0.0, 20};
  const auto eig = model::diagonalize(model::build_hamiltonian(p), p);
  const auto table = rates::transition_rates(eig, {make_r(t_r), make_q(t_q)});
  const auto ss = rates::solve_steady_state(rates::build_rate_matrix(table));

  // classify eigenstates by photon number and qubit projection
  const auto sz = model::eigenbasis_operator(
      eig, fock::tensor(fock::identity(p.n_max + 1), fock::pauli(fock::PauliAxis::Z)));
  const auto num = model::eigenbasis_operator(
      eig, fock::tensor(fock::number_operator(p.n_max), fock::identity(2)));

  // truncated resonator partition sum: the generator thermalizes to the
  // Gibbs state of the truncated ladder, not the infinite one
  double z_r = 0.0;
  for (int n = 0; n <= p.n_max; ++n) z_r += std::exp(-n / t_r);
  const double z_q = std::exp(0.75 / t_q) + std::exp(-0.75 / t_q);
  for (int k = 0; k < eig.dim(); ++k) {
    const double n_photon = std::round(num(k, k).real());
    const double spin = sz(k, k).real();
    if (n_photon > 12) continue;
    const double expected = std::exp(-n_photon / t_r) / z_r *
                            std::exp(-0.75 * spin / t_q) / z_q;
    CHECK(ss.populations(k) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("disconnected blocks are reported") {
  rates::TransitionRateTable table;
  table.dim = 4;
  table.bath_r = make_r(1.0);
  table.bath_q = make_q(1.0);
  // 0 <-> 1 and 2 <-> 3 only
  rates::Transition a;
  a.upper = 1;
  a.lower = 0;
  a.gap = 1.0;
  a.channel[0] = {0.5, 1.0, 1.0};
  rates::Transition b;
  b.upper = 3;
  b.lower = 2;
  b.gap = 1.0;
  b.channel[0] = {0.25, 1.5, 1.0};
  table.transitions = {a, b};
  const auto w = rates::build_rate_matrix(table);
  CHECK_THROWS_WITH_AS(rates::solve_steady_state(w),
                       doctest::Contains("disconnected"), std::runtime_error);
}

TEST_CASE("evolve_populations") {
  model::ModelParams p{1.5, 0.4, 0.3, 10};
  const auto eig = model::diagonalize(model::build_hamiltonian(p), p);
  const auto table = rates::transition_rates(eig, {make_r(1.2), make_q(0.6)});
  const auto w = rates::build_rate_matrix(table);

  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(eig.dim());
  p0(0) = 1.0;

  SUBCASE("t = 0 returns the initial vector") {
    const auto out = rates::evolve_populations(w, p0, 0.0);
    CHECK((out - p0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("long-time relaxation matches the null-space solve") {
    Eigen::EigenSolver<Eigen::MatrixXd> es(w.generator);
    double slowest = 1e300;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double magnitude = std::abs(es.eigenvalues()(i).real());
      if (magnitude > 1e-12 * w.generator.cwiseAbs().maxCoeff()) {
        slowest = std::min(slowest, magnitude);
      }
    }
    const double t = 100.0 / slowest;
    const auto out = rates::evolve_populations(w, p0, t);
    const auto ss = rates::solve_steady_state(w);
    CHECK((out - ss.populations).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(out.sum() - 1.0) < 1e-10);
    CHECK(out.minCoeff() >= -1e-12);  // stays a probability vector
  }
  SUBCASE("zero generator leaves p0 unchanged") {
    rates::RateMatrix zero{Eigen::MatrixXd::Zero(eig.dim(), eig.dim())};
    const auto out = rates::evolve_populations(zero, p0, 3.0);
    CHECK((out - p0).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("negative time rejected") {
    CHECK_THROWS_AS(rates::evolve_populations(w, p0, -1.0), std::invalid_argument);
  }
}

TEST_CASE("high-lying populations are negligible at moderate temperature") {
  model::ModelParams p{1.5, 1.0, M_PI / 4.0, 40};
  const auto eig = model::diagonalize(model::build_hamiltonian(p), p);
  const auto table = rates::transition_rates(eig, {make_r(1.0), make_q(1.0)});
  const auto ss = rates::solve_steady_state(rates::build_rate_matrix(table));
  const int top_start = static_cast<int>(0.8 * eig.dim());
  for (int n = top_start; n < eig.dim(); ++n) {
    CHECK(ss.populations(n) < 1e-8);
  }
}
