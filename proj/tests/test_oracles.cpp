// Closed-form weak-coupling currents and displaced-basis overlap oracles.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qrtherm/oracles.hpp"
#include "qrtherm/pipeline.hpp"

using namespace qrtherm;

namespace {

bath::BathSpec make_r(double t) { return {bath::Label::R, 1e-3, 10.0, t}; }
bath::BathSpec make_q(double t) { return {bath::Label::Q, 1e-3, 10.0, t}; }

// Laguerre polynomial by its series, L_n(x) = sum_m C(n,m) (-x)^m / m!.
double laguerre(int n, double x) {
  double sum = 0.0;
  double binom = 1.0;
  double power = 1.0;
  double mfact = 1.0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      binom *= static_cast<double>(n - m + 1) / m;
      power *= -x;
      mfact *= m;
    }
    sum += binom * power / mfact;
  }
  return sum;
}

}  // namespace

TEST_CASE("transverse cotunneling current") {
  model::ModelParams p{1.5, 0.01, 0.0, 30};
  SUBCASE("equilibrium components vanish") {
    for (double t : {0.3, 1.0, 1.7}) {
      const auto j = oracle::jx_weak(p, make_r(t), make_q(t));
      for (const auto& c : j.components) CHECK(std::abs(c.value) < 1e-16);
      CHECK(std::abs(j.total) < 1e-18);
    }
  }
  SUBCASE("no coupling, no current") {
    model::ModelParams p0{1.5, 0.0, 0.0, 30};
    CHECK(oracle::jx_weak(p0, make_r(1.5), make_q(0.5)).total == 0.0);
  }
  SUBCASE("zero cold bath saturates to the hot-occupation form") {
    const auto j = oracle::jx_weak(p, make_r(2.0), make_q(0.0));
    const double expected =
        (0.01 / 0.5) * (0.01 / 0.5) *
        (bath::ohmic_density(1.0, make_q(0.0)) * bath::bose_occupation(1.0, 2.0) +
         1.5 * bath::ohmic_density(1.5, make_r(2.0)) *
             bath::bose_occupation(1.5, 2.0));
    CHECK(j.total == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("total equals prefactor times the weighted component sum") {
    const auto j = oracle::jx_weak(p, make_r(1.8), make_q(0.2));
    CHECK(j.total ==
          doctest::Approx(j.prefactor * (1.0 * j.components[0].value +
                                         1.5 * j.components[1].value))
              .epsilon(1e-12));
  }
  SUBCASE("detailed-balance brackets are antisymmetric in the temperatures") {
    // strip each component down to its bracket and swap the temperatures
    const double g_q = bath::ohmic_density(1.0, make_q(0.0));
    const double g_r = bath::ohmic_density(1.5, make_r(0.0));
    for (double t_hot : {0.8, 1.6}) {
      for (double t_cold : {0.2, 0.5}) {
        const auto fwd = oracle::jx_weak(p, make_r(t_hot), make_q(t_cold));
        const auto rev = oracle::jx_weak(p, make_r(t_cold), make_q(t_hot));
        const double bracket1_fwd = fwd.components[0].value / g_q;
        const double bracket1_rev = rev.components[0].value / g_q;
        CHECK(bracket1_fwd == doctest::Approx(-bracket1_rev).epsilon(1e-10));
        const double bracket2_fwd = fwd.components[1].value *
                                    (2.0 * bath::bose_occupation(1.5, t_cold) + 1.0) /
                                    g_r;
        const double bracket2_rev = rev.components[1].value *
                                    (2.0 * bath::bose_occupation(1.5, t_hot) + 1.0) /
                                    g_r;
        CHECK(bracket2_fwd == doctest::Approx(-bracket2_rev).epsilon(1e-10));
      }
    }
  }
  SUBCASE("resonance is rejected") {
    model::ModelParams res{1.0, 0.01, 0.0, 30};
    CHECK_THROWS_AS(oracle::jx_weak(res, make_r(1.5), make_q(0.5)),
                    std::invalid_argument);
  }
  SUBCASE("regime warning") {
    model::ModelParams wide{1.5, 0.2, 0.0, 30};
    CHECK(oracle::jx_weak(wide, make_r(1.5), make_q(0.5)).regime_warning);
    CHECK_FALSE(oracle::jx_weak(p, make_r(1.5), make_q(0.5)).regime_warning);
  }
}

TEST_CASE("longitudinal cyclic current") {
  model::ModelParams p{1.5, 0.01, M_PI / 2.0, 30};
  SUBCASE("equilibrium components vanish") {
    for (double t : {0.4, 1.0, 1.9}) {
      const auto j = oracle::jz_weak(p, make_r(t), make_q(t));
      for (const auto& c : j.components) {
        CHECK(std::abs(c.value) <= 1e-14 * M_PI * 1e-3 * 10.0);
      }
    }
  }
  SUBCASE("cold-bath collapse: every cyclic component dies at T_Q = 0") {
    const auto j = oracle::jz_weak(p, make_r(2.0), make_q(0.0));
    CHECK(j.total == 0.0);
  }
  SUBCASE("third component is gated off above resonance") {
    const auto j = oracle::jz_weak(p, make_r(1.5), make_q(0.5));
    CHECK(j.components[2].name == "I_z3");
    CHECK(j.components[2].value == 0.0);
    CHECK_FALSE(j.degenerate_edge);
  }
  SUBCASE("below resonance the third component is active") {
    model::ModelParams below{0.5, 0.005, M_PI / 2.0, 30};
    const auto j = oracle::jz_weak(below, make_r(1.5), make_q(0.5));
    CHECK(j.components[1].value == 0.0);  // gated off for epsilon < omega0
    CHECK(j.components[2].value != 0.0);
  }
  SUBCASE("resonance edge uses the finite rate limit and is flagged") {
    model::ModelParams res{1.0, 0.005, M_PI / 2.0, 30};
    const auto j = oracle::jz_weak(res, make_r(1.5), make_q(0.5));
    CHECK(j.degenerate_edge);
    CHECK(std::isfinite(j.total));
  }
  SUBCASE("matches the numeric master equation within 5%") {
    pipeline::PointRequest r;
    r.params = p;
    r.bath_r = make_r(1.5);
    r.bath_q = make_q(0.5);
    r.want_g2 = r.want_g2_approx = false;
    const auto numeric = pipeline::evaluate_point(r);
    const auto j = oracle::jz_weak(p, r.bath_r, r.bath_q);
    CHECK(numeric.current_q.total == doctest::Approx(j.total).epsilon(0.05));
  }
}

TEST_CASE("displaced-ladder overlap, closed form") {
  SUBCASE("undisplaced orthonormality with the parity phase") {
    for (int n = 0; n <= 5; ++n) {
      for (int n_prime = 0; n_prime <= 5; ++n_prime) {
        const double value = oracle::sigma_x_overlap_exact(n, n_prime, 0.0);
        if (n == n_prime) {
          CHECK(value == (n % 2 == 0 ? 1.0 : -1.0));
        } else {
          CHECK(value == 0.0);
        }
      }
    }
  }
  SUBCASE("one-photon sideband at small displacement") {
    const double value = oracle::sigma_x_overlap_exact(0, 1, 0.05);
    CHECK(value == doctest::Approx(0.1 * std::exp(-0.005)).epsilon(1e-12));
    CHECK(value == doctest::Approx(0.0995).epsilon(1e-3));
  }
  SUBCASE("diagonal matches the Laguerre closed form") {
    for (double g : {0.3, 0.9, 1.4}) {
      for (int n = 0; n <= 10; ++n) {
        const double parity = n % 2 == 0 ? 1.0 : -1.0;
        const double expected =
            parity * std::exp(-2.0 * g * g) * laguerre(n, 4.0 * g * g);
        CHECK(std::abs(oracle::sigma_x_overlap_exact(n, n, g) - expected) < 1e-9);
      }
    }
  }
  SUBCASE("agrees with the displacement-operator construction") {
    // Independent route: displaced kets of the longitudinal eigenbasis,
    // sandwiched through sigma_x on the full product space. The closed form
    // carries a per-row parity phase relative to the plainly displaced kets;
    // rates only use the square, where the phase drops out.
    const int n_max = 60;
    const fock::ProductBasis idx(n_max);
    for (double g : {0.1, 1.0}) {
      const auto d_up = fock::displacement(n_max, -g);
      const auto d_down = fock::displacement(n_max, g);
      const fock::OperatorMatrix up_proj =
          0.5 * (fock::identity(2) + fock::pauli(fock::PauliAxis::Z));
      const fock::OperatorMatrix down_proj =
          0.5 * (fock::identity(2) - fock::pauli(fock::PauliAxis::Z));
      const fock::OperatorMatrix basis =
          fock::tensor(d_up, up_proj) + fock::tensor(d_down, down_proj);
      const fock::OperatorMatrix sx_dressed =
          basis.adjoint() *
          fock::tensor(fock::identity(n_max + 1), fock::pauli(fock::PauliAxis::X)) *
          basis;
      for (int n = 0; n <= 6; ++n) {
        for (int n_prime = 0; n_prime <= 6; ++n_prime) {
          const double sandwich =
              sx_dressed(idx.index(n, fock::Spin::Down),
                         idx.index(n_prime, fock::Spin::Up))
                  .real();
          const double parity = n % 2 == 0 ? 1.0 : -1.0;
          CHECK(std::abs(oracle::sigma_x_overlap_exact(n, n_prime, g) -
                         parity * sandwich) < 1e-8);
        }
      }
    }
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(oracle::sigma_x_overlap_exact(61, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(oracle::sigma_x_overlap_exact(0, 0, 2.5), std::invalid_argument);
  }
}

TEST_CASE("displaced-ladder overlap, second order") {
  SUBCASE("undisplaced limit") {
    for (int n = 0; n <= 4; ++n) {
      CHECK(oracle::sigma_x_overlap_second_order(n, n, 0.0) ==
            (n % 2 == 0 ? 1.0 : -1.0));
      CHECK(oracle::sigma_x_overlap_second_order(n, n + 1, 0.0) == 0.0);
    }
  }
  SUBCASE("two-photon sideband value") {
    CHECK(oracle::sigma_x_overlap_second_order(2, 0, 0.1) ==
          doctest::Approx(0.5 * 0.04 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(oracle::sigma_x_overlap_second_order(2, 0, 0.1) ==
          doctest::Approx(0.0282842).epsilon(1e-5));
  }
  SUBCASE("matches the exact form to third order in g") {
    // the dropped third-order terms grow like (max(n,n')+1)^(3/2), so the
    // remainder bound has to carry that weight
    for (double g : {0.02, 0.05, 0.1}) {
      for (int n = 0; n <= 5; ++n) {
        for (int n_prime = 0; n_prime <= 5; ++n_prime) {
          const double exact = oracle::sigma_x_overlap_exact(n, n_prime, g);
          const double expansion =
              oracle::sigma_x_overlap_second_order(n, n_prime, g);
          const double weight = std::pow(std::max(n, n_prime) + 1.0, 1.5);
          CHECK(std::abs(exact - expansion) < 10.0 * g * g * g * weight);
        }
      }
    }
  }
}

TEST_CASE("zeroth-order populations") {
  model::ModelParams p{1.5, 0.01, 0.0, 30};
  SUBCASE("normalized") {
    const auto pops = oracle::zeroth_populations(p, make_r(1.5), make_q(0.5),
                                                 oracle::WeakLimit::Theta0);
    double sum = 0.0;
    for (const auto& entry : pops.table) sum += entry.value;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("equal temperatures give Gibbs ratios over the approximate energies") {
    const double t = 0.9;
    const auto pops = oracle::zeroth_populations(p, make_r(t), make_q(t),
                                                 oracle::WeakLimit::Theta0);
    const auto value = [&](int n, oracle::Branch b) {
      for (const auto& e : pops.table) {
        if (e.photon == n && e.branch == b) return e.value;
      }
      return -1.0;
    };
    CHECK(value(1, oracle::Branch::Upper) / value(0, oracle::Branch::Upper) ==
          doctest::Approx(std::exp(-1.0 / t)).epsilon(1e-10));
    CHECK(value(0, oracle::Branch::Upper) / value(0, oracle::Branch::Lower) ==
          doctest::Approx(std::exp(-1.5 / t)).epsilon(1e-10));
  }
  SUBCASE("matches the master-equation populations at weak coupling") {
    pipeline::PointRequest r;
    r.params = p;
    r.bath_r = make_r(1.2);
    r.bath_q = make_q(0.6);
    r.want_g2 = r.want_g2_approx = false;
    const auto numeric = pipeline::evaluate_point(r);
    const auto pops = oracle::zeroth_populations(p, r.bath_r, r.bath_q,
                                                 oracle::WeakLimit::Theta0);
    // order analytic entries by the bare energies n +/- eps/2 to line up
    // with the energy-sorted numeric eigenstates
    struct Labeled {
      double energy;
      double value;
    };
    std::vector<Labeled> analytic;
    for (const auto& e : pops.table) {
      const double sign = e.branch == oracle::Branch::Upper ? 1.0 : -1.0;
      analytic.push_back({e.photon + 0.75 * sign, e.value});
    }
    std::sort(analytic.begin(), analytic.end(),
              [](const Labeled& x, const Labeled& y) { return x.energy < y.energy; });
    for (int k = 0; k < 12; ++k) {
      if (numeric.steady.populations(k) < 1e-6) continue;
      CHECK(analytic[k].value ==
            doctest::Approx(numeric.steady.populations(k)).epsilon(0.01));
    }
  }
  SUBCASE("zero qubit temperature saturates the lower branch and is flagged") {
    const auto pops = oracle::zeroth_populations(p, make_r(1.0), make_q(0.0),
                                                 oracle::WeakLimit::Theta0);
    CHECK(pops.zero_temperature_limit);
    for (const auto& e : pops.table) {
      if (e.branch == oracle::Branch::Upper) CHECK(e.value == 0.0);
    }
  }
}
