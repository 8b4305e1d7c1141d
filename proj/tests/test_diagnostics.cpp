#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ks/diagnostics.hpp"
#include "ks/solver1d.hpp"
#include "ks/solver_radial.hpp"

using namespace ks;

namespace {

GridState smooth_state(std::size_t n) {
  GridState s = GridState::uniform(n, 0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 0.5) * s.h;
    s.u[i] = 1.0 + 0.3 * std::cos(M_PI * x);
    s.v[i] = 1.0 + 0.2 * std::cos(2.0 * M_PI * x);
  }
  return s;
}

}  // namespace

TEST_CASE("masses and cumulative are plain discrete sums") {
  std::mt19937 rng(2);
  GridState s = GridState::uniform(33, 0.0, 0.0);
  std::uniform_real_distribution<double> d(0.0, 3.0);
  for (auto& x : s.u) x = d(rng);
  for (auto& x : s.v) x = d(rng);
  double mu = 0, mv = 0;
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    mu += s.u[i] * s.h;
    mv += s.v[i] * s.h;
  }
  const auto [a, b] = masses(s);
  CHECK(a == doctest::Approx(mu).epsilon(1e-15));
  CHECK(b == doctest::Approx(mv).epsilon(1e-15));
  const auto U = cumulative(s);
  CHECK(U.front() == 0.0);
  CHECK(U.back() == doctest::Approx(mu).epsilon(1e-14));
}

TEST_CASE("generalized moment: constant density closed form and scaling") {
  // u = m gives U = m x and M_q = m^q / (q(q+1)); the trapezoid converges
  // at second order.
  const double m = 1.7, q = 3.0;
  auto mq_at = [&](std::size_t n) {
    GridState s = GridState::uniform(n, m, 0.0);
    return generalized_moment(cumulative(s), s.h, q);
  };
  const double exact = std::pow(m, q) / (q * (q + 1.0));
  const double e1 = std::abs(mq_at(64) - exact);
  const double e2 = std::abs(mq_at(128) - exact);
  CHECK(e1 / e2 >= 3.5);
  CHECK(mq_at(256) == doctest::Approx(exact).epsilon(1e-4));

  // scaling U -> lambda U multiplies M_q by exactly lambda^q
  GridState s = smooth_state(50);
  auto U = cumulative(s);
  const double base = generalized_moment(U, s.h, q);
  for (auto& x : U) x *= 2.0;
  CHECK(generalized_moment(U, s.h, q) ==
        doctest::Approx(std::pow(2.0, q) * base).epsilon(1e-14));
  CHECK_THROWS_AS(generalized_moment(U, s.h, 2.0), std::domain_error);
}

TEST_CASE("lyapunov closed forms at constant states") {
  const auto spec = DiffusionSpec::Constant(1.0);
  for (double m : {1.0, 2.5}) {
    GridState s = GridState::uniform(32, m, m);
    const auto lyap = lyapunov(s, spec, 1.0);
    // L = Phi(m) - m^2 + m^2/2, gradients vanish, v_t = 0
    CHECK(lyap.L == doctest::Approx(entropy_phi(spec, m) - 0.5 * m * m)
                        .epsilon(1e-13));
    CHECK(std::abs(lyap.dissipation_v) <= 1e-26);
    CHECK(std::abs(lyap.dissipation_flux) <= 1e-26);
  }
  GridState one = GridState::uniform(32, 1.0, 1.0);
  CHECK(lyapunov(one, spec, 1.0).L == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("dissipation residual: trapezoid identity on synthetic samples") {
  // L(t) = -t^3/3 with dissipation t^2 and tau = 1 balances exactly in the
  // continuum; the trapezoid residual is the known quadrature defect.
  std::vector<LyapunovSample> traj;
  const int n = 5;
  for (int k = 0; k <= n; ++k) {
    LyapunovSample smp;
    smp.t = static_cast<double>(k) / n;
    smp.L = -smp.t * smp.t * smp.t / 3.0;
    smp.dissipation_v = smp.t * smp.t;
    traj.push_back(smp);
  }
  double trap = 0.0;
  for (int k = 1; k <= n; ++k)
    trap += 0.5 / n *
            (traj[k].dissipation_v + traj[k - 1].dissipation_v);
  CHECK(dissipation_residual(traj, 1.0) ==
        doctest::Approx(std::abs(trap - 1.0 / 3.0)).epsilon(1e-13));
  // exact for linear dissipation
  for (auto& smp : traj) {
    smp.dissipation_v = smp.t;
    smp.L = -0.5 * smp.t * smp.t;
  }
  CHECK(dissipation_residual(traj, 1.0) <= 1e-15);
  CHECK_THROWS(dissipation_residual({traj[0]}, 1.0));
}

TEST_CASE("chemo rate norm") {
  GridState s = GridState::uniform(64, 1.0, 0.0);
  CHECK(chemo_rate_norm(s, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
  // cos(pi x) at cell centers is an exact eigenvector of the discrete
  // Neumann Laplacian: v_t = -(lam + 1) v with lam = 2(1 - cos(pi h))/h^2.
  GridState e = GridState::uniform(64, 0.0, 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < e.n_cells; ++i) {
    e.v[i] = std::cos(M_PI * (i + 0.5) * e.h);
    norm2 += e.v[i] * e.v[i] * e.h;
  }
  const double lam = 2.0 * (1.0 - std::cos(M_PI * e.h)) / (e.h * e.h);
  CHECK(chemo_rate_norm(e, 1.0) ==
        doctest::Approx((lam + 1.0) * std::sqrt(norm2)).epsilon(1e-12));
}

TEST_CASE("moment rate identity tracks the scheme's discrete rate") {
  const auto spec = DiffusionSpec::IntegrablePower(2.0);
  const double tau = 1.0, q = 3.0;
  auto fd_gap = [&](std::size_t n) {
    GridState s = smooth_state(n);
    const double id0 = moment_rate_identity(s, spec, tau, q);
    const double mq0 = generalized_moment(cumulative(s), s.h, q);
    TimeControls c;
    c.t_end = 1.0;
    c.dt_init = 1e-8;
    c.dt_max = 1e-8;
    REQUIRE(step(s, tau, spec, c).flag == StepFlag::OK);
    const double id1 = moment_rate_identity(s, spec, tau, q);
    const double mq1 = generalized_moment(cumulative(s), s.h, q);
    const double fd = (mq1 - mq0) / (s.t);
    return std::abs(fd - 0.5 * (id0 + id1));
  };
  const double g1 = fd_gap(64);
  const double g2 = fd_gap(256);
  CHECK(g2 < g1);           // spatial consistency
  CHECK(g2 <= 5e-2);        // and small in absolute terms at 256 cells
}

TEST_CASE("moment rate bound: shape and degenerate limits") {
  const auto spec = DiffusionSpec::IntegrablePower(2.0);
  const double m = 1.0, q = 3.0;
  const double sink = std::pow(m, q + 1.0) / (2.0 * q * (q + 1.0));
  const MajorantB Bsmall = build_majorant(spec, 1e3, 2048);
  const MajorantB Blarge = build_majorant(spec, 1e6, 2048);
  const MomentRateBound bs(m, q, 1.0, Bsmall, 0.0, 0.0);
  const MomentRateBound bl(m, q, 1.0, Blarge, 0.0, 0.0);
  // beta_limit shrinks with r_max, so at_zero approaches the pure sink
  CHECK(bl.at_zero() < 0.0);
  CHECK(std::abs(bl.at_zero() + sink) < std::abs(bs.at_zero() + sink));
  // c1 and c2 enter linearly and monotonically
  const MomentRateBound bc(m, q, 1.0, Blarge, 2.0, 1.0);
  for (double r : {1e-3, 1e-2, 0.1}) {
    CHECK(bc(r) > bl(r));
    const double manual =
        bl(r) + 2.0 * r + 1.0 * std::pow(m, q / 2.0) / std::sqrt(q) *
                              std::sqrt(r);
    CHECK(bc(r) == doctest::Approx(manual).epsilon(1e-12));
  }
  CHECK_THROWS_AS(bc(0.0), std::domain_error);
  CHECK_THROWS(MomentRateBound(0.0, q, 1.0, Blarge, 0.0, 0.0));
  CHECK_THROWS(MomentRateBound(m, 2.0, 1.0, Blarge, 0.0, 0.0));
}

TEST_CASE("find_theta against a dense scan") {
  const auto spec = DiffusionSpec::IntegrablePower(2.0);
  const double m = 1.0, q = 3.0;
  const MajorantB B = build_majorant(spec, 1e6, 2048);
  const double r_hi = std::pow(m, q) / q;
  SUBCASE("crossing found and certified") {
    const MomentRateBound bound(m, q, 1.0, B, 2.0, 1.0);
    REQUIRE(bound.at_zero() < 0.0);
    const auto res = find_theta(bound, r_hi);
    REQUIRE(res.status == ThetaResult::Status::Found);
    CHECK(bound(res.theta * (1.0 - 1e-9)) < 0.0);
    CHECK(bound(res.theta * (1.0 + 1e-9)) > 0.0);
    // independent scan + bisection
    const std::size_t N = 10000;
    double lo = 0, hi = 0;
    for (std::size_t k = 1; k <= N; ++k) {
      const double r = r_hi * static_cast<double>(k) / N;
      if (bound(r) >= 0) {
        hi = r;
        lo = r_hi * static_cast<double>(k - 1) / N;
        break;
      }
    }
    REQUIRE(hi > 0);
    while (hi - lo > 1e-13 * r_hi) {
      const double mid = 0.5 * (lo + hi);
      (bound(mid) < 0 ? lo : hi) = mid;
    }
    CHECK(std::abs(res.theta - 0.5 * (lo + hi)) <= 1e-6 * r_hi);
  }
  SUBCASE("all-negative bracket") {
    const MomentRateBound bound(m, q, 1.0, B, 0.0, 0.0);
    const auto res = find_theta(bound, 1e-4);
    CHECK(res.status == ThetaResult::Status::AllNegative);
  }
  SUBCASE("failed zero-limit precondition") {
    const MajorantB coarse = build_majorant(spec, 5.0, 64);
    const MomentRateBound bound(m, q, 1.0, coarse, 0.0, 0.0);
    if (bound.at_zero() >= 0.0)
      CHECK(find_theta(bound, r_hi).status ==
            ThetaResult::Status::PreconditionFailed);
  }
}

TEST_CASE("jensen slacks are nonnegative on random states") {
  const auto spec = DiffusionSpec::IntegrablePower(2.0);
  const MajorantB B = build_majorant(spec, 1e3, 1024);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> d(0.0, 4.0);
  for (int rep = 0; rep < 50; ++rep) {
    GridState s = GridState::uniform(40, 0.0, 0.0);
    for (auto& x : s.u) x = d(rng);
    const auto sl = jensen_slacks(s, B, 3.0);
    REQUIRE(!sl.vacuous);
    CHECK(sl.power_step >= -1e-10);
    CHECK(sl.mass_step >= -1e-10);
    CHECK(sl.weighted_step >= -1e-10);
  }
  GridState zero = GridState::uniform(16, 0.0, 0.0);
  CHECK(jensen_slacks(zero, B, 3.0).vacuous);
  CHECK_THROWS_AS(jensen_slacks(zero, B, 1.5), std::domain_error);
}

TEST_CASE("radial second moment: constant density closed form") {
  // u = M gives U = (M/n) r^n and M_2 = (M/n)^2 / (6n).
  const double M = 3.0;
  for (int n : {3, 5}) {
    auto m2_at = [&](std::size_t cells) {
      RadialGridState s = RadialGridState::uniform(n, cells, M, 0.0);
      return radial_second_moment(cumulative(s), M, n, s.dr);
    };
    const double exact = (M / n) * (M / n) / (6.0 * n);
    const double e1 = std::abs(m2_at(64) - exact);
    const double e2 = std::abs(m2_at(128) - exact);
    CHECK(e1 / e2 >= 3.5);
    CHECK(m2_at(512) == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("unit ball volume") {
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0)
                                   .epsilon(1e-14));
  CHECK(unit_ball_volume(4) == doctest::Approx(0.5 * M_PI * M_PI)
                                   .epsilon(1e-14));
}

TEST_CASE("critical mean density: closed form vs bisection") {
  for (int n : {3, 4, 5}) {
    const double ms = critical_mean_density(n);
    CHECK(std::abs(critical_condition(ms, n)) <= 1e-8 * std::pow(ms / n, 3));
    CHECK(critical_condition(2.0 * ms, n) < 0.0);
    CHECK(critical_condition(0.5 * ms, n) > 0.0);
    // independent bisection of the sign change
    double lo = ms / 10.0, hi = ms * 10.0;
    REQUIRE(critical_condition(lo, n) > 0.0);
    REQUIRE(critical_condition(hi, n) < 0.0);
    while (hi - lo > 1e-10 * ms) {
      const double mid = 0.5 * (lo + hi);
      (critical_condition(mid, n) > 0 ? lo : hi) = mid;
    }
    CHECK(ms == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(critical_mean_density(2), std::domain_error);
}

TEST_CASE("second moment rate bound: structure") {
  const double M = 100.0;
  const int n = 3;
  const double Mn = M / n, e = 1.0 - 2.0 / n;
  const double M2 = 0.3;
  // with no chemo contributions it is the transport bound plus the leading
  // terms
  const double base =
      critical_condition(M, n) +
      (n - 1) * std::pow(2.0 * n, e) * std::pow(Mn, 4.0 / n) *
          std::pow(M2, e);
  CHECK(second_moment_rate_bound(M2, M, n, 0.0, 0.0) ==
        doctest::Approx(base).epsilon(1e-13));
  // the two vt conventions agree at ||v_t|| = 1 and order correctly below it
  CHECK(second_moment_rate_bound(M2, M, n, 1.0, 1.0, true) ==
        doctest::Approx(second_moment_rate_bound(M2, M, n, 1.0, 1.0, false))
            .epsilon(1e-13));
  CHECK(second_moment_rate_bound(M2, M, n, 1.0, 0.25, true) >
        second_moment_rate_bound(M2, M, n, 1.0, 0.25, false));
  // v_linf enters as +c1 M2
  CHECK(second_moment_rate_bound(M2, M, n, 2.0, 0.0) ==
        doctest::Approx(base + 2.0 * M2).epsilon(1e-13));
}

TEST_CASE("radial transport estimate: exact lhs and nonnegative slack") {
  // constant density closed form:
  //   lhs = 2(n-1) M (M/n) [1/(2n-2) - 1/(3n-2)]
  for (int n : {3, 4}) {
    const double M = 2.0;
    RadialGridState s = RadialGridState::uniform(n, 32, M, 0.0);
    const auto [lhs, rhs] = radial_transport_bound_pair(s);
    const double exact = 2.0 * (n - 1) * M * (M / n) *
                         (1.0 / (2.0 * n - 2.0) - 1.0 / (3.0 * n - 2.0));
    CHECK(lhs == doctest::Approx(exact).epsilon(1e-12));
    CHECK(rhs >= lhs - 1e-10);
  }
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> d(0.0, 5.0);
  for (int rep = 0; rep < 25; ++rep) {
    RadialGridState s = RadialGridState::uniform(3, 48, 0.0, 0.0);
    for (auto& x : s.u) x = d(rng);
    const auto [lhs, rhs] = radial_transport_bound_pair(s);
    CHECK(rhs >= lhs - 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("measured bounds tracking") {
  MeasuredBounds b;
  CHECK(!b.seen);
  b.observe(1.0, 2.0, -3.0);
  b.observe(0.5, 5.0, -1.0);
  b.observe(2.5, 1.0, -7.0);
  CHECK(b.c1 == 2.5);
  CHECK(b.c2 == 5.0);
  CHECK(b.L_lower == -7.0);
}
