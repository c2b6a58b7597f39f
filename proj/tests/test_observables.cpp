#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "cscs/detail/rng.hpp"
#include "cscs/grid_ops.hpp"
#include "cscs/observables.hpp"
#include "cscs/specfun.hpp"

using cscs::Diagnostic;
using cscs::EvalMode;
using cscs::ModelParams;
using cscs::StateLabel;
using cscs::detail::uniform;
using cscs::detail::uniform_int;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

StateLabel random_label(std::mt19937_64& rng, double alpha, int max_m = 12) {
  return StateLabel::from_log_s(
      uniform(rng, -2.0 * std::sqrt(alpha), 3.0 * std::sqrt(alpha)),
      uniform(rng, -3.0, 3.0), uniform_int(rng, 0, max_m));
}

}  // namespace

TEST_CASE("number moment, formal: direct substitutions") {
  CHECK(rel(cscs::expval_number(ModelParams(10.0, 0.5), StateLabel(2.0, 0.0),
                                EvalMode::formal),
            2.0) <= 1e-14);
  for (const double alpha : {1.0, 10.0}) {
    for (const double eps : {0.03, 0.2}) {
      CHECK(rel(cscs::expval_number(ModelParams(alpha, eps),
                                    StateLabel(1.0, 0.7), EvalMode::formal),
                1.0) <= 1e-14);
    }
  }
  // m = 0, s = 1: <N^2> = e^{2 alpha eps^2}
  const ModelParams mp(10.0, 0.07);
  CHECK(rel(cscs::expval_number_sq(mp, StateLabel(1.0, 0.0), EvalMode::formal),
            std::exp(2.0 * mp.alpha * mp.epsilon * mp.epsilon)) <= 1e-14);
}

TEST_CASE("number moment, exact: error-function correction at s = 1") {
  const ModelParams mp(10.0, 0.07);
  const StateLabel unit(1.0, 0.0);
  const double formal = cscs::expval_number(mp, unit, EvalMode::formal);
  const double exact = cscs::expval_number(mp, unit, EvalMode::exact);
  const double predicted =
      formal * (1.0 + cscs::erf(std::sqrt(mp.alpha) * mp.epsilon));
  CHECK(rel(exact, predicted) <= 1e-12);

  const auto rep = cscs::report(Diagnostic::number, mp, unit);
  CHECK(rel(rep.correction_ratio,
            cscs::correction_ratio_predicted(Diagnostic::number, mp, unit)) <=
        1e-12);
}

TEST_CASE("number moment, exact: saturation of the boundary correction") {
  const ModelParams mp(10.0, 0.07);
  // erf arguments ~3: corrections still visible at the 1e-5 level
  const StateLabel l3 =
      StateLabel::from_log_s(3.0 * std::sqrt(mp.alpha), 0.0, 0);
  const double r3 =
      cscs::report(Diagnostic::number, mp, l3).correction_ratio;
  CHECK(std::fabs(r3 - 1.0) <= 1e-4);
  CHECK(std::fabs(r3 - 1.0) > 1e-8);
  // erf arguments >= 4: corrections below 1e-6
  const StateLabel l4 =
      StateLabel::from_log_s(4.0 * std::sqrt(mp.alpha), 0.0, 0);
  for (const Diagnostic d :
       {Diagnostic::number, Diagnostic::number_sq, Diagnostic::g2}) {
    CHECK(std::fabs(cscs::report(d, mp, l4).correction_ratio - 1.0) <= 1e-6);
  }
}

TEST_CASE("number moments, excited: dual path over random labels") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const double eps = uniform(rng, 0.01, 0.2);
    const ModelParams mp(alpha, eps);
    const StateLabel l = random_label(rng, alpha);
    const double ae2 = alpha * eps * eps;
    const double m = l.m();
    CHECK(rel(cscs::expval_number(mp, l, EvalMode::formal),
              std::exp(2.0 * eps * l.log_s() + 4.0 * m * ae2)) <= 1e-13);
    CHECK(rel(cscs::expval_number_sq(mp, l, EvalMode::formal),
              std::exp(2.0 * ae2 * (1.0 + 4.0 * m) +
                       4.0 * eps * l.log_s())) <= 1e-13);
    CHECK(rel(cscs::expval_adag2_a2(mp, l, EvalMode::formal),
              std::exp(4.0 * eps * l.log_s() + 8.0 * m * ae2)) <= 1e-13);
  }
}

TEST_CASE("mandel parameter: closed form and assembly agree") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 500; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const ModelParams mp(alpha, uniform(rng, 0.01, 0.2));
    const StateLabel l = random_label(rng, alpha);
    const double assembled = cscs::mandel_q(mp, l, EvalMode::formal);
    const double closed = cscs::mandel_q_closed(mp, l);
    CHECK(std::fabs(assembled - closed) /
              std::max({1.0, std::fabs(assembled), std::fabs(closed)}) <=
          1e-12);
  }
}

TEST_CASE("mandel parameter: s -> 0 limit is -1") {
  const ModelParams mp(10.0, 0.07);
  double prev = 0.0;
  for (const double log_s : {-50.0, -100.0, -1000.0}) {
    const double q =
        cscs::mandel_q(mp, StateLabel::from_log_s(log_s, 0.0, 0),
                       EvalMode::formal);
    CHECK(q >= -1.0);
    if (prev != 0.0) {
      CHECK(std::fabs(q + 1.0) < std::fabs(prev + 1.0));
    }
    prev = q;
  }
  CHECK(std::fabs(prev + 1.0) <= 1e-8);
}

TEST_CASE("mandel parameter: zero crossing location") {
  const ModelParams mp(10.0, 0.15);
  const double star = cscs::mandel_zero_crossing(mp, 0);
  CHECK(rel(star, 6.5772362196175523) <= 1e-12);  // frozen
  CHECK(cscs::mandel_q_closed(mp, StateLabel(star * 0.999, 0.0)) < 0.0);
  CHECK(cscs::mandel_q_closed(mp, StateLabel(star * 1.001, 0.0)) > 0.0);
  CHECK(std::fabs(cscs::mandel_q_closed(mp, StateLabel(star, 0.0))) <= 1e-12);
}

TEST_CASE("mandel parameter: small epsilon pins Q near -1") {
  const ModelParams mp(10.0, 0.01);
  for (int j = 1; j <= 400; ++j) {
    const double s = 20.0 * j / 400.0;
    const double q = cscs::mandel_q(mp, StateLabel(s, 0.0), EvalMode::formal);
    CHECK(q > -1.0);
    CHECK(q < -0.99);
  }
}

TEST_CASE("mandel parameter: strictly increasing in the excitation order") {
  const ModelParams mp(3.0, 0.07);
  for (const double s : {0.5, 2.0, 10.0}) {
    double prev = -2.0;
    for (int m = 0; m <= 8; ++m) {
      const double q =
          cscs::mandel_q(mp, StateLabel(s, 0.0, m), EvalMode::formal);
      CHECK(q > prev);
      prev = q;
    }
  }
}

TEST_CASE("g2: formal value is one for every label") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const ModelParams mp(alpha, uniform(rng, 0.01, 0.2));
    const StateLabel l = random_label(rng, alpha);
    CHECK(cscs::g2(mp, l, EvalMode::formal) == 1.0);
    const double n1 = cscs::expval_number(mp, l, EvalMode::formal);
    const double assembled =
        cscs::expval_adag2_a2(mp, l, EvalMode::formal) / (n1 * n1);
    CHECK(std::fabs(assembled - 1.0) <= 1e-12);
  }
  // the excited family behaves identically
  const ModelParams mp(10.0, 0.07);
  CHECK(cscs::g2(mp, StateLabel(2.0, 1.0, 7), EvalMode::formal) == 1.0);
}

TEST_CASE("g2, exact: saturates to one once the corrections die off") {
  const ModelParams mp(10.0, 0.07);
  const StateLabel l3 =
      StateLabel::from_log_s(3.0 * std::sqrt(mp.alpha), 0.0, 0);
  CHECK(std::fabs(cscs::g2(mp, l3, EvalMode::exact) - 1.0) <= 1e-5);
  const StateLabel l4 =
      StateLabel::from_log_s(4.0 * std::sqrt(mp.alpha), 0.0, 0);
  CHECK(std::fabs(cscs::g2(mp, l4, EvalMode::exact) - 1.0) <= 1e-6);
}

TEST_CASE("quadrature dispersions: pinned value and closed form") {
  const ModelParams mp(10.0, 0.07);
  const StateLabel l(1.0, 0.0);
  const auto stats = cscs::quadrature_stats(mp, l, EvalMode::formal);
  CHECK(rel(stats.dx_sq, 0.025740696277126936) <= 1e-12);  // frozen
  CHECK(rel(stats.dy_sq, 0.025740696277126936) <= 1e-12);
  CHECK(rel(stats.comm_mag, 2.0 * stats.dx_sq) <= 1e-12);
  CHECK(std::fabs(stats.residual) <= 1e-12 * stats.dx_sq * stats.dy_sq);
}

TEST_CASE("dispersions: intelligent-state residuals vanish, formal mode") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 500; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const ModelParams mp(alpha, uniform(rng, 0.01, 0.2));
    const StateLabel l = random_label(rng, alpha);
    const auto qs = cscs::quadrature_stats(mp, l, EvalMode::formal);
    const auto as = cscs::amp_squared_stats(mp, l, EvalMode::formal);
    CHECK(std::fabs(qs.residual) <= 1e-12 * qs.dx_sq * qs.dy_sq);
    CHECK(std::fabs(as.residual) <= 1e-12 * as.dx_sq * as.dy_sq);
    CHECK(rel(qs.dx_sq, cscs::quad_dispersion_closed(mp, l)) <= 1e-12);
    CHECK(rel(as.dx_sq, cscs::amp2_dispersion_closed(mp, l)) <= 1e-12);
  }
}

TEST_CASE("dispersions: gamma never enters") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 100; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const ModelParams mp(alpha, uniform(rng, 0.01, 0.2));
    const StateLabel base = random_label(rng, alpha);
    const auto ref = cscs::quadrature_stats(
        mp, StateLabel::from_log_s(base.log_s(), 0.0, base.m()),
        EvalMode::formal);
    const auto ref2 = cscs::amp_squared_stats(
        mp, StateLabel::from_log_s(base.log_s(), 0.0, base.m()),
        EvalMode::formal);
    for (const double gamma : {1.0, -3.0}) {
      const StateLabel lg =
          StateLabel::from_log_s(base.log_s(), gamma, base.m());
      const auto qs = cscs::quadrature_stats(mp, lg, EvalMode::formal);
      const auto as = cscs::amp_squared_stats(mp, lg, EvalMode::formal);
      CHECK(rel(qs.dx_sq, ref.dx_sq) <= 1e-12);
      CHECK(rel(qs.dy_sq, ref.dy_sq) <= 1e-12);
      CHECK(rel(qs.comm_mag, ref.comm_mag) <= 1e-12);
      CHECK(rel(as.dx_sq, ref2.dx_sq) <= 1e-12);
    }
  }
}

TEST_CASE("dispersions: exact-mode residual is positive, reported only") {
  const ModelParams mp(10.0, 0.07);
  const StateLabel l(1.0, 0.0);
  const auto qs = cscs::quadrature_stats(mp, l, EvalMode::exact);
  CHECK(std::isfinite(qs.residual));
  CHECK(qs.residual > 0.0);  // truncated-domain moments break the equality
  const auto as = cscs::amp_squared_stats(mp, l, EvalMode::exact);
  CHECK(std::isfinite(as.residual));
  CHECK(as.residual > 0.0);
}

TEST_CASE("lowering moments: eigenvalue structure in both modes") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 50; ++t) {
    const double alpha = uniform(rng, 1.0, 20.0);
    const double eps = uniform(rng, 0.01, 0.2);
    const ModelParams mp(alpha, eps);
    const StateLabel l = random_label(rng, alpha, 6);
    for (const int k : {1, 2, 4}) {
      const std::complex<double> expected =
          std::polar(std::exp(k * eps * l.log_s() +
                              2.0 * k * l.m() * alpha * eps * eps),
                     -k * l.gamma() * eps);
      const std::complex<double> formal =
          cscs::expval_lowering_pow(mp, l, k, EvalMode::formal);
      const std::complex<double> exact =
          cscs::expval_lowering_pow(mp, l, k, EvalMode::exact);
      CHECK(std::abs(formal - expected) <= 1e-12 * std::abs(expected));
      CHECK(formal == exact);  // inward shift: no boundary loss
    }
  }
  CHECK_THROWS_AS(cscs::expval_lowering_pow(ModelParams(10.0, 0.07),
                                            StateLabel(1.0, 0.0), -1,
                                            EvalMode::formal),
                  std::invalid_argument);
}

TEST_CASE("exact moments: spot check against the quadrature channel") {
  const ModelParams mp(10.0, 0.07);
  for (const int m : {0, 2}) {
    const StateLabel l(1.4, 0.6, m);
    const double edge = m * mp.epsilon;
    const double b = l.log_s() + m * mp.alpha * mp.epsilon;
    const auto density = [&](double t) {
      return std::norm(cscs::amplitude(mp, l, edge + t));
    };
    const double nrm =
        cscs::quad_oracle(density, 1e-12, {mp.alpha, 2.0 * b});
    const auto c2 = [&](double e) {
      const double c = cscs::ladder_weight(mp, e);
      return c * c;
    };
    const double o_n =
        cscs::quad_oracle(
            [&](double t) { return c2(edge + t) * density(t); }, 1e-12,
            {mp.alpha, 2.0 * b + 2.0 * mp.alpha * mp.epsilon}) /
        nrm;
    CHECK(rel(o_n, cscs::expval_number(mp, l, EvalMode::exact)) <= 1e-9);
    const double o_nsq =
        cscs::quad_oracle(
            [&](double t) {
              const double w = c2(edge + t);
              return w * w * density(t);
            },
            1e-12, {mp.alpha, 2.0 * b + 4.0 * mp.alpha * mp.epsilon}) /
        nrm;
    CHECK(rel(o_nsq, cscs::expval_number_sq(mp, l, EvalMode::exact)) <= 1e-9);
  }
}
