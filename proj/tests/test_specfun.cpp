#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cscs/detail/rng.hpp"
#include "cscs/specfun.hpp"
#include "oracle.hpp"

using cscs::GaussEnvelope;
using cscs::GaussTailParams;
using cscs::detail::uniform;

TEST_CASE("erf: pinned values and asymptote") {
  CHECK(cscs::erf(0.0) == 0.0);
  CHECK(std::fabs(cscs::erf(1.0) - 0.8427007929497149) <= 1e-15);
  for (const double x : {6.0, 7.5, 12.0, 40.0}) {
    CHECK(std::fabs(cscs::erf(x) - 1.0) <= 1e-15);
  }
}

TEST_CASE("erf: matches the series/continued-fraction oracle") {
  for (double x = -6.0; x <= 6.0; x += 0.037) {
    CHECK(std::fabs(cscs::erf(x) - test_oracle::erf_reference(x)) <= 1e-15);
  }
}

TEST_CASE("erf: odd symmetry holds bit for bit") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const double x = uniform(rng, 0.0, 8.0);
    CHECK(cscs::erf(-x) == -cscs::erf(x));
  }
}

TEST_CASE("erfcx: values across the branch switch") {
  CHECK(std::fabs(cscs::erfcx(0.0) - 1.0) <= 1e-15);
  for (const double x : {2.0, 5.0, 19.5, 20.5, 25.0, 31.6}) {
    const double ref = static_cast<double>(test_oracle::erfcx_cf(x));
    CHECK(std::fabs(cscs::erfcx(x) - ref) / ref <= 1e-13);
  }
  CHECK_THROWS_AS(cscs::erfcx(-0.5), std::invalid_argument);
}

TEST_CASE("gauss_tail_moment: elementary half-Gaussian values") {
  // sqrt(pi)/2, 1/2, sqrt(pi)/4
  CHECK(std::fabs(cscs::gauss_tail_moment({1.0, 0.0, 0}) -
                  0.8862269254527580) <= 1e-14);
  CHECK(std::fabs(cscs::gauss_tail_moment({1.0, 0.0, 1}) - 0.5) <= 1e-14);
  CHECK(std::fabs(cscs::gauss_tail_moment({1.0, 0.0, 2}) -
                  0.4431134627263790) <= 1e-14);
  // (1/2) sqrt(pi/10), frozen from the quadrature oracle
  CHECK(std::fabs(cscs::gauss_tail_moment({10.0, 0.0, 0}) -
                  0.28024956081989645) <= 1e-12);
}

TEST_CASE("gauss_tail_moment: parameter validation") {
  CHECK_THROWS_AS(cscs::gauss_tail_moment({0.0, 1.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cscs::gauss_tail_moment({-2.0, 1.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cscs::gauss_tail_moment({1.0, 1.0, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cscs::gauss_tail_moment({1.0, 1.0, -1}),
                  std::invalid_argument);
}

TEST_CASE("gauss_tail_moment: overflow is signalled, log path stays usable") {
  const GaussTailParams g{0.1, 20.0, 0};  // q^2/(4p) = 1000
  const auto lv = cscs::gauss_tail_moment_log(g);
  CHECK(lv.sign == 1);
  CHECK(lv.log_value > 709.0);
  CHECK(!lv.representable());
  CHECK_THROWS_AS(lv.value(), std::overflow_error);
  CHECK_THROWS_AS(cscs::gauss_tail_moment(g), std::overflow_error);

  // compare against the oracle on the peak-shifted integrand
  const double shift = g.q * g.q / (4.0 * g.p);
  const double scaled = cscs::quad_oracle(
      [&](double e) { return std::exp(-g.p * e * e + g.q * e - shift); },
      1e-10, GaussEnvelope{g.p, g.q});
  CHECK(std::fabs(std::exp(lv.log_value - shift) - scaled) / scaled <= 1e-9);
}

TEST_CASE("quad_oracle: elementary integrals") {
  const double half_gauss = cscs::quad_oracle(
      [](double e) { return std::exp(-e * e); }, 1e-10, {1.0, 0.0});
  CHECK(std::fabs(half_gauss - 0.8862269254527580) <= 1e-10);

  const double first_moment = cscs::quad_oracle(
      [](double e) { return e * std::exp(-e * e); }, 1e-10, {1.0, 1.0});
  CHECK(std::fabs(first_moment - 0.5) <= 1e-10);
}

TEST_CASE("quad_oracle: cross-checks the closed-form channel") {
  const double q = 2.0 * std::log(2.0);  // s = 2, alpha = 10
  const double via_quad = cscs::quad_oracle(
      [&](double e) { return std::exp(-10.0 * e * e + q * e); }, 1e-10,
      {10.0, q});
  const double via_closed = cscs::gauss_tail_moment({10.0, q, 0});
  CHECK(std::fabs(via_quad - via_closed) / via_closed <= 1e-10);
}

TEST_CASE("quad_oracle: input validation") {
  CHECK_THROWS_AS(
      cscs::quad_oracle([](double) { return 0.0; }, 1e-13, {1.0, 0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      cscs::quad_oracle([](double) { return 0.0; }, 1e-10, {0.0, 0.0}),
      std::invalid_argument);
}

TEST_CASE("quad_oracle: non-convergence reports the achieved error") {
  // oscillation far beyond what the subdivision budget can resolve
  const auto nasty = [](double e) {
    return std::sin(3.0e7 * e) * std::exp(-e * e);
  };
  try {
    (void)cscs::quad_oracle(nasty, 1e-12, {1.0, 0.0});
    FAIL("expected QuadratureError");
  } catch (const cscs::QuadratureError& err) {
    CHECK(err.achieved_rel_error() > 1e-12);
    CHECK(std::string(err.what()).find("achieved") != std::string::npos);
  }
}

TEST_CASE("gauss_tail_moment vs quad_oracle over 1000 random (p, q, k)") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 1000; ++t) {
    const double p = uniform(rng, 0.1, 50.0);
    const double q = uniform(rng, -20.0, 20.0);
    const int k = t % 3;
    // peak shift keeps both channels inside double range
    const double shift = (q > 0.0) ? q * q / (4.0 * p) : 0.0;
    const auto f = [&](double e) {
      return std::pow(e, k) * std::exp(-p * e * e + q * e - shift);
    };
    // E^k <= e^k(E-1): fold the power into the envelope slope
    const double via_quad = cscs::quad_oracle(f, 1e-11, {p, q + k});
    const auto lv = cscs::gauss_tail_moment_log({p, q, k});
    const double via_closed = std::exp(lv.log_value - shift);
    CHECK(std::fabs(via_closed - via_quad) / via_quad <= 1e-9);
  }
}

TEST_CASE("recursion consistency: G1 * 2p - q * G0 = 1") {
  std::mt19937_64 rng(43);
  int tested = 0;
  while (tested < 300) {
    const double p = uniform(rng, 0.1, 50.0);
    const double q = uniform(rng, -20.0, 20.0);
    if (q * q / (4.0 * p) > 600.0) {
      continue;  // stay in linear range for the identity arithmetic
    }
    ++tested;
    const double g0 = cscs::gauss_tail_moment({p, q, 0});
    const double g1 = cscs::gauss_tail_moment({p, q, 1});
    const double scale = std::max(1.0, 2.0 * p * g1);
    CHECK(std::fabs(g1 * 2.0 * p - q * g0 - 1.0) / scale <= 1e-12);
  }
}

TEST_CASE("G0 strictly increases in q at fixed p") {
  for (const double p : {0.5, 5.0, 20.0}) {
    double prev = -1.0;
    for (double q = -10.0; q <= 10.0; q += 0.25) {
      const double g0 =
          std::exp(cscs::gauss_tail_moment_log({p, q, 0}).log_value);
      CHECK(g0 > prev);
      prev = g0;
    }
  }
}
