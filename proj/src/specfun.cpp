#include "cscs/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

namespace cscs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogDblMax = 709.782712893384;

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

double erf(double x) {
  const double mag = std::erf(std::fabs(x));
  return std::signbit(x) ? -mag : mag;
}

double erfcx(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("erfcx: requires x >= 0");
  }
  if (x < 20.0) {
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series; reaches double precision for x >= 20.
  const double r = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 32; ++j) {
    term *= -(2.0 * j - 1.0) * r;
    sum += term;
    if (std::fabs(term) < 0x1p-54 * std::fabs(sum)) {
      break;
    }
  }
  return sum / (x * std::sqrt(kPi));
}

bool LogScaledValue::representable() const { return log_value <= kLogDblMax; }

double LogScaledValue::value() const {
  if (!representable()) {
    throw std::overflow_error(
        "gauss_tail_moment: value exceeds floating range, only representable "
        "as a log");
  }
  return static_cast<double>(sign) * std::exp(log_value);
}

namespace {

// log G_0 via the completed square. For q <= 0 the scaled complement
// erfcx(-q / (2 sqrt p)) absorbs the exp(q^2/4p) factor, so no extreme
// exponentials ever appear on that branch.
double g0_log(double p, double q) {
  const double x = q / (2.0 * std::sqrt(p));
  const double front = 0.5 * std::sqrt(kPi / p);
  if (x <= 0.0) {
    return std::log(front * erfcx(-x));
  }
  return x * x + std::log(front * (1.0 + cscs::erf(x)));
}

// Deep-tail forms for q < 0, x = -q/(2 sqrt p) large. The recursion loses
// ~x^4 eps to cancellation there; these series are exact to rounding for
// x >= 6.5 (smallest term ~ e^{-x^2}).
//
// F1(x) = 1 - sqrt(pi) x erfcx(x)        = sum_{k>=1} (-1)^{k+1} (2k-1)!! r^k
// F2(x) = sqrt(pi) erfcx(x) - 2 x F1(x)  = (1/x) sum_{k>=1} (-1)^{k+1} (2k-1)!! 2k r^k
// with r = 1/(2 x^2); then G_1 = F1/(2p) and G_2 = F2/(4 p^{3/2}).
double tail_f1(double x) {
  const double r = 1.0 / (2.0 * x * x);
  double term = r;
  double sum = term;
  for (int k = 2; k < 96; ++k) {
    const double next = term * -(2.0 * k - 1.0) * r;
    if (std::fabs(next) >= std::fabs(term)) {
      break;  // asymptotic tail turned around: optimal truncation
    }
    term = next;
    sum += term;
    if (std::fabs(term) < 0x1p-54 * std::fabs(sum)) {
      break;
    }
  }
  return sum;
}

double tail_f2(double x) {
  const double r = 1.0 / (2.0 * x * x);
  double term = 2.0 * r;
  double sum = term;
  for (int k = 2; k < 96; ++k) {
    const double next =
        term * -(2.0 * k - 1.0) * r * static_cast<double>(k) / (k - 1.0);
    if (std::fabs(next) >= std::fabs(term)) {
      break;
    }
    term = next;
    sum += term;
    if (std::fabs(term) < 0x1p-54 * std::fabs(sum)) {
      break;
    }
  }
  return sum / x;
}

}  // namespace

LogScaledValue gauss_tail_moment_log(const GaussTailParams& g) {
  if (!(g.p > 0.0)) {
    throw std::invalid_argument("gauss_tail_moment: requires p > 0");
  }
  if (g.k < 0 || g.k > 2) {
    throw std::invalid_argument("gauss_tail_moment: k must be 0, 1 or 2");
  }
  const double p = g.p;
  const double q = g.q;
  const double l0 = g0_log(p, q);
  if (g.k == 0) {
    return {l0, +1};
  }
  if (q <= 0.0) {
    // All three moments stay in linear range when q <= 0.
    const double x = -q / (2.0 * std::sqrt(p));
    if (x >= 6.5) {
      const double g1 = tail_f1(x) / (2.0 * p);
      if (g.k == 1) {
        return {std::log(g1), +1};
      }
      const double g2 = tail_f2(x) / (4.0 * p * std::sqrt(p));
      return {std::log(g2), +1};
    }
    const double g0 = std::exp(l0);
    const double g1 = (1.0 + q * g0) / (2.0 * p);
    if (g.k == 1) {
      return {std::log(g1), +1};
    }
    const double g2 = (g0 + q * g1) / (2.0 * p);
    return {std::log(g2), +1};
  }
  // q > 0: the recursion terms are all positive; log-sum-exp keeps the chain
  // stable past the q^2/(4p) > 700 overflow threshold.
  const double log_inv_2p = -std::log(2.0 * p);
  const double log_q_2p = std::log(q) + log_inv_2p;
  const double l1 = log_sum_exp(log_inv_2p, log_q_2p + l0);
  if (g.k == 1) {
    return {l1, +1};
  }
  const double l2 = log_sum_exp(l0 + log_inv_2p, log_q_2p + l1);
  return {l2, +1};
}

double gauss_tail_moment(const GaussTailParams& g) {
  return gauss_tail_moment_log(g).value();
}

double log_gauss_g0(double p, double q) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("log_gauss_g0: requires p > 0");
  }
  return g0_log(p, q);
}

QuadratureError::QuadratureError(const std::string& what,
                                 double achieved_rel_error)
    : std::runtime_error(what), achieved_(achieved_rel_error) {}

double quad_oracle(const std::function<double(double)>& f, double tol,
                   const GaussEnvelope& env) {
  if (!(tol >= 1e-12)) {
    throw std::invalid_argument("quad_oracle: tol must be >= 1e-12");
  }
  if (!(env.p > 0.0)) {
    throw std::invalid_argument("quad_oracle: envelope requires p > 0");
  }
  const double p = env.p;
  const double q = env.q;
  const double sigma = 1.0 / std::sqrt(p);

  // Scale-free lower bound on log \int_0^inf exp(-pE^2+qE) dE: the envelope
  // holds at least e^-2 of its edge value over a width min(sigma, 1/|q|).
  const double peak = std::max(q / (2.0 * p), 0.0);
  const double peak_log = -p * peak * peak + q * peak;
  double width = sigma;
  if (q < 0.0) {
    width = std::min(width, -1.0 / q);
  }
  const double lb_log = peak_log + std::log(width) - 2.0;

  // Analytic tail bound: \int_U^inf env <= env(U) / (2pU - q) for U past the
  // peak. Grow U until the bound is safely below tol relative to lb_log.
  const auto tail_log = [&](double u) {
    return -p * u * u + q * u - std::log(2.0 * p * u - q);
  };
  double upper = peak + 8.0 * sigma;
  const double target = std::log(tol) + lb_log - 3.0;
  while (tail_log(upper) > target && upper < peak + 64.0 * sigma) {
    upper += 4.0 * sigma;
  }

  double error = 0.0;
  double l1_norm = 0.0;
  const double result =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, 0.0, upper, 15, tol * 0.5, &error, &l1_norm);
  if (!std::isfinite(result)) {
    throw QuadratureError("quad_oracle: non-finite result",
                          std::numeric_limits<double>::infinity());
  }
  const double scale =
      std::max(l1_norm, std::numeric_limits<double>::denorm_min());
  if (error > tol * scale) {
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%.3e", error / scale);
    throw QuadratureError(
        std::string("quad_oracle: failed to converge within the subdivision "
                    "budget; achieved relative error ") +
            detail,
        error / scale);
  }
  return result;
}

std::complex<double> quad_oracle_complex(
    const std::function<std::complex<double>(double)>& f, double tol,
    const GaussEnvelope& env) {
  const double re =
      quad_oracle([&f](double e) { return f(e).real(); }, tol, env);
  const double im =
      quad_oracle([&f](double e) { return f(e).imag(); }, tol, env);
  return {re, im};
}

}  // namespace cscs
