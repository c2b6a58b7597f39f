#include "cscs/axioms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cscs {

namespace {

constexpr double kPi = std::numbers::pi;

// \int_{-inf}^{inf} h~_m(u) exp(2 e' u) du with h~ the Gaussian solution of
// the moment problem; split at u = 0 into two half-line oracle calls.
double weight_power_moment(const WeightFunction& w, double e_prime,
                           double quad_tol) {
  const double prefactor =
      std::exp(-2.0 * w.m * w.m * w.alpha * w.epsilon * w.epsilon) /
      std::sqrt(w.alpha * kPi);
  const auto right = [&](double u) {
    return prefactor * std::exp(-u * u / w.alpha + 2.0 * e_prime * u);
  };
  const auto left = [&](double u) {
    return prefactor * std::exp(-u * u / w.alpha - 2.0 * e_prime * u);
  };
  const GaussEnvelope env_r{1.0 / w.alpha, 2.0 * e_prime};
  const GaussEnvelope env_l{1.0 / w.alpha, -2.0 * e_prime};
  return quad_oracle(right, quad_tol, env_r) +
         quad_oracle(left, quad_tol, env_l);
}

}  // namespace

WeightFunction::WeightFunction(double alpha_, double epsilon_, int m_)
    : alpha(alpha_), epsilon(epsilon_), m(m_) {
  if (!(alpha > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument(
        "WeightFunction: alpha and epsilon must be positive");
  }
  if (m < 0) {
    throw std::invalid_argument("WeightFunction: m must be non-negative");
  }
}

double sigma_weight(const WeightFunction& w, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("sigma_weight: s must be positive");
  }
  const double arg = (w.m * w.alpha * w.epsilon + std::log(s)) /
                     std::sqrt(w.alpha);
  return std::erfc(-arg) / (2.0 * s * w.alpha);
}

MomentResidual moment_check(const WeightFunction& w, double probe_energy,
                            double tol) {
  if (!(probe_energy >= 0.0)) {
    throw std::invalid_argument("moment_check: probe energy must be >= 0");
  }
  const double e_prime = probe_energy - w.m * w.epsilon;
  const double quad_tol = std::max(1e-12, tol * 1e-2);
  const double lhs = weight_power_moment(w, e_prime, quad_tol);
  const double rhs =
      std::exp(w.alpha * e_prime * e_prime -
               2.0 * w.m * w.m * w.alpha * w.epsilon * w.epsilon);
  return {probe_energy, lhs, rhs, std::fabs(lhs - rhs) / rhs};
}

double resolution_check(const WeightFunction& w, const EnergyGrid& grid,
                        double tol) {
  const std::size_t first =
      static_cast<std::size_t>(std::llround(w.m * w.epsilon / grid.delta_e()));
  double worst = 0.0;
  for (std::size_t i = first; i < grid.size(); ++i) {
    worst = std::max(worst, moment_check(w, grid.energy(i), tol).rel_error);
  }
  return worst;
}

double resolution_check_truncated(const WeightFunction& w,
                                  const EnergyGrid& grid, double gamma_cutoff,
                                  double tol) {
  if (!(gamma_cutoff > 0.0)) {
    throw std::invalid_argument(
        "resolution_check_truncated: cutoff must be positive");
  }
  const double quad_tol = std::max(1e-12, tol * 1e-2);
  const std::size_t first =
      static_cast<std::size_t>(std::llround(w.m * w.epsilon / grid.delta_e()));
  const std::size_t count = grid.size() - first;

  // state profile moduli mu_i on the sector, in the support coordinate
  std::vector<double> mu(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = grid.energy(first + i) - w.m * w.epsilon;
    mu[i] = std::exp(0.5 * w.m * w.alpha * w.epsilon *
                         (2.0 * u + w.m * w.epsilon) -
                     0.5 * w.alpha * u * u);
  }

  // the weight enters only through its power moments at the index-sum
  // midpoints, so 2*count - 1 quadratures cover the whole matrix
  std::vector<double> moments(2 * count - 1);
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const double e_sum = grid.energy(first) + grid.energy(first + k) -
                         2.0 * w.m * w.epsilon;
    moments[k] = weight_power_moment(w, 0.5 * e_sum, quad_tol);
  }

  // test state: the m-excited label peaked at a third of the grid, so the
  // Dirichlet tails see a visible boundary value
  const ModelParams mp(w.alpha, w.epsilon, 1.0);
  const StateLabel probe = StateLabel::from_log_s(
      w.alpha * (grid.e_max() / 3.0) - w.m * w.alpha * w.epsilon, 0.0, w.m);
  const GridState psi = sample_state(mp, probe, grid);

  const auto dirichlet = [gamma_cutoff](double x) {
    if (x == 0.0) {
      return gamma_cutoff / kPi;
    }
    return std::sin(gamma_cutoff * x) / (kPi * x);
  };

  // Pointwise defect over the interior band of the sector. The band stays
  // clear of the edge layers (width ~ 1/cutoff) where the truncated kernel
  // only sees part of its mass; inside the band the Dirichlet tail estimate
  // gives the ~1/cutoff decay.
  double scale = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    scale = std::max(scale, std::abs(psi.samples[first + i]));
  }
  double worst = 0.0;
  for (std::size_t i = count / 4; i < 3 * count / 4; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < count; ++j) {
      const double kernel =
          mu[i] * mu[j] * moments[i + j] *
          dirichlet(grid.energy(first + i) - grid.energy(first + j));
      acc += kernel * psi.samples[first + j];
    }
    acc *= grid.delta_e();
    worst = std::max(worst, std::abs(acc - psi.samples[first + i]));
  }
  return worst / scale;
}

double action_identity(const ModelParams& mp, int m, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("action_identity: s must be positive");
  }
  if (m < 0) {
    throw std::invalid_argument("action_identity: m must be non-negative");
  }
  const double q = 2.0 * (std::log(s) + m * mp.alpha * mp.epsilon);
  const double l1 = gauss_tail_moment_log({mp.alpha, q, 1}).log_value;
  const double l0 = gauss_tail_moment_log({mp.alpha, q, 0}).log_value;
  return std::exp(l1 - l0);
}

double invert_action(const ModelParams& mp, int m, double j_target,
                     double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("invert_action: tol must be positive");
  }
  if (!(j_target > 0.0) || !std::isfinite(j_target)) {
    throw std::domain_error(
        "invert_action: target outside the attainable range (0, inf)");
  }
  const auto j_of = [&](double log_s) {
    const double q = 2.0 * (log_s + m * mp.alpha * mp.epsilon);
    return std::exp(gauss_tail_moment_log({mp.alpha, q, 1}).log_value -
                    gauss_tail_moment_log({mp.alpha, q, 0}).log_value);
  };

  // seed from the large-s asymptote J ~ (log s + m alpha eps)/alpha, then
  // expand the bracket; J is strictly increasing in log s
  const double seed = mp.alpha * j_target - m * mp.alpha * mp.epsilon;
  double lo = seed - 1.0;
  double hi = seed + 1.0;
  double step = 1.0;
  int guard = 0;
  while (j_of(lo) > j_target) {
    lo -= step;
    step *= 2.0;
    if (++guard > 200) {
      throw std::runtime_error("invert_action: bracketing failed");
    }
  }
  step = 1.0;
  while (j_of(hi) < j_target) {
    hi += step;
    step *= 2.0;
    if (++guard > 200) {
      throw std::runtime_error("invert_action: bracketing failed");
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (j_of(mid) < j_target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * (1.0 + std::fabs(mid))) {
      break;
    }
  }
  const double log_s = 0.5 * (lo + hi);
  const double achieved = j_of(log_s);
  if (std::fabs(achieved - j_target) > tol * j_target) {
    throw std::runtime_error("invert_action: could not reach the tolerance");
  }
  return std::exp(log_s);
}

}  // namespace cscs
