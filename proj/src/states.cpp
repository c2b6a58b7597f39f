#include "cscs/states.hpp"

#include <algorithm>
#include <stdexcept>

namespace cscs {

ModelParams::ModelParams(double alpha_, double epsilon_, double omega_)
    : alpha(alpha_), epsilon(epsilon_), omega(omega_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("ModelParams: alpha must be positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("ModelParams: epsilon must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("ModelParams: omega must be positive");
  }
}

StateLabel::StateLabel(double s, double gamma, int m) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("StateLabel: s must be strictly positive");
  }
  if (m < 0) {
    throw std::invalid_argument("StateLabel: m must be non-negative");
  }
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("StateLabel: gamma must be finite");
  }
  log_s_ = std::log(s);
  gamma_ = gamma;
  m_ = m;
}

StateLabel StateLabel::from_log_s(double log_s, double gamma, int m) {
  if (!std::isfinite(log_s) || !std::isfinite(gamma)) {
    throw std::invalid_argument("StateLabel: label must be finite");
  }
  if (m < 0) {
    throw std::invalid_argument("StateLabel: m must be non-negative");
  }
  StateLabel l;
  l.log_s_ = log_s;
  l.gamma_ = gamma;
  l.m_ = m;
  return l;
}

double log_normalization(const ModelParams& mp, const StateLabel& l) {
  const double m = static_cast<double>(l.m());
  const double b = l.log_s() + m * mp.alpha * mp.epsilon;
  const double me2 = m * m * mp.alpha * mp.epsilon * mp.epsilon;
  return -0.5 * (me2 + log_gauss_g0(mp.alpha, 2.0 * b));
}

double normalization_coherent(const ModelParams& mp, double s) {
  return std::exp(log_normalization(mp, StateLabel(s, 0.0, 0)));
}

double normalization_excited(const ModelParams& mp, double s, int m) {
  return std::exp(log_normalization(mp, StateLabel(s, 0.0, m)));
}

std::complex<double> amplitude(const ModelParams& mp, const StateLabel& l,
                               double energy) {
  const double edge = static_cast<double>(l.m()) * mp.epsilon;
  if (energy < edge) {
    return {0.0, 0.0};
  }
  const double u = energy - edge;
  const double b = l.log_s() + l.m() * mp.alpha * mp.epsilon;
  // The m-dependent prefactors cancel against the normalization, leaving a
  // single Gaussian profile in the support coordinate u.
  const double log_mod = -0.5 * log_gauss_g0(mp.alpha, 2.0 * b) + b * u -
                         0.5 * mp.alpha * u * u;
  return std::polar(std::exp(log_mod), -l.gamma() * u);
}

EvolvedLabel evolve(const ModelParams& mp, const StateLabel& l, double t) {
  StateLabel rotated =
      StateLabel::from_log_s(l.log_s(), l.gamma() + mp.omega * t, l.m());
  const double phase_angle = -l.m() * mp.epsilon * mp.omega * t;
  return {rotated, std::polar(1.0, phase_angle)};
}

std::complex<double> overlap(const ModelParams& mp, const StateLabel& l1,
                             const StateLabel& l2, double tol) {
  const double e0 = std::max(l1.m(), l2.m()) * mp.epsilon;
  const double d1 = e0 - l1.m() * mp.epsilon;
  const double d2 = e0 - l2.m() * mp.epsilon;
  const double b1 = l1.log_s() + l1.m() * mp.alpha * mp.epsilon;
  const double b2 = l2.log_s() + l2.m() * mp.alpha * mp.epsilon;
  const GaussEnvelope env{mp.alpha, b1 + b2 - mp.alpha * (d1 + d2)};
  const auto f = [&](double t_) {
    const double e = e0 + t_;
    return std::conj(amplitude(mp, l1, e)) * amplitude(mp, l2, e);
  };
  return quad_oracle_complex(f, tol, env);
}

}  // namespace cscs
