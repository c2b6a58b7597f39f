#include "cscs/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace cscs {

namespace {

// The dispersion assemblies subtract nearly equal second moments; the
// centered differences amplify rounding by ~1/(alpha eps^2), so the moment
// arithmetic runs in extended precision.
using real_t = long double;
using complex_t = std::complex<real_t>;

struct MomentBasis {
  real_t log_s;
  real_t alpha;
  real_t eps;
  real_t m;
  real_t ae2;      // alpha * eps^2
  double log_g0;   // log G_0(alpha, 2b), exact mode only
  double log_g2e;  // log G_0(alpha, 2b + 2 alpha eps)
  double log_g4e;  // log G_0(alpha, 2b + 4 alpha eps)
};

MomentBasis make_basis(const ModelParams& mp, const StateLabel& l,
                       EvalMode mode) {
  MomentBasis mb{};
  mb.log_s = l.log_s();
  mb.alpha = mp.alpha;
  mb.eps = mp.epsilon;
  mb.m = static_cast<real_t>(l.m());
  mb.ae2 = mb.alpha * mb.eps * mb.eps;
  if (mode == EvalMode::exact) {
    const double q0 = 2.0 * (l.log_s() + l.m() * mp.alpha * mp.epsilon);
    mb.log_g0 = log_gauss_g0(mp.alpha, q0);
    mb.log_g2e = log_gauss_g0(mp.alpha, q0 + 2.0 * mp.alpha * mp.epsilon);
    mb.log_g4e = log_gauss_g0(mp.alpha, q0 + 4.0 * mp.alpha * mp.epsilon);
  }
  return mb;
}

// <a^k>: inward shift, identical in both modes.
complex_t lowering_pow(const MomentBasis& mb, const StateLabel& l, int k) {
  const real_t mag =
      std::exp(k * mb.eps * mb.log_s + 2.0L * k * mb.m * mb.ae2);
  const real_t angle = -static_cast<real_t>(k) * l.gamma() * mb.eps;
  return std::polar(mag, angle);
}

// Diagonal kernels exp(shift + c E_phys) with c = 2 alpha eps (single step)
// or 4 alpha eps (double step). formal: full-line Gaussian ratio
// exp(c m eps + c b / alpha + c^2/(4 alpha)); exact: half-line G_0 ratio.
real_t diagonal_single(const MomentBasis& mb, real_t shift, EvalMode mode) {
  const real_t base = shift + 2.0L * mb.m * mb.ae2;
  if (mode == EvalMode::formal) {
    return std::exp(base + 2.0L * mb.eps * mb.log_s + 2.0L * mb.m * mb.ae2 +
                    mb.ae2);
  }
  return std::exp(base + static_cast<real_t>(mb.log_g2e - mb.log_g0));
}

real_t diagonal_double(const MomentBasis& mb, real_t shift, EvalMode mode) {
  const real_t base = shift + 4.0L * mb.m * mb.ae2;
  if (mode == EvalMode::formal) {
    return std::exp(base + 4.0L * mb.eps * mb.log_s + 4.0L * mb.m * mb.ae2 +
                    4.0L * mb.ae2);
  }
  return std::exp(base + static_cast<real_t>(mb.log_g4e - mb.log_g0));
}

}  // namespace

std::complex<double> expval_lowering_pow(const ModelParams& mp,
                                         const StateLabel& l, int k,
                                         EvalMode mode) {
  if (k < 0) {
    throw std::invalid_argument("expval_lowering_pow: k must be >= 0");
  }
  (void)mode;  // inward shift: exact equals formal
  const MomentBasis mb = make_basis(mp, l, EvalMode::formal);
  const complex_t v = lowering_pow(mb, l, k);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double expval_number(const ModelParams& mp, const StateLabel& l,
                     EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  return static_cast<double>(diagonal_single(mb, -mb.ae2, mode));
}

double expval_a_adag(const ModelParams& mp, const StateLabel& l,
                     EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  return static_cast<double>(diagonal_single(mb, +mb.ae2, mode));
}

double expval_number_sq(const ModelParams& mp, const StateLabel& l,
                        EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  return static_cast<double>(diagonal_double(mb, -2.0L * mb.ae2, mode));
}

double expval_adag2_a2(const ModelParams& mp, const StateLabel& l,
                       EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  return static_cast<double>(diagonal_double(mb, -4.0L * mb.ae2, mode));
}

double expval_a2_adag2(const ModelParams& mp, const StateLabel& l,
                       EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  return static_cast<double>(diagonal_double(mb, +4.0L * mb.ae2, mode));
}

double mandel_q(const ModelParams& mp, const StateLabel& l, EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  const real_t n1 = diagonal_single(mb, -mb.ae2, mode);
  const real_t n2 = diagonal_double(mb, -2.0L * mb.ae2, mode);
  return static_cast<double>((n2 - n1 * n1) / n1 - 1.0L);
}

double mandel_q_closed(const ModelParams& mp, const StateLabel& l) {
  const double ae2 = mp.alpha * mp.epsilon * mp.epsilon;
  return std::exp(2.0 * mp.epsilon * l.log_s() + 4.0 * l.m() * ae2) *
             std::expm1(2.0 * ae2) -
         1.0;
}

double mandel_zero_crossing(const ModelParams& mp, int m) {
  // s^{2 eps} e^{4 m alpha eps^2} (e^{2 alpha eps^2} - 1) = 1
  const double ae2 = mp.alpha * mp.epsilon * mp.epsilon;
  const double log_s =
      (-std::log(std::expm1(2.0 * ae2)) - 4.0 * m * ae2) / (2.0 * mp.epsilon);
  return std::exp(log_s);
}

double g2(const ModelParams& mp, const StateLabel& l, EvalMode mode) {
  if (mode == EvalMode::formal) {
    // s^{4 eps} e^{8 m alpha eps^2} / (s^{2 eps} e^{4 m alpha eps^2})^2
    return 1.0;
  }
  const double q0 = 2.0 * (l.log_s() + l.m() * mp.alpha * mp.epsilon);
  const double ae = mp.alpha * mp.epsilon;
  return std::exp(-2.0 * mp.alpha * mp.epsilon * mp.epsilon +
                  log_gauss_g0(mp.alpha, q0 + 4.0 * ae) +
                  log_gauss_g0(mp.alpha, q0) -
                  2.0 * log_gauss_g0(mp.alpha, q0 + 2.0 * ae));
}

DispersionStats quadrature_stats(const ModelParams& mp, const StateLabel& l,
                                 EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  const complex_t a1 = lowering_pow(mb, l, 1);
  const complex_t a2 = lowering_pow(mb, l, 2);
  const real_t a_adag = diagonal_single(mb, +mb.ae2, mode);
  const real_t adag_a = diagonal_single(mb, -mb.ae2, mode);

  const complex_t centered_sq = a2 - a1 * a1;
  const real_t c_aad = a_adag - std::norm(a1);
  const real_t c_ada = adag_a - std::norm(a1);
  const real_t dx = 0.25L * (2.0L * centered_sq.real() + c_aad + c_ada);
  const real_t dy = 0.25L * (-2.0L * centered_sq.real() + c_aad + c_ada);
  const real_t comm = 0.5L * std::fabs(a_adag - adag_a);
  const real_t residual = dx * dy - 0.25L * comm * comm;
  return {static_cast<double>(dx), static_cast<double>(dy),
          static_cast<double>(comm), static_cast<double>(residual)};
}

DispersionStats amp_squared_stats(const ModelParams& mp, const StateLabel& l,
                                  EvalMode mode) {
  const MomentBasis mb = make_basis(mp, l, mode);
  const complex_t a2 = lowering_pow(mb, l, 2);
  const complex_t a4 = lowering_pow(mb, l, 4);
  const real_t fwd = diagonal_double(mb, +4.0L * mb.ae2, mode);  // <a^2 a+^2>
  const real_t bwd = diagonal_double(mb, -4.0L * mb.ae2, mode);  // <a+^2 a^2>

  const complex_t centered_sq = a4 - a2 * a2;
  const real_t c_fwd = fwd - std::norm(a2);
  const real_t c_bwd = bwd - std::norm(a2);
  const real_t dx = 0.25L * (2.0L * centered_sq.real() + c_fwd + c_bwd);
  const real_t dy = 0.25L * (-2.0L * centered_sq.real() + c_fwd + c_bwd);
  const real_t comm = 0.5L * std::fabs(fwd - bwd);
  const real_t residual = dx * dy - 0.25L * comm * comm;
  return {static_cast<double>(dx), static_cast<double>(dy),
          static_cast<double>(comm), static_cast<double>(residual)};
}

double quad_dispersion_closed(const ModelParams& mp, const StateLabel& l) {
  const double ae2 = mp.alpha * mp.epsilon * mp.epsilon;
  return 0.25 *
         std::exp(2.0 * mp.epsilon * l.log_s() + 4.0 * l.m() * ae2) *
         std::expm1(2.0 * ae2);
}

double amp2_dispersion_closed(const ModelParams& mp, const StateLabel& l) {
  const double ae2 = mp.alpha * mp.epsilon * mp.epsilon;
  return 0.25 *
         std::exp(4.0 * mp.epsilon * l.log_s() + 8.0 * l.m() * ae2) *
         std::expm1(8.0 * ae2);
}

ObservableReport report(Diagnostic d, const ModelParams& mp,
                        const StateLabel& l) {
  double formal = 0.0;
  double exact = 0.0;
  switch (d) {
    case Diagnostic::number:
      formal = expval_number(mp, l, EvalMode::formal);
      exact = expval_number(mp, l, EvalMode::exact);
      break;
    case Diagnostic::number_sq:
      formal = expval_number_sq(mp, l, EvalMode::formal);
      exact = expval_number_sq(mp, l, EvalMode::exact);
      break;
    case Diagnostic::g2:
      formal = g2(mp, l, EvalMode::formal);
      exact = g2(mp, l, EvalMode::exact);
      break;
  }
  return {formal, exact, exact / formal, mp, l};
}

double correction_ratio_predicted(Diagnostic d, const ModelParams& mp,
                                  const StateLabel& l) {
  const double sq = std::sqrt(mp.alpha);
  const double x0 = (l.log_s() + l.m() * mp.alpha * mp.epsilon) / sq;
  const double step = sq * mp.epsilon;
  // 1 + erf(x) written as erfc(-x) to keep the deep-tail ratios accurate
  const auto one_plus_erf = [](double x) { return std::erfc(-x); };
  switch (d) {
    case Diagnostic::number:
      return one_plus_erf(x0 + step) / one_plus_erf(x0);
    case Diagnostic::number_sq:
      return one_plus_erf(x0 + 2.0 * step) / one_plus_erf(x0);
    case Diagnostic::g2:
      return one_plus_erf(x0 + 2.0 * step) * one_plus_erf(x0) /
             (one_plus_erf(x0 + step) * one_plus_erf(x0 + step));
  }
  throw std::logic_error("correction_ratio_predicted: unknown diagnostic");
}

}  // namespace cscs
