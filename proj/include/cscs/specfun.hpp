#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace cscs {

/// Error function with exact odd symmetry: evaluated on |x|, sign restored
/// afterwards, so erf(-x) == -erf(x) holds bit for bit.
double erf(double x);

/// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
double erfcx(double x);

// Half-line Gaussian moments
//   G_k(p, q) = \int_0^\infty E^k exp(-p E^2 + q E) dE,  p > 0,  k in {0,1,2}.
// Every closed-form normalization and expectation value in this library
// reduces to ratios of these.
struct GaussTailParams {
  double p;  // quadratic coefficient, must be > 0
  double q;  // linear coefficient
  int k;     // moment order, 0..2
};

// Strictly positive quantity carried as a (log, sign) pair so that values far
// beyond double range stay usable. The moments are positive, hence sign is
// always +1; it is part of the representation so callers can treat the pair
// uniformly.
struct LogScaledValue {
  double log_value;
  int sign;

  bool representable() const;
  /// Linear-domain value; throws std::overflow_error when exp(log_value)
  /// exceeds the floating range.
  double value() const;
};

LogScaledValue gauss_tail_moment_log(const GaussTailParams& g);

/// Linear-domain convenience wrapper around gauss_tail_moment_log.
double gauss_tail_moment(const GaussTailParams& g);

/// log G_0(p, q), always representable.
double log_gauss_g0(double p, double q);

// Envelope shape |f(E)| <= K exp(-p E^2 + q E) on [0, inf). Only (p, q)
// matter: the scale K cancels out of the cutoff selection.
struct GaussEnvelope {
  double p;
  double q;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error);
  double achieved_rel_error() const { return achieved_; }

 private:
  double achieved_;
};

// Adaptive Gauss-Kronrod quadrature of f over [0, inf) for Gaussian-dominated
// integrands. The upper cutoff is chosen so the analytic envelope tail bound
// beyond it falls below tol. This is the verification channel: it never calls
// the closed forms above. Requires tol >= 1e-12; throws QuadratureError with
// the achieved error estimate when the subdivision budget is exhausted.
double quad_oracle(const std::function<double(double)>& f, double tol,
                   const GaussEnvelope& env);

/// Real and imaginary parts integrated separately.
std::complex<double> quad_oracle_complex(
    const std::function<std::complex<double>(double)>& f, double tol,
    const GaussEnvelope& env);

}  // namespace cscs
