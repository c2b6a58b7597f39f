#pragma once

// Independent verification channels used only by the tests. Kept deliberately
// separate from the library implementations they check.

#include <cmath>

namespace test_oracle {

// Maclaurin series in extended precision; adequate for |x| <= 2.
inline long double erf_series(long double x) {
  const long double two_over_sqrt_pi = 1.128379167095512573896158903122L;
  long double sum = 0.0L;
  long double power = x;  // x^(2n+1) (-1)^n / n!
  for (int n = 0; n < 200; ++n) {
    const long double term = power / (2 * n + 1);
    sum += term;
    power *= -x * x / (n + 1);
    if (std::fabs(power) < 1e-25L * std::fabs(sum)) {
      break;
    }
  }
  return two_over_sqrt_pi * sum;
}

// erfc by continued fraction, evaluated bottom-up; use for x >= 2.
inline long double erfc_cf(long double x) {
  const long double sqrt_pi = 1.772453850905516027298167483341L;
  long double tail = 0.0L;
  for (int j = 60; j >= 1; --j) {
    tail = (j * 0.5L) / (x + tail);
  }
  return std::exp(-x * x) / (sqrt_pi * (x + tail));
}

/// exp(x^2) * erfc(x) for x >= 2, overflow-free.
inline long double erfcx_cf(long double x) {
  const long double sqrt_pi = 1.772453850905516027298167483341L;
  long double tail = 0.0L;
  for (int j = 60; j >= 1; --j) {
    tail = (j * 0.5L) / (x + tail);
  }
  return 1.0L / (sqrt_pi * (x + tail));
}

inline double erf_reference(double x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  long double mag;
  if (ax <= 2.0L) {
    mag = erf_series(ax);
  } else {
    mag = 1.0L - erfc_cf(ax);
  }
  return static_cast<double>(x < 0 ? -mag : mag);
}

}  // namespace test_oracle
