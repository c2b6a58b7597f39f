#pragma once

#include <complex>

#include "cscs/states.hpp"

namespace cscs {

// formal: the full-line closed forms (boundary terms dropped, the limits the
//         analytic expressions are derived in);
// exact:  truncated-domain expectation values on [0, inf), evaluated through
//         half-line Gaussian moments.
// The ratio exact/formal is the boundary-correction factor.
enum class EvalMode { formal, exact };

// Raw ladder moments, both modes. Exposed so the oracle tests and the
// dispersion assemblies share one set of definitions.
//
// The k-step lowering moments <a^k> shift inward and suffer no boundary
// loss, so their exact and formal values coincide; the diagonal moments pick
// up error-function corrections in exact mode.
std::complex<double> expval_lowering_pow(const ModelParams& mp,
                                         const StateLabel& l, int k,
                                         EvalMode mode);
double expval_number(const ModelParams& mp, const StateLabel& l,
                     EvalMode mode);                       // <a+ a>
double expval_number_sq(const ModelParams& mp, const StateLabel& l,
                        EvalMode mode);                    // <(a+ a)^2> kernel
double expval_a_adag(const ModelParams& mp, const StateLabel& l,
                     EvalMode mode);                       // <a a+>
double expval_adag2_a2(const ModelParams& mp, const StateLabel& l,
                       EvalMode mode);                     // <a+^2 a^2>
double expval_a2_adag2(const ModelParams& mp, const StateLabel& l,
                       EvalMode mode);                     // <a^2 a+^2>

/// Mandel parameter assembled from the number moments of the requested mode.
double mandel_q(const ModelParams& mp, const StateLabel& l, EvalMode mode);

/// Closed form s^{2 eps} e^{4 m alpha eps^2} (e^{2 alpha eps^2} - 1) - 1.
double mandel_q_closed(const ModelParams& mp, const StateLabel& l);

/// Label s* where the formal Mandel parameter crosses zero.
double mandel_zero_crossing(const ModelParams& mp, int m);

// Second-order correlation. The formal value is identically 1 (the closed
// forms cancel algebraically for every label); the exact value is a ratio of
// truncated-domain moments and generally differs from 1.
double g2(const ModelParams& mp, const StateLabel& l, EvalMode mode);

struct DispersionStats {
  double dx_sq;      // dispersion of the first quadrature
  double dy_sq;      // dispersion of the second quadrature
  double comm_mag;   // |<[X, Y]>|
  double residual;   // dx_sq * dy_sq - comm_mag^2 / 4; 0 for intelligent states
};

// Quadratures X = (a + a+)/2, Y = (a - a+)/(2i), assembled from the ladder
// moments of the requested mode. In formal mode the gamma dependence cancels
// and the residual vanishes: the states saturate the uncertainty relation.
DispersionStats quadrature_stats(const ModelParams& mp, const StateLabel& l,
                                 EvalMode mode);

/// Same for the amplitude-squared pair X = (a^2 + a+^2)/2, Y = (a^2 - a+^2)/(2i).
DispersionStats amp_squared_stats(const ModelParams& mp, const StateLabel& l,
                                  EvalMode mode);

/// Closed dispersion forms used by the dual-path checks and the sweeps.
double quad_dispersion_closed(const ModelParams& mp, const StateLabel& l);
double amp2_dispersion_closed(const ModelParams& mp, const StateLabel& l);

enum class Diagnostic { number, number_sq, g2 };

// Paired formal / exact values with their boundary-correction ratio.
struct ObservableReport {
  double formal_value;
  double exact_value;
  double correction_ratio;  // exact / formal
  ModelParams params;
  StateLabel label;
};

ObservableReport report(Diagnostic d, const ModelParams& mp,
                        const StateLabel& l);

// Analytic error-function prediction for the correction ratio; the measured
// ratio must match this to high accuracy, and both approach 1 once every
// error-function argument exceeds ~4.
double correction_ratio_predicted(Diagnostic d, const ModelParams& mp,
                                  const StateLabel& l);

}  // namespace cscs
