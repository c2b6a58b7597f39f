#pragma once

#include "cscs/grid_ops.hpp"
#include "cscs/states.hpp"

namespace cscs {

// Parameters of the identity-resolution weight sigma_m(s).
struct WeightFunction {
  double alpha;
  double epsilon;
  int m;

  WeightFunction(double alpha_, double epsilon_, int m_);
};

/// sigma_m(s) = [1 + erf((m alpha eps + log s) / sqrt(alpha))] / (2 s alpha);
/// strictly positive for every s > 0.
double sigma_weight(const WeightFunction& w, double s);

struct MomentResidual {
  double probe_energy;
  double lhs;        // quadrature side
  double rhs;        // closed Gaussian target
  double rel_error;  // |lhs - rhs| / rhs
};

// Power-moment identity of the resolution weight at one probe energy. The
// quadrature side substitutes u = log s and integrates the resulting
// Gaussian over the full line, split into two half-line oracle calls; it
// never touches the closed forms.
MomentResidual moment_check(const WeightFunction& w, double probe_energy,
                            double tol = 1e-8);

// Max diagonal relative defect of the resolved identity on the grid sector
// E >= m * epsilon. The phase integral is performed analytically (it yields
// the exact delta), so off-diagonals vanish identically and the check
// reduces to the moment identity at each grid energy.
double resolution_check(const WeightFunction& w, const EnergyGrid& grid,
                        double tol = 1e-9);

// Diagnostic variant: the phase integral truncated at +-gamma_cutoff leaves
// a Dirichlet kernel instead of the delta. Reports the relative defect of
// the assembled operator against a sampled test state; decays like
// 1/gamma_cutoff.
double resolution_check_truncated(const WeightFunction& w,
                                  const EnergyGrid& grid, double gamma_cutoff,
                                  double tol = 1e-9);

// Action variable J(s) = <H>/omega: the mean of a Gaussian of center
// (log s + m alpha eps)/alpha truncated to [0, inf). Strictly increasing
// in s.
double action_identity(const ModelParams& mp, int m, double s);

// Inverse of s -> J(s) by bracketed bisection on log s, seeded from the
// large-s asymptote (log s + m alpha eps)/alpha. Throws std::domain_error
// for targets outside the attainable range (0, inf).
double invert_action(const ModelParams& mp, int m, double j_target,
                     double tol = 1e-10);

}  // namespace cscs
