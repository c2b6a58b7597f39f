#pragma once

#include <cmath>
#include <complex>

#include "cscs/specfun.hpp"

namespace cscs {

// Spectrum and deformation parameters shared by every formula: the Gaussian
// weight stiffness alpha, the ladder energy quantum epsilon and the
// Hamiltonian frequency omega. alpha > 0 is what makes every state
// normalizable at all labels.
struct ModelParams {
  double alpha;
  double epsilon;
  double omega;

  explicit ModelParams(double alpha_, double epsilon_, double omega_ = 1.0);
};

// Coherent-state label (s, gamma) plus the excitation order m; m = 0 is the
// plain coherent state. s is stored as log s: the formulas consume log s, and
// s^(2E) overflows double precision long before the physics degenerates.
// s = 0 is rejected; closed-form limits at s -> 0 are a property of the
// formal observables, not of constructible states.
class StateLabel {
 public:
  StateLabel(double s, double gamma, int m = 0);
  static StateLabel from_log_s(double log_s, double gamma, int m = 0);

  double s() const { return std::exp(log_s_); }
  double log_s() const { return log_s_; }
  double gamma() const { return gamma_; }
  int m() const { return m_; }

 private:
  StateLabel() = default;

  double log_s_ = 0.0;
  double gamma_ = 0.0;
  int m_ = 0;
};

/// Normalization constant of the plain coherent state, 1/sqrt(G_0(alpha, 2 log s)).
double normalization_coherent(const ModelParams& mp, double s);

/// Normalization constant of the m-fold excited state, log-domain evaluated.
double normalization_excited(const ModelParams& mp, double s, int m);

/// log of the normalization constant for an arbitrary label.
double log_normalization(const ModelParams& mp, const StateLabel& l);

// Energy-density amplitude of |s, gamma, m>: identically zero below the
// support edge m * epsilon, a phase-twisted Gaussian profile above it.
// Includes the normalization constant.
std::complex<double> amplitude(const ModelParams& mp, const StateLabel& l,
                               double energy);

struct EvolvedLabel {
  StateLabel label;
  std::complex<double> phase;
};

// exp(-iHt)|s,gamma,m> = phase * |s, gamma + omega t, m> with
// phase = exp(-i m epsilon omega t). Pure label arithmetic, exact.
EvolvedLabel evolve(const ModelParams& mp, const StateLabel& l, double t);

// <l1|l2> by quadrature over the common support; real and imaginary parts
// are integrated separately. Cross-m overlaps are computed on the common
// support [max(m1, m2) * epsilon, inf).
std::complex<double> overlap(const ModelParams& mp, const StateLabel& l1,
                             const StateLabel& l2, double tol = 1e-10);

}  // namespace cscs
