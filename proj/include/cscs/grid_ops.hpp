#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cscs/states.hpp"

namespace cscs {

// Uniform energy grid with the ladder shift commensurate by construction:
// shift_steps * delta_e == epsilon, so kernel shifts are exact index moves
// and boundary effects are isolated from interpolation error.
class EnergyGrid {
 public:
  EnergyGrid(double epsilon, double e_max_at_least, int steps_per_shift);

  /// Grid covering the state's Gaussian envelope with an 8-sigma tail margin.
  static EnergyGrid for_state(const ModelParams& mp, const StateLabel& l);

  std::size_t size() const { return n_; }
  double delta_e() const { return delta_e_; }
  double e_max() const { return static_cast<double>(n_) * delta_e_; }
  double epsilon() const { return epsilon_; }
  int shift_steps() const { return shift_steps_; }
  double energy(std::size_t i) const {
    return static_cast<double>(i) * delta_e_;
  }

  bool operator==(const EnergyGrid&) const = default;

 private:
  double epsilon_;
  double delta_e_;
  std::size_t n_;
  int shift_steps_;
};

// Samples psi(E_i), E_i = i * delta_e. The inner product carries delta_e so
// grid sums approximate the continuum integrals without renormalizing.
struct GridState {
  EnergyGrid grid;
  std::vector<std::complex<double>> samples;
};

std::complex<double> inner(const GridState& a, const GridState& b);
double norm(const GridState& a);
GridState sample_state(const ModelParams& mp, const StateLabel& l,
                       const EnergyGrid& grid);

/// Ladder kernel weight C(E, eps) = exp(alpha (eps E - eps^2 / 2)).
double ladder_weight(const ModelParams& mp, double energy);

enum class KernelKind { annihilation, creation, number, hamiltonian };

// Banded kernel on the grid: a single weighted diagonal at band offset -r
// (energy depleting), +r (energy supplying) or 0 (number / Hamiltonian).
// Rows that would walk outside [0, n) are dropped: annihilation projects to
// zero below E = 0, creation truncates above e_max.
class KernelOperator {
 public:
  static KernelOperator make(KernelKind kind, const ModelParams& mp,
                             const EnergyGrid& grid);

  GridState apply(const GridState& psi) const;

  KernelKind kind() const { return kind_; }
  int band_offset() const { return band_offset_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  KernelOperator(KernelKind kind, int band_offset, EnergyGrid grid,
                 std::vector<double> weights);

  KernelKind kind_;
  int band_offset_;
  EnergyGrid grid_;
  std::vector<double> weights_;
};

// Max pointwise residual of the eigenvalue identity
//   (a psi)(E) = (s e^{-i gamma})^eps psi(E)
// over the rows where the shifted sample exists, normalized by max |psi|.
// The shift is inward, so the identity holds per point and the residual is
// floating-point small. m = 0 labels only. Prints a warning with the
// tail-mass estimate when the grid lacks the 8-sigma margin.
double eigenvalue_residual(const ModelParams& mp, const StateLabel& l,
                           const EnergyGrid& grid);

enum class CommutatorPair { a_adag, n_a, n_adag };

// Per-column defect: for each basis vector e_i, the max-abs difference
// between the computed commutator column and the closed-form kernel column
// (restricted to physical rows). Interior columns vanish to rounding;
// columns whose operator chains walk below E = 0 or above e_max carry
// exactly the dropped projection terms.
std::vector<double> commutator_defect(const ModelParams& mp,
                                      const EnergyGrid& grid,
                                      CommutatorPair pair);

struct LimitCheckRow {
  double alpha;
  double dist_identity;  // [a, a+]/(2 alpha eps^2) vs identity
  double dist_lower;     // [N, a]/(2 alpha eps^2) vs -a
  double dist_raise;     // [N, a+]/(2 alpha eps^2) vs +a+
};

// Interior-row operator distances of the scaled commutators from their
// alpha -> 0 limits, for a strictly decreasing alpha sequence. The distances
// shrink proportionally to alpha.
std::vector<LimitCheckRow> limit_check(const EnergyGrid& grid, double epsilon,
                                       std::span<const double> alphas);

}  // namespace cscs
