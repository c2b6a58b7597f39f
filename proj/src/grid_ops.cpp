#include "cscs/grid_ops.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <utility>

namespace cscs {

namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 20;

// epsilon must be an integer number of grid steps; interpolation would
// contaminate the boundary bookkeeping this module exists to measure.
int commensurate_steps(double epsilon, double delta_e) {
  const double ratio = epsilon / delta_e;
  const long long r = std::llround(ratio);
  if (r < 1 || std::fabs(ratio - static_cast<double>(r)) > 1e-9 * ratio) {
    throw std::invalid_argument(
        "grid_ops: epsilon is not commensurate with the grid spacing");
  }
  return static_cast<int>(r);
}

}  // namespace

EnergyGrid::EnergyGrid(double epsilon, double e_max_at_least,
                       int steps_per_shift) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("EnergyGrid: epsilon must be positive");
  }
  if (steps_per_shift < 1) {
    throw std::invalid_argument("EnergyGrid: need at least one step per shift");
  }
  if (!(e_max_at_least > 0.0)) {
    throw std::invalid_argument("EnergyGrid: e_max must be positive");
  }
  epsilon_ = epsilon;
  shift_steps_ = steps_per_shift;
  delta_e_ = epsilon / static_cast<double>(steps_per_shift);
  n_ = static_cast<std::size_t>(std::ceil(e_max_at_least / delta_e_));
  n_ = std::max<std::size_t>(n_, static_cast<std::size_t>(steps_per_shift) + 1);
  if (n_ > kMaxGridPoints) {
    throw std::invalid_argument("EnergyGrid: grid would exceed 2^20 points");
  }
}

EnergyGrid EnergyGrid::for_state(const ModelParams& mp, const StateLabel& l) {
  const double e_max = std::max(l.log_s() / mp.alpha, 0.0) +
                       8.0 / std::sqrt(mp.alpha) +
                       (l.m() + 1) * mp.epsilon;
  int steps = 4;
  while (steps > 1 &&
         std::ceil(e_max * steps / mp.epsilon) > double(kMaxGridPoints)) {
    --steps;
  }
  return EnergyGrid(mp.epsilon, e_max, steps);
}

std::complex<double> inner(const GridState& a, const GridState& b) {
  if (!(a.grid == b.grid) || a.samples.size() != b.samples.size()) {
    throw std::invalid_argument("inner: grid mismatch");
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    acc += std::conj(a.samples[i]) * b.samples[i];
  }
  return acc * a.grid.delta_e();
}

double norm(const GridState& a) { return std::sqrt(inner(a, a).real()); }

GridState sample_state(const ModelParams& mp, const StateLabel& l,
                       const EnergyGrid& grid) {
  GridState out{grid, std::vector<std::complex<double>>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.samples[i] = amplitude(mp, l, grid.energy(i));
  }
  return out;
}

double ladder_weight(const ModelParams& mp, double energy) {
  return std::exp(mp.alpha *
                  (mp.epsilon * energy - 0.5 * mp.epsilon * mp.epsilon));
}

KernelOperator::KernelOperator(KernelKind kind, int band_offset,
                               EnergyGrid grid, std::vector<double> weights)
    : kind_(kind),
      band_offset_(band_offset),
      grid_(grid),
      weights_(std::move(weights)) {}

KernelOperator KernelOperator::make(KernelKind kind, const ModelParams& mp,
                                    const EnergyGrid& grid) {
  const int r = commensurate_steps(mp.epsilon, grid.delta_e());
  const std::size_t n = grid.size();
  std::vector<double> w(n, 0.0);
  int band = 0;
  switch (kind) {
    case KernelKind::annihilation:
      band = -r;
      for (std::size_t i = 0; i + r < n; ++i) {
        w[i] = ladder_weight(mp, grid.energy(i) + mp.epsilon);
      }
      break;
    case KernelKind::creation:
      band = +r;
      for (std::size_t i = r; i < n; ++i) {
        w[i] = ladder_weight(mp, grid.energy(i));
      }
      break;
    case KernelKind::number:
      band = 0;
      for (std::size_t i = r; i < n; ++i) {
        const double c = ladder_weight(mp, grid.energy(i));
        w[i] = c * c;
      }
      break;
    case KernelKind::hamiltonian:
      band = 0;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = mp.omega * grid.energy(i);
      }
      break;
  }
  return KernelOperator(kind, band, grid, std::move(w));
}

GridState KernelOperator::apply(const GridState& psi) const {
  if (!(psi.grid == grid_) || psi.samples.size() != weights_.size()) {
    throw std::invalid_argument("KernelOperator: grid mismatch");
  }
  const std::size_t n = weights_.size();
  GridState out{grid_, std::vector<std::complex<double>>(n, {0.0, 0.0})};
  for (std::size_t i = 0; i < n; ++i) {
    const long long j = static_cast<long long>(i) - band_offset_;
    if (j >= 0 && j < static_cast<long long>(n)) {
      out.samples[i] = weights_[i] * psi.samples[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

double eigenvalue_residual(const ModelParams& mp, const StateLabel& l,
                           const EnergyGrid& grid) {
  if (l.m() != 0) {
    throw std::invalid_argument("eigenvalue_residual: m = 0 labels only");
  }
  const double mu = l.log_s() / mp.alpha;
  const double required = mu + 8.0 / std::sqrt(mp.alpha) + mp.epsilon;
  if (grid.e_max() < required) {
    const double tail =
        std::erfc(std::sqrt(mp.alpha) * (grid.e_max() - mu)) /
        (1.0 + cscs::erf(std::sqrt(mp.alpha) * mu));
    std::cerr << "eigenvalue_residual: grid e_max " << grid.e_max()
              << " is below the tail margin " << required
              << "; relative tail mass estimate " << tail << "\n";
  }

  const GridState psi = sample_state(mp, l, grid);
  const auto lower = KernelOperator::make(KernelKind::annihilation, mp, grid);
  const GridState apsi = lower.apply(psi);
  const std::complex<double> eigenvalue =
      std::polar(std::exp(mp.epsilon * l.log_s()), -l.gamma() * mp.epsilon);

  double scale = 0.0;
  for (const auto& v : psi.samples) {
    scale = std::max(scale, std::abs(v));
  }
  const std::size_t r = static_cast<std::size_t>(grid.shift_steps());
  double worst = 0.0;
  for (std::size_t i = 0; i + r < grid.size(); ++i) {
    worst = std::max(worst,
                     std::abs(apsi.samples[i] - eigenvalue * psi.samples[i]));
  }
  return worst / scale;
}

namespace {

GridState basis_vector(const EnergyGrid& grid, std::size_t c) {
  GridState e{grid, std::vector<std::complex<double>>(grid.size(), {0.0, 0.0})};
  e.samples[c] = {1.0, 0.0};
  return e;
}

}  // namespace

std::vector<double> commutator_defect(const ModelParams& mp,
                                      const EnergyGrid& grid,
                                      CommutatorPair pair) {
  const int r = commensurate_steps(mp.epsilon, grid.delta_e());
  const std::size_t n = grid.size();
  const auto lower = KernelOperator::make(KernelKind::annihilation, mp, grid);
  const auto raise = KernelOperator::make(KernelKind::creation, mp, grid);
  const auto num = KernelOperator::make(KernelKind::number, mp, grid);

  const KernelOperator& first = (pair == CommutatorPair::a_adag) ? lower : num;
  const KernelOperator& second = (pair == CommutatorPair::a_adag) ? raise
                                 : (pair == CommutatorPair::n_a)  ? lower
                                                                  : raise;
  const double ae2 = mp.alpha * mp.epsilon * mp.epsilon;
  const double band_factor = std::expm1(2.0 * ae2);

  std::vector<double> defect(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    const GridState e = basis_vector(grid, c);
    GridState fwd = first.apply(second.apply(e));
    const GridState bwd = second.apply(first.apply(e));
    for (std::size_t j = 0; j < n; ++j) {
      fwd.samples[j] -= bwd.samples[j];
    }
    // subtract the closed-form kernel column, bilateral form restricted to
    // the physical rows
    const double ec = grid.energy(c);
    switch (pair) {
      case CommutatorPair::a_adag:
        fwd.samples[c] -=
            2.0 * std::sinh(ae2) * std::exp(2.0 * mp.alpha * mp.epsilon * ec);
        break;
      case CommutatorPair::n_a:
        if (c >= static_cast<std::size_t>(r)) {
          fwd.samples[c - r] += band_factor * std::exp(3.0 * mp.alpha *
                                                           mp.epsilon * ec -
                                                       3.5 * ae2);
        }
        break;
      case CommutatorPair::n_adag:
        if (c + r < n) {
          fwd.samples[c + r] -=
              band_factor * std::exp(3.0 * mp.alpha * mp.epsilon *
                                         (ec + mp.epsilon) -
                                     3.5 * ae2);
        }
        break;
    }
    double worst = 0.0;
    for (const auto& v : fwd.samples) {
      worst = std::max(worst, std::abs(v));
    }
    defect[c] = worst;
  }
  return defect;
}

std::vector<LimitCheckRow> limit_check(const EnergyGrid& grid, double epsilon,
                                       std::span<const double> alphas) {
  if (alphas.empty()) {
    throw std::invalid_argument("limit_check: empty alpha sequence");
  }
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0)) {
      throw std::invalid_argument(
          "limit_check: alphas must be strictly positive (the scaled "
          "commutators divide by alpha)");
    }
    if (k > 0 && !(alphas[k] < alphas[k - 1])) {
      throw std::invalid_argument(
          "limit_check: alphas must be strictly decreasing");
    }
  }

  const int r = commensurate_steps(epsilon, grid.delta_e());
  const std::size_t n = grid.size();
  std::vector<LimitCheckRow> rows;
  rows.reserve(alphas.size());

  for (const double alpha : alphas) {
    const ModelParams mp(alpha, epsilon, 1.0);
    const auto lower = KernelOperator::make(KernelKind::annihilation, mp, grid);
    const auto raise = KernelOperator::make(KernelKind::creation, mp, grid);
    const auto num = KernelOperator::make(KernelKind::number, mp, grid);
    const double scale = 2.0 * alpha * epsilon * epsilon;

    LimitCheckRow row{alpha, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < n; ++c) {
      const GridState e = basis_vector(grid, c);

      if (c >= static_cast<std::size_t>(r) && c + r < n) {
        GridState comm = lower.apply(raise.apply(e));
        const GridState other = raise.apply(lower.apply(e));
        const std::complex<double> coeff =
            (comm.samples[c] - other.samples[c]) / scale;
        row.dist_identity =
            std::max(row.dist_identity, std::abs(coeff - 1.0));
      }
      if (c >= 2 * static_cast<std::size_t>(r)) {
        GridState comm = num.apply(lower.apply(e));
        const GridState other = lower.apply(num.apply(e));
        const std::complex<double> coeff =
            (comm.samples[c - r] - other.samples[c - r]) / scale;
        row.dist_lower = std::max(
            row.dist_lower,
            std::abs(coeff + ladder_weight(mp, grid.energy(c))));
      }
      if (c >= static_cast<std::size_t>(r) && c + r < n) {
        GridState comm = num.apply(raise.apply(e));
        const GridState other = raise.apply(num.apply(e));
        const std::complex<double> coeff =
            (comm.samples[c + r] - other.samples[c + r]) / scale;
        row.dist_raise = std::max(
            row.dist_raise,
            std::abs(coeff - ladder_weight(mp, grid.energy(c) + epsilon)));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cscs
