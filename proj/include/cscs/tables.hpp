#pragma once

#include <string>

#include "cscs/observables.hpp"

namespace cscs {

struct SweepSpec {
  enum class Quantity { sigma, mandel, g2, quad_disp, amp2_disp, action };

  Quantity quantity;
  double s_min;
  double s_max;
  int points;
  bool log_scale;
  ModelParams params;
  int m;
  EvalMode mode;
};

// CSV table for one of the six standard figure recipes:
//   1: sigma_m(s), eps=0.07, alpha=10, m in {1,3,12}, log s grid [1e-2, 1e2]
//   2: Q(s), m=0, alpha=10, eps in {0.01, 0.07, 0.15}, linear s in (0, 20]
//   3: Q(s), m=0, eps=0.07, alpha in {10, 15, 20}
//   4: Q_m(s), alpha=3, m=2, eps in {0.01, 0.07, 0.15}
//   5: Q_m(s), eps=0.07, m=2, alpha in {3, 5, 7}
//   6: Q_m(s), eps=0.07, alpha=3, m in {2, 5, 7}
// One header line, then `points` rows; 17 significant digits; deterministic.
std::string figure_table(int id, int points = 400);

// CSV sweep of the requested quantity over an s grid. Dual-mode quantities
// emit a single formal column in formal mode and formal/exact/ratio columns
// in exact mode; sigma and action are single-channel.
std::string sweep_table(const SweepSpec& spec);

}  // namespace cscs
