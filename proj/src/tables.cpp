#include "cscs/tables.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cscs/axioms.hpp"

namespace cscs {

namespace {

// locale-independent, deterministic for a given double
std::string format_value(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Column {
  std::string name;
  std::function<double(double)> value;
};

std::string render(const std::vector<double>& s_grid,
                   const std::vector<Column>& columns) {
  std::string out = "s";
  for (const auto& c : columns) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  for (const double s : s_grid) {
    out += format_value(s);
    for (const auto& c : columns) {
      out += ',';
      out += format_value(c.value(s));
    }
    out += '\n';
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int j = 0; j < points; ++j) {
    g[j] = std::exp(llo + (lhi - llo) * j / (points - 1));
  }
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int j = 0; j < points; ++j) {
    g[j] = lo + (hi - lo) * j / (points - 1);
  }
  return g;
}

// linear grid on (0, hi]: s = 0 is not a constructible label
std::vector<double> linear_grid_open(double hi, int points) {
  std::vector<double> g(points);
  for (int j = 0; j < points; ++j) {
    g[j] = hi * (j + 1) / points;
  }
  return g;
}

double formal_q(double alpha, double epsilon, int m, double s) {
  return mandel_q(ModelParams(alpha, epsilon), StateLabel(s, 0.0, m),
                  EvalMode::formal);
}

}  // namespace

std::string figure_table(int id, int points) {
  if (points < 2) {
    throw std::invalid_argument("figure_table: need at least 2 points");
  }
  std::vector<Column> cols;
  switch (id) {
    case 1: {
      for (const int m : {1, 3, 12}) {
        cols.push_back({"m=" + std::to_string(m), [m](double s) {
                          return sigma_weight(WeightFunction(10.0, 0.07, m), s);
                        }});
      }
      return render(log_grid(1e-2, 1e2, points), cols);
    }
    case 2: {
      for (const auto& [name, eps] : {std::pair{"eps=0.01", 0.01},
                                      {"eps=0.07", 0.07},
                                      {"eps=0.15", 0.15}}) {
        cols.push_back({name, [eps = eps](double s) {
                          return formal_q(10.0, eps, 0, s);
                        }});
      }
      return render(linear_grid_open(20.0, points), cols);
    }
    case 3: {
      for (const auto& [name, alpha] : {std::pair{"alpha=10", 10.0},
                                        {"alpha=15", 15.0},
                                        {"alpha=20", 20.0}}) {
        cols.push_back({name, [alpha = alpha](double s) {
                          return formal_q(alpha, 0.07, 0, s);
                        }});
      }
      return render(linear_grid_open(20.0, points), cols);
    }
    case 4: {
      for (const auto& [name, eps] : {std::pair{"eps=0.01", 0.01},
                                      {"eps=0.07", 0.07},
                                      {"eps=0.15", 0.15}}) {
        cols.push_back({name, [eps = eps](double s) {
                          return formal_q(3.0, eps, 2, s);
                        }});
      }
      return render(linear_grid_open(20.0, points), cols);
    }
    case 5: {
      for (const auto& [name, alpha] : {std::pair{"alpha=3", 3.0},
                                        {"alpha=5", 5.0},
                                        {"alpha=7", 7.0}}) {
        cols.push_back({name, [alpha = alpha](double s) {
                          return formal_q(alpha, 0.07, 2, s);
                        }});
      }
      return render(linear_grid_open(20.0, points), cols);
    }
    case 6: {
      for (const int m : {2, 5, 7}) {
        cols.push_back({"m=" + std::to_string(m), [m](double s) {
                          return formal_q(3.0, 0.07, m, s);
                        }});
      }
      return render(linear_grid_open(20.0, points), cols);
    }
    default:
      throw std::invalid_argument("figure_table: id must be in 1..6");
  }
}

std::string sweep_table(const SweepSpec& spec) {
  if (!(spec.s_min > 0.0) || !(spec.s_min < spec.s_max)) {
    throw std::invalid_argument("sweep_table: need 0 < s_min < s_max");
  }
  if (spec.points < 2) {
    throw std::invalid_argument("sweep_table: need at least 2 points");
  }
  if (spec.m < 0) {
    throw std::invalid_argument("sweep_table: m must be non-negative");
  }
  const std::vector<double> grid =
      spec.log_scale ? log_grid(spec.s_min, spec.s_max, spec.points)
                     : linear_grid(spec.s_min, spec.s_max, spec.points);
  const ModelParams mp = spec.params;
  const int m = spec.m;

  using Q = SweepSpec::Quantity;
  if (spec.quantity == Q::sigma) {
    return render(grid, {{"sigma", [&mp, m](double s) {
                            return sigma_weight(
                                WeightFunction(mp.alpha, mp.epsilon, m), s);
                          }}});
  }
  if (spec.quantity == Q::action) {
    return render(grid, {{"action", [&mp, m](double s) {
                            return action_identity(mp, m, s);
                          }}});
  }

  const auto eval = [&mp, m, &spec](double s, EvalMode mode) {
    const StateLabel l(s, 0.0, m);
    switch (spec.quantity) {
      case Q::mandel:
        return mandel_q(mp, l, mode);
      case Q::g2:
        return g2(mp, l, mode);
      case Q::quad_disp:
        return quadrature_stats(mp, l, mode).dx_sq;
      case Q::amp2_disp:
        return amp_squared_stats(mp, l, mode).dx_sq;
      default:
        throw std::logic_error("sweep_table: unreachable");
    }
  };

  std::vector<Column> cols;
  cols.push_back(
      {"formal", [&eval](double s) { return eval(s, EvalMode::formal); }});
  if (spec.mode == EvalMode::exact) {
    cols.push_back(
        {"exact", [&eval](double s) { return eval(s, EvalMode::exact); }});
    cols.push_back({"correction_ratio", [&eval](double s) {
                      return eval(s, EvalMode::exact) /
                             eval(s, EvalMode::formal);
                    }});
  }
  return render(grid, cols);
}

}  // namespace cscs
