#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "cscs/tables.hpp"
#include "cscs/verify.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 2;
  }
  out << text;
  if (!out) {
    std::cerr << "error: failed while writing '" << path << "'\n";
    return 2;
  }
  return 0;
}

void print_results(const std::vector<cscs::CheckResult>& results) {
  for (const auto& c : results) {
    std::printf("%s  %-48s  measured=%.3e  tol=%.3e%s%s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                c.tolerance, c.note.empty() ? "" : "  ",
                c.note.c_str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "cscs: coherent states for continuous spectra -- figure data, "
      "parameter sweeps and verification suites"};
  app.require_subcommand(1);
  app.set_config("--config");

  double alpha = 10.0;
  double epsilon = 0.07;
  double omega = 1.0;
  int m = 0;
  double s = 1.0;
  double gamma = 0.0;
  double tol = 1e-8;
  std::string out_path = "-";
  app.add_option("--alpha", alpha, "Gaussian weight stiffness (> 0)");
  app.add_option("--epsilon", epsilon, "ladder energy quantum (> 0)");
  app.add_option("--omega", omega, "Hamiltonian frequency (> 0)");
  app.add_option("--m", m, "excitation order (>= 0)");
  app.add_option("--s", s, "amplitude label (> 0)");
  app.add_option("--gamma", gamma, "phase label");
  app.add_option("--tol", tol,
                 "moment-identity tolerance override for the axioms suite");
  app.add_option("--out", out_path, "output path ('-' for stdout)");

  auto* fig = app.add_subcommand("figure", "emit one of the six figure tables");
  fig->fallthrough();
  int fig_id = 0;
  int fig_points = 400;
  fig->add_option("id", fig_id, "figure id, 1..6")->required();
  fig->add_option("--points", fig_points, "rows per table");

  auto* sweep = app.add_subcommand("sweep", "sweep a quantity over s");
  sweep->fallthrough();
  std::string quantity = "mandel";
  double s_min = 0.05;
  double s_max = 20.0;
  int sweep_points = 400;
  std::string scale = "linear";
  std::string mode = "formal";
  sweep->add_option("--quantity", quantity,
                    "sigma|mandel|g2|quad_disp|amp2_disp|action");
  sweep->add_option("--s-min", s_min, "lower end of the s grid (> 0)");
  sweep->add_option("--s-max", s_max, "upper end of the s grid");
  sweep->add_option("--points", sweep_points, "rows per table");
  sweep->add_option("--scale", scale, "linear|log");
  sweep->add_option("--mode", mode, "formal|exact");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  std::string suite = "all";
  verify->add_option("suite", suite, "axioms|algebra|closed-forms|all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const cscs::ModelParams params(alpha, epsilon, omega);

    if (*fig) {
      return write_output(cscs::figure_table(fig_id, fig_points), out_path);
    }

    if (*sweep) {
      static const std::map<std::string, cscs::SweepSpec::Quantity> kQuantities{
          {"sigma", cscs::SweepSpec::Quantity::sigma},
          {"mandel", cscs::SweepSpec::Quantity::mandel},
          {"g2", cscs::SweepSpec::Quantity::g2},
          {"quad_disp", cscs::SweepSpec::Quantity::quad_disp},
          {"amp2_disp", cscs::SweepSpec::Quantity::amp2_disp},
          {"action", cscs::SweepSpec::Quantity::action}};
      const auto qit = kQuantities.find(quantity);
      if (qit == kQuantities.end()) {
        std::cerr << "error: unknown quantity '" << quantity << "'\n";
        return 2;
      }
      if (scale != "linear" && scale != "log") {
        std::cerr << "error: scale must be linear or log\n";
        return 2;
      }
      if (mode != "formal" && mode != "exact") {
        std::cerr << "error: mode must be formal or exact\n";
        return 2;
      }
      const cscs::SweepSpec spec{qit->second,
                                 s_min,
                                 s_max,
                                 sweep_points,
                                 scale == "log",
                                 params,
                                 m,
                                 mode == "exact" ? cscs::EvalMode::exact
                                                 : cscs::EvalMode::formal};
      return write_output(cscs::sweep_table(spec), out_path);
    }

    if (*verify) {
      std::vector<cscs::CheckResult> results;
      if (suite == "algebra") {
        results = cscs::verify_algebra(params);
      } else if (suite == "axioms") {
        results = cscs::verify_axioms(params, m, s, gamma, tol);
      } else if (suite == "closed-forms") {
        results = cscs::verify_closed_forms(params);
      } else if (suite == "all") {
        results = cscs::verify_all(params, m, s, gamma, tol);
      } else {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return 2;
      }
      print_results(results);
      return cscs::all_passed(results) ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (...) {
    std::cerr << "error: unexpected failure\n";
    return 2;
  }
}
