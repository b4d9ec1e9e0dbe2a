// purify: two-state purification bounds, the perfect-purification test and
// randomized property suites.
//
//   purify sweep --theta-min 0 --theta-max 1.5707963267948966 --steps 200 \
//                --out bounds.csv
//   purify check a.json b.json --eta 0.5 --tol 1e-7
//   purify proptest data-processing --trials 1000 --seed 42

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "purify/io.hpp"
#include "purify/proptest.hpp"
#include "purify/purification.hpp"
#include "purify/sweep.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 64;  // also: input file does not parse
constexpr int kExitDimension = 65;
constexpr int kExitCantCreate = 73;

int run_sweep(double theta_min, double theta_max, int steps,
              const std::string& out_path) {
  std::vector<purify::SweepRow> rows;
  try {
    rows = purify::sweep(theta_min, theta_max, steps);
  } catch (const std::invalid_argument& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return kExitUsage;
  }
  if (out_path.empty() || out_path == "-") {
    purify::write_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "sweep: cannot write " << out_path << '\n';
    return kExitCantCreate;
  }
  purify::write_csv(out, rows);
  out.close();
  if (!out) {
    std::cerr << "sweep: write to " << out_path << " failed\n";
    return kExitCantCreate;
  }
  return 0;
}

int run_check(const std::string& file_a, const std::string& file_b,
              double eta, double tol) {
  if (!(eta > 0.0 && eta < 1.0)) {
    std::cerr << "check: --eta must lie in (0, 1)\n";
    return kExitUsage;
  }
  std::optional<purify::DensityMatrix> a;
  std::optional<purify::DensityMatrix> b;
  try {
    a = purify::read_density_matrix(file_a);
    b = purify::read_density_matrix(file_b);
  } catch (const purify::FormatError& e) {
    std::cerr << "check: " << e.what() << '\n';
    return kExitUsage;
  }
  if (a->dim() != b->dim()) {
    std::cerr << "check: dimension mismatch (" << a->dim() << " vs "
              << b->dim() << ")\n";
    return kExitDimension;
  }
  const purify::PurifiabilityVerdict verdict =
      purify::can_purify_perfectly(*a, *b, tol);
  purify::Json report = purify::to_json(verdict);
  report["bounds"] = purify::to_json(purify::delta_bounds(*a, *b, eta, 1.0 - eta));
  std::cout << report.dump(2) << '\n';
  switch (verdict.verdict) {
    case purify::Verdict::Yes:
      return kExitYes;
    case purify::Verdict::No:
      return kExitNo;
    case purify::Verdict::Undetermined:
      return kExitUndetermined;
  }
  return kExitUndetermined;
}

int run_proptest(const std::string& suite, std::size_t trials,
                 std::uint64_t seed) {
  purify::SuiteReport report;
  try {
    report = purify::run_suite(suite, trials, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "proptest: " << e.what() << "\nknown suites:";
    for (const auto& name : purify::suite_names()) std::cerr << ' ' << name;
    std::cerr << '\n';
    return kExitUsage;
  }
  std::cout << (report.passed() ? "PASS" : "FAIL") << ' ' << report.suite
            << ": " << report.trials - report.failures << '/' << report.trials
            << " trials (seed " << seed << ")\n";
  if (!report.passed()) {
    std::cout << purify::Json{{"suite", report.suite},
                              {"seed", seed},
                              {"failures", report.failures},
                              {"counterexamples", report.counterexamples}}
                     .dump(2)
              << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical purification of two-state sets: bounds, tests, "
               "property suites"};
  app.require_subcommand(1);

  double theta_min = 0.0;
  double theta_max = std::numbers::pi / 2;
  int steps = 200;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Write the bound curves as CSV");
  sweep->add_option("--theta-min", theta_min, "First grid angle (radians)");
  sweep->add_option("--theta-max", theta_max, "Last grid angle (radians)");
  sweep->add_option("--steps", steps, "Grid points, endpoints included");
  sweep->add_option("--out", out_path, "CSV path (stdout if omitted)");

  std::string file_a;
  std::string file_b;
  double eta = 0.5;
  double tol = purify::kTwoStateTol;
  auto* check =
      app.add_subcommand("check", "Test whether two states purify perfectly");
  check->add_option("a", file_a, "First density matrix (JSON)")->required();
  check->add_option("b", file_b, "Second density matrix (JSON)")->required();
  check->add_option("--eta", eta, "Prior of the first state");
  check->add_option("--tol", tol, "Tolerance on |D - wcd|");

  std::string suite;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  auto* proptest = app.add_subcommand("proptest", "Run a property suite");
  proptest->add_option("suite", suite, "Suite name")->required();
  proptest->add_option("--trials", trials, "Number of random trials");
  proptest->add_option("--seed", seed, "Base seed");

  CLI11_PARSE(app, argc, argv);

  if (*sweep) return run_sweep(theta_min, theta_max, steps, out_path);
  if (*check) return run_check(file_a, file_b, eta, tol);
  return run_proptest(suite, trials, seed);
}
