// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "splinerom/bspline.hpp"
#include "splinerom/cli.hpp"
#include "splinerom/datapath.hpp"
#include "splinerom/error_analysis.hpp"
#include "splinerom/fixed_point.hpp"

using namespace splinerom;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

int run_cli_quiet(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "splinerom");
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli::run_cli(args, o, e);
  out = o.str();
  return code;
}

bool within_rel(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

Outcome bound_reproduction() {
  std::string out;
  if (run_cli_quiet({"compare", "--function", "ln1p", "--h", "1/32", "--probes", "200"}, out) !=
      0) {
    return {false, "compare exited nonzero"};
  }
  const auto report = nlohmann::json::parse(out);
  const double spline = report["bounds_m1"]["spline"].get<double>();
  const double poly = report["bounds_m1"]["poly"].get<double>();
  // exact values: 5/(384 * 32^4) and 1/(24 * 32^4)
  const double spline_exact = 5.0 / (384.0 * 1048576.0);
  const double poly_exact = 1.0 / (24.0 * 1048576.0);
  const bool ok = within_rel(spline, spline_exact, 0.01) && within_rel(poly, poly_exact, 0.01) &&
                  report["bound_ratio_exact"] == "16/5" && report["bound_ratio"] == 3.2 &&
                  exact_bound_ratio() == Rational{16, 5};
  return {ok, "spline=" + num(spline) + " poly=" + num(poly) +
                  " ratio=" + report["bound_ratio_exact"].get<std::string>()};
}

Outcome speed_ratio() {
  const DatapathConfig config(build_rom_bank(10, FixedPointFormat::default_format()));
  const CycleReport report = cycle_report(1000, config);
  std::string out;
  run_cli_quiet({"compare", "--function", "ln1p", "--probes", "200"}, out);
  const double ratio = nlohmann::json::parse(out)["cycles"]["ratio"].get<double>();
  const bool ok = report.cycles_per_sample == 2 && kHornerCycles == 6 && ratio == 3.0 &&
                  static_cast<double>(kHornerCycles) / report.cycles_per_sample == 3.0;
  return {ok, "datapath=" + std::to_string(report.cycles_per_sample) +
                  " horner=" + std::to_string(kHornerCycles) + " ratio=" + num(ratio)};
}

Outcome partition_of_unity() {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    double sum = 0.0;
    for (int k = -4; k <= 4; ++k) sum += eval_basis(x - k);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return {worst <= 1e-12, "max deviation=" + num(worst)};
}

Outcome quasi_interpolation_accuracy() {
  const double error =
      spline_interior_error([](double x) { return std::log1p(x); }, 0.0, 2.0, 1.0 / 32, 10000);
  return {error <= 1.25e-8, "interior max error=" + num(error) + " (target 1.25e-08)"};
}

Outcome convergence() {
  const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32};
  std::string detail;
  bool ok = true;
  for (const char* name : {"ln1p", "sin"}) {
    const auto order = convergence_order(builtin_function(name).value, hs, 0.0, 2.0);
    const bool in_range = order && *order >= 3.7 && *order <= 4.3;
    ok = ok && in_range;
    detail += std::string(name) + "=" + (order ? num(*order) : "undefined") + " ";
  }
  return {ok, detail};
}

Outcome nodal_operator() {
  // Exact integer check of the composite stencil on r^3.
  const long long stencil[] = {-1, 4, 30, 4, -1};
  bool exact = true;
  for (long long r = -50; r <= 50; ++r) {
    long long acc = 0;
    for (int j = -2; j <= 2; ++j) acc += stencil[j + 2] * (r + j) * (r + j) * (r + j);
    exact = exact && acc == 36 * r * r * r;
  }
  // Same property through the library at the nodes.
  const UniformGrid grid(-8.0, 8.0, 1.0);
  const auto signal = sample_function([](double x) { return x * x * x; }, grid);
  const CoefficientVector coeffs = compute_coefficients(signal);
  double worst = 0.0;
  for (int r = 0; r < grid.n(); ++r) {
    const double x = grid.node(r);
    worst = std::max(worst, std::abs(evaluate_spline_local(coeffs, x) - x * x * x));
  }
  return {exact && worst <= 1e-9, std::string("integer identity ") + (exact ? "holds" : "broken") +
                                      ", library nodal error=" + num(worst)};
}

Outcome fixed_point_fidelity() {
  const FixedPointFormat format = FixedPointFormat::default_format();
  const auto signal =
      sample_function([](double x) { return std::log1p(x); }, UniformGrid(0.0, 2.0, 1.0 / 32));
  const SimulationResult result =
      run_simulation(signal, DatapathConfig(build_rom_bank(10, format)));
  const CoefficientVector coeffs = compute_coefficients(signal);
  double worst = 0.0;
  int saturated = 0;
  for (const auto& p : result.points) {
    saturated += p.saturated ? 1 : 0;
    if (p.transient) continue;
    worst = std::max(worst, std::abs(p.value - evaluate_spline_local(coeffs, p.x)));
  }
  const double budget = 5 * std::ldexp(1.0, -15);
  return {worst <= budget && saturated == 0, "max diff=" + num(worst) + " budget=" + num(budget) +
                                                 " saturated=" + std::to_string(saturated)};
}

Outcome rom_golden() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "splinerom_acceptance";
  fs::create_directories(dir);
  std::string unused;
  const fs::path a = dir / "rom_a.txt";
  const fs::path b = dir / "rom_b.txt";
  if (run_cli_quiet({"rom", "--k", "10", "--output", a.string()}, unused) != 0 ||
      run_cli_quiet({"rom", "--k", "10", "--output", b.string()}, unused) != 0) {
    return {false, "rom exited nonzero"};
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string first = slurp(a);
  const bool identical = first == slurp(b);
  std::istringstream lines(first);
  std::string line;
  std::string rom2_first;
  while (std::getline(lines, line)) {
    if (line == "#ROM2") {
      std::getline(lines, rom2_first);
      break;
    }
  }
  const long value = rom2_first.empty() ? -1 : std::stol(rom2_first, nullptr, 16);
  return {identical && value == 10923, std::string(identical ? "identical" : "differs") +
                                           ", ROM2[0]=" + rom2_first + " (" +
                                           std::to_string(value) + ")"};
}

Outcome shift_register_startup() {
  const FixedPointFormat format = FixedPointFormat::default_format();
  const auto signal =
      sample_function([](double x) { return std::log1p(x); }, UniformGrid(0.0, 2.0, 1.0 / 32));
  const CoefficientVector coeffs = compute_coefficients(signal);
  const DatapathConfig config(build_rom_bank(10, format));
  const Word q1 = quantize(coeffs.at(-1), format);
  const Word q2 = quantize(coeffs.at(0), format);

  std::vector<std::array<Word, 4>> trace;
  DatapathState state = preset(coeffs, format);
  trace.push_back(state.shift_register);
  for (int i = 0; i < 10; ++i) {
    advance(state, config);
    if (state.shift_register != trace.back()) trace.push_back(state.shift_register);
  }
  const bool ok = trace.size() >= 2 && trace[0] == std::array<Word, 4>{0, 0, 0, q1} &&
                  trace[1] == std::array<Word, 4>{0, 0, q1, q2};
  return {ok, "first states {0,0,0," + std::to_string(q1) + "} then {0,0," + std::to_string(q1) +
                  "," + std::to_string(q2) + "}"};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "error bound reproduction", 1.0, bound_reproduction},
      {2, "speed ratio", 1.0, speed_ratio},
      {3, "partition of unity", 1.0, partition_of_unity},
      {4, "quasi-interpolation accuracy", 5.0, quasi_interpolation_accuracy},
      {5, "convergence order", 10.0, convergence},
      {6, "fourth-order nodal operator", 1.0, nodal_operator},
      {7, "fixed-point fidelity", 5.0, fixed_point_fidelity},
      {8, "ROM golden file", 1.0, rom_golden},
      {9, "shift-register startup", 1.0, shift_register_startup},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": "
              << outcome.detail << " (" << num(elapsed) << " s, limit " << c.time_limit_s << " s"
              << (in_time ? "" : ", over time") << ")\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
