#include "splinerom/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "splinerom/datapath.hpp"
#include "splinerom/error_analysis.hpp"
#include "splinerom/errors.hpp"
#include "splinerom/rom_image.hpp"
#include "splinerom/signal_csv.hpp"
#include "splinerom/svg.hpp"

namespace splinerom::cli {

namespace {

using nlohmann::json;

double parse_number(std::string_view text, const char* what) {
  // Plain decimal, or a fraction such as 1/32.
  const auto slash = text.find('/');
  const auto to_double = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'", 0);
    }
    return v;
  };
  if (slash == std::string_view::npos) return to_double(text);
  const double den = to_double(text.substr(slash + 1));
  if (den == 0.0) throw ParseError(std::string("bad ") + what + ": zero denominator", 0);
  return to_double(text.substr(0, slash)) / den;
}

struct PreparedSignal {
  SampledSignal extended;
  const BuiltinFunction* function;  // null for file input
};

PreparedSignal prepare(const RunConfig& config) {
  if (config.function) {
    const BuiltinFunction& fn = builtin_function(*config.function);
    const auto [a, b] = config.effective_interval();
    return {sample_function(fn.value, UniformGrid(a, b, config.h)), &fn};
  }
  const SampledSignal raw = read_signal_csv_file(*config.input_path);
  return {extend_signal(raw.interior(), raw.grid(), kCubicMargin, config.extension_rule), nullptr};
}

// Artifact sink: the output file when configured, `fallback` otherwise.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
      if (!*file_) throw IoError("cannot open '" + *path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish(const std::optional<std::string>& path) {
    stream_->flush();
    if (!*stream_) throw IoError("write failed" + (path ? " for '" + *path + "'" : std::string()));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_svg_file(const std::optional<std::string>& path, const std::string& title,
                    const std::vector<PlotSeries>& series) {
  if (!path) return;
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  write_svg_line_chart(file, title, series);
  if (!file) throw IoError("write failed for '" + *path + "'");
}

void cmd_basis(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const int probes = config.effective_probes();
  if (probes < 2) throw DomainError("basis: need at least 2 probes");
  const auto [lo, hi] = config.effective_interval();
  if (!(hi > lo)) throw DomainError("basis: interval needs b > a");

  Sink sink(config.output_path, out);
  PlotSeries curve{"B3(x)", {}, {}};
  sink.stream() << "x,B3\n";
  for (int i = 0; i < probes; ++i) {
    const double x = i == probes - 1 ? hi : lo + (hi - lo) * i / (probes - 1);
    const double y = eval_basis(x);
    sink.stream() << format_real(x) << ',' << format_real(y) << '\n';
    curve.xs.push_back(x);
    curve.ys.push_back(y);
  }
  sink.finish(config.output_path);
  write_svg_file(config.svg_path, "Cubic basic spline", {curve});
  log << "rows=" << probes << '\n';
}

void cmd_approx(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const PreparedSignal signal = prepare(config);
  const UniformGrid& grid = signal.extended.grid();
  const CoefficientVector coeffs = compute_coefficients(signal.extended);
  const int k = config.samples_per_segment;
  if (k < 1) throw DomainError("approx: samples per segment must be at least 1");
  const auto [lo, hi] = interior_window(grid);

  Sink sink(config.output_path, out);
  std::ostream& csv = sink.stream();
  csv << "x,f,S3,error,node\n";
  PlotSeries truth{"f(x)", {}, {}};
  PlotSeries spline{"S3(x)", {}, {}};
  double interior_max = 0.0;
  double overall_max = 0.0;
  std::size_t rows = 0;
  const auto emit = [&](double x, bool node, int r) {
    std::optional<double> f;
    if (signal.function) {
      f = signal.function->value(x);
    } else if (node) {
      f = signal.extended.at(r);
    }
    const double s = evaluate_spline_local(coeffs, x);
    csv << format_real(x) << ',' << (f ? format_real(*f) : "") << ',' << format_real(s) << ',';
    if (f) {
      const double err = std::abs(s - *f);
      csv << format_real(err);
      overall_max = std::max(overall_max, err);
      if (x >= lo && x <= hi) interior_max = std::max(interior_max, err);
      truth.xs.push_back(x);
      truth.ys.push_back(*f);
    }
    csv << ',' << (node ? 1 : 0) << '\n';
    spline.xs.push_back(x);
    spline.ys.push_back(s);
    ++rows;
  };
  for (int r = 0; r + 1 < grid.n(); ++r) {
    for (int p = 0; p < k; ++p) {
      emit(grid.a() + (r + static_cast<double>(p) / k) * grid.h(), p == 0, r);
    }
  }
  emit(grid.b(), true, grid.n() - 1);
  sink.finish(config.output_path);
  write_svg_file(config.svg_path, "Cubic spline approximation", {truth, spline});

  log << "nodes=" << grid.n() << "\nh=" << format_real(grid.h()) << "\nrows=" << rows
      << "\ninterior_window=" << format_real(lo) << ':' << format_real(hi)
      << "\ninterior_max_error=" << format_real(interior_max)
      << "\nmax_error=" << format_real(overall_max) << '\n';
}

void cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const PreparedSignal signal = prepare(config);
  const DatapathConfig datapath(build_rom_bank(config.samples_per_segment, config.format),
                                config.extension_rule);
  const SimulationResult sim = run_simulation(signal.extended, datapath);
  const CoefficientVector coeffs = compute_coefficients(signal.extended);

  Sink sink(config.output_path, out);
  std::ostream& csv = sink.stream();
  csv << "x,fixed,float,abs_diff,transient,saturated\n";
  double max_diff = 0.0;
  std::size_t transient = 0;
  std::size_t saturated = 0;
  PlotSeries fixed{"datapath S3", {}, {}};
  PlotSeries reference{"float S3", {}, {}};
  for (const auto& p : sim.points) {
    csv << format_real(p.x) << ',' << format_real(p.value) << ',';
    if (!p.transient) {
      const double ref = evaluate_spline_local(coeffs, p.x);
      const double diff = std::abs(p.value - ref);
      max_diff = std::max(max_diff, diff);
      csv << format_real(ref) << ',' << format_real(diff);
      fixed.xs.push_back(p.x);
      fixed.ys.push_back(p.value);
      reference.xs.push_back(p.x);
      reference.ys.push_back(ref);
    } else {
      csv << ',';
      ++transient;
    }
    if (p.saturated) ++saturated;
    csv << ',' << (p.transient ? 1 : 0) << ',' << (p.saturated ? 1 : 0) << '\n';
  }
  sink.finish(config.output_path);
  write_svg_file(config.svg_path, "Fixed-point datapath vs float reference", {reference, fixed});

  const double budget = 5.0 * std::ldexp(1.0, -config.format.frac_bits() - 1);
  const CycleReport& report = sim.report;
  log << "format=" << config.format.to_string() << "\nK=" << config.samples_per_segment
      << "\nsamples=" << report.samples << "\ntransient_samples=" << transient
      << "\nsaturated_samples=" << saturated << "\nmax_abs_diff=" << format_real(max_diff)
      << "\nquantization_budget=" << format_real(budget)
      << "\nwithin_budget=" << (max_diff <= budget ? "yes" : "no")
      << "\ncycles_per_sample=" << report.cycles_per_sample
      << "\ntotal_cycles=" << report.total_cycles << "\nshift_cycles=" << report.shift_cycles
      << "\ncycle_model=" << report.model_description << '\n';
}

json bounds_json(double h, double m) {
  const ErrorReport r = compare_bounds(h, m);
  return {{"deriv_bound", m}, {"spline", r.bound_spline}, {"poly", r.bound_poly}};
}

void cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const BuiltinFunction& fn = builtin_function(*config.function);
  const auto [a, b] = config.effective_interval();
  const double h = config.h;
  const int probes = config.effective_probes();
  const UniformGrid grid(a, b, h);

  const double analytic_m = fn.max_abs_fourth_derivative(a, b);
  const ErrorReport unit_m = compare_bounds(h, 1.0);
  const Rational exact = exact_bound_ratio();

  const DatapathConfig datapath(build_rom_bank(config.samples_per_segment, config.format),
                                config.extension_rule);
  const CycleReport cycles = cycle_report(1, datapath);

  json report;
  report["function"] = fn.name;
  report["interval"] = {a, b};
  report["h"] = h;
  report["probes"] = probes;
  report["bounds_m1"] = bounds_json(h, 1.0);
  report["bounds_analytic"] = bounds_json(h, analytic_m);
  report["bound_ratio"] = exact.value();
  report["bound_ratio_exact"] = std::to_string(exact.num) + "/" + std::to_string(exact.den);
  report["bound_ratio_measured"] = unit_m.ratio_bounds;
  report["empirical_spline_error"] = spline_interior_error(fn.value, a, b, h, probes);
  report["empirical_cubic_error"] = classical_cubic_interior_error(fn.value, a, b, h, probes);
  report["cycles"] = {
      {"datapath_per_sample", cycles.cycles_per_sample},
      {"horner_per_sample", kHornerCycles},
      {"ratio", static_cast<double>(kHornerCycles) / static_cast<double>(cycles.cycles_per_sample)},
      {"model", cycles.model_description},
  };

  const std::array<double, 3> ladder{4 * h, 2 * h, h};
  report["convergence_h"] = ladder;
  try {
    const auto order = convergence_order(fn.value, ladder, a, b, probes);
    report["convergence_order"] = order ? json(*order) : json(nullptr);
  } catch (const DomainError& e) {
    report["convergence_order"] = nullptr;
    log << "convergence_order skipped: " << e.what() << '\n';
  }

  Sink sink(config.output_path, out);
  sink.stream() << report.dump(2) << '\n';
  sink.finish(config.output_path);
  log << "nodes=" << grid.n() << '\n';
}

void cmd_rom(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const RomBank rom = build_rom_bank(config.samples_per_segment, config.format);
  Sink sink(config.output_path, out);
  write_rom_image(rom, sink.stream());
  sink.finish(config.output_path);
  log << "words=" << kLanes * rom.samples_per_segment() << '\n';
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kBasis:
      return "basis";
    case Command::kApprox:
      return "approx";
    case Command::kSimulate:
      return "simulate";
    case Command::kCompare:
      return "compare";
    case Command::kRom:
      return "rom";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c :
       {Command::kBasis, Command::kApprox, Command::kSimulate, Command::kCompare, Command::kRom}) {
    if (to_string(c) == name) return c;
  }
  throw ParseError("unknown command '" + std::string(name) + "'", 0);
}

std::pair<double, double> RunConfig::effective_interval() const {
  if (interval) return *interval;
  return command == Command::kBasis ? std::pair{-2.5, 2.5} : std::pair{0.0, 2.0};
}

int RunConfig::effective_probes() const {
  if (probes) return *probes;
  return command == Command::kBasis ? 101 : 10000;
}

std::pair<double, double> parse_interval(std::string_view text) {
  // Split on the colon that is not a sign of the second number: "a:b".
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("bad interval '" + std::string(text) + "', expected a:b", 0);
  }
  return {parse_number(text.substr(0, colon), "interval start"),
          parse_number(text.substr(colon + 1), "interval end")};
}

void apply_json(RunConfig& config, const json& doc) {
  if (!doc.is_object()) throw ParseError("config must be a JSON object", 0);
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        config.command = parse_command(value.get<std::string>());
      } else if (key == "input_path") {
        config.input_path = value.get<std::string>();
      } else if (key == "output_path") {
        config.output_path = value.get<std::string>();
      } else if (key == "svg_path") {
        config.svg_path = value.get<std::string>();
      } else if (key == "h") {
        config.h =
            value.is_string() ? parse_number(value.get<std::string>(), "h") : value.get<double>();
      } else if (key == "interval") {
        if (value.is_string()) {
          config.interval = parse_interval(value.get<std::string>());
        } else if (value.is_array() && value.size() == 2) {
          config.interval = std::pair{value[0].get<double>(), value[1].get<double>()};
        } else {
          throw ParseError("config: interval must be \"a:b\" or [a, b]", 0);
        }
      } else if (key == "samples_per_segment" || key == "k") {
        config.samples_per_segment = value.get<int>();
      } else if (key == "format") {
        config.format = FixedPointFormat::parse(value.get<std::string>());
      } else if (key == "extension_rule" || key == "extension") {
        config.extension_rule = parse_extension_rule(value.get<std::string>());
      } else if (key == "function") {
        config.function = value.get<std::string>();
      } else if (key == "probes") {
        config.probes = value.get<int>();
      } else {
        throw ParseError("config: unknown key '" + key + "'", 0);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
}

void validate(const RunConfig& config) {
  switch (config.command) {
    case Command::kApprox:
    case Command::kSimulate:
      if (config.input_path.has_value() == config.function.has_value()) {
        throw ShapeError(std::string(to_string(config.command)) +
                         ": give exactly one of --input or --function");
      }
      break;
    case Command::kCompare:
      if (!config.function) throw ShapeError("compare: --function is required");
      if (config.input_path) throw ShapeError("compare: --input is not supported");
      break;
    case Command::kBasis:
    case Command::kRom:
      break;
  }
}

void run_command(const RunConfig& config, std::ostream& out, std::ostream& log) {
  validate(config);
  switch (config.command) {
    case Command::kBasis:
      return cmd_basis(config, out, log);
    case Command::kApprox:
      return cmd_approx(config, out, log);
    case Command::kSimulate:
      return cmd_simulate(config, out, log);
    case Command::kCompare:
      return cmd_compare(config, out, log);
    case Command::kRom:
      return cmd_rom(config, out, log);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubic B-spline approximation, fixed-point datapath simulation and error analysis"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.fallthrough();
  app.require_subcommand(1);

  std::string h_text;
  std::string interval_text;
  std::string format_text;
  std::string extension_text;
  std::string function_name;
  std::string input_path;
  std::string output_path;
  std::string svg_path;
  std::string config_path;
  int k = 0;
  int probes = 0;
  auto* opt_h = app.add_option("--h", h_text, "Node spacing (decimal or fraction, e.g. 1/32)");
  auto* opt_interval = app.add_option("--interval", interval_text, "Interval a:b");
  auto* opt_k = app.add_option("--k", k, "ROM samples per segment / output refinement");
  auto* opt_format = app.add_option("--format", format_text, "Fixed-point format T:F:{s|u}");
  auto* opt_ext = app.add_option("--extension", extension_text, "zero-pad | quadratic | linear");
  auto* opt_fn = app.add_option("--function", function_name, "Built-in function: ln1p | sin | exp");
  auto* opt_in = app.add_option("--input", input_path, "Signal CSV (header x,f)");
  auto* opt_out = app.add_option("--output", output_path, "Artifact path (default stdout)");
  auto* opt_svg = app.add_option("--svg", svg_path, "Also write an SVG line chart");
  auto* opt_probes = app.add_option("--probes", probes, "Probe count");
  auto* opt_config = app.add_option("--config", config_path, "Flat JSON config file");

  std::vector<CLI::App*> subcommands;
  for (Command c :
       {Command::kBasis, Command::kApprox, Command::kSimulate, Command::kCompare, Command::kRom}) {
    subcommands.push_back(app.add_subcommand(std::string(to_string(c))));
  }
  subcommands[0]->description("Tabulate the cubic basis spline");
  subcommands[1]->description("Float spline approximation of a signal");
  subcommands[2]->description("Fixed-point datapath simulation");
  subcommands[3]->description("Error-bound and cycle comparison report");
  subcommands[4]->description("Export the ROM image");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (*opt_config) {
      std::ifstream file(config_path);
      if (!file) throw IoError("cannot open config '" + config_path + "'");
      json doc;
      try {
        doc = json::parse(file);
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
      }
      apply_json(config, doc);
    }
    for (auto* sub : subcommands) {
      if (sub->parsed()) config.command = parse_command(sub->get_name());
    }
    if (*opt_h) config.h = parse_number(h_text, "h");
    if (*opt_interval) config.interval = parse_interval(interval_text);
    if (*opt_k) config.samples_per_segment = k;
    if (*opt_format) config.format = FixedPointFormat::parse(format_text);
    if (*opt_ext) config.extension_rule = parse_extension_rule(extension_text);
    if (*opt_fn) config.function = function_name;
    if (*opt_in) config.input_path = input_path;
    if (*opt_out) config.output_path = output_path;
    if (*opt_svg) config.svg_path = svg_path;
    if (*opt_probes) config.probes = probes;

    run_command(config, out, config.output_path ? out : err);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << '\n';
    return kExitShape;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kExitRange;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace splinerom::cli
