#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "splinerom/bspline.hpp"
#include "splinerom/fixed_point.hpp"

namespace splinerom::cli {

enum class Command { kBasis, kApprox, kSimulate, kCompare, kRom };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitShape = 3,
  kExitRange = 4,
  kExitIo = 5,
  kExitDomain = 6,
  kExitNumeric = 7,
};

struct RunConfig {
  Command command = Command::kApprox;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> svg_path;
  double h = 1.0 / 32.0;
  std::optional<std::pair<double, double>> interval;
  int samples_per_segment = 10;
  FixedPointFormat format = FixedPointFormat::default_format();
  ExtensionRule extension_rule = ExtensionRule::kQuadraticExtrapolate;
  std::optional<std::string> function;
  std::optional<int> probes;

  /// Interval with the per-command default: [-2.5, 2.5] for basis, [0, 2] otherwise.
  std::pair<double, double> effective_interval() const;
  /// 101 for basis, 10000 otherwise.
  int effective_probes() const;
};

/// "a:b". Throws ParseError.
std::pair<double, double> parse_interval(std::string_view text);

/// Overlays the keys of a flat JSON object onto `config`. Keys mirror the
/// RunConfig fields: command, input_path, output_path, svg_path, h, interval
/// ("a:b" or [a, b]), samples_per_segment (alias k), format ("T:F:s"),
/// extension_rule, function, probes. Unknown keys are a ParseError.
void apply_json(RunConfig& config, const nlohmann::json& doc);

/// Throws ShapeError if a data-bearing command does not have exactly one of
/// input_path / function, or compare lacks a function.
void validate(const RunConfig& config);

/// Executes one command. The artifact goes to config.output_path when set,
/// otherwise to `out`; summary lines go to `log`.
void run_command(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Full command-line entry point: parses args (args[0] is the program name),
/// applies defaults < JSON config file < flags, runs, and maps errors to
/// ExitCode values with a message on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splinerom::cli
