#pragma once

// Cycle-stepped fixed-point model of the parallel spline evaluator:
//
//   coefficient stream -> 4-slot shift register --+
//                                                 +--> 4 multipliers -> summator -> S(x)
//   address counter -> ROM1..ROM4 (one per lane) -+
//
// Every logical step fetches one word from each ROM subsection at the same
// address, multiplies it with the matching register slot, and sums the four
// products. After K steps the address counter wraps and the register shifts
// left by one slot, pulling in the next coefficient.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "splinerom/bspline.hpp"
#include "splinerom/fixed_point.hpp"

namespace splinerom {

inline constexpr int kLanes = 4;

/// Four tables of K basis samples. Subsection j (ROM1..ROM4 for j = 0..3)
/// covers basis arguments [1,2), [0,1), [-1,0), [-2,-1) and holds
/// B3(left + p/K) for p = 0 .. K-1.
class RomBank {
 public:
  RomBank(FixedPointFormat format, int samples_per_segment,
          std::array<std::vector<Word>, kLanes> tables);

  const FixedPointFormat& format() const noexcept { return format_; }
  int samples_per_segment() const noexcept { return samples_per_segment_; }
  const std::vector<Word>& subsection(int j) const;
  Word word(int j, int p) const { return subsection(j)[static_cast<std::size_t>(p)]; }

  /// Left endpoint of subsection j's basis-argument interval: 1, 0, -1, -2.
  static double interval_start(int j) noexcept { return 1.0 - j; }

  bool operator==(const RomBank&) const = default;

 private:
  FixedPointFormat format_;
  int samples_per_segment_;
  std::array<std::vector<Word>, kLanes> tables_;
};

/// Throws ShapeError if samples_per_segment < 1.
RomBank build_rom_bank(int samples_per_segment, const FixedPointFormat& format);

/// 2-bit subsection code for a lane: lane 0 (paired with b_{k-1}) reads ROM1
/// = 00, lane 1 reads ROM2 = 01, lane 2 reads ROM3 = 10, lane 3 reads ROM4 = 11.
/// Throws DomainError outside 0..3.
std::uint8_t subsection_address(int lane);

struct CycleCosts {
  int multiply = 1;  // all four lanes in parallel
  int summator = 1;  // single 4-input adder
  int shift = 0;     // overlapped with the last step of a window by default
};

struct DatapathConfig {
  /// Throws ShapeError if multiply or summator < 1 or shift is not 0 or 1.
  DatapathConfig(RomBank rom, ExtensionRule extension_rule = ExtensionRule::kZeroPad,
                 CycleCosts cycle_costs = {});

  RomBank rom;
  ExtensionRule extension_rule;
  CycleCosts cycle_costs;
};

struct DatapathSample {
  Word value = 0;
  int window = 0;  // register holds b_{window-1} .. b_{window+2}
  int phase = 0;   // address counter value that produced the sample
  bool transient = false;
  bool saturated = false;
};

/// Snapshot of the machine. Copies share the immutable coefficient stream.
struct DatapathState {
  std::int64_t cycle = 0;
  int addr = 0;
  int window = 0;
  std::array<Word, kLanes> shift_register{};
  std::array<WideWord, kLanes> lanes{};
  WideWord summator = 0;
  std::vector<DatapathSample> outputs;

  std::shared_ptr<const std::vector<Word>> stream;
  std::size_t next_coefficient = 0;
  std::int64_t shifts = 0;
  std::array<std::int64_t, kLanes> rom_reads{};
  bool drained = false;
};

/// Quantizes coefficient values in stream order. A RangeError names the
/// offending coefficient as b_{first_index + position}.
std::vector<Word> quantize_stream(std::span<const double> coefficients,
                                  const FixedPointFormat& format, int first_index = 0);

/// Register pre-set {0, 0, 0, q(first)}; addr = 0, cycle = 0. `first_window`
/// is the window index of that register state. An empty stream yields a
/// drained state.
DatapathState preset(std::span<const double> coefficients, const FixedPointFormat& format,
                     int first_window = 0);

/// Streams b_{-1} first; the pre-set register state is window -3.
DatapathState preset(const CoefficientVector& coeffs, const FixedPointFormat& format);

/// One output sample. A drained state is returned unchanged.
DatapathState step_cycle(const DatapathState& state, const DatapathConfig& config);

/// In-place form of step_cycle.
void advance(DatapathState& state, const DatapathConfig& config);

struct CycleReport {
  std::int64_t total_cycles = 0;
  std::int64_t cycles_per_sample = 0;
  std::int64_t samples = 0;
  std::int64_t shift_cycles = 0;  // register shifts, outside the per-sample cost
  std::string model_description;
};

/// Cycle accounting for `samples` outputs of a drained run: cycles per sample
/// is multiply + summator, plus shift cost for each of the (samples-1)/K
/// register shifts.
CycleReport cycle_report(std::int64_t samples, const DatapathConfig& config);

struct SimulatedPoint {
  double x = 0.0;
  double value = 0.0;
  Word word = 0;
  bool transient = false;
  bool saturated = false;
};

struct SimulationResult {
  std::vector<SimulatedPoint> points;
  CycleReport report;
  DatapathState final_state;
};

/// Runs a raw coefficient stream to exhaustion. Output x positions are
/// a + (window + phase/K) * h on `grid`, with the pre-set state at window
/// first_window.
SimulationResult run_stream(std::span<const double> coefficients, const UniformGrid& grid,
                            const DatapathConfig& config, int first_window);

/// Coefficients from the signal (extended with config.extension_rule when its
/// margin is below 2), quantized and streamed through the datapath: K outputs
/// per window, the first 3K flagged transient.
SimulationResult run_simulation(const SampledSignal& signal, const DatapathConfig& config);

/// The signal extension run_simulation applies before computing coefficients.
SampledSignal prepare_signal(const SampledSignal& signal, ExtensionRule rule);

}  // namespace splinerom
