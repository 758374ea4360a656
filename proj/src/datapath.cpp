#include "splinerom/datapath.hpp"

#include <algorithm>
#include <utility>

#include "splinerom/errors.hpp"

namespace splinerom {

namespace {

constexpr int kTransientWindows = 3;

// Accumulator bounds: 2 * total_bits, capped by the host's 128-bit integer.
WideWord accumulator_max(const FixedPointFormat& format) {
  const int bits = std::min(2 * format.total_bits(), 127);
  return (WideWord{1} << (bits - 1)) - 1;
}

}  // namespace

RomBank::RomBank(FixedPointFormat format, int samples_per_segment,
                 std::array<std::vector<Word>, kLanes> tables)
    : format_(format), samples_per_segment_(samples_per_segment), tables_(std::move(tables)) {
  if (samples_per_segment_ < 1) throw ShapeError("ROM needs at least one sample per segment");
  for (const auto& t : tables_) {
    if (t.size() != static_cast<std::size_t>(samples_per_segment_)) {
      throw ShapeError("ROM subsection has " + std::to_string(t.size()) + " words, expected " +
                       std::to_string(samples_per_segment_));
    }
    for (Word w : t) {
      if (w < format_.min_word() || w > format_.max_word()) {
        throw RangeError("ROM word outside format " + format_.to_string(), dequantize(w, format_));
      }
    }
  }
}

const std::vector<Word>& RomBank::subsection(int j) const {
  if (j < 0 || j >= kLanes) throw DomainError("ROM subsection index must be 0..3");
  return tables_[static_cast<std::size_t>(j)];
}

RomBank build_rom_bank(int samples_per_segment, const FixedPointFormat& format) {
  if (samples_per_segment < 1) throw ShapeError("samples_per_segment must be at least 1");
  std::array<std::vector<Word>, kLanes> tables;
  for (int j = 0; j < kLanes; ++j) {
    auto& table = tables[static_cast<std::size_t>(j)];
    table.reserve(static_cast<std::size_t>(samples_per_segment));
    for (int p = 0; p < samples_per_segment; ++p) {
      const double arg = RomBank::interval_start(j) + static_cast<double>(p) / samples_per_segment;
      table.push_back(quantize(eval_basis(arg), format));
    }
  }
  return RomBank(format, samples_per_segment, std::move(tables));
}

std::uint8_t subsection_address(int lane) {
  if (lane < 0 || lane >= kLanes) {
    throw DomainError("lane " + std::to_string(lane) + " outside 0..3");
  }
  // Window k puts the basis argument for b_{k-1+lane} in [1-lane, 2-lane),
  // which is subsection `lane` for every k.
  return static_cast<std::uint8_t>(lane);
}

DatapathConfig::DatapathConfig(RomBank rom_bank, ExtensionRule rule, CycleCosts costs)
    : rom(std::move(rom_bank)), extension_rule(rule), cycle_costs(costs) {
  if (cycle_costs.multiply < 1 || cycle_costs.summator < 1) {
    throw ShapeError("multiply and summator cycle costs must be at least 1");
  }
  if (cycle_costs.shift != 0 && cycle_costs.shift != 1) {
    throw ShapeError("shift cycle cost must be 0 (overlapped) or 1");
  }
}

std::vector<Word> quantize_stream(std::span<const double> coefficients,
                                  const FixedPointFormat& format, int first_index) {
  std::vector<Word> words;
  words.reserve(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    try {
      words.push_back(quantize(coefficients[i], format));
    } catch (const RangeError& e) {
      const auto index = first_index + static_cast<std::ptrdiff_t>(i);
      throw RangeError("coefficient b_{" + std::to_string(index) + "}: " + e.what(), e.value());
    }
  }
  return words;
}

DatapathState preset(std::span<const double> coefficients, const FixedPointFormat& format,
                     int first_window) {
  DatapathState state;
  state.window = first_window;
  state.stream = std::make_shared<const std::vector<Word>>(
      quantize_stream(coefficients, format, first_window + 2));
  if (state.stream->empty()) {
    state.drained = true;
    return state;
  }
  state.shift_register = {0, 0, 0, state.stream->front()};
  state.next_coefficient = 1;
  return state;
}

DatapathState preset(const CoefficientVector& coeffs, const FixedPointFormat& format) {
  return preset(coeffs.coeffs(), format, coeffs.first_index() - 2);
}

void advance(DatapathState& state, const DatapathConfig& config) {
  if (state.drained) return;
  const RomBank& rom = config.rom;
  const FixedPointFormat& format = rom.format();

  bool saturated = false;
  const WideWord acc_max = accumulator_max(format);
  WideWord sum = 0;
  for (int lane = 0; lane < kLanes; ++lane) {
    const auto idx = static_cast<std::size_t>(lane);
    const int subsection = subsection_address(lane);
    // |register| and |ROM| are both below 2^(T-1), so the product fits 2T bits.
    state.lanes[idx] = static_cast<WideWord>(state.shift_register[idx]) *
                       static_cast<WideWord>(rom.word(subsection, state.addr));
    ++state.rom_reads[static_cast<std::size_t>(subsection)];

    WideWord next = 0;
    const bool wrapped = __builtin_add_overflow(sum, state.lanes[idx], &next);
    if (wrapped || next > acc_max || next < -acc_max - 1) {
      saturated = true;
      const bool positive = wrapped ? state.lanes[idx] > 0 : next > 0;
      next = positive ? acc_max : -acc_max - 1;
    }
    sum = next;
  }
  state.summator = sum;

  DatapathSample sample;
  sample.value = saturate(round_shift_right(sum, format.frac_bits()), format, saturated);
  sample.window = state.window;
  sample.phase = state.addr;
  sample.transient = state.shifts < kTransientWindows;
  sample.saturated = saturated;
  state.outputs.push_back(sample);
  state.cycle += config.cycle_costs.multiply + config.cycle_costs.summator;

  if (++state.addr < rom.samples_per_segment()) return;
  state.addr = 0;
  if (state.next_coefficient >= state.stream->size()) {
    state.drained = true;
    return;
  }
  auto& reg = state.shift_register;
  reg = {reg[1], reg[2], reg[3], (*state.stream)[state.next_coefficient++]};
  ++state.window;
  ++state.shifts;
  state.cycle += config.cycle_costs.shift;
}

DatapathState step_cycle(const DatapathState& state, const DatapathConfig& config) {
  DatapathState next = state;
  advance(next, config);
  return next;
}

CycleReport cycle_report(std::int64_t samples, const DatapathConfig& config) {
  if (samples < 0) throw DomainError("cycle_report: negative sample count");
  const auto& costs = config.cycle_costs;
  CycleReport report;
  report.samples = samples;
  report.cycles_per_sample = costs.multiply + costs.summator;
  const std::int64_t shifts = samples > 0 ? (samples - 1) / config.rom.samples_per_segment() : 0;
  report.shift_cycles = shifts * costs.shift;
  report.total_cycles = samples * report.cycles_per_sample + report.shift_cycles;
  report.model_description = "4 parallel multipliers: " + std::to_string(costs.multiply) +
                             " cycle(s); 4-input summator: " + std::to_string(costs.summator) +
                             " cycle(s); register shift: " + std::to_string(costs.shift) +
                             " cycle(s) per window" + (costs.shift == 0 ? " (overlapped)" : "") +
                             "; coefficient generation precomputed, pre-set not counted";
  return report;
}

SimulationResult run_stream(std::span<const double> coefficients, const UniformGrid& grid,
                            const DatapathConfig& config, int first_window) {
  SimulationResult result;
  DatapathState state = preset(coefficients, config.rom.format(), first_window);
  while (!state.drained) advance(state, config);

  const int k = config.rom.samples_per_segment();
  result.points.reserve(state.outputs.size());
  for (const auto& s : state.outputs) {
    SimulatedPoint p;
    p.x = grid.a() + (static_cast<double>(s.window) + static_cast<double>(s.phase) / k) * grid.h();
    p.word = s.value;
    p.value = dequantize(s.value, config.rom.format());
    p.transient = s.transient;
    p.saturated = s.saturated;
    result.points.push_back(p);
  }
  result.report = cycle_report(static_cast<std::int64_t>(state.outputs.size()), config);
  result.final_state = std::move(state);
  return result;
}

SampledSignal prepare_signal(const SampledSignal& signal, ExtensionRule rule) {
  if (signal.margin() >= 2) return signal;
  return extend_signal(signal.interior(), signal.grid(), kCubicMargin, rule);
}

SimulationResult run_simulation(const SampledSignal& signal, const DatapathConfig& config) {
  const CoefficientVector coeffs =
      compute_coefficients(prepare_signal(signal, config.extension_rule));
  return run_stream(coeffs.coeffs(), coeffs.grid(), config, coeffs.first_index() - 2);
}

}  // namespace splinerom
