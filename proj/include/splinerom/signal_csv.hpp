#pragma once

// Signal CSV: header starting with `x,f`, one node per line, strictly
// increasing and uniformly spaced x (1e-9 relative tolerance). Extra columns
// are ignored; if a `node` column is present only rows with node = 1 are
// kept, and rows with an empty f are skipped. This lets the result CSV of
// `approx` be read back as the original signal.

#include <iosfwd>
#include <string>

#include "splinerom/bspline.hpp"

namespace splinerom {

/// Shortest text that parses back to exactly `v`.
std::string format_real(double v);

/// Returns a margin-0 signal. ParseError carries the 1-based line number;
/// grid problems (fewer than 4 nodes, non-uniform spacing) are ShapeErrors.
SampledSignal read_signal_csv(std::istream& in);
SampledSignal read_signal_csv_file(const std::string& path);

/// Writes the interior nodes of `signal` as `x,f`.
void write_signal_csv(const SampledSignal& signal, std::ostream& out);

}  // namespace splinerom
