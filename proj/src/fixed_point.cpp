#include "splinerom/fixed_point.hpp"

#include <cfenv>
#include <charconv>
#include <cmath>
#include <sstream>

#include "splinerom/errors.hpp"

namespace splinerom {

FixedPointFormat::FixedPointFormat(int total_bits, int frac_bits, bool is_signed)
    : total_bits_(total_bits), frac_bits_(frac_bits), signed_(is_signed) {
  const int width_limit = is_signed ? 64 : 63;
  if (!(0 < frac_bits && frac_bits < total_bits && total_bits <= width_limit)) {
    throw ShapeError("invalid fixed-point format " + std::to_string(total_bits) + ":" +
                     std::to_string(frac_bits) + (is_signed ? ":s" : ":u"));
  }
}

Word FixedPointFormat::min_word() const noexcept {
  if (!signed_) return 0;
  if (total_bits_ == 64) return INT64_MIN;
  return -(Word{1} << (total_bits_ - 1));
}

Word FixedPointFormat::max_word() const noexcept {
  if (signed_ && total_bits_ == 64) return INT64_MAX;
  const int magnitude_bits = signed_ ? total_bits_ - 1 : total_bits_;
  return (Word{1} << magnitude_bits) - 1;
}

double FixedPointFormat::min_value() const noexcept { return dequantize(min_word(), *this); }
double FixedPointFormat::max_value() const noexcept { return dequantize(max_word(), *this); }
double FixedPointFormat::resolution() const noexcept { return std::ldexp(1.0, -frac_bits_); }

std::string FixedPointFormat::to_string() const {
  return std::to_string(total_bits_) + ":" + std::to_string(frac_bits_) + (signed_ ? ":s" : ":u");
}

FixedPointFormat FixedPointFormat::parse(std::string_view text) {
  const auto fail = [&] {
    return ParseError("bad fixed-point format '" + std::string(text) + "', expected T:F:{s|u}", 0);
  };
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) throw fail();
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw fail();

  const auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw fail();
    return v;
  };
  const int total = to_int(text.substr(0, c1));
  const int frac = to_int(text.substr(c1 + 1, c2 - c1 - 1));
  const auto sign = text.substr(c2 + 1);
  if (sign != "s" && sign != "u") throw fail();
  return FixedPointFormat(total, frac, sign == "s");
}

Word quantize(double value, const FixedPointFormat& format) {
  const double scaled = std::ldexp(value, format.frac_bits());
  // Comparison happens in double: both bounds are exact powers of two
  // (up to the -1), and anything that rounds past them is out of range.
  const double lo = static_cast<double>(format.min_word());
  const double hi = static_cast<double>(format.max_word());
  std::ostringstream os;
  if (!std::isfinite(scaled)) {
    os << "cannot quantize non-finite value";
    throw RangeError(os.str(), value);
  }
  const int previous = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(scaled);
  std::fesetround(previous);
  if (rounded < lo || rounded > hi || (format.total_bits() == 64 && rounded >= hi)) {
    os.precision(17);
    os << "value " << value << " outside the range of format " << format.to_string() << " ["
       << format.min_value() << ", " << format.max_value() << "]";
    throw RangeError(os.str(), value);
  }
  return static_cast<Word>(rounded);
}

double dequantize(Word word, const FixedPointFormat& format) {
  return std::ldexp(static_cast<double>(word), -format.frac_bits());
}

Word saturate(WideWord value, const FixedPointFormat& format, bool& saturated) {
  if (value > format.max_word()) {
    saturated = true;
    return format.max_word();
  }
  if (value < format.min_word()) {
    saturated = true;
    return format.min_word();
  }
  return static_cast<Word>(value);
}

WideWord round_shift_right(WideWord value, int shift) {
  if (shift <= 0) return value;
  const WideWord one = 1;
  const WideWord floor_part = value >> shift;  // arithmetic shift: floor division
  const WideWord remainder = value - (floor_part << shift);
  const WideWord half = one << (shift - 1);
  if (remainder > half || (remainder == half && (floor_part & 1) != 0)) {
    return floor_part + 1;
  }
  return floor_part;
}

}  // namespace splinerom
