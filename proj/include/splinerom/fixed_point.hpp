#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace splinerom {

/// Raw fixed-point word. Values are stored sign-extended regardless of format
/// width; the format decides which range is legal.
using Word = std::int64_t;

/// Double-width intermediate for products and the summator.
__extension__ typedef __int128 WideWord;

/// Q-format: `total_bits` wide, `frac_bits` of them below the binary point.
class FixedPointFormat {
 public:
  /// Throws ShapeError unless 0 < frac_bits < total_bits <= 64 (63 when
  /// unsigned, since words are held in a signed 64-bit integer).
  FixedPointFormat(int total_bits, int frac_bits, bool is_signed);

  /// Signed Q1.14 in 16 bits; holds [-2, 2).
  static FixedPointFormat default_format() { return {16, 14, true}; }

  int total_bits() const noexcept { return total_bits_; }
  int frac_bits() const noexcept { return frac_bits_; }
  bool is_signed() const noexcept { return signed_; }

  Word min_word() const noexcept;
  Word max_word() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;
  /// Weight of one least-significant bit, 2^-frac_bits.
  double resolution() const noexcept;

  /// "T:F:s" / "T:F:u", the form accepted by parse().
  std::string to_string() const;
  /// Throws ParseError on malformed text, ShapeError on an invalid format.
  static FixedPointFormat parse(std::string_view text);

  bool operator==(const FixedPointFormat&) const = default;

 private:
  int total_bits_;
  int frac_bits_;
  bool signed_;
};

/// Round-half-even of value * 2^frac_bits. Throws RangeError (carrying the
/// value) if the result does not fit.
Word quantize(double value, const FixedPointFormat& format);

double dequantize(Word word, const FixedPointFormat& format);

/// Clamps `value` into the format's word range; sets `saturated` when it had to.
Word saturate(WideWord value, const FixedPointFormat& format, bool& saturated);

/// Shifts right by `shift` bits with round-half-even.
WideWord round_shift_right(WideWord value, int shift);

}  // namespace splinerom
