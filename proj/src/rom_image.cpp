#include "splinerom/rom_image.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "splinerom/errors.hpp"

namespace splinerom {

namespace {

int hex_width(const FixedPointFormat& format) { return (format.total_bits() + 3) / 4; }

std::uint64_t width_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

std::string format_rom_word(Word word, const FixedPointFormat& format) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::uint64_t bits = static_cast<std::uint64_t>(word) & width_mask(format.total_bits());
  std::string out(static_cast<std::size_t>(hex_width(format)), '0');
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = kDigits[bits & 0xF];
    bits >>= 4;
  }
  return out;
}

void write_rom_image(const RomBank& rom, std::ostream& out) {
  const auto& f = rom.format();
  out << "#format " << f.total_bits() << ' ' << f.frac_bits() << ' ' << (f.is_signed() ? 's' : 'u')
      << ' ' << rom.samples_per_segment() << '\n';
  for (int j = 0; j < kLanes; ++j) {
    out << "#ROM" << (j + 1) << '\n';
    for (Word w : rom.subsection(j)) out << format_rom_word(w, f) << '\n';
  }
}

std::string render_rom_image(const RomBank& rom) {
  std::ostringstream os;
  write_rom_image(rom, os);
  return os.str();
}

RomBank read_rom_image(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> const std::string& {
    if (!std::getline(in, line)) throw ParseError("unexpected end of ROM image", line_no + 1);
    ++line_no;
    return line;
  };

  std::istringstream header(next_line());
  std::string tag;
  int total = 0;
  int frac = 0;
  char sign = 0;
  int k = 0;
  if (!(header >> tag >> total >> frac >> sign >> k) || tag != "#format" ||
      (sign != 's' && sign != 'u')) {
    throw ParseError("bad ROM header '" + line + "'", line_no);
  }
  const FixedPointFormat format = [&] {
    try {
      return FixedPointFormat(total, frac, sign == 's');
    } catch (const ShapeError& e) {
      throw ParseError(e.what(), line_no);
    }
  }();
  if (k < 1) throw ParseError("ROM image needs K >= 1", line_no);

  const int width = hex_width(format);
  const std::uint64_t mask = width_mask(total);
  std::array<std::vector<Word>, kLanes> tables;
  for (int j = 0; j < kLanes; ++j) {
    if (next_line() != "#ROM" + std::to_string(j + 1)) {
      throw ParseError("expected #ROM" + std::to_string(j + 1), line_no);
    }
    for (int p = 0; p < k; ++p) {
      const std::string& text = next_line();
      std::uint64_t bits = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), bits, 16);
      if (text.size() != static_cast<std::size_t>(width) || ec != std::errc{} ||
          ptr != text.data() + text.size() || (bits & ~mask) != 0) {
        throw ParseError("bad ROM word '" + text + "'", line_no);
      }
      Word w = static_cast<Word>(bits);
      if (format.is_signed() && total < 64 && (bits >> (total - 1)) != 0) {
        w = static_cast<Word>(bits | ~mask);
      }
      tables[static_cast<std::size_t>(j)].push_back(w);
    }
  }
  if (std::getline(in, line) && !line.empty()) {
    throw ParseError("trailing content after ROM4", line_no + 1);
  }
  return RomBank(format, k, std::move(tables));
}

}  // namespace splinerom
