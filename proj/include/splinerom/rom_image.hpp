#pragma once

// Text image of a RomBank:
//
//   #format <total_bits> <frac_bits> <s|u> <K>
//   #ROM1
//   <K lines of fixed-width upper-case hex, two's complement in total_bits>
//   #ROM2
//   ...
//   #ROM4
//
// Lines end with '\n'. Hex width is ceil(total_bits / 4) digits.

#include <iosfwd>
#include <string>

#include "splinerom/datapath.hpp"

namespace splinerom {

std::string format_rom_word(Word word, const FixedPointFormat& format);

void write_rom_image(const RomBank& rom, std::ostream& out);
std::string render_rom_image(const RomBank& rom);

/// Throws ParseError (with line number) on any deviation from the layout.
RomBank read_rom_image(std::istream& in);

}  // namespace splinerom
