#pragma once

#include <cstdint>

namespace docsynth {

// Embedded fixed-pitch bitmap font: printable ASCII 0x20..0x7e plus a
// replacement glyph for everything else. Each glyph is an 8x16 cell,
// stored as 16 row bitmasks with bit 7 = leftmost pixel.
inline constexpr int kGlyphWidth = 8;
inline constexpr int kGlyphHeight = 16;
inline constexpr uint32_t kFirstPrintable = 0x20;
inline constexpr uint32_t kLastPrintable = 0x7e;
inline constexpr int kNumGlyphs = 96;
inline constexpr int kReplacementGlyph = 95;
inline constexpr int kSpaceGlyph = 0;

// 16 row masks for the glyph at the given table index.
const uint8_t* glyph_rows(int index);

// Table index for a code point; out-of-range maps to the replacement glyph.
int glyph_index(uint32_t codepoint);

// Printable character for a table index (replacement reports '?').
char glyph_char(int index);

inline bool glyph_pixel(const uint8_t* rows, int x, int y) {
  return (rows[y] >> (7 - x)) & 1;
}

int glyph_ink_count(int index);

}  // namespace docsynth
