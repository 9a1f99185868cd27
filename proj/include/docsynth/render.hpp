#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "docsynth/image.hpp"

namespace docsynth {

// Page layout for the fixed-pitch rasterizer. All distances in pixels.
struct DocumentTemplate {
  std::string name;
  int page_width_px = 0;
  int page_height_px = 0;
  int margin_px = 0;      // left/right/bottom margin
  int top_margin_px = 0;  // may exceed margin_px (letter layout)
  int columns = 1;
  int column_gap_px = 0;
  int line_spacing_px = 0;
  int glyph_width_px = 8;
  int glyph_height_px = 16;
  // Break words that straddle a line end with a trailing hyphen. Words
  // longer than a whole line are always hyphen-split.
  bool hyphenate = true;
};

// "text_block" (single column), "multi_column" (two columns), or
// "letter" (single column, enlarged top margin).
DocumentTemplate builtin_template(const std::string& name);

// Geometry of one rendered source character. char_index is the byte offset
// of the character in the input text. Spaces and line breaks get no entry;
// hyphens inserted by wrapping are not source characters and get no entry.
struct CharGeometry {
  size_t char_index = 0;
  int page = 0;
  Box bbox;
};

struct RenderResult {
  std::vector<PageImage> pages;
  std::vector<CharGeometry> geometry;
  // Per page: rendered lines in reading order joined by '\n' (trailing
  // spaces trimmed, blank lines dropped). This is the text a perfect OCR
  // of the page would produce.
  std::vector<std::string> transcripts;
};

// Greedy word-wrap into template columns; columns fill top to bottom, then
// left to right; pages are appended as needed. Tabs render as spaces,
// consecutive spaces are preserved, '\n' forces a line break. Code points
// outside printable ASCII render as the replacement glyph.
RenderResult render_document(std::string_view text, const DocumentTemplate& tmpl);

// Geometry JSON Lines: {"i": char_index, "page": p, "bbox": [x,y,w,h]}.
std::string write_geometry(const std::vector<CharGeometry>& geometry);
std::vector<CharGeometry> read_geometry(std::string_view text);

}  // namespace docsynth
