#include "docsynth/render.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

#include "docsynth/font.hpp"

namespace docsynth {

DocumentTemplate builtin_template(const std::string& name) {
  DocumentTemplate t;
  t.name = name;
  t.page_width_px = 800;
  t.page_height_px = 1056;
  t.margin_px = 32;
  t.top_margin_px = 32;
  t.columns = 1;
  t.column_gap_px = 0;
  t.line_spacing_px = 8;
  t.glyph_width_px = kGlyphWidth;
  t.glyph_height_px = kGlyphHeight;
  if (name == "text_block") {
    // defaults above
  } else if (name == "multi_column") {
    t.columns = 2;
    t.column_gap_px = 24;
  } else if (name == "letter") {
    t.margin_px = 48;
    t.top_margin_px = 192;
  } else {
    throw std::invalid_argument("unknown template \"" + name +
                                "\"; expected text_block, multi_column, or letter");
  }
  return t;
}

namespace {

constexpr int kMinHyphenHead = 3;  // chars kept before the inserted hyphen
constexpr int kMinHyphenTail = 2;  // chars moved to the next line

struct Layout {
  const DocumentTemplate& t;
  int col_width_px;
  int chars_per_line;
  int lines_per_column;
  int line_pitch;

  explicit Layout(const DocumentTemplate& tmpl) : t(tmpl) {
    if (tmpl.page_width_px <= 0 || tmpl.page_height_px <= 0 || tmpl.columns <= 0 ||
        tmpl.glyph_width_px <= 0 || tmpl.glyph_height_px <= 0 || tmpl.margin_px < 0 ||
        tmpl.top_margin_px < 0 || tmpl.column_gap_px < 0 || tmpl.line_spacing_px < 0)
      throw std::invalid_argument("template has non-positive dimensions");
    int usable = tmpl.page_width_px - 2 * tmpl.margin_px -
                 (tmpl.columns - 1) * tmpl.column_gap_px;
    col_width_px = usable / tmpl.columns;
    chars_per_line = col_width_px / tmpl.glyph_width_px;
    line_pitch = tmpl.glyph_height_px + tmpl.line_spacing_px;
    int vspace = tmpl.page_height_px - tmpl.top_margin_px - tmpl.margin_px -
                 tmpl.glyph_height_px;
    lines_per_column = vspace < 0 ? 0 : vspace / line_pitch + 1;
    if (chars_per_line < 1 || lines_per_column < 1)
      throw std::invalid_argument("template leaves no room for text");
  }

  int cell_x(int column, int col_pos) const {
    return t.margin_px + column * (col_width_px + t.column_gap_px) +
           col_pos * t.glyph_width_px;
  }
  int cell_y(int line) const { return t.top_margin_px + line * line_pitch; }
};

// Decodes one UTF-8 code point; malformed bytes decode as single-byte values
// above the printable range (so they render as the replacement glyph).
uint32_t decode_utf8(std::string_view text, size_t& i) {
  unsigned char c = static_cast<unsigned char>(text[i]);
  int extra = 0;
  uint32_t cp = c;
  if (c >= 0xf0)
    extra = 3, cp = c & 0x07;
  else if (c >= 0xe0)
    extra = 2, cp = c & 0x0f;
  else if (c >= 0xc0)
    extra = 1, cp = c & 0x1f;
  else if (c >= 0x80) {
    ++i;
    return 0x80;
  } else {
    ++i;
    return cp;
  }
  if (i + static_cast<size_t>(extra) >= text.size()) {
    ++i;
    return 0x80;
  }
  for (int k = 1; k <= extra; ++k) {
    unsigned char cc = static_cast<unsigned char>(text[i + k]);
    if ((cc & 0xc0) != 0x80) {
      ++i;
      return 0x80;
    }
    cp = (cp << 6) | (cc & 0x3f);
  }
  i += extra + 1;
  return cp;
}

struct Renderer {
  const Layout& lay;
  RenderResult& out;
  int page = -1;
  int column = 0;
  int line = 0;
  int col_pos = 0;
  // Per (column, line) text of the current page.
  std::vector<std::vector<std::string>> grid;

  Renderer(const Layout& l, RenderResult& r) : lay(l), out(r) { new_page(); }

  void finish_page() {
    if (page < 0) return;
    std::string transcript;
    for (const auto& col : grid) {
      for (const auto& raw : col) {
        std::string line_text = raw;
        while (!line_text.empty() && line_text.back() == ' ') line_text.pop_back();
        if (line_text.empty()) continue;
        if (!transcript.empty()) transcript += '\n';
        transcript += line_text;
      }
    }
    out.transcripts.push_back(std::move(transcript));
  }

  void new_page() {
    finish_page();
    ++page;
    out.pages.emplace_back(lay.t.page_width_px, lay.t.page_height_px, 255);
    grid.assign(lay.t.columns, std::vector<std::string>(lay.lines_per_column));
  }

  void advance_line() {
    col_pos = 0;
    if (++line >= lay.lines_per_column) {
      line = 0;
      if (++column >= lay.t.columns) {
        column = 0;
        new_page();
      }
    }
  }

  void blit_glyph(int glyph, int x, int y) {
    const uint8_t* rows = glyph_rows(glyph);
    PageImage& img = out.pages.back();
    for (int gy = 0; gy < kGlyphHeight; ++gy)
      for (int gx = 0; gx < kGlyphWidth; ++gx)
        if (glyph_pixel(rows, gx, gy)) img.set(x + gx, y + gy, 0);
  }

  // source_index < 0 marks a character with no source position (wrap hyphen).
  void place(uint32_t codepoint, long source_index) {
    int x = lay.cell_x(column, col_pos);
    int y = lay.cell_y(line);
    char printable;
    if (codepoint == ' ') {
      printable = ' ';
    } else {
      int glyph = glyph_index(codepoint);
      blit_glyph(glyph, x, y);
      printable = glyph_char(glyph);
      if (source_index >= 0)
        out.geometry.push_back({static_cast<size_t>(source_index), page,
                                Box{x, y, lay.t.glyph_width_px, lay.t.glyph_height_px}});
    }
    std::string& line_text = grid[column][line];
    line_text.resize(col_pos, ' ');
    line_text.push_back(printable);
    ++col_pos;
  }
};

struct Word {
  std::vector<uint32_t> codepoints;
  std::vector<size_t> offsets;  // byte offset of each code point
};

}  // namespace

RenderResult render_document(std::string_view text, const DocumentTemplate& tmpl) {
  Layout lay(tmpl);
  RenderResult result;
  Renderer r(lay, result);
  const int capacity = lay.chars_per_line;

  auto place_word = [&](const Word& w) {
    size_t begin = 0;
    while (begin < w.codepoints.size()) {
      int len = static_cast<int>(w.codepoints.size() - begin);
      int room = capacity - r.col_pos;
      if (len <= room) {
        for (size_t k = begin; k < w.codepoints.size(); ++k)
          r.place(w.codepoints[k], static_cast<long>(w.offsets[k]));
        return;
      }
      bool longer_than_line = len > capacity;
      bool can_break = room >= kMinHyphenHead + 1 &&
                       (longer_than_line || len - (room - 1) >= kMinHyphenTail);
      bool allowed = longer_than_line || tmpl.hyphenate;
      if (can_break && allowed) {
        int head = room - 1;
        for (int k = 0; k < head; ++k)
          r.place(w.codepoints[begin + k], static_cast<long>(w.offsets[begin + k]));
        r.place('-', -1);
        begin += head;
        r.advance_line();
        continue;
      }
      if (r.col_pos == 0 && longer_than_line) {
        // Degenerate narrow column: emit what fits, no room for a hyphen.
        int head = capacity > 1 ? capacity - 1 : 1;
        for (int k = 0; k < head && begin + k < w.codepoints.size(); ++k)
          r.place(w.codepoints[begin + k], static_cast<long>(w.offsets[begin + k]));
        if (capacity > 1) r.place('-', -1);
        begin += head;
      }
      r.advance_line();
    }
  };

  Word word;
  size_t i = 0;
  while (i < text.size()) {
    size_t start = i;
    uint32_t cp = decode_utf8(text, i);
    if (cp == '\t') cp = ' ';
    if (cp == ' ' || cp == '\n') {
      if (!word.codepoints.empty()) {
        place_word(word);
        word = Word{};
      }
      if (cp == '\n') {
        r.advance_line();
      } else if (r.col_pos < capacity) {
        r.place(' ', static_cast<long>(start));
      }
      // spaces that would overflow the line are dropped, not wrapped
    } else {
      word.codepoints.push_back(cp);
      word.offsets.push_back(start);
    }
  }
  if (!word.codepoints.empty()) place_word(word);
  r.finish_page();
  return result;
}

std::string write_geometry(const std::vector<CharGeometry>& geometry) {
  std::string out;
  for (const auto& g : geometry) {
    nlohmann::json j;
    j["i"] = g.char_index;
    j["page"] = g.page;
    j["bbox"] = {g.bbox.x, g.bbox.y, g.bbox.w, g.bbox.h};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<CharGeometry> read_geometry(std::string_view text) {
  std::vector<CharGeometry> geometry;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    if (!line.empty()) {
      nlohmann::json j = nlohmann::json::parse(line);
      CharGeometry g;
      g.char_index = j.at("i").get<size_t>();
      g.page = j.at("page").get<int>();
      auto b = j.at("bbox");
      g.bbox = Box{b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                   b.at(3).get<int>()};
      geometry.push_back(g);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return geometry;
}

}  // namespace docsynth
