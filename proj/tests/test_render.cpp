#include <doctest.h>

#include <set>

#include "docsynth/font.hpp"
#include "docsynth/render.hpp"
#include "docsynth/rng.hpp"
#include "docsynth/textgen.hpp"

using namespace docsynth;

namespace {

// Narrow template with a known character capacity per line.
DocumentTemplate narrow_template(int chars_per_line, int lines = 20) {
  DocumentTemplate t;
  t.name = "narrow";
  t.margin_px = 8;
  t.top_margin_px = 8;
  t.page_width_px = chars_per_line * kGlyphWidth + 2 * t.margin_px;
  t.line_spacing_px = 8;
  t.page_height_px = t.top_margin_px + lines * (kGlyphHeight + t.line_spacing_px) + t.margin_px;
  return t;
}

bool cell_matches_glyph(const PageImage& page, int x, int y, char ch) {
  const uint8_t* rows = glyph_rows(glyph_index(static_cast<unsigned char>(ch)));
  for (int gy = 0; gy < kGlyphHeight; ++gy)
    for (int gx = 0; gx < kGlyphWidth; ++gx) {
      bool ink = page.at(x + gx, y + gy) == 0;
      if (ink != glyph_pixel(rows, gx, gy)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("font glyphs are pairwise distinct and inked") {
  std::set<std::vector<uint8_t>> seen;
  for (int g = 0; g < kNumGlyphs; ++g) {
    const uint8_t* rows = glyph_rows(g);
    std::vector<uint8_t> key(rows, rows + kGlyphHeight);
    CHECK(seen.insert(key).second);
    if (g != kSpaceGlyph) CHECK(glyph_ink_count(g) >= 4);
  }
  CHECK(glyph_ink_count(kSpaceGlyph) == 0);
  CHECK(glyph_index('A') == 'A' - 0x20);
  CHECK(glyph_index(0x2603) == kReplacementGlyph);  // non-ASCII
}

TEST_CASE("builtin templates") {
  CHECK(builtin_template("text_block").columns == 1);
  CHECK(builtin_template("multi_column").columns == 2);
  DocumentTemplate letter = builtin_template("letter");
  CHECK(letter.columns == 1);
  CHECK(letter.top_margin_px > letter.margin_px);
  CHECK_THROWS_AS(builtin_template("bogus"), std::invalid_argument);
}

TEST_CASE("empty text renders one blank page") {
  RenderResult r = render_document("", builtin_template("text_block"));
  REQUIRE(r.pages.size() == 1);
  CHECK(r.geometry.empty());
  for (uint8_t p : r.pages[0].pixels) CHECK(p == 255);
  CHECK(r.transcripts == std::vector<std::string>{""});
}

TEST_CASE("glyph placement follows the cell grid") {
  DocumentTemplate t = narrow_template(40);
  t.margin_px = 10;
  t.top_margin_px = 10;
  t.page_width_px = 40 * kGlyphWidth + 20;
  RenderResult r = render_document("ab", t);
  REQUIRE(r.geometry.size() == 2);
  CHECK(r.geometry[0].bbox == Box{10, 10, 8, 16});
  CHECK(r.geometry[1].bbox == Box{18, 10, 8, 16});
  CHECK(r.geometry[0].char_index == 0);
  CHECK(r.geometry[1].char_index == 1);
}

TEST_CASE("a word longer than a line splits with trailing hyphens") {
  DocumentTemplate t = narrow_template(10);
  std::string word(30, 'x');
  RenderResult r = render_document(word, t);
  REQUIRE(r.transcripts.size() == 1);
  CHECK(r.transcripts[0] == "xxxxxxxxx-\nxxxxxxxxx-\nxxxxxxxxx-\nxxx");
  // every source character has geometry; inserted hyphens have none
  CHECK(r.geometry.size() == 30);
}

TEST_CASE("a straddling word hyphenates when head and tail are long enough") {
  DocumentTemplate t = narrow_template(10);
  RenderResult r = render_document("abcd efghij", t);
  // "abcd " leaves 5 cells; "efghij" takes 4 head chars + hyphen.
  CHECK(r.transcripts[0] == "abcd efgh-\nij");

  t.hyphenate = false;
  RenderResult plain = render_document("abcd efghij", t);
  CHECK(plain.transcripts[0] == "abcd\nefghij");
}

TEST_CASE("short remainders wrap whole words instead of hyphenating") {
  DocumentTemplate t = narrow_template(10);
  // 8 cells used, 2 left: too short for a 3-char head plus hyphen.
  RenderResult r = render_document("abcdefgh stop", t);
  CHECK(r.transcripts[0] == "abcdefgh\nstop");
}

TEST_CASE("newlines break lines and tabs render as spaces") {
  DocumentTemplate t = narrow_template(20);
  RenderResult r = render_document("one\ntwo\tthree", t);
  CHECK(r.transcripts[0] == "one\ntwo three");
}

TEST_CASE("consecutive spaces are preserved") {
  DocumentTemplate t = narrow_template(20);
  RenderResult r = render_document("a  b", t);
  CHECK(r.transcripts[0] == "a  b");
}

TEST_CASE("rendering is deterministic") {
  const std::string text = sample_sentences()[0] + "\n" + sample_sentences()[1];
  RenderResult a = render_document(text, builtin_template("text_block"));
  RenderResult b = render_document(text, builtin_template("text_block"));
  REQUIRE(a.pages.size() == b.pages.size());
  for (size_t p = 0; p < a.pages.size(); ++p) CHECK(a.pages[p] == b.pages[p]);
}

TEST_CASE("geometry readback recovers the source characters") {
  std::string text;
  for (int i = 0; i < 8; ++i) text += sample_sentences()[i] + "\n";
  text.pop_back();
  for (const char* name : {"text_block", "multi_column", "letter"}) {
    RenderResult r = render_document(text, builtin_template(name));
    size_t checked = 0;
    for (const CharGeometry& g : r.geometry) {
      char src = text[g.char_index];
      CHECK(src != ' ');
      CHECK(cell_matches_glyph(r.pages[g.page], g.bbox.x, g.bbox.y, src));
      ++checked;
    }
    // exactly the printable non-space characters are in the geometry
    size_t expected = 0;
    for (char c : text)
      if (c != ' ' && c != '\n' && c != '\t') ++expected;
    CHECK(checked == expected);
  }
}

TEST_CASE("geometry boxes never overlap within a page") {
  std::string text;
  for (int i = 0; i < 6; ++i) text += sample_sentences()[i] + "\n";
  RenderResult r = render_document(text, builtin_template("multi_column"));
  std::set<std::tuple<int, int, int>> cells;
  for (const CharGeometry& g : r.geometry)
    CHECK(cells.insert({g.page, g.bbox.x, g.bbox.y}).second);
}

TEST_CASE("long documents overflow onto new pages") {
  std::string text;
  for (int i = 0; i < 120; ++i) text += sample_sentences()[i % sample_sentences().size()] + "\n";
  RenderResult r = render_document(text, builtin_template("text_block"));
  CHECK(r.pages.size() >= 2);
  CHECK(r.transcripts.size() == r.pages.size());
  int max_page = 0;
  for (const CharGeometry& g : r.geometry) max_page = std::max(max_page, g.page);
  CHECK(max_page == static_cast<int>(r.pages.size()) - 1);
}

TEST_CASE("invalid templates are rejected") {
  DocumentTemplate t = builtin_template("text_block");
  t.page_width_px = 40;  // narrower than the margins
  CHECK_THROWS_AS(render_document("x", t), std::invalid_argument);
  DocumentTemplate z = builtin_template("text_block");
  z.columns = 0;
  CHECK_THROWS_AS(render_document("x", z), std::invalid_argument);
}

TEST_CASE("geometry JSONL round trip") {
  std::vector<CharGeometry> geo = {{0, 0, {1, 2, 8, 16}}, {5, 1, {33, 34, 8, 16}}};
  std::vector<CharGeometry> back = read_geometry(write_geometry(geo));
  REQUIRE(back.size() == 2);
  CHECK(back[1].char_index == 5);
  CHECK(back[1].page == 1);
  CHECK(back[1].bbox == Box{33, 34, 8, 16});
}
