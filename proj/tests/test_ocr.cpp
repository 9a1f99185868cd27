#include <doctest.h>

#include "docsynth/align.hpp"
#include "docsynth/degrade.hpp"
#include "docsynth/font.hpp"
#include "docsynth/ocr.hpp"
#include "docsynth/render.hpp"
#include "docsynth/textgen.hpp"

using namespace docsynth;

namespace {

std::string sample_text(int sentences, int offset = 0) {
  std::string text;
  for (int i = 0; i < sentences; ++i) {
    if (i) text += '\n';
    text += sample_sentences()[(offset + i) % sample_sentences().size()];
  }
  return text;
}

std::string joined_transcript(const RenderResult& r) {
  std::string out;
  for (size_t i = 0; i < r.transcripts.size(); ++i) {
    if (i) out += '\n';
    out += r.transcripts[i];
  }
  return out;
}

}  // namespace

TEST_CASE("binarize thresholds and idempotence") {
  PageImage img(3, 1, 255);
  img.set(0, 0, 127);
  img.set(1, 0, 128);
  PageImage out = binarize(img, 128);
  CHECK(out.at(0, 0) == 0);  // 127 < 128
  CHECK(out.at(1, 0) == 255);
  CHECK(out.at(2, 0) == 255);
  CHECK(binarize(out, 128) == out);

  PageImage white(4, 4, 255);
  CHECK(binarize(white) == white);
}

TEST_CASE("segment_lines on a blank page finds nothing") {
  PageImage img(200, 100, 255);
  CHECK(segment_lines(img).empty());
}

TEST_CASE("segment_lines finds one box per rendered line") {
  DocumentTemplate t = builtin_template("text_block");
  RenderResult one = render_document("Agile dogs jump", t);
  std::vector<Box> boxes = segment_lines(one.pages[0]);
  REQUIRE(boxes.size() == 1);
  // the embedded font inks cell rows 2..15, so a line with ascenders and
  // descenders spans glyph height minus the two blank top rows
  CHECK(boxes[0].h == kGlyphHeight - 2);
  CHECK(boxes[0].y == t.top_margin_px + 2);

  RenderResult two = render_document("first line\nsecond line", t);
  std::vector<Box> stacked = segment_lines(two.pages[0]);
  REQUIRE(stacked.size() == 2);
  CHECK(stacked[0].y < stacked[1].y);
}

TEST_CASE("recognize_page reads back rendered text exactly") {
  RenderResult r = render_document("HELLO", builtin_template("text_block"));
  OcrResult result = recognize_page(r.pages[0]);
  REQUIRE(result.lines.size() == 1);
  CHECK(result.lines[0].text == "HELLO");
  CHECK(error_rates("HELLO", result.transcript()).cer == 0.0);
}

TEST_CASE("recognize_page on a blank page is empty") {
  PageImage img(400, 300, 255);
  OcrResult result = recognize_page(img);
  CHECK(result.lines.empty());
  CHECK(result.transcript() == "");
}

TEST_CASE("perfect self-OCR across all builtin templates") {
  const std::string text = sample_text(12);
  for (const char* name : {"text_block", "multi_column", "letter"}) {
    RenderResult r = render_document(text, builtin_template(name));
    std::string ocr_text;
    for (size_t p = 0; p < r.pages.size(); ++p) {
      if (p) ocr_text += '\n';
      ocr_text += recognize_page(r.pages[p]).transcript();
    }
    INFO(name);
    CHECK(ocr_text == joined_transcript(r));
  }
}

TEST_CASE("self-OCR covers punctuation and digits") {
  const std::string text =
      "Numbers 0123456789 and marks: !\"#$%&'()*+,-./ :;<=>? @[\\]^_` {|}~ done";
  RenderResult r = render_document(text, builtin_template("text_block"));
  std::string got = recognize_page(r.pages[0]).transcript();
  CHECK(got == joined_transcript(r));
}

TEST_CASE("recognize_page is deterministic") {
  RenderResult r = render_document(sample_text(4), builtin_template("text_block"));
  Recipe recipe = builtin_recipe("all_light", 5);
  PageImage degraded = apply_recipe(r.pages[0], recipe);
  OcrResult a = recognize_page(degraded);
  OcrResult b = recognize_page(degraded);
  REQUIRE(a.lines.size() == b.lines.size());
  CHECK(a.transcript() == b.transcript());
}

TEST_CASE("line boxes stay inside the page and texts have no newlines") {
  RenderResult r = render_document(sample_text(8), builtin_template("multi_column"));
  OcrResult result = recognize_page(r.pages[0]);
  for (const OcrLine& line : result.lines) {
    CHECK(line.bbox.x >= 0);
    CHECK(line.bbox.y >= 0);
    CHECK(line.bbox.x + line.bbox.w <= r.pages[0].width_px);
    CHECK(line.bbox.y + line.bbox.h <= r.pages[0].height_px);
    CHECK(line.text.find('\n') == std::string::npos);
  }
}

TEST_CASE("estimate_pitch locks onto a periodic profile") {
  // Period-8 comb resembling a fixed-pitch ink profile.
  std::vector<int> profile;
  for (int i = 0; i < 12; ++i) {
    for (int x = 0; x < 6; ++x) profile.push_back(4 + (x % 3));
    profile.push_back(0);
    profile.push_back(0);
  }
  CHECK(estimate_pitch(profile, 8) == 8);

  std::vector<int> flat(100, 3);
  CHECK(estimate_pitch(flat, 8) == 8);  // no periodicity, fallback
  std::vector<int> tiny = {1, 2, 3};
  CHECK(estimate_pitch(tiny, 8) == 8);
}

TEST_CASE("ocr result JSON round trip and schema errors") {
  OcrResult result;
  result.lines.push_back({"ab", {1, 2, 16, 16}});
  OcrResult back = parse_ocr_result(write_ocr_result(result));
  REQUIRE(back.lines.size() == 1);
  CHECK(back.lines[0].text == "ab");
  CHECK(back.lines[0].bbox == Box{1, 2, 16, 16});

  OcrResult empty = parse_ocr_result("{\"lines\": []}");
  CHECK(empty.lines.empty());

  CHECK_THROWS(parse_ocr_result("{\"rows\": []}"));
  CHECK_THROWS(parse_ocr_result("not json"));
}

TEST_CASE("degraded pages read worse than clean ones") {
  const std::string text = sample_text(10, 20);
  RenderResult r = render_document(text, builtin_template("text_block"));
  std::string clean = recognize_page(r.pages[0]).transcript();
  PageImage degraded = apply_recipe(r.pages[0], builtin_recipe("all_heavy", 3));
  std::string noisy = recognize_page(degraded).transcript();
  std::string reference = joined_transcript(r);
  CHECK(error_rates(reference, clean).cer == 0.0);
  CHECK(error_rates(reference, noisy).cer > 0.0);
}
