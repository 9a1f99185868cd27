#pragma once

#include <string>
#include <vector>

#include "docsynth/image.hpp"

namespace docsynth {

struct OcrLine {
  std::string text;  // no newlines
  Box bbox;
};

// Lines in reading order: column regions left to right, lines top to bottom
// within each region.
struct OcrResult {
  std::vector<OcrLine> lines;
  std::string transcript() const;  // line texts joined with '\n'
};

struct OcrParams {
  int binarize_threshold = 128;
  // A row belongs to a text line when its ink count exceeds this fraction
  // of the region width.
  double line_noise_floor = 0.01;
  // A cell with less ink than this fraction of its area reads as a space.
  double space_ink_fraction = 0.02;
  // A run of ink-free pixel columns at least this wide separates column
  // regions. Must exceed the widest aligned inter-word gap (two space cells)
  // and stay at or below the template column gap.
  int min_gutter_px = 20;
  // Row bands closer than this merge into one line; descender rows can dip
  // under the noise floor and briefly break the band.
  int min_line_gap_px = 4;
};

// pixel < threshold -> 0, else 255. Idempotent.
PageImage binarize(const PageImage& img, int threshold = 128);

// Horizontal-projection line segmentation, applied per column region when a
// vertical white gutter splits the page. Returns line boxes in reading order.
std::vector<Box> segment_lines(const PageImage& img, const OcrParams& params = {});

// Template-matching engine against the embedded font. Lines are cut into
// glyph cells at the estimated pitch (fallback: font glyph width); each cell
// is classified by minimal binarized squared pixel difference. Low-ink cells
// read as spaces; trailing spaces are trimmed and inner runs collapsed.
OcrResult recognize_page(const PageImage& img, const OcrParams& params = {});

// Pitch of the character grid from the periodicity of a line's ink-column
// profile; returns fallback when the signal is not clearly periodic.
int estimate_pitch(const std::vector<int>& column_ink, int fallback);

// {"lines": [{"text": ..., "bbox": [x,y,w,h]}, ...]}
std::string write_ocr_result(const OcrResult& result);
OcrResult parse_ocr_result(const std::string& json_text);

}  // namespace docsynth
