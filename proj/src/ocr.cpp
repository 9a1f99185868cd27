#include "docsynth/ocr.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "docsynth/font.hpp"

namespace docsynth {

std::string OcrResult::transcript() const {
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i].text;
  }
  return out;
}

PageImage binarize(const PageImage& img, int threshold) {
  PageImage out = img;
  for (auto& p : out.pixels) p = p < threshold ? 0 : 255;
  return out;
}

namespace {

// A glyph cell packed into two 64-bit words (8 rows of 8 bits each).
// Squared pixel difference between two binary cells is 255^2 times their
// hamming distance, so popcount of the XOR ranks candidates identically.
struct PackedCell {
  uint64_t lo = 0;
  uint64_t hi = 0;
  int distance(const PackedCell& o) const {
    return std::popcount(lo ^ o.lo) + std::popcount(hi ^ o.hi);
  }
  int ink() const { return std::popcount(lo) + std::popcount(hi); }
};

struct PackedFont {
  std::array<PackedCell, kNumGlyphs> glyphs;
  PackedFont() {
    for (int g = 0; g < kNumGlyphs; ++g) {
      const uint8_t* rows = glyph_rows(g);
      for (int y = 0; y < kGlyphHeight; ++y) {
        uint64_t bits = rows[y];
        if (y < 8)
          glyphs[g].lo |= bits << (8 * y);
        else
          glyphs[g].hi |= bits << (8 * (y - 8));
      }
    }
  }
};

const PackedFont& packed_font() {
  static const PackedFont font;
  return font;
}

// Ink bitmap of one 8x16 cell at (cx, cy); out-of-image pixels are white.
PackedCell extract_cell(const PageImage& bin, int cx, int cy) {
  PackedCell cell;
  int x_lo = std::max(cx, 0), x_hi = std::min(cx + kGlyphWidth, bin.width_px);
  for (int y = 0; y < kGlyphHeight; ++y) {
    int sy = cy + y;
    if (sy < 0 || sy >= bin.height_px) continue;
    uint64_t bits = 0;
    const uint8_t* row = bin.pixels.data() + static_cast<size_t>(sy) * bin.width_px;
    for (int sx = x_lo; sx < x_hi; ++sx)
      if (row[sx] == 0) bits |= 1ULL << (7 - (sx - cx));
    if (y < 8)
      cell.lo |= bits << (8 * y);
    else
      cell.hi |= bits << (8 * (y - 8));
  }
  return cell;
}

// Best font match: space when below the ink floor, otherwise the glyph with
// minimal hamming distance (ties break to the lower glyph index).
struct Match {
  char ch;
  int dist;
};

Match classify_cell(const PackedCell& cell, int space_ink_max) {
  if (cell.ink() <= space_ink_max) return {' ', cell.ink()};
  const PackedFont& font = packed_font();
  int best_g = 0, best_d = 1 << 30;
  for (int g = 1; g < kNumGlyphs; ++g) {  // skip the space glyph
    int d = cell.distance(font.glyphs[g]);
    if (d < best_d) {
      best_d = d;
      best_g = g;
    }
  }
  return {glyph_char(best_g), best_d};
}

struct Region {
  int x0, x1;  // half-open pixel column range
};

// Maximal inked column runs; runs separated by gaps narrower than a gutter
// merge into one region.
std::vector<Region> column_regions(const PageImage& bin, const OcrParams& params) {
  const int w = bin.width_px, h = bin.height_px;
  std::vector<int> col_ink(w, 0);
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = bin.pixels.data() + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x)
      if (row[x] == 0) ++col_ink[x];
  }
  std::vector<Region> regions;
  int x = 0;
  while (x < w) {
    if (col_ink[x] == 0) {
      ++x;
      continue;
    }
    int start = x;
    while (x < w && col_ink[x] > 0) ++x;
    if (!regions.empty() && start - regions.back().x1 < params.min_gutter_px)
      regions.back().x1 = x;
    else
      regions.push_back({start, x});
  }
  return regions;
}

std::vector<Box> lines_in_region(const PageImage& bin, const Region& region,
                                 const OcrParams& params) {
  const int h = bin.height_px;
  std::vector<int> row_ink(h, 0);
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = bin.pixels.data() + static_cast<size_t>(y) * bin.width_px;
    for (int x = region.x0; x < region.x1; ++x)
      if (row[x] == 0) ++row_ink[y];
  }
  const int floor_ink = static_cast<int>((region.x1 - region.x0) * params.line_noise_floor);
  std::vector<std::pair<int, int>> bands;
  int y = 0;
  while (y < h) {
    if (row_ink[y] <= floor_ink) {
      ++y;
      continue;
    }
    int y0 = y;
    while (y < h && row_ink[y] > floor_ink) ++y;
    if (!bands.empty() && y0 - bands.back().second < params.min_line_gap_px)
      bands.back().second = y;
    else
      bands.emplace_back(y0, y);
  }

  std::vector<Box> boxes;
  for (auto [y0, y1] : bands) {
    y = y1;
    // Tighten to actual ink extent inside the band.
    int x_min = region.x1, x_max = region.x0 - 1;
    for (int yy = y0; yy < y; ++yy) {
      const uint8_t* row = bin.pixels.data() + static_cast<size_t>(yy) * bin.width_px;
      for (int x = region.x0; x < region.x1; ++x)
        if (row[x] == 0) {
          x_min = std::min(x_min, x);
          x_max = std::max(x_max, x);
        }
    }
    if (x_max >= x_min) boxes.push_back({x_min, y0, x_max - x_min + 1, y - y0});
  }
  return boxes;
}

std::string recognize_line(const PageImage& bin, const Box& line, const OcrParams& params) {
  std::vector<int> col_ink(line.w, 0);
  for (int y = line.y; y < line.y + line.h; ++y) {
    const uint8_t* row = bin.pixels.data() + static_cast<size_t>(y) * bin.width_px;
    for (int x = line.x; x < line.x + line.w; ++x)
      if (row[x] == 0) ++col_ink[x - line.x];
  }
  const int pitch = estimate_pitch(col_ink, kGlyphWidth);
  const int space_ink_max =
      static_cast<int>(kGlyphWidth * kGlyphHeight * params.space_ink_fraction);
  const int ncells = (line.w + pitch - 1) / pitch;
  const int probe = std::min(ncells, 12);

  // The line box is cropped to ink, so the true cell grid starts at an
  // unknown offset up to one cell to the left and somewhat above. Pick the
  // phase the font explains best over a probe prefix, considering only
  // vertical phases whose cells still cover the whole band (anything else
  // lets the cells slide off the ink and win with empty "space" cells).
  int best_px = 0, best_py = 0;
  long best_total = -1;
  const int py_hi = std::max(0, kGlyphHeight - line.h);
  for (int py = 0; py <= py_hi; ++py) {
    for (int px = 0; px < pitch; ++px) {
      long total = 0;
      for (int k = 0; k < probe; ++k) {
        PackedCell cell = extract_cell(bin, line.x - px + k * pitch, line.y - py);
        total += classify_cell(cell, space_ink_max).dist;
      }
      if (best_total < 0 || total < best_total) {
        best_total = total;
        best_px = px;
        best_py = py;
      }
    }
  }

  const int gx = line.x - best_px;
  const int gy = line.y - best_py;
  std::string raw;
  for (int k = 0; gx + k * pitch < line.x + line.w; ++k)
    raw += classify_cell(extract_cell(bin, gx + k * pitch, gy), space_ink_max).ch;

  std::string text;
  for (char c : raw) {
    if (c == ' ' && (text.empty() || text.back() == ' ')) continue;
    text += c;
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int estimate_pitch(const std::vector<int>& column_ink, int fallback) {
  const int n = static_cast<int>(column_ink.size());
  if (n < 3 * fallback) return fallback;
  double mean = 0.0;
  for (int v : column_ink) mean += v;
  mean /= n;

  int best_lag = fallback;
  double best_r = -2.0;
  for (int lag = 5; lag <= 12; ++lag) {
    double num = 0.0, da = 0.0, db = 0.0;
    for (int x = 0; x + lag < n; ++x) {
      double a = column_ink[x] - mean;
      double b = column_ink[x + lag] - mean;
      num += a * b;
      da += a * a;
      db += b * b;
    }
    if (da <= 0.0 || db <= 0.0) continue;
    double r = num / std::sqrt(da * db);
    if (r > best_r) {
      best_r = r;
      best_lag = lag;
    }
  }
  return best_r >= 0.5 ? best_lag : fallback;
}

std::vector<Box> segment_lines(const PageImage& img, const OcrParams& params) {
  PageImage bin = binarize(img, params.binarize_threshold);
  std::vector<Box> lines;
  for (const Region& region : column_regions(bin, params)) {
    std::vector<Box> region_lines = lines_in_region(bin, region, params);
    lines.insert(lines.end(), region_lines.begin(), region_lines.end());
  }
  return lines;
}

OcrResult recognize_page(const PageImage& img, const OcrParams& params) {
  PageImage bin = binarize(img, params.binarize_threshold);
  OcrResult result;
  for (const Region& region : column_regions(bin, params)) {
    for (const Box& line : lines_in_region(bin, region, params)) {
      std::string text = recognize_line(bin, line, params);
      if (!text.empty()) result.lines.push_back({std::move(text), line});
    }
  }
  return result;
}

std::string write_ocr_result(const OcrResult& result) {
  nlohmann::json j;
  j["lines"] = nlohmann::json::array();
  for (const auto& line : result.lines) {
    j["lines"].push_back({{"text", line.text},
                          {"bbox", {line.bbox.x, line.bbox.y, line.bbox.w, line.bbox.h}}});
  }
  return j.dump() + "\n";
}

OcrResult parse_ocr_result(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("lines") || !j["lines"].is_array())
    throw std::runtime_error("OCR result is missing the \"lines\" array");
  OcrResult result;
  for (const auto& jl : j["lines"]) {
    OcrLine line;
    line.text = jl.at("text").get<std::string>();
    auto b = jl.at("bbox");
    line.bbox = Box{b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                    b.at(3).get<int>()};
    if (line.text.find('\n') != std::string::npos)
      throw std::runtime_error("OCR line text contains a newline");
    result.lines.push_back(std::move(line));
  }
  return result;
}

}  // namespace docsynth
