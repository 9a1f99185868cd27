#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace docsynth {

// Grayscale raster page. 0 = black ink, 255 = white paper.
struct PageImage {
  int width_px = 0;
  int height_px = 0;
  std::vector<uint8_t> pixels;  // row-major, width_px * height_px entries

  PageImage() = default;
  PageImage(int w, int h, uint8_t fill = 255)
      : width_px(w), height_px(h), pixels(static_cast<size_t>(w) * h, fill) {}

  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width_px + x]; }
  void set(int x, int y, uint8_t v) { pixels[static_cast<size_t>(y) * width_px + x] = v; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_px && y >= 0 && y < height_px;
  }
  bool same_size(const PageImage& o) const {
    return width_px == o.width_px && height_px == o.height_px;
  }
  bool operator==(const PageImage& o) const = default;
};

// Axis-aligned pixel rectangle.
struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool operator==(const Box& o) const = default;
};

// Binary PGM (P5), header "P5\n<w> <h>\n255\n" followed by raw bytes.
std::string encode_pgm(const PageImage& img);
PageImage decode_pgm(const std::string& bytes);
void write_pgm(const PageImage& img, const std::string& path);
PageImage read_pgm(const std::string& path);

}  // namespace docsynth
