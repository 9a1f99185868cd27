#include "docsynth/image.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace docsynth {

std::string encode_pgm(const PageImage& img) {
  std::string out = "P5\n" + std::to_string(img.width_px) + " " +
                    std::to_string(img.height_px) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

PageImage decode_pgm(const std::string& bytes) {
  // Accepts exactly the header shape this toolkit writes.
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw std::runtime_error("not a P5 PGM");
  size_t pos = 2;
  auto skip_ws = [&] {
    while (pos < bytes.size() &&
           (bytes[pos] == ' ' || bytes[pos] == '\n' || bytes[pos] == '\t' || bytes[pos] == '\r'))
      ++pos;
  };
  auto read_int = [&]() -> int {
    skip_ws();
    size_t start = pos;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') ++pos;
    if (pos == start) throw std::runtime_error("malformed PGM header");
    return std::stoi(bytes.substr(start, pos - start));
  };
  int w = read_int();
  int h = read_int();
  int maxval = read_int();
  if (maxval != 255) throw std::runtime_error("unsupported PGM maxval");
  if (w <= 0 || h <= 0) throw std::runtime_error("bad PGM dimensions");
  ++pos;  // single whitespace byte after maxval
  size_t need = static_cast<size_t>(w) * h;
  if (bytes.size() - pos < need) throw std::runtime_error("truncated PGM data");
  PageImage img(w, h);
  std::copy(bytes.begin() + pos, bytes.begin() + pos + need, img.pixels.begin());
  return img;
}

void write_pgm(const PageImage& img, const std::string& path) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  std::string data = encode_pgm(img);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

PageImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_pgm(bytes);
}

}  // namespace docsynth
