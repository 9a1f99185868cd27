#include <doctest.h>

#include <cmath>

#include "docsynth/degrade.hpp"
#include "docsynth/render.hpp"
#include "docsynth/rng.hpp"

using namespace docsynth;

namespace {

PageImage random_image(Rng& rng, int w = 24, int h = 18) {
  PageImage img(w, h);
  for (auto& p : img.pixels) p = static_cast<uint8_t>(rng.next_below(256));
  return img;
}

// Full 2D Gaussian convolution oracle, float throughout, rounded once.
PageImage blur_oracle(const PageImage& img, int radius) {
  const int side = radius, half = side / 2;
  const double sigma = 0.3 * ((side - 1) * 0.5 - 1.0) + 0.8;
  std::vector<double> k(side);
  double sum = 0.0;
  for (int i = 0; i < side; ++i) {
    double d = i - half;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  PageImage out(img.width_px, img.height_px);
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x) {
      double acc = 0.0;
      for (int dy = 0; dy < side; ++dy)
        for (int dx = 0; dx < side; ++dx) {
          int sx = std::clamp(x + dx - half, 0, img.width_px - 1);
          int sy = std::clamp(y + dy - half, 0, img.height_px - 1);
          acc += k[dx] * k[dy] * img.at(sx, sy);
        }
      out.set(x, y, static_cast<uint8_t>(std::clamp(std::lround(acc), 0L, 255L)));
    }
  return out;
}

// Brute-force min/max filter oracle.
PageImage morph_oracle(const PageImage& img, bool take_min, const Kernel& kernel) {
  PageImage out(img.width_px, img.height_px);
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x) {
      int best = take_min ? 255 : 0;
      for (int r = 0; r < kernel.rows; ++r)
        for (int c = 0; c < kernel.cols; ++c) {
          if (!kernel.active(r, c)) continue;
          int sx = x + c - kernel.cols / 2;
          int sy = y + r - kernel.rows / 2;
          int v = img.in_bounds(sx, sy) ? img.at(sx, sy) : 255;
          best = take_min ? std::min(best, v) : std::max(best, v);
        }
      out.set(x, y, static_cast<uint8_t>(best));
    }
  return out;
}

}  // namespace

TEST_CASE("gaussian blur radius 1 is the identity") {
  Rng rng(1);
  PageImage img = random_image(rng);
  CHECK(gaussian_blur(img, 1) == img);
}

TEST_CASE("gaussian blur preserves constant images") {
  PageImage img(16, 12, 100);
  CHECK(gaussian_blur(img, 3) == img);
  CHECK(gaussian_blur(img, 11) == img);
}

TEST_CASE("gaussian blur center value on an impulse matches the kernel weight") {
  PageImage img(15, 15, 255);
  img.set(7, 7, 0);
  // center = 255 - 255 * w00 with w00 the central 2D kernel weight
  const double sigma = 0.3 * ((3 - 1) * 0.5 - 1.0) + 0.8;
  double w[3];
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    w[i] = std::exp(-(i - 1.0) * (i - 1.0) / (2.0 * sigma * sigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  double w00 = w[1] * w[1];
  PageImage out = gaussian_blur(img, 3);
  CHECK(out.at(7, 7) == static_cast<uint8_t>(std::lround(255.0 - 255.0 * w00)));
}

TEST_CASE("gaussian blur equals the full 2D oracle") {
  Rng rng(42);
  for (int radius : {3, 5, 11}) {
    PageImage img = random_image(rng, 30, 22);
    CHECK(gaussian_blur(img, radius) == blur_oracle(img, radius));
  }
}

TEST_CASE("gaussian blur rejects even or non-positive radii") {
  PageImage img(4, 4, 255);
  CHECK_THROWS_AS(gaussian_blur(img, 2), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_blur(img, 0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_blur(img, -3), std::invalid_argument);
}

TEST_CASE("salt and pepper extremes") {
  Rng rng(5);
  PageImage img = random_image(rng);
  Rng r0(9);
  CHECK(salt_pepper(img, NoiseKind::Salt, 0.0, r0) == img);
  Rng r1(9);
  PageImage salted = salt_pepper(img, NoiseKind::Salt, 1.0, r1);
  for (uint8_t p : salted.pixels) CHECK(p == 255);
  Rng r2(9);
  PageImage peppered = salt_pepper(img, NoiseKind::Pepper, 1.0, r2);
  for (uint8_t p : peppered.pixels) CHECK(p == 0);
  Rng r3(9);
  CHECK_THROWS_AS(salt_pepper(img, NoiseKind::Salt, 1.5, r3), std::invalid_argument);
}

TEST_CASE("salt flips the expected pixel fraction") {
  PageImage img(100, 100, 0);
  Rng rng(123);
  PageImage out = salt_pepper(img, NoiseKind::Salt, 0.1, rng);
  int flipped = 0;
  for (uint8_t p : out.pixels)
    if (p == 255) ++flipped;
  double fraction = flipped / 10000.0;
  CHECK(fraction > 0.08);  // binomial 3-sigma bounds
  CHECK(fraction < 0.12);
}

TEST_CASE("erode on all white is all white") {
  PageImage img(10, 10, 255);
  CHECK(morphology(img, MorphOp::Erode, {3, 3, KernelShape::Ones}) == img);
}

TEST_CASE("erode grows a single dark pixel into the kernel footprint") {
  PageImage img(9, 9, 255);
  img.set(4, 4, 0);
  PageImage out = morphology(img, MorphOp::Erode, {3, 3, KernelShape::Ones});
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) {
      bool in_block = std::abs(x - 4) <= 1 && std::abs(y - 4) <= 1;
      CHECK(out.at(x, y) == (in_block ? 0 : 255));
    }
}

TEST_CASE("morphology matches the brute-force oracle") {
  Rng rng(77);
  for (const Kernel& kernel : {Kernel{3, 3, KernelShape::Plus}, Kernel{9, 1, KernelShape::Ones},
                               Kernel{2, 4, KernelShape::Ones}}) {
    PageImage img = random_image(rng);
    CHECK(morphology(img, MorphOp::Erode, kernel) == morph_oracle(img, true, kernel));
    CHECK(morphology(img, MorphOp::Dilate, kernel) == morph_oracle(img, false, kernel));
    CHECK(morphology(img, MorphOp::Open, kernel) ==
          morph_oracle(morph_oracle(img, true, kernel), false, kernel));
    CHECK(morphology(img, MorphOp::Close, kernel) ==
          morph_oracle(morph_oracle(img, false, kernel), true, kernel));
  }
}

TEST_CASE("erode <= image <= dilate pixel-wise") {
  Rng rng(31);
  PageImage img = random_image(rng);
  Kernel kernel{3, 3, KernelShape::Plus};
  PageImage eroded = morphology(img, MorphOp::Erode, kernel);
  PageImage dilated = morphology(img, MorphOp::Dilate, kernel);
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    CHECK(eroded.pixels[i] <= img.pixels[i]);
    CHECK(img.pixels[i] <= dilated.pixels[i]);
  }
}

TEST_CASE("phantom fades ink pixels only") {
  Rng rng(3);
  PageImage img = random_image(rng);
  Rng r0(4);
  CHECK(phantom(img, 0.0, 0.5, r0) == img);
  Rng r1(4);
  PageImage out = phantom(img, 1.0, 1.0, r1);
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    if (img.pixels[i] < 128)
      CHECK(out.pixels[i] == 255);
    else
      CHECK(out.pixels[i] == img.pixels[i]);
  }
}

TEST_CASE("phantom raises the mean intensity of rendered text") {
  RenderResult r = render_document("some dark glyphs to fade", builtin_template("text_block"));
  Rng rng(11);
  PageImage faded = phantom(r.pages[0], 0.5, 0.5, rng);
  double before = 0, after = 0;
  for (uint8_t p : r.pages[0].pixels) before += p;
  for (uint8_t p : faded.pixels) after += p;
  CHECK(after > before);
}

TEST_CASE("bleed through limits") {
  Rng rng(8);
  PageImage src = random_image(rng);
  PageImage bg = random_image(rng);
  CHECK(bleed_through(src, bg, 1.0, 3, -2) == src);

  PageImage mirrored = bleed_through(src, bg, 0.0, 0, 0);
  for (int y = 0; y < src.height_px; ++y)
    for (int x = 0; x < src.width_px; ++x)
      CHECK(mirrored.at(x, y) == bg.at(src.width_px - 1 - x, y));
}

TEST_CASE("bleed through formula with the heavy offsets") {
  Rng rng(15);
  PageImage src = random_image(rng);
  PageImage bg = random_image(rng);
  PageImage out = bleed_through(src, bg, 0.8, -6, -12);
  const int w = src.width_px;
  for (int y = 0; y < src.height_px; ++y)
    for (int x = 0; x < src.width_px; ++x) {
      int bx = x + 6, by = y + 12;
      double bgv = 255.0;
      if (bx < w && by < src.height_px) bgv = bg.at(w - 1 - bx, by);
      uint8_t expect = static_cast<uint8_t>(std::lround(0.8 * src.at(x, y) + 0.2 * bgv));
      CHECK(out.at(x, y) == expect);
    }
  PageImage small(3, 3, 0);
  CHECK_THROWS_AS(bleed_through(src, small, 0.5, 0, 0), std::invalid_argument);
}

TEST_CASE("overlay keeps the darkest ink") {
  Rng rng(21);
  PageImage img = random_image(rng);
  PageImage white(img.width_px, img.height_px, 255);
  CHECK(overlay(img, white) == img);
  CHECK(overlay(img, img) == img);
  PageImage a(1, 1, 100), b(1, 1, 40);
  CHECK(overlay(a, b).at(0, 0) == 40);
}

TEST_CASE("apply_recipe basics") {
  Rng rng(2);
  PageImage img = random_image(rng);
  CHECK(apply_recipe(img, Recipe{{}, 99}) == img);

  Recipe salt_zero;
  salt_zero.steps.push_back({.kind = StepKind::Salt, .amount = 0.0});
  CHECK(apply_recipe(img, salt_zero) == img);
}

TEST_CASE("salt then overlay against the original restores dark pixels") {
  Rng rng(6);
  PageImage img = random_image(rng);
  Recipe recipe;
  recipe.seed = 17;
  recipe.steps.push_back({.kind = StepKind::Salt, .amount = 0.5});
  DegradationStep over;
  over.kind = StepKind::Overlay;
  over.src = StateRef::Original;
  over.background = StateRef::Current;
  recipe.steps.push_back(over);
  // salt only brightens, so min(original, salted) is the original
  CHECK(apply_recipe(img, recipe) == img);
}

TEST_CASE("recipes are deterministic") {
  RenderResult r = render_document("determinism check text", builtin_template("text_block"));
  Recipe recipe = builtin_recipe("all_light", 1234);
  CHECK(apply_recipe(r.pages[0], recipe) == apply_recipe(r.pages[0], recipe));
}

TEST_CASE("builtin recipes encode the stacked degradation program") {
  CHECK(builtin_recipe("none", 5).steps.empty());
  CHECK_THROWS_AS(builtin_recipe("wat", 0), std::invalid_argument);
  CHECK(is_builtin_recipe_name("all_light"));
  CHECK(!is_builtin_recipe_name("wat"));

  Recipe light = builtin_recipe("all_light", 0);
  Recipe heavy = builtin_recipe("all_heavy", 0);
  for (const Recipe* r : {&light, &heavy}) {
    REQUIRE(r->steps.size() == 8);
    CHECK(r->steps[0].kind == StepKind::Open);
    CHECK(r->steps[0].kernel.rows == 9);
    CHECK(r->steps[0].kernel.cols == 9);
    CHECK(r->steps[0].kernel.shape == KernelShape::Plus);
    CHECK(r->steps[1].kind == StepKind::Close);
    CHECK(r->steps[1].kernel.rows == 9);
    CHECK(r->steps[1].kernel.cols == 1);
    CHECK(r->steps[1].kernel.shape == KernelShape::Ones);
    CHECK(r->steps[2].kind == StepKind::Salt);
    CHECK(r->steps[3].kind == StepKind::Overlay);
    CHECK(r->steps[3].src == StateRef::Original);
    CHECK(r->steps[3].background == StateRef::Current);
    CHECK(r->steps[4].kind == StepKind::BleedThrough);
    CHECK(r->steps[4].src == StateRef::Current);
    CHECK(r->steps[4].background == StateRef::Original);
    CHECK(r->steps[4].alpha == 0.8);
    CHECK(r->steps[5].kind == StepKind::Pepper);
    CHECK(r->steps[6].kind == StepKind::Blur);
    CHECK(r->steps[7].kind == StepKind::Salt);
    CHECK(r->steps[7].amount == 0.15);
  }
  CHECK(light.steps[2].amount == 0.7);
  CHECK(heavy.steps[2].amount == 0.5);
  CHECK(light.steps[4].offset_x == -5);
  CHECK(light.steps[4].offset_y == -5);
  CHECK(heavy.steps[4].offset_x == -6);
  CHECK(heavy.steps[4].offset_y == -12);
  CHECK(light.steps[5].amount == 0.005);
  CHECK(heavy.steps[5].amount == 0.015);
  CHECK(light.steps[6].radius == 3);
  CHECK(heavy.steps[6].radius == 11);
}

TEST_CASE("recipe JSON round trip") {
  Recipe recipe = builtin_recipe("all_heavy", 31337);
  DegradationStep ph;
  ph.kind = StepKind::Phantom;
  ph.amount = 0.25;
  ph.fade = 0.75;
  recipe.steps.push_back(ph);
  Recipe back = parse_recipe(write_recipe(recipe));
  CHECK(back.seed == recipe.seed);
  REQUIRE(back.steps.size() == recipe.steps.size());
  RenderResult r = render_document("round trip", builtin_template("text_block"));
  CHECK(apply_recipe(r.pages[0], back) == apply_recipe(r.pages[0], recipe));

  CHECK_THROWS(parse_recipe("{\"steps\": [{\"kind\": \"Vortex\"}]}"));
  CHECK_THROWS(parse_recipe("{\"steps\": [{\"kind\": \"Blur\", \"radius\": 4}]}"));
  CHECK_THROWS(parse_recipe("{\"steps\": [{\"kind\": \"Salt\", \"amount\": 2.0}]}"));
}

TEST_CASE("operations preserve dimensions") {
  Rng rng(100);
  PageImage img = random_image(rng, 17, 13);
  Rng r(1);
  for (const PageImage& out :
       {gaussian_blur(img, 5), salt_pepper(img, NoiseKind::Pepper, 0.3, r),
        morphology(img, MorphOp::Close, {3, 3, KernelShape::Ones}),
        phantom(img, 0.5, 0.5, r), bleed_through(img, img, 0.5, 2, 2), overlay(img, img)}) {
    CHECK(out.width_px == img.width_px);
    CHECK(out.height_px == img.height_px);
  }
}
