#pragma once

#include <string>
#include <vector>

#include "docsynth/image.hpp"
#include "docsynth/rng.hpp"

namespace docsynth {

enum class KernelShape { Ones, Plus };

// Structuring element. "plus" activates only the middle row and middle
// column (middle = dim / 2).
struct Kernel {
  int rows = 1;
  int cols = 1;
  KernelShape shape = KernelShape::Ones;
  bool active(int r, int c) const {
    if (shape == KernelShape::Ones) return true;
    return r == rows / 2 || c == cols / 2;
  }
};

enum class StateRef { Original, Current };
enum class NoiseKind { Salt, Pepper };
enum class MorphOp { Erode, Dilate, Open, Close };

enum class StepKind {
  Blur,
  Salt,
  Pepper,
  Open,
  Close,
  Dilate,
  Erode,
  Phantom,
  BleedThrough,
  Overlay,
};

struct DegradationStep {
  StepKind kind = StepKind::Blur;
  int radius = 1;                          // Blur (odd, >= 1; kernel side)
  double amount = 0.0;                     // Salt / Pepper / Phantom, in [0,1]
  double fade = 0.0;                       // Phantom, in [0,1]
  Kernel kernel;                           // morphology
  double alpha = 1.0;                      // BleedThrough, in [0,1]
  int offset_x = 0;                        // BleedThrough background shift
  int offset_y = 0;
  StateRef src = StateRef::Current;        // BleedThrough / Overlay inputs
  StateRef background = StateRef::Original;
};

// Ordered degradation program. Identical (image, recipe) pairs produce
// bit-identical output.
struct Recipe {
  std::vector<DegradationStep> steps;
  uint64_t seed = 0;
};

// Separable Gaussian, kernel side = radius, sigma = 0.3*((radius-1)*0.5-1)+0.8,
// clamp-to-edge borders, rounded once after both passes.
PageImage gaussian_blur(const PageImage& img, int radius);

// Sets each pixel to 255 (salt) or 0 (pepper) with the given probability.
// Consumes exactly one uniform draw per pixel in row-major order.
PageImage salt_pepper(const PageImage& img, NoiseKind kind, double amount, Rng& rng);

// Erode = min over active cells (thickens ink), dilate = max (thins ink),
// open = dilate(erode), close = erode(dilate). Samples outside the image
// read as 255.
PageImage morphology(const PageImage& img, MorphOp op, const Kernel& kernel);

// Fades each ink pixel (value < 128) with the given probability:
// v' = round(v + (255-v)*fade). One uniform draw per pixel, row-major.
PageImage phantom(const PageImage& img, double amount, double fade, Rng& rng);

// out = round(alpha*src + (1-alpha)*bg') with bg' the background mirrored
// horizontally and shifted by (offset_x, offset_y); out-of-range reads 255.
PageImage bleed_through(const PageImage& src, const PageImage& background, double alpha,
                        int offset_x, int offset_y);

// Darkest-ink compositing: out = min(src, background).
PageImage overlay(const PageImage& src, const PageImage& background);

// Runs the steps in order. ORIGINAL_STATE refers to the input image,
// CURRENT_STATE to the image after the previous step. One RNG stream is
// seeded from recipe.seed and advanced by each stochastic step.
PageImage apply_recipe(const PageImage& img, const Recipe& recipe);

// "none", "all_light", or "all_heavy".
Recipe builtin_recipe(const std::string& name, uint64_t seed);
bool is_builtin_recipe_name(const std::string& name);

// {"seed": n, "steps": [{"kind": "...", ...}, ...]}
std::string write_recipe(const Recipe& recipe);
Recipe parse_recipe(const std::string& json_text);

}  // namespace docsynth
