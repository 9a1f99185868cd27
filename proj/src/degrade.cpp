#include "docsynth/degrade.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace docsynth {

namespace {

uint8_t round_clamp(double v) {
  double r = std::lround(v);
  return static_cast<uint8_t>(std::clamp(r, 0.0, 255.0));
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " must be in [0,1]");
}

}  // namespace

PageImage gaussian_blur(const PageImage& img, int radius) {
  if (radius < 1 || radius % 2 == 0)
    throw std::invalid_argument("blur radius must be odd and positive");
  if (radius == 1) return img;

  const int side = radius;
  const int half = side / 2;
  const double sigma = 0.3 * ((side - 1) * 0.5 - 1.0) + 0.8;
  std::vector<double> kernel(side);
  double sum = 0.0;
  for (int i = 0; i < side; ++i) {
    double d = i - half;
    kernel[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += kernel[i];
  }
  for (double& k : kernel) k /= sum;

  const int w = img.width_px, h = img.height_px;
  std::vector<double> tmp(static_cast<size_t>(w) * h);
  // horizontal pass, clamp-to-edge
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < side; ++k) {
        int sx = std::clamp(x + k - half, 0, w - 1);
        acc += kernel[k] * img.at(sx, y);
      }
      tmp[static_cast<size_t>(y) * w + x] = acc;
    }
  PageImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < side; ++k) {
        int sy = std::clamp(y + k - half, 0, h - 1);
        acc += kernel[k] * tmp[static_cast<size_t>(sy) * w + x];
      }
      out.set(x, y, round_clamp(acc));
    }
  return out;
}

PageImage salt_pepper(const PageImage& img, NoiseKind kind, double amount, Rng& rng) {
  check_unit(amount, "salt/pepper amount");
  const uint8_t value = kind == NoiseKind::Salt ? 255 : 0;
  PageImage out = img;
  for (size_t i = 0; i < out.pixels.size(); ++i)
    if (rng.next_double() < amount) out.pixels[i] = value;
  return out;
}

namespace {

PageImage min_max_filter(const PageImage& img, const Kernel& kernel, bool take_min) {
  if (kernel.rows < 1 || kernel.cols < 1)
    throw std::invalid_argument("kernel dimensions must be >= 1");
  std::vector<std::pair<int, int>> offsets;
  for (int r = 0; r < kernel.rows; ++r)
    for (int c = 0; c < kernel.cols; ++c)
      if (kernel.active(r, c)) offsets.emplace_back(r - kernel.rows / 2, c - kernel.cols / 2);

  const int w = img.width_px, h = img.height_px;
  PageImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int best = take_min ? 255 : 0;
      for (auto [dy, dx] : offsets) {
        int sx = x + dx, sy = y + dy;
        int v = img.in_bounds(sx, sy) ? img.at(sx, sy) : 255;
        best = take_min ? std::min(best, v) : std::max(best, v);
      }
      out.set(x, y, static_cast<uint8_t>(best));
    }
  return out;
}

}  // namespace

PageImage morphology(const PageImage& img, MorphOp op, const Kernel& kernel) {
  switch (op) {
    case MorphOp::Erode:
      return min_max_filter(img, kernel, true);
    case MorphOp::Dilate:
      return min_max_filter(img, kernel, false);
    case MorphOp::Open:
      return min_max_filter(min_max_filter(img, kernel, true), kernel, false);
    case MorphOp::Close:
      return min_max_filter(min_max_filter(img, kernel, false), kernel, true);
  }
  throw std::logic_error("unreachable");
}

PageImage phantom(const PageImage& img, double amount, double fade, Rng& rng) {
  check_unit(amount, "phantom amount");
  check_unit(fade, "phantom fade");
  PageImage out = img;
  for (size_t i = 0; i < out.pixels.size(); ++i) {
    double u = rng.next_double();
    uint8_t v = out.pixels[i];
    if (v < 128 && u < amount) out.pixels[i] = round_clamp(v + (255.0 - v) * fade);
  }
  return out;
}

PageImage bleed_through(const PageImage& src, const PageImage& background, double alpha,
                        int offset_x, int offset_y) {
  if (!src.same_size(background))
    throw std::invalid_argument("bleed_through inputs must have identical dimensions");
  check_unit(alpha, "bleed-through alpha");
  const int w = src.width_px, h = src.height_px;
  PageImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int bx = x - offset_x, by = y - offset_y;
      double bg = 255.0;
      if (bx >= 0 && bx < w && by >= 0 && by < h) bg = background.at(w - 1 - bx, by);
      out.set(x, y, round_clamp(alpha * src.at(x, y) + (1.0 - alpha) * bg));
    }
  return out;
}

PageImage overlay(const PageImage& src, const PageImage& background) {
  if (!src.same_size(background))
    throw std::invalid_argument("overlay inputs must have identical dimensions");
  PageImage out = src;
  for (size_t i = 0; i < out.pixels.size(); ++i)
    out.pixels[i] = std::min(out.pixels[i], background.pixels[i]);
  return out;
}

PageImage apply_recipe(const PageImage& img, const Recipe& recipe) {
  const PageImage original = img;
  PageImage current = img;
  Rng rng(recipe.seed);
  auto resolve = [&](StateRef ref) -> const PageImage& {
    return ref == StateRef::Original ? original : current;
  };
  for (const auto& step : recipe.steps) {
    switch (step.kind) {
      case StepKind::Blur:
        current = gaussian_blur(current, step.radius);
        break;
      case StepKind::Salt:
        current = salt_pepper(current, NoiseKind::Salt, step.amount, rng);
        break;
      case StepKind::Pepper:
        current = salt_pepper(current, NoiseKind::Pepper, step.amount, rng);
        break;
      case StepKind::Open:
        current = morphology(current, MorphOp::Open, step.kernel);
        break;
      case StepKind::Close:
        current = morphology(current, MorphOp::Close, step.kernel);
        break;
      case StepKind::Dilate:
        current = morphology(current, MorphOp::Dilate, step.kernel);
        break;
      case StepKind::Erode:
        current = morphology(current, MorphOp::Erode, step.kernel);
        break;
      case StepKind::Phantom:
        current = phantom(current, step.amount, step.fade, rng);
        break;
      case StepKind::BleedThrough:
        current = bleed_through(resolve(step.src), resolve(step.background), step.alpha,
                                step.offset_x, step.offset_y);
        break;
      case StepKind::Overlay:
        current = overlay(resolve(step.src), resolve(step.background));
        break;
    }
  }
  return current;
}

namespace {

DegradationStep make_morph(StepKind kind, int rows, int cols, KernelShape shape) {
  DegradationStep s;
  s.kind = kind;
  s.kernel = Kernel{rows, cols, shape};
  return s;
}

DegradationStep make_noise(StepKind kind, double amount) {
  DegradationStep s;
  s.kind = kind;
  s.amount = amount;
  return s;
}

// Shared step order of the stacked recipes; light and heavy differ only in
// parameter strength.
Recipe all_degradations(bool heavy, uint64_t seed) {
  Recipe r;
  r.seed = seed;
  r.steps.push_back(make_morph(StepKind::Open, 9, 9, KernelShape::Plus));
  r.steps.push_back(make_morph(StepKind::Close, 9, 1, KernelShape::Ones));
  r.steps.push_back(make_noise(StepKind::Salt, heavy ? 0.5 : 0.7));
  {
    DegradationStep s;
    s.kind = StepKind::Overlay;
    s.src = StateRef::Original;
    s.background = StateRef::Current;
    r.steps.push_back(s);
  }
  {
    DegradationStep s;
    s.kind = StepKind::BleedThrough;
    s.src = StateRef::Current;
    s.background = StateRef::Original;
    s.alpha = 0.8;
    s.offset_x = heavy ? -6 : -5;
    s.offset_y = heavy ? -12 : -5;
    r.steps.push_back(s);
  }
  r.steps.push_back(make_noise(StepKind::Pepper, heavy ? 0.015 : 0.005));
  {
    DegradationStep s;
    s.kind = StepKind::Blur;
    s.radius = heavy ? 11 : 3;
    r.steps.push_back(s);
  }
  r.steps.push_back(make_noise(StepKind::Salt, 0.15));
  return r;
}

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::Blur: return "Blur";
    case StepKind::Salt: return "Salt";
    case StepKind::Pepper: return "Pepper";
    case StepKind::Open: return "Open";
    case StepKind::Close: return "Close";
    case StepKind::Dilate: return "Dilate";
    case StepKind::Erode: return "Erode";
    case StepKind::Phantom: return "Phantom";
    case StepKind::BleedThrough: return "BleedThrough";
    case StepKind::Overlay: return "Overlay";
  }
  return "?";
}

const char* state_name(StateRef s) {
  return s == StateRef::Original ? "ORIGINAL_STATE" : "CURRENT_STATE";
}

StateRef parse_state(const std::string& s) {
  if (s == "ORIGINAL_STATE") return StateRef::Original;
  if (s == "CURRENT_STATE") return StateRef::Current;
  throw std::invalid_argument("unknown state reference \"" + s + "\"");
}

}  // namespace

bool is_builtin_recipe_name(const std::string& name) {
  return name == "none" || name == "all_light" || name == "all_heavy";
}

Recipe builtin_recipe(const std::string& name, uint64_t seed) {
  if (name == "none") return Recipe{{}, seed};
  if (name == "all_light") return all_degradations(false, seed);
  if (name == "all_heavy") return all_degradations(true, seed);
  throw std::invalid_argument("unknown recipe \"" + name +
                              "\"; expected none, all_light, or all_heavy");
}

std::string write_recipe(const Recipe& recipe) {
  nlohmann::json j;
  j["seed"] = recipe.seed;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : recipe.steps) {
    nlohmann::json js;
    js["kind"] = kind_name(s.kind);
    switch (s.kind) {
      case StepKind::Blur:
        js["radius"] = s.radius;
        break;
      case StepKind::Salt:
      case StepKind::Pepper:
        js["amount"] = s.amount;
        break;
      case StepKind::Open:
      case StepKind::Close:
      case StepKind::Dilate:
      case StepKind::Erode:
        js["kernel"] = {{"rows", s.kernel.rows},
                        {"cols", s.kernel.cols},
                        {"shape", s.kernel.shape == KernelShape::Plus ? "plus" : "ones"}};
        break;
      case StepKind::Phantom:
        js["amount"] = s.amount;
        js["fade"] = s.fade;
        break;
      case StepKind::BleedThrough:
        js["alpha"] = s.alpha;
        js["offset_x"] = s.offset_x;
        js["offset_y"] = s.offset_y;
        js["src"] = state_name(s.src);
        js["background"] = state_name(s.background);
        break;
      case StepKind::Overlay:
        js["src"] = state_name(s.src);
        js["background"] = state_name(s.background);
        break;
    }
    j["steps"].push_back(js);
  }
  return j.dump(2) + "\n";
}

Recipe parse_recipe(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  Recipe r;
  r.seed = j.value("seed", 0ULL);
  for (const auto& js : j.at("steps")) {
    DegradationStep s;
    std::string kind = js.at("kind").get<std::string>();
    if (kind == "Blur") {
      s.kind = StepKind::Blur;
      s.radius = js.at("radius").get<int>();
      if (s.radius < 1 || s.radius % 2 == 0)
        throw std::invalid_argument("Blur radius must be odd and positive");
    } else if (kind == "Salt" || kind == "Pepper") {
      s.kind = kind == "Salt" ? StepKind::Salt : StepKind::Pepper;
      s.amount = js.at("amount").get<double>();
      check_unit(s.amount, "amount");
    } else if (kind == "Open" || kind == "Close" || kind == "Dilate" || kind == "Erode") {
      s.kind = kind == "Open"    ? StepKind::Open
               : kind == "Close" ? StepKind::Close
               : kind == "Dilate" ? StepKind::Dilate
                                  : StepKind::Erode;
      auto jk = js.at("kernel");
      s.kernel.rows = jk.at("rows").get<int>();
      s.kernel.cols = jk.at("cols").get<int>();
      std::string shape = jk.at("shape").get<std::string>();
      if (shape == "plus")
        s.kernel.shape = KernelShape::Plus;
      else if (shape == "ones")
        s.kernel.shape = KernelShape::Ones;
      else
        throw std::invalid_argument("unknown kernel shape \"" + shape + "\"");
      if (s.kernel.rows < 1 || s.kernel.cols < 1)
        throw std::invalid_argument("kernel dimensions must be >= 1");
    } else if (kind == "Phantom") {
      s.kind = StepKind::Phantom;
      s.amount = js.at("amount").get<double>();
      s.fade = js.at("fade").get<double>();
      check_unit(s.amount, "amount");
      check_unit(s.fade, "fade");
    } else if (kind == "BleedThrough") {
      s.kind = StepKind::BleedThrough;
      s.alpha = js.at("alpha").get<double>();
      s.offset_x = js.at("offset_x").get<int>();
      s.offset_y = js.at("offset_y").get<int>();
      s.src = parse_state(js.at("src").get<std::string>());
      s.background = parse_state(js.at("background").get<std::string>());
      check_unit(s.alpha, "alpha");
    } else if (kind == "Overlay") {
      s.kind = StepKind::Overlay;
      s.src = parse_state(js.at("src").get<std::string>());
      s.background = parse_state(js.at("background").get<std::string>());
    } else {
      throw std::invalid_argument("unknown degradation kind \"" + kind + "\"");
    }
    r.steps.push_back(s);
  }
  return r;
}

}  // namespace docsynth
