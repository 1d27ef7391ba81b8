// Copyright 2026 The DDR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ddr/degradations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "ddr/ddr.hpp"
#include "ddr/encoders.hpp"
#include "ddr/error.hpp"
#include "ddr/preprocess.hpp"

namespace ddr {
namespace {

double parse_double(std::string_view s, std::string_view context) {
  const std::string text(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw ConfigError("bad number '" + text + "' in '" + std::string(context) + "'");
  }
  return v;
}

std::uint64_t parse_seed(std::string_view s, std::string_view context) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("bad seed '" + std::string(s) + "' in '" + std::string(context) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Half-sample symmetric reflection: ... c b a | a b c ... c | c b a ...
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(n)) m = period - 1 - m;
  return static_cast<std::size_t>(m);
}

// Source index of every tap for every output position along one axis.
std::vector<std::size_t> tap_sources(std::size_t n, std::ptrdiff_t radius) {
  const std::size_t taps = static_cast<std::size_t>(2 * radius + 1);
  std::vector<std::size_t> src(n * taps);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
      src[i * taps + static_cast<std::size_t>(t + radius)] =
          reflect(static_cast<std::ptrdiff_t>(i) + t, n);
    }
  }
  return src;
}

Image blur(const Image& img, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const std::size_t taps = k.size();
  const auto radius = static_cast<std::ptrdiff_t>(taps / 2);
  const std::size_t h = img.height(), w = img.width();
  const auto xs = tap_sources(w, radius), ys = tap_sources(h, radius);
  const auto px = img.data();

  std::vector<double> tmp(h * w * 3);
  for (std::size_t y = 0; y < h; ++y) {
    const float* row = px.data() + y * w * 3;
    for (std::size_t x = 0; x < w; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t t = 0; t < taps; ++t) {
        const float* p = row + xs[x * taps + t] * 3;
        acc[0] += k[t] * p[0];
        acc[1] += k[t] * p[1];
        acc[2] += k[t] * p[2];
      }
      std::copy(acc, acc + 3, tmp.begin() + static_cast<std::ptrdiff_t>((y * w + x) * 3));
    }
  }
  Image out = img;
  auto dst = out.data();
  std::vector<double> acc(w * 3);
  for (std::size_t y = 0; y < h; ++y) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t t = 0; t < taps; ++t) {
      const double* src = tmp.data() + ys[y * taps + t] * w * 3;
      for (std::size_t i = 0; i < w * 3; ++i) acc[i] += k[t] * src[i];
    }
    for (std::size_t i = 0; i < w * 3; ++i) {
      dst[y * w * 3 + i] = static_cast<float>(std::clamp(acc[i], 0.0, 1.0));
    }
  }
  return out;
}

// Box-Muller on mt19937_64, whose output the standard fixes, so a seed gives
// the same noise with every standard library.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = open_unit();
    const double u2 = open_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  // Uniform on (0, 1) with 53 random bits.
  double open_unit() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53; }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Image add_noise(const Image& img, double sigma, std::uint64_t seed) {
  GaussianStream noise(seed);
  Image out = img;
  for (float& v : out.data()) {
    v = static_cast<float>(std::clamp(static_cast<double>(v) + sigma * noise.next(), 0.0, 1.0));
  }
  return out;
}

Image expose(const Image& img, double stops) {
  const double gain = std::exp2(stops);
  Image out = img;
  for (float& v : out.data()) {
    v = static_cast<float>(std::clamp(static_cast<double>(v) * gain, 0.0, 1.0));
  }
  return out;
}

Image desaturate(const Image& img, double level) {
  const double alpha = std::min(level, 1.0);
  Image out = img;
  auto px = out.data();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    const double y = luma(px[i], px[i + 1], px[i + 2]);
    for (std::size_t c = 0; c < 3; ++c) {
      const double v = (1.0 - alpha) * px[i + c] + alpha * y;
      px[i + c] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(DegradationKind kind) noexcept {
  switch (kind) {
    case DegradationKind::gaussian_blur: return "gaussian_blur";
    case DegradationKind::gaussian_noise: return "gaussian_noise";
    case DegradationKind::exposure: return "exposure";
    case DegradationKind::desaturate: return "desaturate";
  }
  return "unknown";
}

DegradationKind parse_degradation_kind(std::string_view name) {
  if (name == "gaussian_blur" || name == "blur") return DegradationKind::gaussian_blur;
  if (name == "gaussian_noise" || name == "noise") return DegradationKind::gaussian_noise;
  if (name == "exposure") return DegradationKind::exposure;
  if (name == "desaturate") return DegradationKind::desaturate;
  throw ConfigError("unknown degradation kind '" + std::string(name) +
                    "' (expected gaussian_blur, gaussian_noise, exposure or desaturate)");
}

void DegradationSpec::validate() const {
  if (!std::isfinite(level)) throw ConfigError("degradation level must be finite");
  if (level < 0.0 && kind != DegradationKind::exposure) {
    throw ConfigError(std::string(to_string(kind)) + " level must be >= 0");
  }
}

DegradationSpec parse_degradation_spec(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("degradation spec '" + std::string(text) +
                      "' must look like kind:level[:seed]");
  }
  DegradationSpec spec;
  spec.kind = parse_degradation_kind(parts[0]);
  spec.level = parse_double(parts[1], text);
  if (parts.size() == 3) spec.seed = parse_seed(parts[2], text);
  spec.validate();
  return spec;
}

std::string to_string(const DegradationSpec& spec) {
  char level[32];
  const auto res = std::to_chars(level, level + sizeof level, spec.level);
  std::string out = std::string(to_string(spec.kind)) + ":" + std::string(level, res.ptr);
  if (spec.kind == DegradationKind::gaussian_noise) out += ":" + std::to_string(spec.seed);
  return out;
}

LadderSpec parse_ladder_spec(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("ladder spec '" + std::string(text) +
                      "' must look like kind:l0,l1,...[:seed]");
  }
  LadderSpec spec;
  spec.kind = parse_degradation_kind(parts[0]);
  for (auto level : split(parts[1], ',')) spec.levels.push_back(parse_double(level, text));
  if (parts.size() == 3) spec.seed = parse_seed(parts[2], text);
  return spec;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("gaussian kernel needs a positive finite sigma");
  }
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
    const double v = std::exp(-0.5 * static_cast<double>(t * t) / (sigma * sigma));
    k[static_cast<std::size_t>(t + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

Image apply(const Image& img, const DegradationSpec& spec) {
  spec.validate();
  if (img.empty()) throw DimensionError("cannot degrade an empty image");
  if (spec.level == 0.0) return img;
  switch (spec.kind) {
    case DegradationKind::gaussian_blur: return blur(img, spec.level);
    case DegradationKind::gaussian_noise: return add_noise(img, spec.level, spec.seed);
    case DegradationKind::exposure: return expose(img, spec.level);
    case DegradationKind::desaturate: return desaturate(img, spec.level);
  }
  throw ConfigError("unknown degradation kind");
}

std::vector<Image> ladder(const Image& img, DegradationKind kind,
                          std::span<const double> levels, std::uint64_t seed) {
  if (levels.empty()) throw ConfigError("ladder needs at least one level");
  if (kind != DegradationKind::exposure && levels.front() < 0.0) {
    throw ConfigError("ladder levels must start at >= 0");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1])) {
      throw ConfigError("ladder levels must be strictly ascending");
    }
  }
  std::vector<Image> rungs;
  rungs.reserve(levels.size());
  for (double level : levels) rungs.push_back(apply(img, {kind, level, seed}));
  return rungs;
}

double ddr_pixel(const Image& img, const DegradationSpec& spec,
                 const EncoderSession& image_session, const FeatureMetric& metric) {
  const FeatureVector clean = encode_image(image_session, preprocess(img));
  const FeatureVector degraded = encode_image(image_session, preprocess(apply(img, spec)));
  return metric ? metric(clean, degraded) : cosine_disparity(clean, degraded);
}

}  // namespace ddr
