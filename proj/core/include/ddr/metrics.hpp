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

// Reference fidelity metrics and handcrafted image descriptors.

#ifndef DDR_METRICS_HPP_
#define DDR_METRICS_HPP_

#include "ddr/image.hpp"

namespace ddr {

struct PsnrResult {
  double db;       // +inf when identical
  bool identical;  // mse == 0
};

// PSNR over all RGB samples, peak 1.0. Throws DimensionError on mismatch.
PsnrResult psnr(const Image& a, const Image& b);

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  int window = 11;
  double sigma = 1.5;
};

/// Mean SSIM over the luma plane, dynamic range 1. Uses only windows that
/// fit entirely inside the image, so both sides must be >= window.
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

// Hasler-Suesstrunk colorfulness on [0, 1] RGB. Zero on achromatic input.
double colorfulness(const Image& img);

// Mean of |grad luma|^2 with central differences over interior pixels.
// Throws DegenerateInputError when either side is below 3.
double sharpness_proxy(const Image& img);

}  // namespace ddr

#endif  // DDR_METRICS_HPP_
