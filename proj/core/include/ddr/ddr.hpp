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

// Feature-space mathematics of the deep degradation response.
//
// A degradation direction is the difference of two text embeddings
// (degraded prompt minus clean prompt). Before it is added to an image
// embedding it is restyled so that its scalar mean and standard deviation
// match the image embedding's, in the manner of adaptive instance
// normalization. The response to a degradation is the cosine disparity
// between the image embedding and the fused (degraded) embedding, and the
// quality score of an image is the mean response over a degradation set.
//
// All functions are pure and thread-safe.

#ifndef DDR_DDR_HPP_
#define DDR_DDR_HPP_

#include "ddr/features.hpp"

namespace ddr {

// Directions whose population std is at or below this are rejected.
inline constexpr double kAdaptationEpsilon = 1e-8;

struct VectorStats {
  double mean;
  double std;  // population (divide by N)
};

// Elementwise t_minus - t_plus. Throws DimensionError on length mismatch.
FeatureVector degradation_direction(const FeatureVector& t_minus,
                                    const FeatureVector& t_plus);

// Throws DegenerateInputError for fewer than two entries.
VectorStats vector_stats(const FeatureVector& v);

/// Restyles `direction` to carry the mean and std of `image`:
/// sigma(f) * (t - mu(t)) / sigma(t) + mu(f).
///
/// Throws DegenerateDirectionError when sigma(t) <= kAdaptationEpsilon and
/// DimensionError on length mismatch.
FeatureVector adapt_direction(const FeatureVector& direction,
                              const FeatureVector& image);

// Elementwise sum. Throws DimensionError on length mismatch.
FeatureVector fuse(const FeatureVector& image,
                   const FeatureVector& adapted_direction);

// 1 - cos(x, y), in [0, 2]. Throws UndefinedDisparityError on a zero-norm
// operand and DimensionError on length mismatch.
double cosine_disparity(const FeatureVector& x, const FeatureVector& y);

// Response of one image embedding to one text-driven degradation.
double ddr_text(const FeatureVector& image, const DegradationDirection& dir);

// Mean of ddr_text over the set. A degenerate member is reported as a
// DegenerateDirectionError naming its degradation type.
double quality_score(const FeatureVector& image, const DegradationSet& set);

}  // namespace ddr

#endif  // DDR_DDR_HPP_
