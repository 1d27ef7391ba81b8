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

#ifndef DDR_STATS_HPP_
#define DDR_STATS_HPP_

#include <span>
#include <vector>

namespace ddr {

// 1-based ranks; tied values share the mean of the ranks they span.
// Every function here throws DegenerateInputError on non-finite input.
std::vector<double> average_ranks(std::span<const double> values);

// Throws DimensionError for unequal or < 2 lengths and
// UndefinedCorrelationError when either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation with average ranks for ties, in [-1, 1].
double srcc(std::span<const double> xs, std::span<const double> ys);

}  // namespace ddr

#endif  // DDR_STATS_HPP_
