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

// Dataset-level evaluation: quality scores against MOS, descriptor
// correlations and the restoration objective.
//
// Images are scored concurrently when parallelism > 1. Results are always
// stored in manifest order and every reduction runs on the ordered results,
// so output does not depend on thread scheduling.

#ifndef DDR_HARNESS_HPP_
#define DDR_HARNESS_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddr/encoders.hpp"
#include "ddr/features.hpp"
#include "ddr/image.hpp"

namespace ddr {

struct ManifestRecord {
  std::string path;  // as written in the manifest
  double mos = 0.0;
};

/// Two-column CSV (`path,mos`, UTF-8) with paths relative to the file.
struct DatasetManifest {
  std::string dataset_id;
  std::filesystem::path base_dir;
  std::vector<ManifestRecord> records;

  // dataset_id defaults to the name of the manifest's directory. Throws
  // DataError on a missing file, bad header, duplicate path or bad MOS.
  static DatasetManifest load(const std::filesystem::path& csv);
  static DatasetManifest parse(std::string_view csv_text, std::filesystem::path base_dir,
                               std::string dataset_id);

  std::filesystem::path resolve(const ManifestRecord& r) const { return base_dir / r.path; }
};

struct TypeScore {
  DegradationType degradation;
  double value;
};

// Per-type ddr_text in set order plus their mean.
struct QualityReport {
  std::vector<TypeScore> ddr;
  double q_ddr = 0.0;
};

QualityReport score_embedding(const FeatureVector& image, const DegradationSet& set);
QualityReport score_image(const Image& img, const EncoderSession& image_session,
                          const DegradationSet& set);

struct ImageScore {
  std::string path;
  double mos = 0.0;
  QualityReport quality;
};

struct RecordFailure {
  std::string path;
  std::string error;
};

struct EvalResult {
  std::string dataset_id;
  double srcc = 0.0;
  std::size_t n_images = 0;  // successfully scored
  std::vector<ImageScore> per_image;
  std::vector<RecordFailure> failures;
  std::vector<std::string> degradation_set_used;
  std::string model_id;
};

struct EvalOptions {
  std::size_t parallelism = 1;  // 0 uses every hardware thread
};

/// Scores every record and correlates q_ddr with MOS.
///
/// Unreadable images are collected in `failures`. Throws DataError when
/// fewer than two records score, and UndefinedCorrelationError when either
/// side is constant.
EvalResult evaluate_biqa(const DatasetManifest& manifest, const DegradationSet& set,
                         const EncoderSession& image_session, const EvalOptions& options = {});

inline constexpr const char* kDescriptorColumns[] = {"colorfulness", "sharpness", "quality"};

struct DescriptorRow {
  DegradationType degradation;
  double colorfulness;  // srcc(ddr_text, colorfulness)
  double sharpness;     // srcc(ddr_text, sharpness_proxy)
  double quality;       // srcc(ddr_text, mos)
};

struct DescriptorTable {
  std::string dataset_id;
  std::size_t n_images = 0;
  std::vector<DescriptorRow> rows;  // set order
  std::vector<RecordFailure> failures;
  std::string model_id;
};

DescriptorTable correlate_descriptors(const DatasetManifest& manifest, const DegradationSet& set,
                                      const EncoderSession& image_session,
                                      const EvalOptions& options = {});

inline constexpr double kDefaultLambdaD = 2.0;

struct ObjectiveResult {
  double psnr_db = 0.0;  // +inf when identical
  bool identical = false;
  double l_rec = 0.0;    // -psnr_db
  double lambda_d = kDefaultLambdaD;
  std::vector<TypeScore> ddr;  // ddr_text of the restored image, set order
  double ddr_sum = 0.0;
  double objective = 0.0;  // l_rec - lambda_d * ddr_sum
};

// l_rec - lambda_d * sum(ddr). Throws ConfigError for a negative or
// non-finite lambda_d.
double combine_objective(double l_rec, double lambda_d, std::span<const double> ddr);

/// Forward value of the restoration objective with L_rec = -PSNR(restored, gt).
/// Throws DimensionError when the images differ in size.
ObjectiveResult ddr_objective(const Image& restored, const Image& gt, const DegradationSet& set,
                              double lambda_d, const EncoderSession& image_session);

/// Runs body(i) for i in [0, n) on up to `parallelism` threads. The first
/// exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t parallelism,
                  const std::function<void(std::size_t)>& body);

}  // namespace ddr

#endif  // DDR_HARNESS_HPP_
