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

// Frozen image and text encoders loaded from a model assets directory.
//
// The directory holds image_encoder.onnx, text_encoder.onnx, bpe_vocab.txt.gz
// and manifest.json. The manifest records model_id, embedding_dim,
// context_length and a "sha256:<hex>" digest for each file; every digest is
// checked when the directory is opened.

#ifndef DDR_ENCODERS_HPP_
#define DDR_ENCODERS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ddr/features.hpp"
#include "ddr/preprocess.hpp"
#include "ddr/tokenizer.hpp"

namespace ddr {

namespace onnx {
class Graph;
}

inline constexpr const char* kImageEncoderFile = "image_encoder.onnx";
inline constexpr const char* kTextEncoderFile = "text_encoder.onnx";
inline constexpr const char* kVocabFile = "bpe_vocab.txt.gz";
inline constexpr const char* kManifestFile = "manifest.json";

struct ModelAssets {
  std::filesystem::path dir;
  std::string model_id;
  std::size_t embedding_dim = 0;
  std::size_t context_length = 0;
  int opset = 0;  // 0 when the manifest does not pin one
  std::map<std::string, std::string> file_hashes;

  /// Reads and verifies the manifest. Throws AssetError naming the first
  /// missing file, digest mismatch or inconsistent field.
  static ModelAssets open(const std::filesystem::path& dir);

  std::filesystem::path image_encoder() const { return dir / kImageEncoderFile; }
  std::filesystem::path text_encoder() const { return dir / kTextEncoderFile; }
  std::filesystem::path vocab() const { return dir / kVocabFile; }
};

// Lowercase hex SHA-256 of a file. Throws AssetError when unreadable.
std::string sha256_file(const std::filesystem::path& path);

enum class EncoderKind { image, text };

/// One loaded encoder graph. Copies share the graph; inference calls may run
/// concurrently.
class EncoderSession {
 public:
  // Throws AssetError when the file is unreadable and SessionError when its
  // inputs or outputs do not match the encoder contract for `kind`.
  static EncoderSession open(const std::filesystem::path& graph_path, EncoderKind kind,
                             std::string model_id, std::size_t embedding_dim);

  EncoderKind kind() const noexcept { return kind_; }
  std::size_t embedding_dim() const noexcept { return embedding_dim_; }
  const std::string& model_id() const noexcept { return model_id_; }

  // Runs one sample; `values` is the flattened input of a batch of one.
  std::vector<float> run_image(const std::vector<float>& values) const;
  std::vector<float> run_text(const std::vector<std::int64_t>& ids) const;

 private:
  EncoderSession() = default;
  std::vector<float> embedding_of(const std::vector<float>& out, std::size_t rows) const;

  std::shared_ptr<const onnx::Graph> graph_;
  EncoderKind kind_ = EncoderKind::image;
  std::size_t embedding_dim_ = 0;
  std::string model_id_;
  std::string input_name_;
};

// Throws SessionError for a text session or an inference failure.
FeatureVector encode_image(const EncoderSession& session, const PreprocessedTensor& t);
// Throws SessionError for an image session or an inference failure.
FeatureVector encode_text(const EncoderSession& session, const TokenSequence& tok);

/// Everything needed to score: verified assets, both sessions, tokenizer.
struct Encoders {
  ModelAssets assets;
  EncoderSession image;
  EncoderSession text;
  std::shared_ptr<const Tokenizer> tokenizer;

  static Encoders load(const std::filesystem::path& dir);
};

/// direction = encode_text(P-) - encode_text(P+) for each pair, in order.
///
/// Throws ConfigError for an empty list, invalid pairs or duplicate types,
/// and DegenerateDirectionError naming the type whose direction has (near)
/// zero spread, e.g. when both prompts are identical.
DegradationSet build_degradation_set(const std::vector<PromptPair>& pairs,
                                     const EncoderSession& text_session,
                                     const Tokenizer& tokenizer);

}  // namespace ddr

#endif  // DDR_ENCODERS_HPP_
