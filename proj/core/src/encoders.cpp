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

#include "ddr/encoders.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>

#include "ddr/ddr.hpp"
#include "ddr/error.hpp"
#include "ddr/onnx/graph.hpp"

namespace ddr {

namespace fs = std::filesystem;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AssetError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw AssetError("SHA-256 unavailable");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    char byte[3];
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

ModelAssets ModelAssets::open(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw AssetError("model assets directory not found: " + dir.string());
  const fs::path manifest_path = dir / kManifestFile;
  std::ifstream in(manifest_path);
  if (!in) throw AssetError("missing " + manifest_path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw AssetError(manifest_path.string() + ": " + e.what());
  }

  ModelAssets a;
  a.dir = dir;
  try {
    a.model_id = doc.at("model_id").get<std::string>();
    a.embedding_dim = doc.at("embedding_dim").get<std::size_t>();
    a.context_length = doc.at("context_length").get<std::size_t>();
    if (doc.contains("opset")) a.opset = doc.at("opset").get<int>();
    for (const auto& [name, digest] : doc.at("files").items()) {
      a.file_hashes[name] = digest.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw AssetError(manifest_path.string() + ": " + e.what());
  }

  if (a.model_id.empty()) throw AssetError("manifest model_id is empty");
  if (a.embedding_dim == 0) throw AssetError("manifest embedding_dim must be positive");
  if (a.context_length != kContextLength) {
    throw AssetError("manifest context_length " + std::to_string(a.context_length) +
                     " differs from the tokenizer's " + std::to_string(kContextLength));
  }
  for (const char* required : {kImageEncoderFile, kTextEncoderFile, kVocabFile}) {
    if (!a.file_hashes.count(required)) {
      throw AssetError(std::string("manifest has no digest for ") + required);
    }
  }
  for (const auto& [name, digest] : a.file_hashes) {
    const fs::path file = dir / name;
    if (!fs::is_regular_file(file)) throw AssetError("missing asset file " + file.string());
    constexpr std::string_view prefix = "sha256:";
    if (digest.rfind(prefix, 0) != 0) {
      throw AssetError("unsupported digest for " + name + ": " + digest);
    }
    const std::string actual = sha256_file(file);
    if (digest.substr(prefix.size()) != actual) {
      throw AssetError("digest mismatch for " + file.string() + ": manifest " + digest +
                       ", file sha256:" + actual);
    }
  }
  return a;
}

namespace {

std::string kind_name(EncoderKind k) { return k == EncoderKind::image ? "image" : "text"; }

// Dimension is either symbolic (-1) or equal to `want`.
bool dim_ok(std::int64_t dim, std::int64_t want) { return dim < 0 || dim == want; }

}  // namespace

EncoderSession EncoderSession::open(const fs::path& graph_path, EncoderKind kind,
                                    std::string model_id, std::size_t embedding_dim) {
  if (!fs::is_regular_file(graph_path)) {
    throw AssetError("missing encoder graph " + graph_path.string());
  }
  auto graph = std::make_shared<const onnx::Graph>(onnx::Graph::load(graph_path));
  const std::string where = kind_name(kind) + " encoder " + graph_path.filename().string();
  if (graph->inputs().size() != 1 || graph->outputs().empty()) {
    throw SessionError(where + " must have one input and at least one output");
  }
  const onnx::ValueInfo& in = graph->inputs().front();
  const onnx::ValueInfo& out = graph->outputs().front();
  const bool in_ok =
      kind == EncoderKind::image
          ? in.dtype == onnx::DType::f32 && in.shape.size() == 4 && dim_ok(in.shape[1], 3) &&
                dim_ok(in.shape[2], kInputSize) && dim_ok(in.shape[3], kInputSize)
          : in.dtype == onnx::DType::i64 && in.shape.size() == 2 &&
                dim_ok(in.shape[1], kContextLength);
  if (!in_ok) {
    throw SessionError(where + " input '" + in.name + "' has shape " +
                       onnx::shape_string(in.shape) + ", expected " +
                       (kind == EncoderKind::image ? "float32 [N,3,224,224]" : "int64 [N,77]"));
  }
  const auto dim = static_cast<std::int64_t>(embedding_dim);
  if (out.dtype != onnx::DType::f32 || out.shape.size() != 2 || !dim_ok(out.shape[1], dim)) {
    throw SessionError(where + " output '" + out.name + "' has shape " +
                       onnx::shape_string(out.shape) + ", expected float32 [N," +
                       std::to_string(embedding_dim) + "]");
  }

  EncoderSession s;
  s.graph_ = std::move(graph);
  s.kind_ = kind;
  s.embedding_dim_ = embedding_dim;
  s.model_id_ = std::move(model_id);
  s.input_name_ = in.name;
  return s;
}

std::vector<float> EncoderSession::embedding_of(const std::vector<float>& out,
                                                std::size_t rows) const {
  if (out.size() != rows * embedding_dim_) {
    throw SessionError(kind_name(kind_) + " encoder produced " + std::to_string(out.size()) +
                       " values, expected " + std::to_string(rows * embedding_dim_));
  }
  return out;
}

std::vector<float> EncoderSession::run_image(const std::vector<float>& values) const {
  if (kind_ != EncoderKind::image) throw SessionError("image input given to a text encoder");
  std::unordered_map<std::string, onnx::Tensor> feeds;
  feeds.emplace(input_name_, onnx::Tensor({1, 3, static_cast<std::int64_t>(kInputSize),
                                           static_cast<std::int64_t>(kInputSize)},
                                          values));
  const auto outs = graph_->run(feeds);
  return embedding_of(outs.front().data<float>(), 1);
}

std::vector<float> EncoderSession::run_text(const std::vector<std::int64_t>& ids) const {
  if (kind_ != EncoderKind::text) throw SessionError("token input given to an image encoder");
  std::unordered_map<std::string, onnx::Tensor> feeds;
  feeds.emplace(input_name_, onnx::Tensor({1, static_cast<std::int64_t>(kContextLength)}, ids));
  const auto outs = graph_->run(feeds);
  return embedding_of(outs.front().data<float>(), 1);
}

namespace {

FeatureVector to_feature(const std::vector<float>& v, FeatureSource source) {
  return FeatureVector(std::vector<double>(v.begin(), v.end()), source);
}

}  // namespace

FeatureVector encode_image(const EncoderSession& session, const PreprocessedTensor& t) {
  const auto v = t.values();
  return to_feature(session.run_image(std::vector<float>(v.begin(), v.end())),
                    FeatureSource::image);
}

FeatureVector encode_text(const EncoderSession& session, const TokenSequence& tok) {
  return to_feature(session.run_text(std::vector<std::int64_t>(tok.ids.begin(), tok.ids.end())),
                    FeatureSource::text);
}

Encoders Encoders::load(const fs::path& dir) {
  ModelAssets assets = ModelAssets::open(dir);
  EncoderSession image = EncoderSession::open(assets.image_encoder(), EncoderKind::image,
                                              assets.model_id, assets.embedding_dim);
  EncoderSession text = EncoderSession::open(assets.text_encoder(), EncoderKind::text,
                                             assets.model_id, assets.embedding_dim);
  auto tokenizer = std::make_shared<const Tokenizer>(assets.vocab());
  return Encoders{std::move(assets), std::move(image), std::move(text), std::move(tokenizer)};
}

DegradationSet build_degradation_set(const std::vector<PromptPair>& pairs,
                                     const EncoderSession& text_session,
                                     const Tokenizer& tokenizer) {
  if (pairs.empty()) throw ConfigError("degradation set needs at least one prompt pair");
  std::set<DegradationType> seen;
  for (const auto& p : pairs) {
    p.validate();
    if (!seen.insert(p.degradation).second) {
      throw ConfigError("duplicate degradation type '" + std::string(to_string(p.degradation)) +
                        "' in prompt pairs");
    }
  }
  std::vector<DegradationDirection> members;
  members.reserve(pairs.size());
  for (const auto& p : pairs) {
    const FeatureVector minus = encode_text(text_session, tokenizer.tokenize(p.degraded_prompt));
    const FeatureVector plus = encode_text(text_session, tokenizer.tokenize(p.clean_prompt));
    FeatureVector dir = degradation_direction(minus, plus);
    if (vector_stats(dir).std <= kAdaptationEpsilon) {
      throw DegenerateDirectionError("degradation direction for '" +
                                     std::string(to_string(p.degradation)) +
                                     "' has zero spread; check that its prompts differ");
    }
    members.push_back({p.degradation, std::move(dir)});
  }
  return DegradationSet(std::move(members));
}

}  // namespace ddr
