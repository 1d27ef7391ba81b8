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

// Byte-level BPE tokenizer compatible with the published CLIP release.

#ifndef DDR_TOKENIZER_HPP_
#define DDR_TOKENIZER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ddr {

inline constexpr std::size_t kContextLength = 77;
inline constexpr std::int64_t kStartOfText = 49406;
inline constexpr std::int64_t kEndOfText = 49407;
inline constexpr std::size_t kVocabSize = 49408;

/// Start token, BPE ids, end token, zero padding up to kContextLength.
struct TokenSequence {
  std::array<std::int64_t, kContextLength> ids{};
  std::size_t pad_count = 0;

  std::size_t length() const noexcept { return kContextLength - pad_count; }
};

class Tokenizer {
 public:
  // Loads the gzip-compressed merges file. Throws AssetError.
  explicit Tokenizer(const std::filesystem::path& merges_gz);

  /// Cleans (NFC, whitespace collapse, lowercase) and encodes `text`.
  ///
  /// Throws TokenizerError for blank text or when the encoding needs more
  /// than kContextLength - 2 BPE tokens. Nothing is ever truncated.
  TokenSequence tokenize(std::string_view text) const;

  // BPE ids of `text` without start/end tokens or padding.
  std::vector<std::int64_t> encode(std::string_view text) const;

  std::size_t vocab_size() const noexcept { return encoder_.size(); }

 private:
  std::vector<std::string> bpe(const std::string& token) const;

  std::array<std::string, 256> byte_encoder_;
  std::unordered_map<std::string, std::int64_t> encoder_;
  std::unordered_map<std::string, std::size_t> ranks_;  // "first second" -> rank
};

}  // namespace ddr

#endif  // DDR_TOKENIZER_HPP_
