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

#include "ddr/tokenizer.hpp"

#include <zlib.h>

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/regex.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "ddr/error.hpp"

namespace ddr {
namespace {

constexpr std::size_t kNumMerges = 49152 - 256 - 2;
constexpr const char* kPattern =
    R"(<\|startoftext\|>|<\|endoftext\|>|'s|'t|'re|'ve|'m|'ll|'d|[\p{L}]+|[\p{N}]|[^\s\p{L}\p{N}]+)";

std::string read_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (f == nullptr) throw AssetError("cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(f);
  if (failed) throw AssetError("corrupt gzip stream in " + path.string());
  return out;
}

std::string utf8(UChar32 cp) {
  std::string out;
  icu::UnicodeString(cp).toUTF8String(out);
  return out;
}

// Printable stand-ins for all 256 byte values, in vocabulary order.
std::vector<std::pair<int, std::string>> bytes_to_unicode() {
  std::vector<int> bs;
  for (int b = '!'; b <= '~'; ++b) bs.push_back(b);
  for (int b = 0xA1; b <= 0xAC; ++b) bs.push_back(b);
  for (int b = 0xAE; b <= 0xFF; ++b) bs.push_back(b);
  std::vector<int> cs = bs;
  int n = 0;
  for (int b = 0; b < 256; ++b) {
    if (std::find(bs.begin(), bs.end(), b) == bs.end()) {
      bs.push_back(b);
      cs.push_back(256 + n++);
    }
  }
  std::vector<std::pair<int, std::string>> out;
  for (std::size_t i = 0; i < bs.size(); ++i) out.emplace_back(bs[i], utf8(cs[i]));
  return out;
}

// Splits a UTF-8 string into code point substrings.
std::vector<std::string> code_points(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

icu::UnicodeString clean(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_SUCCESS(status)) u = nfc->normalize(u, status);
  if (U_FAILURE(status)) throw TokenizerError("text is not valid UTF-8");

  // collapse runs of white space to one blank, trim both ends
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < u.length();) {
    const UChar32 cp = u.char32At(i);
    i += U16_LENGTH(cp);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) out.append(static_cast<UChar>(' '));
    pending_space = false;
    out.append(cp);
  }
  out.toLower(icu::Locale::getRoot());
  return out;
}

}  // namespace

Tokenizer::Tokenizer(const std::filesystem::path& merges_gz) {
  const std::string text = read_gzip(merges_gz);
  std::vector<std::pair<std::string, std::string>> merges;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // version header
  while (merges.size() < kNumMerges && std::getline(lines, line)) {
    std::istringstream parts(line);
    std::string a, b;
    if (!(parts >> a >> b)) throw AssetError("malformed BPE merge line: '" + line + "'");
    merges.emplace_back(std::move(a), std::move(b));
  }
  if (merges.size() != kNumMerges) {
    throw AssetError("BPE merges file has " + std::to_string(merges.size()) +
                     " merges, expected " + std::to_string(kNumMerges));
  }

  const auto table = bytes_to_unicode();
  std::vector<std::string> vocab;
  vocab.reserve(kVocabSize);
  for (const auto& [byte, symbol] : table) {
    byte_encoder_[static_cast<std::size_t>(byte)] = symbol;
    vocab.push_back(symbol);
  }
  for (const auto& [byte, symbol] : table) vocab.push_back(symbol + "</w>");
  for (std::size_t r = 0; r < merges.size(); ++r) {
    vocab.push_back(merges[r].first + merges[r].second);
    ranks_.emplace(merges[r].first + " " + merges[r].second, r);
  }
  vocab.emplace_back("<|startoftext|>");
  vocab.emplace_back("<|endoftext|>");
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    encoder_.emplace(vocab[i], static_cast<std::int64_t>(i));
  }
  if (encoder_.at("<|startoftext|>") != kStartOfText ||
      encoder_.at("<|endoftext|>") != kEndOfText || vocab.size() != kVocabSize) {
    throw AssetError("BPE vocabulary does not match the expected CLIP layout");
  }
}

std::vector<std::string> Tokenizer::bpe(const std::string& token) const {
  std::vector<std::string> word = code_points(token);
  word.back() += "</w>";
  if (word.size() == 1) return word;

  while (word.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::string first, second;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      const auto it = ranks_.find(word[i] + " " + word[i + 1]);
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        first = word[i];
        second = word[i + 1];
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    std::vector<std::string> merged;
    merged.reserve(word.size());
    for (std::size_t i = 0; i < word.size();) {
      if (i + 1 < word.size() && word[i] == first && word[i + 1] == second) {
        merged.push_back(first + second);
        i += 2;
      } else {
        merged.push_back(word[i]);
        ++i;
      }
    }
    word = std::move(merged);
  }
  return word;
}

std::vector<std::int64_t> Tokenizer::encode(std::string_view text) const {
  const icu::UnicodeString cleaned = clean(text);
  UErrorCode status = U_ZERO_ERROR;
  // RegexPattern is immutable and shareable; matchers are per call.
  static const std::unique_ptr<icu::RegexPattern> pattern = [] {
    UErrorCode s = U_ZERO_ERROR;
    std::unique_ptr<icu::RegexPattern> p(icu::RegexPattern::compile(
        icu::UnicodeString::fromUTF8(kPattern), UREGEX_CASE_INSENSITIVE, s));
    if (U_FAILURE(s)) throw TokenizerError("cannot compile the tokenizer pattern");
    return p;
  }();
  std::unique_ptr<icu::RegexMatcher> matcher(pattern->matcher(cleaned, status));
  if (U_FAILURE(status)) throw TokenizerError("cannot create the tokenizer matcher");

  std::vector<std::int64_t> ids;
  while (matcher->find(status) && U_SUCCESS(status)) {
    std::string piece;
    matcher->group(status).toUTF8String(piece);
    if (piece == "<|startoftext|>" || piece == "<|endoftext|>") {
      ids.push_back(encoder_.at(piece));
      continue;
    }
    std::string mapped;
    for (unsigned char byte : piece) mapped += byte_encoder_[byte];
    for (const auto& symbol : bpe(mapped)) ids.push_back(encoder_.at(symbol));
  }
  if (U_FAILURE(status)) throw TokenizerError("tokenizer pattern matching failed");
  return ids;
}

TokenSequence Tokenizer::tokenize(std::string_view text) const {
  const std::vector<std::int64_t> body = encode(text);
  if (body.empty()) throw TokenizerError("cannot tokenize empty text");
  if (body.size() > kContextLength - 2) {
    throw TokenizerError("text needs " + std::to_string(body.size()) +
                         " tokens; at most " + std::to_string(kContextLength - 2) +
                         " fit in the context window");
  }
  TokenSequence seq;
  seq.ids[0] = kStartOfText;
  std::copy(body.begin(), body.end(), seq.ids.begin() + 1);
  seq.ids[body.size() + 1] = kEndOfText;
  seq.pad_count = kContextLength - body.size() - 2;
  return seq;
}

}  // namespace ddr
