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

#ifndef DDR_ERROR_HPP_
#define DDR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ddr {

// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree in length or image dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input too short or too small for the requested statistic.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A degradation direction whose spread is too small to be rescaled.
class DegenerateDirectionError : public Error {
 public:
  using Error::Error;
};

// Cosine disparity with a zero-norm operand.
class UndefinedDisparityError : public Error {
 public:
  using Error::Error;
};

// Rank correlation with a constant operand.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// Empty or over-length text handed to the tokenizer.
class TokenizerError : public Error {
 public:
  using Error::Error;
};

// Bad degradation spec, prompt table, config document or CLI argument.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model assets missing, corrupt or inconsistent with their manifest.
class AssetError : public Error {
 public:
  using Error::Error;
};

// Graph load or inference failure.
class SessionError : public Error {
 public:
  using Error::Error;
};

// Unreadable image or malformed dataset manifest.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddr

#endif  // DDR_ERROR_HPP_
