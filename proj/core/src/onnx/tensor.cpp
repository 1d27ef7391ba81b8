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

#include "ddr/onnx/tensor.hpp"

#include "ddr/error.hpp"

namespace ddr::onnx {

std::string_view to_string(DType t) noexcept {
  switch (t) {
    case DType::f32: return "float32";
    case DType::i64: return "int64";
    case DType::boolean: return "bool";
  }
  return "?";
}

std::int64_t numel(const Shape& shape) {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace {

void check_size(const Shape& shape, std::size_t n) {
  for (auto d : shape) {
    if (d < 0) throw SessionError("negative dimension in shape " + shape_string(shape));
  }
  if (static_cast<std::size_t>(numel(shape)) != n) {
    throw SessionError("tensor of shape " + shape_string(shape) + " cannot hold " +
                       std::to_string(n) + " elements");
  }
}

}  // namespace

Tensor::Tensor(Shape shape, std::vector<float> values)
    : dtype_(DType::f32), shape_(std::move(shape)), f32_(std::move(values)) {
  check_size(shape_, f32_.size());
}

Tensor::Tensor(Shape shape, std::vector<std::int64_t> values)
    : dtype_(DType::i64), shape_(std::move(shape)), i64_(std::move(values)) {
  check_size(shape_, i64_.size());
}

Tensor::Tensor(Shape shape, std::vector<std::uint8_t> values)
    : dtype_(DType::boolean), shape_(std::move(shape)), bool_(std::move(values)) {
  check_size(shape_, bool_.size());
}

void Tensor::reshape(Shape shape) {
  check_size(shape, static_cast<std::size_t>(numel()));
  shape_ = std::move(shape);
}

std::vector<std::int64_t> Tensor::as_ints() const {
  switch (dtype_) {
    case DType::i64: return i64_;
    case DType::f32: return {f32_.begin(), f32_.end()};
    case DType::boolean: return {bool_.begin(), bool_.end()};
  }
  return {};
}

double Tensor::scalar_value(std::size_t i) const {
  if (i >= static_cast<std::size_t>(numel())) throw SessionError("scalar read out of range");
  switch (dtype_) {
    case DType::f32: return f32_[i];
    case DType::i64: return static_cast<double>(i64_[i]);
    case DType::boolean: return bool_[i];
  }
  return 0.0;
}

}  // namespace ddr::onnx
