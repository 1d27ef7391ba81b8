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

#ifndef DDR_ONNX_TENSOR_HPP_
#define DDR_ONNX_TENSOR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ddr::onnx {

using Shape = std::vector<std::int64_t>;

enum class DType { f32, i64, boolean };

std::string_view to_string(DType t) noexcept;
std::int64_t numel(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Dense row-major tensor. Booleans are stored one byte per element.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, std::vector<float> values);
  Tensor(Shape shape, std::vector<std::int64_t> values);
  Tensor(Shape shape, std::vector<std::uint8_t> values);  // boolean

  static Tensor scalar(float v) { return Tensor(Shape{}, std::vector<float>{v}); }
  static Tensor scalar(std::int64_t v) {
    return Tensor(Shape{}, std::vector<std::int64_t>{v});
  }

  DType dtype() const noexcept { return dtype_; }
  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::int64_t numel() const noexcept { return onnx::numel(shape_); }
  // Reinterprets the same elements with a new shape of equal numel.
  void reshape(Shape shape);

  template <class T> std::vector<T>& data();
  template <class T> const std::vector<T>& data() const;

  // Shape-like int64 tensor contents (Reshape, Slice, Expand inputs).
  std::vector<std::int64_t> as_ints() const;
  // Single element read as double regardless of dtype.
  double scalar_value(std::size_t i = 0) const;

 private:
  DType dtype_ = DType::f32;
  Shape shape_;
  std::vector<float> f32_;
  std::vector<std::int64_t> i64_;
  std::vector<std::uint8_t> bool_;
};

template <> inline std::vector<float>& Tensor::data<float>() { return f32_; }
template <> inline std::vector<std::int64_t>& Tensor::data<std::int64_t>() { return i64_; }
template <> inline std::vector<std::uint8_t>& Tensor::data<std::uint8_t>() { return bool_; }
template <> inline const std::vector<float>& Tensor::data<float>() const { return f32_; }
template <> inline const std::vector<std::int64_t>& Tensor::data<std::int64_t>() const {
  return i64_;
}
template <> inline const std::vector<std::uint8_t>& Tensor::data<std::uint8_t>() const {
  return bool_;
}

// Calls f(std::vector<T>&) or f(const std::vector<T>&) for the tensor's type.
template <class TensorRef, class F>
decltype(auto) visit(TensorRef& t, F&& f) {
  switch (t.dtype()) {
    case DType::f32: return f(t.template data<float>());
    case DType::i64: return f(t.template data<std::int64_t>());
    case DType::boolean: break;
  }
  return f(t.template data<std::uint8_t>());
}

}  // namespace ddr::onnx

#endif  // DDR_ONNX_TENSOR_HPP_
