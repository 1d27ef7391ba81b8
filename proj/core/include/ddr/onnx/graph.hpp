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

// A small interpreter for frozen inference graphs in the ONNX format.
//
// Only the default operator domain is supported, with the subset of
// operators that transformer image and text encoders export to. Graphs are
// immutable after loading and Graph::run is safe to call concurrently.

#ifndef DDR_ONNX_GRAPH_HPP_
#define DDR_ONNX_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ddr/onnx/tensor.hpp"

namespace ddr::onnx {

struct Attribute {
  enum class Kind { none, i, f, s, t, ints, floats, strings };
  Kind kind = Kind::none;
  std::int64_t i = 0;
  float f = 0.0f;
  std::string s;
  std::shared_ptr<const Tensor> t;
  std::vector<std::int64_t> ints;
  std::vector<float> floats;
  std::vector<std::string> strings;
};

struct Node {
  std::string op_type;
  std::string name;
  std::vector<std::string> inputs;   // "" marks an omitted optional input
  std::vector<std::string> outputs;
  std::map<std::string, Attribute, std::less<>> attributes;
};

// Declared element type and shape of a graph input or output; symbolic or
// unknown dimensions are -1.
struct ValueInfo {
  std::string name;
  std::optional<DType> dtype;
  Shape shape;
};

/// Inputs handed to one operator invocation.
class OpContext {
 public:
  OpContext(const Node& node, int opset, std::vector<const Tensor*> inputs)
      : node_(node), opset_(opset), inputs_(std::move(inputs)) {}

  const Node& node() const noexcept { return node_; }
  int opset() const noexcept { return opset_; }
  std::size_t num_inputs() const noexcept { return inputs_.size(); }
  bool has_input(std::size_t i) const noexcept {
    return i < inputs_.size() && inputs_[i] != nullptr;
  }
  // Throws SessionError when the input is absent.
  const Tensor& input(std::size_t i) const;

  bool has_attr(std::string_view name) const;
  std::int64_t attr_int(std::string_view name, std::int64_t fallback) const;
  float attr_float(std::string_view name, float fallback) const;
  std::string attr_string(std::string_view name, std::string fallback) const;
  std::vector<std::int64_t> attr_ints(std::string_view name,
                                      std::vector<std::int64_t> fallback = {}) const;
  const Attribute* attr(std::string_view name) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const Node& node_;
  int opset_;
  std::vector<const Tensor*> inputs_;
};

using OpKernel = std::vector<Tensor> (*)(const OpContext&);

// nullptr when the operator is not implemented.
OpKernel find_kernel(std::string_view op_type);
std::vector<std::string> supported_ops();

class Graph {
 public:
  // Parses a serialized model. Throws SessionError on malformed files or
  // unsupported operators.
  static Graph load(const std::filesystem::path& path);
  static Graph from_bytes(std::string_view bytes,
                          const std::filesystem::path& external_data_dir = {});

  const std::vector<ValueInfo>& inputs() const noexcept { return inputs_; }
  const std::vector<ValueInfo>& outputs() const noexcept { return outputs_; }
  int opset() const noexcept { return opset_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }

  // Runs the graph; `feeds` maps input names to tensors. Returns the graph
  // outputs in declaration order.
  std::vector<Tensor> run(const std::unordered_map<std::string, Tensor>& feeds) const;

 private:
  Graph() = default;

  std::vector<Node> nodes_;
  std::vector<OpKernel> kernels_;
  // Values whose last reader is node i; dropped once it has run.
  std::vector<std::vector<std::string>> release_after_;
  std::unordered_map<std::string, std::shared_ptr<const Tensor>> initializers_;
  std::vector<ValueInfo> inputs_;
  std::vector<ValueInfo> outputs_;
  int opset_ = 0;
};

}  // namespace ddr::onnx

#endif  // DDR_ONNX_GRAPH_HPP_
