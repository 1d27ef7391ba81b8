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

#include "ddr/onnx/graph.hpp"

#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "ddr/error.hpp"
#include "onnx.pb.h"

namespace ddr::onnx {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SessionError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

float half_to_float(std::uint16_t h) {
  const std::uint32_t sign = (h & 0x8000u) << 16;
  std::uint32_t exp = (h >> 10) & 0x1Fu;
  std::uint32_t mant = h & 0x3FFu;
  std::uint32_t bits = 0;
  if (exp == 0) {
    if (mant == 0) {
      bits = sign;
    } else {
      exp = 127 - 15 + 1;
      while ((mant & 0x400u) == 0) {
        mant <<= 1;
        --exp;
      }
      bits = sign | (exp << 23) | ((mant & 0x3FFu) << 13);
    }
  } else if (exp == 0x1F) {
    bits = sign | 0x7F800000u | (mant << 13);
  } else {
    bits = sign | ((exp + 127 - 15) << 23) | (mant << 13);
  }
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

template <class T>
std::vector<T> from_raw(const std::string& raw, std::size_t n, const std::string& name) {
  if (raw.size() != n * sizeof(T)) {
    throw SessionError("tensor '" + name + "' raw data has " + std::to_string(raw.size()) +
                       " bytes, expected " + std::to_string(n * sizeof(T)));
  }
  std::vector<T> out(n);
  if (n) std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

std::string external_bytes(const ::onnx::TensorProto& proto, const std::filesystem::path& dir) {
  std::string location;
  std::int64_t offset = 0, length = -1;
  for (const auto& kv : proto.external_data()) {
    if (kv.key() == "location") location = kv.value();
    else if (kv.key() == "offset") offset = std::stoll(kv.value());
    else if (kv.key() == "length") length = std::stoll(kv.value());
  }
  if (location.empty()) {
    throw SessionError("tensor '" + proto.name() + "' has external data without a location");
  }
  const auto path = dir / location;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SessionError("cannot open external data " + path.string());
  in.seekg(0, std::ios::end);
  const std::int64_t size = in.tellg();
  if (length < 0) length = size - offset;
  if (offset < 0 || offset + length > size) {
    throw SessionError("external data range out of bounds for '" + proto.name() + "'");
  }
  std::string bytes(static_cast<std::size_t>(length), '\0');
  in.seekg(offset);
  in.read(bytes.data(), length);
  return bytes;
}

Tensor to_tensor(const ::onnx::TensorProto& proto, const std::filesystem::path& dir) {
  Shape shape(proto.dims().begin(), proto.dims().end());
  const auto n = static_cast<std::size_t>(numel(shape));
  const std::string& name = proto.name();
  std::string external;
  const bool is_external = proto.data_location() == ::onnx::TensorProto::EXTERNAL;
  if (is_external) external = external_bytes(proto, dir);
  const std::string& raw = is_external ? external : proto.raw_data();
  const bool has_raw = is_external || proto.has_raw_data();

  auto widen = [&](auto narrow) {
    std::vector<std::int64_t> out(narrow.begin(), narrow.end());
    return out;
  };
  switch (proto.data_type()) {
    case ::onnx::TensorProto::FLOAT:
      if (has_raw) return Tensor(shape, from_raw<float>(raw, n, name));
      return Tensor(shape, std::vector<float>(proto.float_data().begin(), proto.float_data().end()));
    case ::onnx::TensorProto::DOUBLE: {
      std::vector<double> d = has_raw ? from_raw<double>(raw, n, name)
                                      : std::vector<double>(proto.double_data().begin(),
                                                            proto.double_data().end());
      return Tensor(shape, std::vector<float>(d.begin(), d.end()));
    }
    case ::onnx::TensorProto::FLOAT16: {
      std::vector<std::uint16_t> h;
      if (has_raw) {
        h = from_raw<std::uint16_t>(raw, n, name);
      } else {
        for (auto v : proto.int32_data()) h.push_back(static_cast<std::uint16_t>(v));
      }
      std::vector<float> f(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) f[i] = half_to_float(h[i]);
      return Tensor(shape, std::move(f));
    }
    case ::onnx::TensorProto::INT64:
      if (has_raw) return Tensor(shape, from_raw<std::int64_t>(raw, n, name));
      return Tensor(shape, std::vector<std::int64_t>(proto.int64_data().begin(),
                                                     proto.int64_data().end()));
    case ::onnx::TensorProto::INT32:
      if (has_raw) return Tensor(shape, widen(from_raw<std::int32_t>(raw, n, name)));
      return Tensor(shape, widen(proto.int32_data()));
    case ::onnx::TensorProto::INT8:
      if (has_raw) return Tensor(shape, widen(from_raw<std::int8_t>(raw, n, name)));
      return Tensor(shape, widen(proto.int32_data()));
    case ::onnx::TensorProto::UINT8:
      if (has_raw) return Tensor(shape, widen(from_raw<std::uint8_t>(raw, n, name)));
      return Tensor(shape, widen(proto.int32_data()));
    case ::onnx::TensorProto::BOOL: {
      if (has_raw) return Tensor(shape, from_raw<std::uint8_t>(raw, n, name));
      return Tensor(shape, std::vector<std::uint8_t>(proto.int32_data().begin(),
                                                     proto.int32_data().end()));
    }
    default:
      break;
  }
  throw SessionError("tensor '" + name + "' has unsupported element type " +
                     std::to_string(proto.data_type()));
}

std::optional<DType> to_dtype(int elem_type) {
  switch (elem_type) {
    case ::onnx::TensorProto::FLOAT: return DType::f32;
    case ::onnx::TensorProto::INT64: return DType::i64;
    case ::onnx::TensorProto::BOOL: return DType::boolean;
    default: return std::nullopt;
  }
}

ValueInfo to_value_info(const ::onnx::ValueInfoProto& proto) {
  ValueInfo info;
  info.name = proto.name();
  if (proto.type().has_tensor_type()) {
    const auto& tt = proto.type().tensor_type();
    info.dtype = to_dtype(tt.elem_type());
    for (const auto& d : tt.shape().dim()) {
      info.shape.push_back(d.has_dim_value() ? d.dim_value() : -1);
    }
  }
  return info;
}

Attribute to_attribute(const ::onnx::AttributeProto& proto, const std::filesystem::path& dir) {
  Attribute a;
  using A = ::onnx::AttributeProto;
  switch (proto.type()) {
    case A::INT: a.kind = Attribute::Kind::i; a.i = proto.i(); break;
    case A::FLOAT: a.kind = Attribute::Kind::f; a.f = proto.f(); break;
    case A::STRING: a.kind = Attribute::Kind::s; a.s = proto.s(); break;
    case A::TENSOR:
      a.kind = Attribute::Kind::t;
      a.t = std::make_shared<const Tensor>(to_tensor(proto.t(), dir));
      break;
    case A::INTS:
      a.kind = Attribute::Kind::ints;
      a.ints.assign(proto.ints().begin(), proto.ints().end());
      break;
    case A::FLOATS:
      a.kind = Attribute::Kind::floats;
      a.floats.assign(proto.floats().begin(), proto.floats().end());
      break;
    case A::STRINGS:
      a.kind = Attribute::Kind::strings;
      a.strings.assign(proto.strings().begin(), proto.strings().end());
      break;
    default:
      throw SessionError("attribute '" + proto.name() + "' has an unsupported type");
  }
  return a;
}

}  // namespace

const Tensor& OpContext::input(std::size_t i) const {
  if (!has_input(i)) fail("missing input " + std::to_string(i));
  return *inputs_[i];
}

const Attribute* OpContext::attr(std::string_view name) const {
  const auto it = node_.attributes.find(name);
  return it == node_.attributes.end() ? nullptr : &it->second;
}

bool OpContext::has_attr(std::string_view name) const { return attr(name) != nullptr; }

std::int64_t OpContext::attr_int(std::string_view name, std::int64_t fallback) const {
  const Attribute* a = attr(name);
  return a ? a->i : fallback;
}

float OpContext::attr_float(std::string_view name, float fallback) const {
  const Attribute* a = attr(name);
  return a ? a->f : fallback;
}

std::string OpContext::attr_string(std::string_view name, std::string fallback) const {
  const Attribute* a = attr(name);
  return a ? a->s : fallback;
}

std::vector<std::int64_t> OpContext::attr_ints(std::string_view name,
                                               std::vector<std::int64_t> fallback) const {
  const Attribute* a = attr(name);
  return a ? a->ints : fallback;
}

void OpContext::fail(const std::string& message) const {
  throw SessionError(node_.op_type + " node '" + node_.name + "': " + message);
}

Graph Graph::load(const std::filesystem::path& path) {
  return from_bytes(read_file(path), path.parent_path());
}

Graph Graph::from_bytes(std::string_view bytes, const std::filesystem::path& external_data_dir) {
  ::onnx::ModelProto model;
  if (!model.ParseFromArray(bytes.data(), static_cast<int>(bytes.size()))) {
    throw SessionError("not a valid serialized model");
  }
  Graph g;
  for (const auto& op : model.opset_import()) {
    if (op.domain().empty() || op.domain() == "ai.onnx") {
      g.opset_ = static_cast<int>(op.version());
    }
  }
  if (g.opset_ == 0) throw SessionError("model does not import the default operator set");

  const auto& graph = model.graph();
  for (const auto& init : graph.initializer()) {
    g.initializers_[init.name()] = std::make_shared<const Tensor>(to_tensor(init, external_data_dir));
  }
  for (const auto& in : graph.input()) {
    if (!g.initializers_.count(in.name())) g.inputs_.push_back(to_value_info(in));
  }
  for (const auto& out : graph.output()) g.outputs_.push_back(to_value_info(out));

  std::set<std::string> unsupported;
  for (const auto& np : graph.node()) {
    if (!np.domain().empty() && np.domain() != "ai.onnx") {
      unsupported.insert(np.domain() + "::" + np.op_type());
      continue;
    }
    Node node;
    node.op_type = np.op_type();
    node.name = np.name();
    node.inputs.assign(np.input().begin(), np.input().end());
    node.outputs.assign(np.output().begin(), np.output().end());
    for (const auto& a : np.attribute()) {
      node.attributes.emplace(a.name(), to_attribute(a, external_data_dir));
    }
    const OpKernel kernel = find_kernel(node.op_type);
    if (kernel == nullptr) unsupported.insert(node.op_type);
    g.kernels_.push_back(kernel);
    g.nodes_.push_back(std::move(node));
  }
  if (!unsupported.empty()) {
    std::string list;
    for (const auto& op : unsupported) list += (list.empty() ? "" : ", ") + op;
    throw SessionError("unsupported operators: " + list);
  }

  // Last reader of every non-initializer, non-output value.
  std::set<std::string> keep;
  for (const auto& out : g.outputs_) keep.insert(out.name);
  std::unordered_map<std::string, std::size_t> last_use;
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
    for (const auto& name : g.nodes_[i].inputs) {
      if (!name.empty() && !keep.count(name) && !g.initializers_.count(name)) last_use[name] = i;
    }
  }
  g.release_after_.resize(g.nodes_.size());
  for (const auto& [name, i] : last_use) g.release_after_[i].push_back(name);
  return g;
}

std::vector<Tensor> Graph::run(const std::unordered_map<std::string, Tensor>& feeds) const {
  std::unordered_map<std::string, std::shared_ptr<const Tensor>> values = initializers_;
  for (const auto& info : inputs_) {
    const auto it = feeds.find(info.name);
    if (it == feeds.end()) throw SessionError("missing graph input '" + info.name + "'");
    const Tensor& t = it->second;
    if (info.dtype && *info.dtype != t.dtype()) {
      throw SessionError("graph input '" + info.name + "' expects " +
                         std::string(to_string(*info.dtype)) + ", got " +
                         std::string(to_string(t.dtype())));
    }
    if (!info.shape.empty()) {
      bool ok = info.shape.size() == t.rank();
      for (std::size_t d = 0; ok && d < info.shape.size(); ++d) {
        ok = info.shape[d] < 0 || info.shape[d] == t.shape()[d];
      }
      if (!ok) {
        throw SessionError("graph input '" + info.name + "' expects shape " +
                           shape_string(info.shape) + ", got " + shape_string(t.shape()));
      }
    }
    values[info.name] = std::make_shared<const Tensor>(t);
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    std::vector<const Tensor*> args;
    args.reserve(node.inputs.size());
    for (const auto& name : node.inputs) {
      if (name.empty()) {
        args.push_back(nullptr);
        continue;
      }
      const auto it = values.find(name);
      if (it == values.end()) {
        throw SessionError(node.op_type + " node '" + node.name + "' reads undefined value '" +
                           name + "'");
      }
      args.push_back(it->second.get());
    }
    std::vector<Tensor> results = kernels_[i](OpContext(node, opset_, std::move(args)));
    for (std::size_t k = 0; k < node.outputs.size(); ++k) {
      if (node.outputs[k].empty()) continue;
      if (k >= results.size()) {
        throw SessionError(node.op_type + " node '" + node.name + "' produced too few outputs");
      }
      values[node.outputs[k]] = std::make_shared<const Tensor>(std::move(results[k]));
    }
    for (const auto& name : release_after_[i]) values.erase(name);
  }

  std::vector<Tensor> outputs;
  outputs.reserve(outputs_.size());
  for (const auto& info : outputs_) {
    const auto it = values.find(info.name);
    if (it == values.end()) throw SessionError("graph output '" + info.name + "' was not produced");
    outputs.push_back(*it->second);
  }
  return outputs;
}

}  // namespace ddr::onnx
