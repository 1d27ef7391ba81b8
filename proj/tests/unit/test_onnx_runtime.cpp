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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ddr/error.hpp"
#include "ddr/onnx/graph.hpp"
#include "fixtures.hpp"

namespace ddr::onnx {
namespace {

// Runs one kernel on hand-built inputs.
class KernelCall {
 public:
  explicit KernelCall(std::string op, int opset = 17) : opset_(opset) { node_.op_type = std::move(op); }

  KernelCall& attr_int(const std::string& name, std::int64_t v) {
    Attribute a;
    a.kind = Attribute::Kind::i;
    a.i = v;
    node_.attributes[name] = a;
    return *this;
  }
  KernelCall& attr_ints(const std::string& name, std::vector<std::int64_t> v) {
    Attribute a;
    a.kind = Attribute::Kind::ints;
    a.ints = std::move(v);
    node_.attributes[name] = a;
    return *this;
  }
  KernelCall& outputs(std::size_t n) {
    node_.outputs.assign(n, "out");
    return *this;
  }

  std::vector<Tensor> run(const std::vector<const Tensor*>& inputs) {
    OpKernel k = find_kernel(node_.op_type);
    if (k == nullptr) throw std::runtime_error("no kernel " + node_.op_type);
    if (node_.outputs.empty()) node_.outputs = {"out"};
    return k(OpContext(node_, opset_, inputs));
  }

 private:
  Node node_;
  int opset_;
};

Tensor iota_f(Shape shape, float start = 0.0f) {
  std::vector<float> v(static_cast<std::size_t>(numel(shape)));
  std::iota(v.begin(), v.end(), start);
  return Tensor(std::move(shape), std::move(v));
}

TEST(Kernels, AddBroadcastsRowVector) {
  const Tensor a = iota_f({2, 3});
  const Tensor b(Shape{3}, std::vector<float>{10, 20, 30});
  const auto out = KernelCall("Add").run({&a, &b});
  EXPECT_EQ(out[0].shape(), (Shape{2, 3}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{10, 21, 32, 13, 24, 35}));
}

TEST(Kernels, MulBroadcastsColumnAgainstRow) {
  const Tensor a(Shape{2, 1}, std::vector<float>{1, 2});
  const Tensor b(Shape{1, 3}, std::vector<float>{1, 10, 100});
  const auto out = KernelCall("Mul").run({&a, &b});
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{1, 10, 100, 2, 20, 200}));
}

TEST(Kernels, IncompatibleBroadcastFails) {
  const Tensor a = iota_f({2, 3});
  const Tensor b = iota_f({2});
  EXPECT_THROW(KernelCall("Add").run({&a, &b}), SessionError);
}

TEST(Kernels, IntegerModTakesDivisorSign) {
  const Tensor a(Shape{4}, std::vector<std::int64_t>{7, -7, 7, -7});
  const Tensor b(Shape{4}, std::vector<std::int64_t>{3, 3, -3, -3});
  const auto out = KernelCall("Mod").run({&a, &b});
  EXPECT_EQ(out[0].data<std::int64_t>(), (std::vector<std::int64_t>{1, 2, -2, -1}));
}

TEST(Kernels, MatMulMatchesHandProduct) {
  const Tensor a = iota_f({2, 3}, 1.0f);  // [[1,2,3],[4,5,6]]
  const Tensor b = iota_f({3, 2}, 1.0f);  // [[1,2],[3,4],[5,6]]
  const auto out = KernelCall("MatMul").run({&a, &b});
  EXPECT_EQ(out[0].shape(), (Shape{2, 2}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{22, 28, 49, 64}));
}

TEST(Kernels, MatMulBroadcastsBatchAndVector) {
  const Tensor a = iota_f({2, 2, 3});
  const Tensor v(Shape{3}, std::vector<float>{1, 1, 1});
  const auto out = KernelCall("MatMul").run({&a, &v});
  EXPECT_EQ(out[0].shape(), (Shape{2, 2}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{3, 12, 21, 30}));
}

TEST(Kernels, GemmTransposesAndAddsBias) {
  const Tensor a = iota_f({2, 3}, 1.0f);
  const Tensor b = iota_f({2, 3}, 1.0f);
  const Tensor c(Shape{2}, std::vector<float>{100, 200});
  const auto out = KernelCall("Gemm").attr_int("transB", 1).run({&a, &b, &c});
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{114, 232, 132, 277}));
}

// Direct convolution oracle: every output is a sum over the receptive field.
TEST(Kernels, ConvMatchesDirectSummation) {
  const Tensor x = iota_f({1, 2, 5, 4});
  std::vector<float> wv(3 * 2 * 3 * 3);
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = std::sin(static_cast<float>(i));
  const Tensor w(Shape{3, 2, 3, 3}, wv);
  const Tensor bias(Shape{3}, std::vector<float>{0.5f, -1.0f, 2.0f});
  const auto out = KernelCall("Conv")
                       .attr_ints("pads", {1, 1, 1, 1})
                       .attr_ints("strides", {2, 1})
                       .run({&x, &w, &bias});
  ASSERT_EQ(out[0].shape(), (Shape{1, 3, 3, 4}));
  const auto& xv = x.data<float>();
  for (int o = 0; o < 3; ++o) {
    for (int oy = 0; oy < 3; ++oy) {
      for (int ox = 0; ox < 4; ++ox) {
        double acc = bias.data<float>()[o];
        for (int c = 0; c < 2; ++c) {
          for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) {
              const int y = oy * 2 - 1 + ky, xx = ox - 1 + kx;
              if (y < 0 || y >= 5 || xx < 0 || xx >= 4) continue;
              acc += wv[((o * 2 + c) * 3 + ky) * 3 + kx] * xv[(c * 5 + y) * 4 + xx];
            }
          }
        }
        EXPECT_NEAR(out[0].data<float>()[(o * 3 + oy) * 4 + ox], acc, 1e-4);
      }
    }
  }
}

TEST(Kernels, SoftmaxRowsSumToOne) {
  const Tensor x = iota_f({2, 4});
  const auto out = KernelCall("Softmax").attr_int("axis", -1).run({&x});
  const auto& v = out[0].data<float>();
  for (int r = 0; r < 2; ++r) {
    double s = 0;
    for (int j = 0; j < 4; ++j) s += v[r * 4 + j];
    EXPECT_NEAR(s, 1.0, 1e-6);
  }
  EXPECT_NEAR(v[3] / v[2], std::exp(1.0), 1e-5);
}

TEST(Kernels, LayerNormalizationStandardizesLastAxis) {
  const Tensor x(Shape{1, 4}, std::vector<float>{1, 2, 3, 4});
  const Tensor scale(Shape{4}, std::vector<float>{1, 1, 1, 1});
  const Tensor bias(Shape{4}, std::vector<float>{0, 0, 0, 1});
  const auto out = KernelCall("LayerNormalization").run({&x, &scale, &bias});
  const double inv = 1.0 / std::sqrt(1.25 + 1e-5);
  const auto& v = out[0].data<float>();
  EXPECT_NEAR(v[0], -1.5 * inv, 1e-6);
  EXPECT_NEAR(v[3], 1.5 * inv + 1.0, 1e-6);
}

TEST(Kernels, ReshapeCopiesZeroAndInfersMinusOne) {
  const Tensor x = iota_f({2, 3, 4});
  const Tensor s(Shape{2}, std::vector<std::int64_t>{0, -1});
  const auto out = KernelCall("Reshape").run({&x, &s});
  EXPECT_EQ(out[0].shape(), (Shape{2, 12}));
}

TEST(Kernels, TransposeReordersElements) {
  const Tensor x = iota_f({2, 3});
  const auto out = KernelCall("Transpose").attr_ints("perm", {1, 0}).run({&x});
  EXPECT_EQ(out[0].shape(), (Shape{3, 2}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{0, 3, 1, 4, 2, 5}));
}

TEST(Kernels, GatherPicksRowsAndNegativeIndices) {
  const Tensor x = iota_f({3, 2});
  const Tensor idx(Shape{2}, std::vector<std::int64_t>{2, -3});
  const auto out = KernelCall("Gather").run({&x, &idx});
  EXPECT_EQ(out[0].shape(), (Shape{2, 2}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{4, 5, 0, 1}));
}

TEST(Kernels, GatherRejectsOutOfRangeIndex) {
  const Tensor x = iota_f({3, 2});
  const Tensor idx(Shape{1}, std::vector<std::int64_t>{3});
  EXPECT_THROW(KernelCall("Gather").run({&x, &idx}), SessionError);
}

TEST(Kernels, SliceWithNegativeStep) {
  const Tensor x = iota_f({5});
  const Tensor starts(Shape{1}, std::vector<std::int64_t>{-1});
  const Tensor ends(Shape{1}, std::vector<std::int64_t>{-6});
  const Tensor axes(Shape{1}, std::vector<std::int64_t>{0});
  const Tensor steps(Shape{1}, std::vector<std::int64_t>{-2});
  const auto out = KernelCall("Slice").run({&x, &starts, &ends, &axes, &steps});
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{4, 2, 0}));
}

TEST(Kernels, ConcatAlongInnerAxis) {
  const Tensor a = iota_f({2, 1});
  const Tensor b = iota_f({2, 2}, 10.0f);
  const auto out = KernelCall("Concat").attr_int("axis", 1).run({&a, &b});
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{0, 10, 11, 1, 12, 13}));
}

TEST(Kernels, ArgMaxFirstOccurrenceWithoutKeepdims) {
  const Tensor x(Shape{2, 3}, std::vector<float>{1, 5, 5, 7, 0, 7});
  const auto out = KernelCall("ArgMax").attr_int("axis", 1).attr_int("keepdims", 0).run({&x});
  EXPECT_EQ(out[0].shape(), (Shape{2}));
  EXPECT_EQ(out[0].data<std::int64_t>(), (std::vector<std::int64_t>{1, 0}));
}

TEST(Kernels, ReduceMeanOverAxesInput) {
  const Tensor x = iota_f({2, 3});
  const Tensor axes(Shape{1}, std::vector<std::int64_t>{1});
  const auto out = KernelCall("ReduceMean", 18).run({&x, &axes});
  EXPECT_EQ(out[0].shape(), (Shape{2, 1}));
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{1, 4}));
}

TEST(Kernels, RangeAndExpand) {
  const Tensor s = Tensor::scalar(std::int64_t{1});
  const Tensor l = Tensor::scalar(std::int64_t{7});
  const Tensor d = Tensor::scalar(std::int64_t{2});
  const auto r = KernelCall("Range").run({&s, &l, &d});
  EXPECT_EQ(r[0].data<std::int64_t>(), (std::vector<std::int64_t>{1, 3, 5}));
  const Tensor shape(Shape{2}, std::vector<std::int64_t>{2, 3});
  const auto e = KernelCall("Expand").run({&r[0], &shape});
  EXPECT_EQ(e[0].data<std::int64_t>(), (std::vector<std::int64_t>{1, 3, 5, 1, 3, 5}));
}

TEST(Kernels, WhereSelectsByCondition) {
  const Tensor c(Shape{3}, std::vector<std::uint8_t>{1, 0, 1});
  const Tensor x(Shape{3}, std::vector<float>{1, 2, 3});
  const Tensor y = Tensor::scalar(-1.0f);
  const auto out = KernelCall("Where").run({&c, &x, &y});
  EXPECT_EQ(out[0].data<float>(), (std::vector<float>{1, -1, 3}));
}

TEST(Kernels, UnknownOperatorHasNoKernel) {
  EXPECT_EQ(find_kernel("NonMaxSuppression"), nullptr);
  EXPECT_GT(supported_ops().size(), 50u);
}

TEST(Graph, StubImageEncoderSignature) {
  const Graph g = Graph::load(testing::stub_assets_dir() / "image_encoder.onnx");
  ASSERT_EQ(g.inputs().size(), 1u);
  EXPECT_EQ(g.inputs()[0].dtype, DType::f32);
  EXPECT_EQ(g.inputs()[0].shape, (Shape{-1, 3, 224, 224}));
  ASSERT_EQ(g.outputs().size(), 1u);
  EXPECT_EQ(g.outputs()[0].shape, (Shape{-1, 512}));
}

TEST(Graph, RejectsGarbageBytes) {
  EXPECT_THROW(Graph::from_bytes("not a model"), SessionError);
}

TEST(Graph, RejectsMissingFeed) {
  const Graph g = Graph::load(testing::stub_assets_dir() / "text_encoder.onnx");
  EXPECT_THROW(g.run({}), SessionError);
}

TEST(Graph, RejectsWrongInputShape) {
  const Graph g = Graph::load(testing::stub_assets_dir() / "text_encoder.onnx");
  std::unordered_map<std::string, Tensor> feeds;
  feeds.emplace(g.inputs()[0].name, Tensor(Shape{1, 76}, std::vector<std::int64_t>(76, 0)));
  EXPECT_THROW(g.run(feeds), SessionError);
}

// A batch of two runs through the same graph; each row must equal the
// single-sample result.
TEST(Graph, BatchRowsMatchSingleRuns) {
  const Graph g = Graph::load(testing::stub_assets_dir() / "text_encoder.onnx");
  std::vector<std::int64_t> a(77, 0), b(77, 0);
  a[0] = b[0] = 49406;
  a[1] = 320;
  a[2] = b[2] = 49407;
  b[1] = 1125;
  std::vector<std::int64_t> both(a);
  both.insert(both.end(), b.begin(), b.end());
  const std::string name = g.inputs()[0].name;
  auto run = [&](Shape s, std::vector<std::int64_t> ids) {
    std::unordered_map<std::string, Tensor> feeds;
    feeds.emplace(name, Tensor(std::move(s), std::move(ids)));
    return g.run(feeds)[0].data<float>();
  };
  const auto ra = run({1, 77}, a);
  const auto rb = run({1, 77}, b);
  const auto rab = run({2, 77}, both);
  ASSERT_EQ(rab.size(), 1024u);
  for (std::size_t i = 0; i < 512; ++i) {
    EXPECT_NEAR(rab[i], ra[i], 1e-6);
    EXPECT_NEAR(rab[512 + i], rb[i], 1e-6);
  }
}

}  // namespace
}  // namespace ddr::onnx
