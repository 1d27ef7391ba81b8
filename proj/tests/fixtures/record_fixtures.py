#!/usr/bin/env python3
# Copyright 2026 The DDR Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Records the committed test fixtures.

Run once; the outputs are checked in and neither the unit nor the acceptance
tests call Python.

  * stub_assets/      tiny random-weight encoder graphs with the production
                      I/O signature, the CLIP BPE merges file and manifest.json
  * stub_golden.json  onnxruntime outputs of the stub graphs on probe inputs
  * tokenizer_reference.json  ids from the published CLIP tokenizer
  * images/           synthetic PNG images, manifest.csv with made-up MOS
  * reference_scores.json     per-image DDR via the CLIP transform + onnxruntime
  * preprocess_reference.json digests and samples of the CLIP input transform

Requires: numpy, Pillow, onnx, onnxruntime, ftfy, regex, openai-clip.
"""

import argparse
import gzip
import hashlib
import json
import os
import shutil

import numpy as np
import onnx
import onnxruntime as ort
from onnx import TensorProto, helper, numpy_helper
from PIL import Image

from clip.clip import _transform as clip_transform
from clip.simple_tokenizer import SimpleTokenizer, default_bpe

EMBED_DIM = 512
CONTEXT = 77
WIDTH = 8
OPSET = 17

CLIP_TRANSFORM = clip_transform(224)

PROMPTS = {
    "color": ("A unnatural color photo with low-quality.", "A real color photo with high-quality."),
    "noise": ("A noise degraded photo with low-quality.", "A clean photo with high-quality."),
    "blur": ("A blurry photo with low-quality.", "A sharp photo with high-quality."),
    "exposure": ("A unnatural exposure photo with low-quality.", "A natural exposure photo with high-quality."),
    "content": ("A bad content photo with low-quality.", "A clear content photo with high-quality."),
}
BIQA = ["color", "noise", "blur", "exposure"]


def init(name, arr):
    return numpy_helper.from_array(np.asarray(arr), name)


def const(name, arr):
    return helper.make_node("Constant", [], [name], value=numpy_helper.from_array(np.asarray(arr), name + "_v"))


def attention_block(prefix, x, rng, mask=None, gelu="quick"):
    """Pre-norm single-head transformer block on [N, T, WIDTH]."""
    nodes, inits = [], []
    w = lambda *s: (rng.standard_normal(s) * 0.4).astype(np.float32)
    p = lambda n: f"{prefix}_{n}"
    inits += [init(p("ln1_g"), 1 + w(WIDTH) * 0.1), init(p("ln1_b"), w(WIDTH) * 0.1)]
    nodes.append(helper.make_node("LayerNormalization", [x, p("ln1_g"), p("ln1_b")], [p("h")], axis=-1, epsilon=1e-5))
    for n in ("q", "k", "v", "o"):
        inits += [init(p("w" + n), w(WIDTH, WIDTH)), init(p("b" + n), w(WIDTH) * 0.1)]
    for n in ("q", "k", "v"):
        nodes.append(helper.make_node("MatMul", [p("h"), p("w" + n)], [p(n + "0")]))
        nodes.append(helper.make_node("Add", [p(n + "0"), p("b" + n)], [p(n)]))
    nodes.append(helper.make_node("Transpose", [p("k")], [p("kt")], perm=[0, 2, 1]))
    nodes.append(helper.make_node("MatMul", [p("q"), p("kt")], [p("s0")]))
    nodes.append(const(p("scale"), np.float32(1.0 / np.sqrt(WIDTH))))
    nodes.append(helper.make_node("Mul", [p("s0"), p("scale")], [p("s1")]))
    scores = p("s1")
    if mask is not None:
        nodes.append(helper.make_node("Add", [scores, mask], [p("s2")]))
        scores = p("s2")
    nodes.append(helper.make_node("Softmax", [scores], [p("a")], axis=-1))
    nodes.append(helper.make_node("MatMul", [p("a"), p("v")], [p("c")]))
    nodes.append(helper.make_node("MatMul", [p("c"), p("wo")], [p("o0")]))
    nodes.append(helper.make_node("Add", [p("o0"), p("bo")], [p("o")]))
    nodes.append(helper.make_node("Add", [x, p("o")], [p("r1")]))

    inits += [init(p("ln2_g"), 1 + w(WIDTH) * 0.1), init(p("ln2_b"), w(WIDTH) * 0.1)]
    inits += [init(p("fc1"), w(WIDTH, 4 * WIDTH)), init(p("fc1b"), w(4 * WIDTH) * 0.1)]
    inits += [init(p("fc2"), w(4 * WIDTH, WIDTH)), init(p("fc2b"), w(WIDTH) * 0.1)]
    nodes.append(helper.make_node("LayerNormalization", [p("r1"), p("ln2_g"), p("ln2_b")], [p("m0")], axis=-1, epsilon=1e-5))
    nodes.append(helper.make_node("MatMul", [p("m0"), p("fc1")], [p("m1")]))
    nodes.append(helper.make_node("Add", [p("m1"), p("fc1b")], [p("m2")]))
    if gelu == "quick":
        nodes.append(const(p("alpha"), np.float32(1.702)))
        nodes.append(helper.make_node("Mul", [p("m2"), p("alpha")], [p("g0")]))
        nodes.append(helper.make_node("Sigmoid", [p("g0")], [p("g1")]))
        nodes.append(helper.make_node("Mul", [p("m2"), p("g1")], [p("g")]))
    else:
        nodes.append(const(p("sqrt2"), np.float32(np.sqrt(2.0))))
        nodes.append(const(p("one"), np.float32(1.0)))
        nodes.append(const(p("half"), np.float32(0.5)))
        nodes.append(helper.make_node("Div", [p("m2"), p("sqrt2")], [p("g0")]))
        nodes.append(helper.make_node("Erf", [p("g0")], [p("g1")]))
        nodes.append(helper.make_node("Add", [p("g1"), p("one")], [p("g2")]))
        nodes.append(helper.make_node("Mul", [p("m2"), p("g2")], [p("g3")]))
        nodes.append(helper.make_node("Mul", [p("g3"), p("half")], [p("g")]))
    nodes.append(helper.make_node("MatMul", [p("g"), p("fc2")], [p("m3")]))
    nodes.append(helper.make_node("Add", [p("m3"), p("fc2b")], [p("m4")]))
    nodes.append(helper.make_node("Add", [p("r1"), p("m4")], [p("out")]))
    return nodes, inits, p("out")


def make_image_encoder(rng):
    w = lambda *s: (rng.standard_normal(s) * 0.4).astype(np.float32)
    nodes, inits = [], []
    inits.append(init("conv_w", (rng.standard_normal((WIDTH, 3, 32, 32)) * 0.02).astype(np.float32)))
    nodes.append(helper.make_node("Conv", ["pixel_values", "conv_w"], ["patches"], kernel_shape=[32, 32], strides=[32, 32]))
    inits.append(init("grid_shape", np.array([0, WIDTH, -1], dtype=np.int64)))
    nodes.append(helper.make_node("Reshape", ["patches", "grid_shape"], ["flat"]))
    nodes.append(helper.make_node("Transpose", ["flat"], ["tokens"], perm=[0, 2, 1]))
    # class token broadcast to [N, 1, WIDTH]
    inits.append(init("cls", w(1, 1, WIDTH)))
    nodes.append(helper.make_node("Shape", ["pixel_values"], ["in_shape"]))
    inits.append(init("zero_idx", np.array([0], dtype=np.int64)))
    nodes.append(helper.make_node("Gather", ["in_shape", "zero_idx"], ["batch"], axis=0))
    inits.append(init("cls_tail", np.array([1, WIDTH], dtype=np.int64)))
    nodes.append(helper.make_node("Concat", ["batch", "cls_tail"], ["cls_shape"], axis=0))
    nodes.append(helper.make_node("Expand", ["cls", "cls_shape"], ["cls_b"]))
    nodes.append(helper.make_node("Concat", ["cls_b", "tokens"], ["seq"], axis=1))
    inits.append(init("pos", w(50, WIDTH) * 0.5))
    nodes.append(helper.make_node("Add", ["seq", "pos"], ["x0"]))
    inits += [init("pre_g", 1 + w(WIDTH) * 0.1), init("pre_b", w(WIDTH) * 0.1)]
    nodes.append(helper.make_node("LayerNormalization", ["x0", "pre_g", "pre_b"], ["x1"], axis=-1, epsilon=1e-5))
    bn, bi, out = attention_block("blk0", "x1", rng, gelu="quick")
    nodes += bn
    inits += bi
    inits.append(init("first", np.array(0, dtype=np.int64)))
    nodes.append(helper.make_node("Gather", [out, "first"], ["pooled"], axis=1))
    inits += [init("post_g", 1 + w(WIDTH) * 0.1), init("post_b", w(WIDTH) * 0.1)]
    nodes.append(helper.make_node("LayerNormalization", ["pooled", "post_g", "post_b"], ["pooled_n"], axis=-1, epsilon=1e-5))
    inits.append(init("proj", w(WIDTH, EMBED_DIM)))
    nodes.append(helper.make_node("MatMul", ["pooled_n", "proj"], ["image_embeds"]))
    graph = helper.make_graph(
        nodes, "stub_image_encoder",
        [helper.make_tensor_value_info("pixel_values", TensorProto.FLOAT, ["N", 3, 224, 224])],
        [helper.make_tensor_value_info("image_embeds", TensorProto.FLOAT, ["N", EMBED_DIM])],
        inits)
    return finish(graph)


def make_text_encoder(rng):
    w = lambda *s: (rng.standard_normal(s) * 0.4).astype(np.float32)
    nodes, inits = [], []
    inits.append(init("vocab_mod", np.array(4096, dtype=np.int64)))
    nodes.append(helper.make_node("Mod", ["input_ids", "vocab_mod"], ["ids_m"]))
    inits.append(init("tok_emb", w(4096, WIDTH)))
    nodes.append(helper.make_node("Gather", ["tok_emb", "ids_m"], ["emb"], axis=0))
    inits.append(init("pos", w(CONTEXT, WIDTH) * 0.5))
    nodes.append(helper.make_node("Add", ["emb", "pos"], ["x0"]))
    mask = np.triu(np.full((CONTEXT, CONTEXT), -np.inf, dtype=np.float32), 1)
    inits.append(init("causal_mask", mask))
    bn, bi, out = attention_block("blk0", "x0", rng, mask="causal_mask", gelu="erf")
    nodes += bn
    inits += bi
    inits += [init("lnf_g", 1 + w(WIDTH) * 0.1), init("lnf_b", w(WIDTH) * 0.1)]
    nodes.append(helper.make_node("LayerNormalization", [out, "lnf_g", "lnf_b"], ["xf"], axis=-1, epsilon=1e-5))
    # features at the end-of-text position (highest id), flattened gather
    nodes.append(helper.make_node("ArgMax", ["input_ids"], ["eot"], axis=-1, keepdims=0))
    nodes.append(helper.make_node("Shape", ["input_ids"], ["ids_shape"]))
    inits.append(init("zero", np.array(0, dtype=np.int64)))
    inits.append(init("one", np.array(1, dtype=np.int64)))
    inits.append(init("ctx", np.array(CONTEXT, dtype=np.int64)))
    nodes.append(helper.make_node("Gather", ["ids_shape", "zero"], ["batch"], axis=0))
    nodes.append(helper.make_node("Range", ["zero", "batch", "one"], ["rows"]))
    nodes.append(helper.make_node("Mul", ["rows", "ctx"], ["row_off"]))
    nodes.append(helper.make_node("Add", ["row_off", "eot"], ["flat_idx"]))
    inits.append(init("flat_shape", np.array([-1, WIDTH], dtype=np.int64)))
    nodes.append(helper.make_node("Reshape", ["xf", "flat_shape"], ["xflat"]))
    nodes.append(helper.make_node("Gather", ["xflat", "flat_idx"], ["pooled"], axis=0))
    inits.append(init("proj", w(WIDTH, EMBED_DIM)))
    nodes.append(helper.make_node("MatMul", ["pooled", "proj"], ["text_embeds"]))
    graph = helper.make_graph(
        nodes, "stub_text_encoder",
        [helper.make_tensor_value_info("input_ids", TensorProto.INT64, ["N", CONTEXT])],
        [helper.make_tensor_value_info("text_embeds", TensorProto.FLOAT, ["N", EMBED_DIM])],
        inits)
    return finish(graph)


def finish(graph):
    model = helper.make_model(graph, opset_imports=[helper.make_opsetid("", OPSET)], producer_name="ddr-fixtures")
    model.ir_version = 8
    onnx.checker.check_model(model)
    return model


def sha256(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


# ---------------------------------------------------------------- preprocessing

def preprocess(path):
    """Published CLIP input transform applied to an image file -> float32 [3, 224, 224]."""
    return CLIP_TRANSFORM(Image.open(path)).numpy()


# ---------------------------------------------------------------- images

def synth_image(rng, w, h, blur_passes, saturation):
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    img = np.zeros((h, w, 3))
    for c in range(3):
        img[:, :, c] = 0.5 + 0.25 * np.sin(xx / (5 + 3 * c) + rng.uniform(0, 6)) * np.cos(yy / (7 + c) + rng.uniform(0, 6))
    for _ in range(6):
        cx, cy, r = rng.uniform(0, w), rng.uniform(0, h), rng.uniform(4, min(w, h) / 3)
        col = rng.uniform(0, 1, 3)
        m = ((xx - cx) ** 2 + (yy - cy) ** 2) < r * r
        img[m] = col
    img += rng.normal(0, 0.03, img.shape)
    for _ in range(blur_passes):
        img = (img + np.roll(img, 1, 0) + np.roll(img, -1, 0) + np.roll(img, 1, 1) + np.roll(img, -1, 1)) / 5
    luma = img @ np.array([0.299, 0.587, 0.114])
    img = luma[:, :, None] + saturation * (img - luma[:, :, None])
    return np.clip(np.round(img * 255), 0, 255).astype(np.uint8)


# ---------------------------------------------------------------- DDR reference

def ddr_text(f, t):
    t_hat = f.std() * (t - t.mean()) / t.std() + f.mean()
    fd = f + t_hat
    return 1.0 - f.dot(fd) / (np.linalg.norm(f) * np.linalg.norm(fd))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.dirname(os.path.abspath(__file__)))
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    out = args.out
    rng = np.random.default_rng(args.seed)

    assets = os.path.join(out, "stub_assets")
    os.makedirs(assets, exist_ok=True)
    onnx.save(make_image_encoder(rng), os.path.join(assets, "image_encoder.onnx"))
    onnx.save(make_text_encoder(rng), os.path.join(assets, "text_encoder.onnx"))
    # gzip header without timestamp so the copy is byte-stable
    with open(default_bpe(), "rb") as f:
        raw = gzip.decompress(f.read())
    with open(os.path.join(assets, "bpe_vocab.txt.gz"), "wb") as f:
        with gzip.GzipFile(fileobj=f, mode="wb", mtime=0, filename="") as gz:
            gz.write(raw)
    files = ["image_encoder.onnx", "text_encoder.onnx", "bpe_vocab.txt.gz"]
    manifest = {
        "model_id": "stub-vit-b32-signature",
        "embedding_dim": EMBED_DIM,
        "context_length": CONTEXT,
        "opset": OPSET,
        "files": {name: "sha256:" + sha256(os.path.join(assets, name)) for name in files},
    }
    with open(os.path.join(assets, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")

    img_sess = ort.InferenceSession(os.path.join(assets, "image_encoder.onnx"), providers=["CPUExecutionProvider"])
    txt_sess = ort.InferenceSession(os.path.join(assets, "text_encoder.onnx"), providers=["CPUExecutionProvider"])
    enc_img = lambda t: img_sess.run(None, {"pixel_values": t[None].astype(np.float32)})[0][0].astype(np.float64)
    enc_txt = lambda ids: txt_sess.run(None, {"input_ids": np.asarray(ids, dtype=np.int64)[None]})[0][0].astype(np.float64)

    # tokenizer reference
    tok = SimpleTokenizer()
    sot, eot = tok.encoder["<|startoftext|>"], tok.encoder["<|endoftext|>"]

    def tokenize(text):
        ids = [sot] + tok.encode(text) + [eot]
        assert len(ids) <= CONTEXT, text
        return ids + [0] * (CONTEXT - len(ids))

    corpus = [p for pair in PROMPTS.values() for p in pair]
    corpus += [
        "a", "A", "photo", "a photo of a cat", "A photo of a dog.", "  leading and trailing spaces  ",
        "multiple   internal\tspaces\nand newlines", "It's a blurry photo", "don't, won't, can't",
        "they're here; we've gone; I'm sure; you'll see; he'd know", "UPPER CASE SHOUTING",
        "MiXeD CaSe TeXt", "numbers 1234567890", "3.14159 is pi", "version 2.0.1-beta",
        "punctuation!!! ??? ...", "symbols @#$%^*()[]{}", "quotes \"double\" and 'single'",
        "hyphenated-word and under_score", "email@example.com", "https://example.com/path?q=1",
        "café crème brûlée", "naïve façade", "Übergrößenträger", "niño año señor", "smørrebrød",
        "日本語の写真", "一张模糊的照片", "фотография низкого качества", "φωτογραφία", "emoji 📷 photo",
        "tab\tseparated\tvalues", "a,b,c", "low-quality", "high-quality.", "overexposed", "underexposed image",
        "oversaturated colors", "grainy noisy picture", "out of focus", "motion blurred photograph",
        "jpeg compression artifacts", "a very very very very long sentence with many words in it to test merges",
        "supercalifragilisticexpialidocious", "antidisestablishmentarianism", "x", "zz", "<|endoftext|>",
        "a photo<|endoftext|>", "ends with period.", "A photo with low-quality.", "A photo with high-quality.",
    ]
    for s in corpus:
        assert "&" not in s
    tok_ref = [{"text": s, "ids": tokenize(s)} for s in corpus]
    with open(os.path.join(out, "tokenizer_reference.json"), "w", encoding="utf-8") as f:
        json.dump({"context_length": CONTEXT, "cases": tok_ref}, f, ensure_ascii=False, indent=1)
        f.write("\n")

    # stub goldens
    # closed-form probe so other runtimes can rebuild it without this RNG
    probe = (2.0 * np.sin(np.arange(3 * 224 * 224, dtype=np.float64) * 0.001 + 0.5)).astype(np.float32)
    probe = probe.reshape(3, 224, 224)
    golden = {
        "image_zero": enc_img(np.zeros((3, 224, 224), np.float32)).tolist(),
        "image_probe_sine": enc_img(probe).tolist(),
        "text_a": enc_txt(tokenize("a")).tolist(),
        "text_blur_degraded": enc_txt(tokenize(PROMPTS["blur"][0])).tolist(),
    }
    with open(os.path.join(out, "stub_golden.json"), "w") as f:
        json.dump(golden, f)
        f.write("\n")

    # images + manifest
    img_dir = os.path.join(out, "images")
    os.makedirs(img_dir, exist_ok=True)
    specs = [("scene_a.png", 64, 64, 0, 1.0, 4.1), ("scene_b.png", 96, 72, 1, 0.8, 3.4),
             ("scene_c.png", 48, 80, 3, 0.6, 2.7), ("scene_d.png", 120, 90, 6, 0.3, 1.9),
             ("scene_e.png", 80, 80, 10, 0.1, 1.2)]
    irng = np.random.default_rng(args.seed + 1)
    rows = []
    for name, w, h, passes, sat, mos in specs:
        Image.fromarray(synth_image(irng, w, h, passes, sat)).save(os.path.join(img_dir, name))
        rows.append((name, mos))
    Image.fromarray(synth_image(irng, 448, 336, 1, 1.0)).save(os.path.join(img_dir, "probe_448x336.png"))
    with open(os.path.join(img_dir, "manifest.csv"), "w") as f:
        f.write("path,mos\n")
        for name, mos in rows:
            f.write(f"{name},{mos}\n")

    # preprocessing reference: full-tensor digests for every image, strided
    # samples of the non-square probe
    def digest(t):
        return hashlib.sha256(np.ascontiguousarray(t, dtype="<f4").tobytes()).hexdigest()

    stride = 8
    pre = preprocess(os.path.join(img_dir, "probe_448x336.png"))
    digests = {n: digest(preprocess(os.path.join(img_dir, n)))
               for n in [r[0] for r in rows] + ["probe_448x336.png"]}
    with open(os.path.join(out, "preprocess_reference.json"), "w") as f:
        json.dump({"image": "images/probe_448x336.png", "stride": stride,
                   "samples": pre[:, ::stride, ::stride].astype(np.float64).tolist(),
                   "channel_sums": pre.astype(np.float64).sum(axis=(1, 2)).tolist(),
                   "sha256_f32le": digests}, f, indent=1, sort_keys=True)
        f.write("\n")

    # per-image DDR reference
    dirs = {d: enc_txt(tokenize(PROMPTS[d][0])) - enc_txt(tokenize(PROMPTS[d][1])) for d in PROMPTS}
    ref = {"degradations": BIQA, "images": []}
    for name, *_ in specs:
        f_img = enc_img(preprocess(os.path.join(img_dir, name)))
        per = {d: float(ddr_text(f_img, dirs[d])) for d in PROMPTS}
        ref["images"].append({"path": name, "ddr": per, "q_ddr": float(np.mean([per[d] for d in BIQA])),
                              "embedding": f_img.tolist()})
    with open(os.path.join(out, "reference_scores.json"), "w") as f:
        json.dump(ref, f)
        f.write("\n")
    print("fixtures written to", out)


if __name__ == "__main__":
    main()
