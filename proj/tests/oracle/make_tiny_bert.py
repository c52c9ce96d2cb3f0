# Copyright 2026 The BERTScore Visualizer Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds a randomly initialised miniature BERT checkpoint and the hidden
states PyTorch computes for it, for the model-file provider tests.

    python3 tests/oracle/make_tiny_bert.py
"""

import json
import os
import shutil

import torch
from transformers import BertConfig, BertModel

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
OUT = os.path.join(FIXTURES, "tiny_bert")


def main():
    torch.manual_seed(1234)
    with open(os.path.join(FIXTURES, "vocab.txt"), encoding="utf-8") as f:
        vocab_size = len(f.read().splitlines())
    config = BertConfig(vocab_size=vocab_size, hidden_size=16, num_hidden_layers=2,
                        num_attention_heads=4, intermediate_size=32,
                        max_position_embeddings=32, type_vocab_size=2)
    model = BertModel(config, add_pooling_layer=False).eval()
    # Default init leaves LayerNorm at identity and biases at zero.
    with torch.no_grad():
        for name, p in model.named_parameters():
            if "LayerNorm" in name or name.endswith("bias"):
                p.uniform_(-0.5, 0.5)
                if name.endswith("LayerNorm.weight"):
                    p.add_(1.0)
    os.makedirs(OUT, exist_ok=True)
    model.save_pretrained(OUT, safe_serialization=True)
    shutil.copy(os.path.join(FIXTURES, "vocab.txt"), os.path.join(OUT, "vocab.txt"))

    # [CLS] hello world , the cat sat [SEP] against the fixture vocab.
    with open(os.path.join(FIXTURES, "vocab.txt"), encoding="utf-8") as f:
        ids = {s: i for i, s in enumerate(f.read().splitlines())}
    surfaces = ["[CLS]", "hello", "world", ",", "the", "cat", "sat", "[SEP]"]
    input_ids = torch.tensor([[ids[s] for s in surfaces]])
    with torch.no_grad():
        out = model(input_ids=input_ids, output_hidden_states=True)
    expected = {
        "surfaces": surfaces,
        "input_ids": input_ids[0].tolist(),
        "hidden_states": [h[0].tolist() for h in out.hidden_states],
    }
    with open(os.path.join(FIXTURES, "tiny_bert_expected.json"), "w") as f:
        json.dump(expected, f)
        f.write("\n")


if __name__ == "__main__":
    main()
