from __future__ import annotations

import json
import random
from pathlib import Path

import pytest
from transformers import BertConfig, BertModel, BertTokenizerFast

POOLS = {
    "non-toxic": ["gg", "wp", "nice", "good", "game", "well", "played", "care", "ward", "push"],
    "mild": ["wtf", "sht", "fk", "damn", "crap", "hell", "ffs", "ugh", "argh", "rip"],
    "toxic": ["noob", "loser", "idiot", "trash", "stupid", "uninstall", "report", "clown", "useless", "dog"],
}
FILLER = ["the", "a", "this", "we", "go", "now", "pls", "team"]


def toy_rows(n_per_class: int, seed: int = 7) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    i = 0
    for label, pool in POOLS.items():
        for _ in range(n_per_class):
            length = rng.randint(3, 7)
            tokens = [rng.choice(pool) if rng.random() < 0.7 else rng.choice(FILLER) for _ in range(length)]
            rows.append(
                {
                    "schema": 1,
                    "id": f"toy{i:04d}",
                    "text": " ".join(tokens),
                    "label": label,
                    "labeled_at": 1_754_000_000,
                }
            )
            i += 1
    return rows


def write_corpus_file(rows: list[dict], path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return path


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory) -> Path:
    """A locally constructed tiny encoder checkpoint (the sandbox has no
    model hub access, and the tests only assert that training moves loss)."""
    out = tmp_path_factory.mktemp("ckpt") / "tiny-encoder"
    words = sorted({w for pool in POOLS.values() for w in pool} | set(FILLER))
    vocab = (
        ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
        + words
        + list("abcdefghijklmnopqrstuvwxyz")
        + ["##" + c for c in "abcdefghijklmnopqrstuvwxyz"]
    )
    vocab_file = out.parent / "vocab.txt"
    vocab_file.write_text("\n".join(vocab) + "\n", "utf-8")
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file), do_lower_case=True)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    import torch

    torch.manual_seed(20_240_808)
    BertModel(config).save_pretrained(out)
    tokenizer.save_pretrained(out)
    return out


@pytest.fixture(scope="session")
def toy_corpus_file(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("corpus") / "toy.jsonl"
    return write_corpus_file(toy_rows(20), path)
