"""Fine-tune a pre-trained encoder with a three-way classification head.

A plain torch loop rather than a framework trainer: AdamW at the configured
learning rate and epsilon, linear decay schedule without warmup, batched
shuffled epochs, per-epoch evaluation. The loop is seeded, so reruns on the
same machine reproduce the same loss sequence up to runtime nondeterminism.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

import torch
from torch.optim import AdamW
from transformers import (
    AutoModelForSequenceClassification,
    AutoTokenizer,
    get_linear_schedule_with_warmup,
)

from chatguard_trainer.config import FineTuneConfig
from chatguard_trainer.data import ID_TO_LABEL, Row, read_corpus, require_all_classes

LOG_FILENAME = "training_log.json"


class CheckpointUnavailable(Exception):
    def __init__(self, model_id: str):
        super().__init__(f"checkpoint unavailable: {model_id}")
        self.model_id = model_id


@dataclass
class TrainingLog:
    config: dict
    model_name: str
    initial_loss: float
    final_loss: float = 0.0  # eval-mode loss after the last epoch, measured
    # exactly like initial_loss so the two are directly comparable
    epochs: list[dict] = field(default_factory=list)
    wall_clock_s: float = 0.0

    def save(self, out_dir: str | Path) -> None:
        path = Path(out_dir) / LOG_FILENAME
        path.write_text(json.dumps(self.__dict__, indent=2, sort_keys=True) + "\n", "utf-8")

    @classmethod
    def load(cls, out_dir: str | Path) -> "TrainingLog":
        doc = json.loads((Path(out_dir) / LOG_FILENAME).read_text("utf-8"))
        return cls(**doc)


def _load_pretrained(base_model: str):
    try:
        tokenizer = AutoTokenizer.from_pretrained(base_model)
        model = AutoModelForSequenceClassification.from_pretrained(
            base_model,
            num_labels=len(ID_TO_LABEL),
            id2label=ID_TO_LABEL,
            label2id={name: i for i, name in ID_TO_LABEL.items()},
        )
    except (OSError, ValueError) as exc:
        raise CheckpointUnavailable(base_model) from exc
    return tokenizer, model


def _batches(rows: list[Row], size: int) -> list[list[Row]]:
    return [rows[i : i + size] for i in range(0, len(rows), size)]


def _encode(tokenizer, batch: list[Row], max_length: int):
    encoded = tokenizer(
        [row.text for row in batch],
        padding=True,
        truncation=True,
        max_length=max_length,
        return_tensors="pt",
    )
    encoded["labels"] = torch.tensor([row.label_id for row in batch])
    return encoded


@torch.no_grad()
def _mean_loss(model, tokenizer, rows: list[Row], config: FineTuneConfig) -> float:
    model.eval()
    total, count = 0.0, 0
    for batch in _batches(rows, config.eval_batch):
        out = model(**_encode(tokenizer, batch, config.max_length))
        total += float(out.loss.detach()) * len(batch)
        count += len(batch)
    return total / count


@torch.no_grad()
def _accuracy(model, tokenizer, rows: list[Row], config: FineTuneConfig) -> float:
    model.eval()
    correct = 0
    for batch in _batches(rows, config.eval_batch):
        encoded = _encode(tokenizer, batch, config.max_length)
        labels = encoded.pop("labels")
        logits = model(**encoded).logits
        correct += int((logits.argmax(dim=-1) == labels).sum())
    return correct / len(rows)


def finetune_encoder(
    corpus_path: str | Path,
    config: FineTuneConfig,
    out_dir: str | Path,
    eval_corpus_path: str | Path | None = None,
) -> TrainingLog:
    """Train the classification head (and encoder) on a labeled corpus.

    The evaluation rows default to the training corpus (desk-scale smoke
    signal, matching per-epoch evaluation strategy). Saves the fine-tuned
    model, tokenizer, and a training log into `out_dir`.
    """
    rows = read_corpus(corpus_path, require_labels=True)
    require_all_classes(rows, str(corpus_path))
    eval_rows = (
        read_corpus(eval_corpus_path, require_labels=True) if eval_corpus_path else rows
    )

    random.seed(config.seed)
    torch.manual_seed(config.seed)
    tokenizer, model = _load_pretrained(config.base_model)

    optimizer = AdamW(
        model.parameters(),
        lr=config.learning_rate,
        eps=config.adam_epsilon,
        weight_decay=config.weight_decay,
    )
    steps_per_epoch = len(_batches(rows, config.train_batch))
    schedule = get_linear_schedule_with_warmup(
        optimizer,
        num_warmup_steps=0,
        num_training_steps=steps_per_epoch * config.epochs,
    )

    started = time.perf_counter()
    model_name = f"{Path(config.base_model).name}-ft"
    log = TrainingLog(
        config=config.as_dict(),
        model_name=model_name,
        initial_loss=_mean_loss(model, tokenizer, rows, config),
    )

    order = list(range(len(rows)))
    shuffler = random.Random(config.seed)
    for epoch in range(1, config.epochs + 1):
        shuffler.shuffle(order)
        model.train()
        total, count = 0.0, 0
        for batch in _batches([rows[i] for i in order], config.train_batch):
            optimizer.zero_grad()
            out = model(**_encode(tokenizer, batch, config.max_length))
            out.loss.backward()
            optimizer.step()
            schedule.step()
            total += float(out.loss.detach()) * len(batch)
            count += len(batch)
        log.epochs.append(
            {
                "epoch": epoch,
                "train_loss": total / count,
                "eval_accuracy": _accuracy(model, tokenizer, eval_rows, config),
            }
        )

    log.final_loss = _mean_loss(model, tokenizer, rows, config)
    log.wall_clock_s = time.perf_counter() - started
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    log.save(out)
    return log
