"""Fine-tuning hyperparameters.

Defaults are the standard encoder fine-tuning recipe: per-epoch evaluation,
5 epochs, batch 16 both ways, weight decay 0.01, linear schedule, AdamW at
2e-5 with epsilon 1e-8. Everything is overridable via the config file or
CLI flags.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


@dataclass
class FineTuneConfig:
    evaluation_strategy: str = "epoch"
    epochs: int = 5
    train_batch: int = 16
    eval_batch: int = 16
    weight_decay: float = 0.01
    scheduler: str = "linear"
    optimizer: str = "adamw"
    learning_rate: float = 2e-5
    adam_epsilon: float = 1e-8
    max_length: int = 64
    base_model: str = "prajjwal1/bert-tiny"
    seed: int = 42

    def __post_init__(self) -> None:
        if self.epochs <= 0:
            raise ValueError("epochs must be positive")
        if self.evaluation_strategy != "epoch":
            raise ValueError("only per-epoch evaluation is supported")
        if self.scheduler != "linear":
            raise ValueError("only the linear scheduler is supported")
        if self.optimizer != "adamw":
            raise ValueError("only adamw is supported")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def merged_with(self, overrides: dict) -> "FineTuneConfig":
        values = self.as_dict()
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in values:
                raise KeyError(f"unknown config key: {key}")
            values[key] = value
        return FineTuneConfig(**values)


_PARSERS = {
    "evaluation_strategy": str, "epochs": int, "train_batch": int, "eval_batch": int,
    "weight_decay": float, "scheduler": str, "optimizer": str, "learning_rate": float,
    "adam_epsilon": float, "max_length": int, "base_model": str, "seed": int,
}


def load_config(path: str | Path) -> FineTuneConfig:
    """Parse a flat `key = value` config file (comments with #)."""
    overrides: dict = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path} line {line_no}: expected key = value")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _PARSERS:
            raise ValueError(f"{path} line {line_no}: unknown key {key!r}")
        overrides[key] = _PARSERS[key](raw)
    return FineTuneConfig().merged_with(overrides)
