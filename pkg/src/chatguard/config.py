"""Pipeline configuration: one flat key=value file, overridden by CLI flags.

Precedence is CLI flag > config file > built-in default. The `config`
subcommand prints the effective merge. The file format is deliberately
plain — `key = value` lines, `#` comments — so other tooling can read it.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass
class PipelineConfig:
    # Empty means: fall back to CHATGUARD_API_BASE, then the public API root.
    api_base: str = ""
    rate_limit_per_min: int = 55
    max_retries: int = 4
    backoff_base_ms: int = 500
    backoff_cap_ms: int = 30_000
    max_parallel: int = 4
    undersample_ratio: float = 1.2
    test_fraction: float = 0.25
    seed: int = 0
    stratified: bool = True
    english_threshold: float = 0.5
    english_min_length: int = 6
    prompt_suffix: str = "\n\n###\n\n"
    completion_prefix: str = " "
    backend: str = "lexicon"
    nb_alpha: float = 1.0
    remote_endpoint: str = ""
    remote_model: str = "gpt-3"
    remote_auth_env: str = "CHATGUARD_REMOTE_TOKEN"
    annotate_port: int = 8400
    annotate_strategy: str = "sequential"

    def merged_with(self, overrides: dict[str, object]) -> "PipelineConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in values:
                raise KeyError(f"unknown config key: {key}")
            values[key] = value
        return PipelineConfig(**values)

    def as_dict(self) -> dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _parse_value(key: str, raw: str, target_type: type) -> object:
    if target_type is bool:
        lowered = raw.strip().lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ValueError(f"{key}: expected a boolean, got {raw!r}")
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    # Strings may carry escaped separators (the prompt suffix contains \n).
    return raw.encode("utf-8").decode("unicode_escape")


def load_config(path: str | Path) -> PipelineConfig:
    types = {f.name: f.type for f in fields(PipelineConfig)}
    concrete = {
        "api_base": str, "rate_limit_per_min": int, "max_retries": int,
        "backoff_base_ms": int, "backoff_cap_ms": int, "max_parallel": int,
        "undersample_ratio": float, "test_fraction": float, "seed": int,
        "stratified": bool, "english_threshold": float, "english_min_length": int,
        "prompt_suffix": str, "completion_prefix": str, "backend": str,
        "nb_alpha": float, "remote_endpoint": str, "remote_model": str,
        "remote_auth_env": str, "annotate_port": int, "annotate_strategy": str,
    }
    assert set(types) == set(concrete)
    overrides: dict[str, object] = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path} line {line_no}: expected key = value")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in concrete:
            raise ValueError(f"{path} line {line_no}: unknown key {key!r}")
        overrides[key] = _parse_value(key, raw, concrete[key])
    return PipelineConfig().merged_with(overrides)
