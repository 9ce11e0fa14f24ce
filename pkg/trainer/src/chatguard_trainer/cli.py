"""Trainer entry point: `trainer fit` and `trainer predict`."""

from __future__ import annotations

import argparse
import sys

from chatguard_trainer.config import FineTuneConfig, load_config
from chatguard_trainer.data import CorpusError
from chatguard_trainer.prediction import InterchangeError, predict_to_file
from chatguard_trainer.training import CheckpointUnavailable, finetune_encoder


def cmd_fit(args) -> int:
    config = load_config(args.config) if args.config else FineTuneConfig()
    config = config.merged_with(
        {
            "epochs": args.epochs,
            "base_model": args.base_model,
            "seed": args.seed,
        }
    )
    log = finetune_encoder(args.corpus, config, args.out, eval_corpus_path=args.eval_corpus)
    last = log.epochs[-1]
    print(
        f"fine-tuned {config.base_model} for {config.epochs} epoch(s): "
        f"initial loss {log.initial_loss:.4f} -> {last['train_loss']:.4f}, "
        f"eval accuracy {last['eval_accuracy']:.3f} ({log.wall_clock_s:.1f}s) -> {args.out}"
    )
    return 0


def cmd_predict(args) -> int:
    written = predict_to_file(args.model, args.corpus, args.out)
    print(f"wrote {written} predictions to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trainer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fine-tune an encoder on a labeled corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out", required=True, help="output model directory")
    p.add_argument("--eval-corpus", help="held-out corpus for per-epoch accuracy")
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--base-model", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="write interchange predictions for a corpus")
    p.add_argument("--model", required=True, help="fine-tuned model directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, CheckpointUnavailable, InterchangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
