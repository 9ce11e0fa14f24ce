#!/usr/bin/env python3
"""Compare the compiled n-gram kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--lines N] [--repeats R]

Times the two operations that dominate corpus filtering and baseline
training: character trigram counting and log-table scoring. When the
extension is not built only the Python numbers print.
"""

from __future__ import annotations

import argparse
import math
import random
import time

from chatguard.kernels import _ngram_py

try:
    from chatguard.kernels import _ngram_cy
except ImportError:
    _ngram_cy = None

WORDS = (
    "gg wp ez mid care top push ward smoke rune noob report stop this that "
    "you me team game nice good well played lol wtf ffs"
).split()


def synth_lines(n: int, seed: int = 13) -> list[str]:
    rng = random.Random(seed)
    return [" ".join(rng.choice(WORDS) for _ in range(rng.randint(3, 12))) for _ in range(n)]


def bench(fn, lines, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        started = time.perf_counter()
        for line in lines:
            fn(line)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--lines", type=int, default=50_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    lines = synth_lines(args.lines)
    log_table = {
        gram: math.log(freq)
        for line in lines[:2_000]
        for gram, freq in (
            (g, 1e-3) for g in _ngram_py.char_ngram_counts(" " + line + " ", 3)
        )
    }

    impls = [("python", _ngram_py)]
    if _ngram_cy is not None:
        impls.append(("native", _ngram_cy))
    else:
        print("extension not built; showing pure-Python numbers only")

    print(f"{args.lines} synthetic chat lines, best of {args.repeats} runs\n")
    print(f"{'operation':<22}{'impl':<10}{'seconds':>10}{'lines/s':>14}")
    baselines = {}
    for op_name, make_fn in (
        ("trigram counting", lambda mod: (lambda line: mod.char_ngram_counts(" " + line + " ", 3))),
        (
            "log-table scoring",
            lambda mod: (
                lambda line: mod.score_log_table(
                    mod.char_ngram_counts(" " + line + " ", 3), log_table, -18.0
                )
            ),
        ),
    ):
        for impl_name, module in impls:
            seconds = bench(make_fn(module), lines, args.repeats)
            rate = args.lines / seconds
            note = ""
            if impl_name == "python":
                baselines[op_name] = seconds
            else:
                note = f"  ({baselines[op_name] / seconds:.1f}x python)"
            print(f"{op_name:<22}{impl_name:<10}{seconds:>10.3f}{rate:>14,.0f}{note}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
