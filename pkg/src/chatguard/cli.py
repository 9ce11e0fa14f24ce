"""Single entry point wiring the pipeline end to end:

collect -> consolidate -> prepare -> filter-english -> annotate -> stats
-> undersample -> split -> export-gpt / train-nb -> predict -> evaluate
-> report / compare.

Exit codes: 0 success, 1 operational error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from chatguard import __version__
from chatguard.annotate.service import make_server
from chatguard.annotate.store import AnnotationStore
from chatguard.classify.backends import LexiconBackend, NaiveBayesBackend, RemoteBackend
from chatguard.classify.interchange import predict_corpus, read_predictions
from chatguard.classify.lexicon import classify_lexicon, load_default_lexicon, load_lexicon
from chatguard.classify.naive_bayes import (
    load_model,
    predict_nb,
    save_model,
    train_naive_bayes,
)
from chatguard.classify.remote import RemoteModelConfig
from chatguard.config import PipelineConfig, load_config
from chatguard.corpus.export import PromptTemplate, export_prompt_completion
from chatguard.corpus.language import (
    LanguageProfile,
    filter_english,
    load_default_profiles,
    profile_from_json,
)
from chatguard.corpus.models import UndersamplePolicy
from chatguard.corpus.store import (
    examples_from_events,
    export_corpus,
    import_corpus,
    read_corpus,
    write_corpus,
)
from chatguard.corpus.transforms import compute_distribution, split, undersample_majority
from chatguard.errors import ChatguardError
from chatguard.evaluation.metrics import EvalReport, build_report
from chatguard.evaluation.report import compare_models, render_report
from chatguard.ingest.client import OpenDotaClient
from chatguard.ingest.models import RateLimitPolicy
from chatguard.ingest.shards import consolidate_shards, read_event_file, run_collection_batch
from chatguard.labels import LABEL_ORDER

logger = logging.getLogger("chatguard")


def _client_from(cfg: PipelineConfig) -> OpenDotaClient:
    return OpenDotaClient(
        base_url=cfg.api_base or None,
        policy=RateLimitPolicy(
            max_requests_per_minute=cfg.rate_limit_per_min,
            max_retries=cfg.max_retries,
            backoff_base_ms=cfg.backoff_base_ms,
            backoff_cap_ms=cfg.backoff_cap_ms,
        ),
    )


def _profiles_from(args, cfg: PipelineConfig) -> LanguageProfile:
    if getattr(args, "profiles", None):
        profile = profile_from_json(Path(args.profiles).read_text("utf-8"))
    else:
        profile = load_default_profiles()
    profile.acceptance_threshold = (
        args.threshold if getattr(args, "threshold", None) is not None else cfg.english_threshold
    )
    profile.min_length = (
        args.min_length if getattr(args, "min_length", None) is not None else cfg.english_min_length
    )
    return profile


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(human)


# -- subcommand implementations ---------------------------------------------


def cmd_collect(args, cfg: PipelineConfig) -> int:
    client = _client_from(cfg)
    shard = run_collection_batch(
        client, args.matches, args.out, max_parallel=cfg.max_parallel
    )
    _emit(
        args,
        {"shard": shard.path, "records": shard.record_count, "batch_id": shard.batch_id},
        f"wrote {shard.record_count} events to {shard.path} (batch {shard.batch_id})",
    )
    return 0


def cmd_consolidate(args, cfg: PipelineConfig) -> int:
    count = consolidate_shards(args.in_dir, args.out, overwrite=args.overwrite)
    _emit(args, {"out": args.out, "records": count}, f"consolidated {count} events into {args.out}")
    return 0


def cmd_prepare(args, cfg: PipelineConfig) -> int:
    records = read_event_file(args.events)
    examples = examples_from_events(records, include_chatwheel=args.include_chatwheel)
    write_corpus(examples, args.out)
    _emit(
        args,
        {"out": args.out, "examples": len(examples)},
        f"prepared {len(examples)} examples into {args.out}",
    )
    return 0


def cmd_filter_english(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.in_file)
    profile = _profiles_from(args, cfg)
    kept = filter_english(examples, profile)
    write_corpus(kept, args.out)
    _emit(
        args,
        {"kept": len(kept), "dropped": len(examples) - len(kept), "out": args.out},
        f"kept {len(kept)} of {len(examples)} examples ({len(examples) - len(kept)} dropped)",
    )
    return 0


def cmd_stats(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    labeled = [e for e in examples if e.label is not None]
    if len(labeled) == len(examples):
        dist = compute_distribution(examples)
    else:
        dist = compute_distribution(labeled) if labeled else None
    payload: dict = {"examples": len(examples), "labeled": len(labeled)}
    lines = [f"examples: {len(examples):,}", f"labeled:  {len(labeled):,}"]
    if dist is not None:
        payload["distribution"] = dist.as_dict()
        lines += [
            f"non-toxic: {dist.non_toxic:,}",
            f"mild:      {dist.mild:,}",
            f"toxic:     {dist.toxic:,}",
        ]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_undersample(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    ratio = args.ratio if args.ratio is not None else cfg.undersample_ratio
    seed = args.seed if args.seed is not None else cfg.seed
    reduced, removed = undersample_majority(
        examples, UndersamplePolicy(majority_ratio=ratio, seed=seed)
    )
    write_corpus(reduced, args.out)
    dist = compute_distribution(reduced)
    _emit(
        args,
        {"removed": removed, "remaining": len(reduced), "distribution": dist.as_dict(), "out": args.out},
        f"removed {removed:,} majority-class examples; {len(reduced):,} remain "
        f"(non-toxic {dist.non_toxic:,} / mild {dist.mild:,} / toxic {dist.toxic:,})",
    )
    return 0


def cmd_split(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    fraction = args.test if args.test is not None else cfg.test_fraction
    seed = args.seed if args.seed is not None else cfg.seed
    stratified = cfg.stratified and not args.no_stratify
    assignment = split(examples, fraction, seed, stratified=stratified)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train = [e for e in examples if assignment.assignment[e.id] == "train"]
    test = [e for e in examples if assignment.assignment[e.id] == "test"]
    write_corpus(train, out_dir / "train.jsonl")
    write_corpus(test, out_dir / "test.jsonl")
    _emit(
        args,
        {"train": len(train), "test": len(test), "seed": seed, "stratified": stratified, "out_dir": str(out_dir)},
        f"split {len(examples):,} examples into {len(train):,} train / {len(test):,} test (seed {seed})",
    )
    return 0


def cmd_export_gpt(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    template = PromptTemplate(
        prompt_suffix=args.suffix if args.suffix is not None else cfg.prompt_suffix,
        completion_prefix=args.prefix if args.prefix is not None else cfg.completion_prefix,
    )
    count = export_prompt_completion(examples, args.out, template)
    _emit(args, {"rows": count, "out": args.out}, f"exported {count} prompt/completion rows to {args.out}")
    return 0


def cmd_convert(args, cfg: PipelineConfig) -> int:
    examples = import_corpus(args.in_file)
    export_corpus(examples, args.out)
    _emit(args, {"examples": len(examples), "out": args.out}, f"converted {len(examples)} examples to {args.out}")
    return 0


def cmd_train_nb(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    alpha = args.alpha if args.alpha is not None else cfg.nb_alpha
    model = train_naive_bayes(examples, alpha=alpha, require_classes=LABEL_ORDER)
    save_model(model, args.out)
    _emit(
        args,
        {"out": args.out, "examples": len(examples), "alpha": alpha},
        f"trained naive bayes on {len(examples)} examples (alpha {alpha}) -> {args.out}",
    )
    return 0


def _build_backend(args, cfg: PipelineConfig):
    if args.backend == "lexicon":
        lexicon = load_lexicon(args.lexicon) if args.lexicon else load_default_lexicon()
        return LexiconBackend(lexicon)
    if args.backend == "nb":
        if not args.model:
            raise ChatguardError("predict --backend nb requires --model FILE")
        return NaiveBayesBackend(load_model(args.model))
    if args.backend == "remote":
        endpoint = args.endpoint or cfg.remote_endpoint
        if not endpoint:
            raise ChatguardError("predict --backend remote requires --endpoint URL")
        config = RemoteModelConfig(
            endpoint=endpoint,
            auth_env=cfg.remote_auth_env or None,
            model=args.remote_model or cfg.remote_model,
            template=PromptTemplate(
                prompt_suffix=cfg.prompt_suffix, completion_prefix=cfg.completion_prefix
            ),
        )
        return RemoteBackend(config, max_parallel=cfg.max_parallel)
    raise ChatguardError(f"unknown backend: {args.backend!r}")


def cmd_predict(args, cfg: PipelineConfig) -> int:
    examples = read_corpus(args.corpus)
    backend = _build_backend(args, cfg)
    written, failed = predict_corpus(backend, examples, args.out)
    payload = {"predictions": written, "failures": failed, "out": args.out}
    human = f"wrote {written} predictions to {args.out}"
    if failed:
        payload["error_manifest"] = args.out + ".errors.jsonl"
        human += f" ({failed} failures -> {args.out}.errors.jsonl)"
    _emit(args, payload, human)
    return 0 if failed == 0 else 1


def cmd_evaluate(args, cfg: PipelineConfig) -> int:
    gold = read_corpus(args.gold)
    reports = []
    for pred_path in args.pred:
        predictions = read_predictions(pred_path)
        name = predictions[0].model_name if predictions else Path(pred_path).stem
        reports.append(build_report(name, gold, predictions, normalize_axis=args.normalize))
    if args.save_reports:
        out_dir = Path(args.save_reports)
        out_dir.mkdir(parents=True, exist_ok=True)
        for report in reports:
            safe = "".join(c if c.isalnum() or c in "-_." else "_" for c in report.model_name)
            (out_dir / f"{safe}.report.json").write_text(report.to_json() + "\n", "utf-8")
    text = render_report(reports, include_matrices=args.matrices)
    if args.json:
        print(json.dumps([json.loads(r.to_json()) for r in reports], sort_keys=True))
    else:
        print(text, end="")
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    return 0


def cmd_report(args, cfg: PipelineConfig) -> int:
    reports = [EvalReport.load(path) for path in args.reports]
    text = render_report(reports, include_matrices=args.matrices)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
        _emit(args, {"out": args.out, "models": [r.model_name for r in reports]}, f"wrote report to {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_compare(args, cfg: PipelineConfig) -> int:
    reports = [EvalReport.load(path) for path in args.reports]
    ranked = compare_models(reports)
    if args.json:
        print(
            json.dumps(
                [
                    {"rank": i + 1, "model": r.model_name, "accuracy": r.accuracy, "macro_f1": r.macro_f1}
                    for i, r in enumerate(ranked)
                ],
                sort_keys=True,
            )
        )
    else:
        for i, report in enumerate(ranked, start=1):
            acc = "—" if report.accuracy is None else f"{report.accuracy:.4f}"
            print(f"{i}. {report.model_name} (accuracy {acc})")
    return 0


def cmd_annotate(args, cfg: PipelineConfig) -> int:
    disagreement_fn = None
    if args.nb_model:
        lexicon = load_lexicon(args.lexicon) if args.lexicon else load_default_lexicon()
        nb = load_model(args.nb_model)

        def disagreement_fn(text: str) -> bool:
            return classify_lexicon(text, lexicon)[0] is not predict_nb(nb, text).predicted

    store = AnnotationStore(
        args.corpus,
        session_seed=args.seed if args.seed is not None else cfg.seed,
        disagreement_fn=disagreement_fn,
    )
    port = args.port if args.port is not None else cfg.annotate_port
    server = make_server(
        store,
        port=port,
        host=args.host,
        static_dir=args.static,
        default_strategy=args.strategy or cfg.annotate_strategy,
        quiet=not args.verbose,
    )
    actual_port = server.server_address[1]
    print(f"annotate-service listening on http://{args.host}:{actual_port}/", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
        store.close()
    return 0


def cmd_config(args, cfg: PipelineConfig) -> int:
    if args.json:
        print(json.dumps(cfg.as_dict(), sort_keys=True))
    else:
        for key, value in sorted(cfg.as_dict().items()):
            print(f"{key} = {value!r}")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chatguard",
        description="Harvest game chat, manage a three-class toxicity corpus, classify, evaluate.",
    )
    parser.add_argument("--version", action="version", version=f"chatguard {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a key=value config file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", action="store_true", help="verbose logging")
    common.add_argument("--seed", type=int, default=None, help="seed override for seeded operations")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("collect", parents=[common], help="harvest chat from recent public matches into one shard")
    p.add_argument("--matches", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("consolidate", parents=[common], help="merge shards into one deduplicated event file")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(func=cmd_consolidate)

    p = sub.add_parser("prepare", parents=[common], help="turn a consolidated event file into an unlabeled corpus")
    p.add_argument("--events", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--include-chatwheel", action="store_true")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("filter-english", parents=[common], help="keep only English chats")
    p.add_argument("--in", dest="in_file", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--min-length", type=int, default=None)
    p.add_argument("--profiles", help="alternative language profile JSON")
    p.set_defaults(func=cmd_filter_english)

    p = sub.add_parser("stats", parents=[common], help="corpus size and class distribution")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("undersample", parents=[common], help="reduce the majority class")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ratio", type=float, default=None)
    p.set_defaults(func=cmd_undersample)

    p = sub.add_parser("split", parents=[common], help="train/test split")
    p.add_argument("--corpus", required=True)
    p.add_argument("--test", type=float, default=None)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("export-gpt", parents=[common], help="export prompt/completion fine-tuning rows")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--suffix", default=None)
    p.add_argument("--prefix", default=None)
    p.set_defaults(func=cmd_export_gpt)

    p = sub.add_parser("convert", parents=[common], help="convert a corpus between jsonl and csv")
    p.add_argument("--in", dest="in_file", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("train-nb", parents=[common], help="train the naive bayes baseline")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_train_nb)

    p = sub.add_parser("predict", parents=[common], help="run a classifier backend over a corpus")
    p.add_argument("--backend", choices=["lexicon", "nb", "remote"], required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lexicon", help="lexicon file (defaults to the shipped one)")
    p.add_argument("--model", help="naive bayes model file")
    p.add_argument("--endpoint", help="remote model endpoint URL")
    p.add_argument("--remote-model", help="remote model name")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", parents=[common], help="score prediction files against gold labels")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", action="append", required=True)
    p.add_argument("--normalize", choices=["row", "column"], default="row")
    p.add_argument("--matrices", action="store_true", help="include normalized confusion matrices")
    p.add_argument("--out", help="write the text report to a file")
    p.add_argument("--save-reports", help="directory for per-model JSON reports")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", parents=[common], help="render saved JSON reports as text tables")
    p.add_argument("--reports", nargs="+", required=True)
    p.add_argument("--out")
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("compare", parents=[common], help="rank models from saved JSON reports")
    p.add_argument("--reports", nargs="+", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("annotate", parents=[common], help="serve the labeling workflow over HTTP")
    p.add_argument("--corpus", required=True)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--strategy", choices=["sequential", "random", "disagreement"], default=None)
    p.add_argument("--static", help="directory with the web console bundle")
    p.add_argument("--lexicon", help="lexicon file for the disagreement queue")
    p.add_argument("--nb-model", help="naive bayes model for the disagreement queue")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("config", parents=[common], help="print the effective configuration")
    p.set_defaults(func=cmd_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = PipelineConfig()
    if args.config:
        try:
            cfg = load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    try:
        return args.func(args, cfg)
    except ChatguardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileExistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
