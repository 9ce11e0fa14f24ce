"""Per-run shard files and their consolidation into one raw corpus file.

Every collection run writes exactly one shard: line-delimited, self-describing
JSON records ``{schema, match_id, event_index, game_time, channel,
player_slot, text, batch_id}``. Consolidation unions shards, dedupes by
(match_id, event_index), and emits a byte-stable sorted file, so running it
twice (or permuting shard discovery order) produces identical output.
"""

from __future__ import annotations

import json
import logging
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterator

from chatguard.errors import ChatguardError, ShardCorruptError
from chatguard.ingest.client import OpenDotaClient
from chatguard.ingest.models import Channel, RawChatEvent, ShardFile

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_REQUIRED_FIELDS = frozenset(
    {"schema", "match_id", "event_index", "game_time", "channel", "player_slot", "text", "batch_id"}
)


def event_to_record(event: RawChatEvent, batch_id: str) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "match_id": event.match_id,
        "event_index": event.event_index,
        "game_time": event.game_time,
        "channel": event.channel.value,
        "player_slot": event.player_slot,
        "text": event.text,
        "batch_id": batch_id,
    }


def event_from_record(record: dict) -> RawChatEvent:
    return RawChatEvent(
        match_id=record["match_id"],
        event_index=record["event_index"],
        game_time=record["game_time"],
        channel=Channel.parse(record["channel"]),
        player_slot=record["player_slot"],
        text=record["text"],
    )


def _dump_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def run_collection_batch(
    client: OpenDotaClient,
    n_matches: int,
    out_dir: str | Path,
    *,
    max_parallel: int = 4,
    batch_id: str | None = None,
) -> ShardFile:
    """Fetch chat from up to `n_matches` recent public matches into one new
    shard file. Failures of individual matches are logged and skipped; an
    unreachable feed yields an empty shard, not an error.
    """
    if n_matches < 0:
        raise ValueError("n_matches must be >= 0")
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    batch = batch_id or uuid.uuid4().hex

    matches = []
    cursor: int | None = None
    while len(matches) < n_matches:
        page = client.fetch_public_matches(less_than_match_id=cursor)
        if not page:
            break
        matches.extend(page)
        cursor = page[-1].match_id
    matches = matches[:n_matches]

    events: list[RawChatEvent] = []
    if matches:
        with ThreadPoolExecutor(max_workers=max(1, max_parallel)) as pool:
            futures = [(m, pool.submit(client.fetch_match_chat, m)) for m in matches]
            for match, future in futures:
                try:
                    events.extend(future.result())
                except ChatguardError as exc:
                    logger.warning("skipping match %d: %s", match.match_id, exc)

    shard_path = out_path / f"shard-{batch}.jsonl"
    with open(shard_path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(_dump_record(event_to_record(event, batch)) + "\n")
    return ShardFile(
        path=str(shard_path),
        record_count=len(events),
        batch_id=batch,
        created_at=int(time.time()),
    )


def _read_shard(path: Path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ShardCorruptError(str(path), line_no, f"corrupt shard {path} at line {line_no}: {exc}") from exc
            if not isinstance(record, dict) or not _REQUIRED_FIELDS.issubset(record):
                raise ShardCorruptError(str(path), line_no, f"corrupt shard {path} at line {line_no}: missing fields")
            if record["schema"] != SCHEMA_VERSION:
                raise ShardCorruptError(
                    str(path), line_no, f"corrupt shard {path} at line {line_no}: unsupported schema {record['schema']!r}"
                )
            yield record


def consolidate_shards(shard_dir: str | Path, out_file: str | Path, *, overwrite: bool = False) -> int:
    """Union all shards in `shard_dir` into one deduplicated, sorted file.

    Dedup key is (match_id, event_index); among duplicates the record from
    the lexicographically smallest batch_id wins, so output is independent of
    shard discovery order. Refuses to clobber an existing output unless
    `overwrite` is set. Returns the consolidated record count.
    """
    shard_root = Path(shard_dir)
    out_path = Path(out_file)
    if out_path.exists() and not overwrite:
        raise FileExistsError(f"{out_path} exists; pass overwrite to replace it")

    best: dict[tuple[int, int], dict] = {}
    for shard_path in sorted(shard_root.glob("*.jsonl")):
        if shard_path.resolve() == out_path.resolve():
            continue
        for record in _read_shard(shard_path):
            key = (record["match_id"], record["event_index"])
            current = best.get(key)
            if current is None or record["batch_id"] < current["batch_id"]:
                best[key] = record

    with open(out_path, "w", encoding="utf-8") as fh:
        for key in sorted(best):
            fh.write(_dump_record(best[key]) + "\n")
    return len(best)


def read_event_file(path: str | Path) -> list[dict]:
    """Read a shard or consolidated file back as validated records."""
    return list(_read_shard(Path(path)))
