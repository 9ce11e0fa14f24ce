from chatguard.ingest.models import (
    Channel,
    MatchRef,
    RateLimitPolicy,
    RawChatEvent,
    ShardFile,
)
from chatguard.ingest.client import OpenDotaClient, RateLimiter
from chatguard.ingest.shards import (
    consolidate_shards,
    read_event_file,
    run_collection_batch,
)

__all__ = [
    "Channel",
    "MatchRef",
    "RawChatEvent",
    "ShardFile",
    "RateLimitPolicy",
    "OpenDotaClient",
    "RateLimiter",
    "run_collection_batch",
    "consolidate_shards",
    "read_event_file",
]
