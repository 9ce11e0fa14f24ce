"""Harvest domain types: match references, chat events, shard metadata."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Channel(enum.Enum):
    """Source channel of a chat event.

    PLAYER_CHAT is typed chat; CHAT_WHEEL is the canned message menu and is
    excluded from the default corpus filter.
    """

    PLAYER_CHAT = "player_chat"
    CHAT_WHEEL = "chatwheel"
    OTHER = "other"

    @classmethod
    def parse(cls, raw: str) -> "Channel":
        for member in cls:
            if member.value == raw:
                return member
        raise ValueError(f"unknown channel: {raw!r}")


@dataclass(frozen=True)
class MatchRef:
    """A public match worth fetching chat for."""

    match_id: int
    start_time: int
    fetched_at: int

    def __post_init__(self) -> None:
        if self.match_id <= 0:
            raise ValueError("match_id must be positive")
        if self.fetched_at < self.start_time:
            raise ValueError("fetched_at cannot precede start_time")


@dataclass(frozen=True)
class RawChatEvent:
    """One chat line extracted from a match, keyed by (match_id, event_index)."""

    match_id: int
    event_index: int
    game_time: int
    channel: Channel
    player_slot: int | None
    text: str

    def __post_init__(self) -> None:
        if self.match_id <= 0:
            raise ValueError("match_id must be positive")
        if self.event_index < 0:
            raise ValueError("event_index must be >= 0")
        if self.player_slot is not None and not 0 <= self.player_slot <= 255:
            raise ValueError("player_slot out of range")
        if self.channel is Channel.PLAYER_CHAT and not self.text:
            raise ValueError("player chat events must carry text")

    @property
    def key(self) -> tuple[int, int]:
        return (self.match_id, self.event_index)


@dataclass(frozen=True)
class ShardFile:
    """Metadata for one collection run's output file."""

    path: str
    record_count: int
    batch_id: str
    created_at: int

    def __post_init__(self) -> None:
        if self.record_count < 0:
            raise ValueError("record_count must be >= 0")


@dataclass(frozen=True)
class RateLimitPolicy:
    """Request budget and retry/backoff settings for the public API."""

    max_requests_per_minute: int = 55
    max_retries: int = 4
    backoff_base_ms: int = 500
    backoff_cap_ms: int = 30_000

    def __post_init__(self) -> None:
        if self.max_requests_per_minute <= 0:
            raise ValueError("max_requests_per_minute must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.backoff_base_ms > self.backoff_cap_ms:
            raise ValueError("backoff_base_ms must not exceed backoff_cap_ms")
