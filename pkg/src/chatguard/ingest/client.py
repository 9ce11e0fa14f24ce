"""HTTP client for the public match data API.

Endpoints used: a public-matches listing for match ids (paginated downward
via `less_than_match_id`) and a per-match detail endpoint whose `chat` array
yields (time, type, key, slot). Base URL and bearer key come from
CHATGUARD_API_BASE / CHATGUARD_API_KEY unless given explicitly. All retry
timing is injectable so tests run against scripted stubs without sleeping.
"""

from __future__ import annotations

import json
import os
import random
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import requests

from chatguard.errors import (
    ChatParseError,
    FetchError,
    MatchNotFound,
    RateLimitExceeded,
    TransportError,
)
from chatguard.ingest.models import Channel, MatchRef, RateLimitPolicy, RawChatEvent

DEFAULT_API_BASE = "https://api.opendota.com/api"
ENV_API_BASE = "CHATGUARD_API_BASE"
ENV_API_KEY = "CHATGUARD_API_KEY"

WINDOW_SECONDS = 60.0


class RateLimiter:
    """Sliding-window budget: at most `max_per_minute` acquisitions in any
    60 s window. Thread-safe; blocks until budget frees up."""

    def __init__(
        self,
        max_per_minute: int,
        *,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        if max_per_minute <= 0:
            raise ValueError("max_per_minute must be positive")
        self.max_per_minute = max_per_minute
        self._clock = clock
        self._sleep = sleep
        self._stamps: deque[float] = deque()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = self._clock()
                while self._stamps and now - self._stamps[0] >= WINDOW_SECONDS:
                    self._stamps.popleft()
                if len(self._stamps) < self.max_per_minute:
                    self._stamps.append(now)
                    return
                wait = self._stamps[0] + WINDOW_SECONDS - now
            self._sleep(max(wait, 0.001))


@dataclass
class ClientStats:
    """Counters for observability and retry assertions in tests."""

    requests: int = 0
    retries: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def count_request(self) -> None:
        with self._lock:
            self.requests += 1

    def count_retry(self) -> None:
        with self._lock:
            self.retries += 1


class OpenDotaClient:
    def __init__(
        self,
        base_url: str | None = None,
        api_key: str | None = None,
        policy: RateLimitPolicy | None = None,
        *,
        timeout: float = 30.0,
        session: requests.Session | None = None,
        clock: Callable[[], float] = time.time,
        sleep: Callable[[float], None] = time.sleep,
        rng: random.Random | None = None,
    ):
        self.base_url = (base_url or os.environ.get(ENV_API_BASE) or DEFAULT_API_BASE).rstrip("/")
        self.policy = policy or RateLimitPolicy()
        self.timeout = timeout
        self.stats = ClientStats()
        self._clock = clock
        self._sleep = sleep
        self._rng = rng or random.Random()
        self._session = session or requests.Session()
        key = api_key or os.environ.get(ENV_API_KEY)
        if key:
            self._session.headers["Authorization"] = f"Bearer {key}"
        self.limiter = RateLimiter(
            self.policy.max_requests_per_minute, sleep=sleep
        )

    # -- low level ---------------------------------------------------------

    def _backoff_seconds(self, attempt: int) -> float:
        """Exponential backoff with full jitter, capped."""
        ceiling_ms = min(
            self.policy.backoff_cap_ms,
            self.policy.backoff_base_ms * (2 ** (attempt - 1)),
        )
        return self._rng.uniform(0, ceiling_ms) / 1000.0

    def _get(self, path: str, params: dict | None = None) -> requests.Response:
        url = f"{self.base_url}/{path.lstrip('/')}"
        attempt = 0
        while True:
            self.limiter.acquire()
            self.stats.count_request()
            try:
                resp = self._session.get(url, params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                if attempt >= self.policy.max_retries:
                    raise TransportError(f"GET {url}: {exc}") from exc
                attempt += 1
                self.stats.count_retry()
                self._sleep(self._backoff_seconds(attempt))
                continue
            if resp.status_code == 429:
                if attempt >= self.policy.max_retries:
                    raise RateLimitExceeded(
                        f"GET {url}: still throttled after {attempt} retries"
                    )
                attempt += 1
                self.stats.count_retry()
                self._sleep(self._backoff_seconds(attempt))
                continue
            return resp

    # -- operations ----------------------------------------------------------

    def fetch_public_matches(self, less_than_match_id: int | None = None) -> list[MatchRef]:
        """One page of recent public matches, newest (highest id) first.

        An empty list means pagination is exhausted.
        """
        params: dict = {}
        if less_than_match_id is not None:
            params["less_than_match_id"] = less_than_match_id
        resp = self._get("publicMatches", params or None)
        if not resp.ok:
            raise FetchError(resp.status_code, f"publicMatches: HTTP {resp.status_code}")
        rows = resp.json()
        fetched_at = int(self._clock())
        refs = []
        for row in rows:
            match_id = int(row["match_id"])
            if less_than_match_id is not None and match_id >= less_than_match_id:
                continue
            start_time = int(row.get("start_time", fetched_at))
            refs.append(
                MatchRef(
                    match_id=match_id,
                    start_time=start_time,
                    fetched_at=max(fetched_at, start_time),
                )
            )
        refs.sort(key=lambda r: r.match_id, reverse=True)
        return refs

    def fetch_match_chat(self, match: MatchRef) -> list[RawChatEvent]:
        """Chat events for one match. Entries lacking text are dropped;
        event_index numbers the kept events by response position."""
        resp = self._get(f"matches/{match.match_id}")
        if resp.status_code == 404:
            raise MatchNotFound(match.match_id)
        if not resp.ok:
            raise FetchError(
                resp.status_code, f"match {match.match_id}: HTTP {resp.status_code}"
            )
        try:
            body = json.loads(resp.content.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            offset = getattr(exc, "pos", 0) or 0
            raise ChatParseError(match.match_id, offset) from exc
        chat = body.get("chat")
        if chat is None:
            return []
        if not isinstance(chat, list):
            raise ChatParseError(match.match_id, 0, "chat field is not a list")
        events = []
        for entry in chat:
            if not isinstance(entry, dict):
                continue
            text = entry.get("key")
            if not isinstance(text, str) or not text:
                continue
            slot = entry.get("player_slot", entry.get("slot"))
            if not isinstance(slot, int) or not 0 <= slot <= 255:
                slot = None
            events.append(
                RawChatEvent(
                    match_id=match.match_id,
                    event_index=len(events),
                    game_time=int(entry.get("time", 0)),
                    channel=_channel_of(entry.get("type")),
                    player_slot=slot,
                    text=text,
                )
            )
        return events


def _channel_of(raw: object) -> Channel:
    if raw == "chat":
        return Channel.PLAYER_CHAT
    if raw == "chatwheel":
        return Channel.CHAT_WHEEL
    return Channel.OTHER
