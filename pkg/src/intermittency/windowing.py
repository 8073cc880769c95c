"""Fixed-length, non-overlapping event windows and per-bin sign counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .series import SignSequence


def require_divisor(window_len: int, n_bins: int) -> None:
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    if window_len % n_bins:
        raise ValueError(
            f"n_bins must divide window_len (got n_bins={n_bins}, window_len={window_len})"
        )


@dataclass(frozen=True)
class WindowConfig:
    window_len: int = 200
    n_bins: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.window_len < 1:
            raise ValueError("window_len must be >= 1")
        if self.offset < 0:
            raise ValueError("offset must be >= 0")
        require_divisor(self.window_len, self.n_bins)

    @property
    def bin_size(self) -> int:
        return self.window_len // self.n_bins


@dataclass(frozen=True, eq=False)
class Event:
    event_index: int
    signs: np.ndarray

    @property
    def window_len(self) -> int:
        return self.signs.size


@dataclass(frozen=True, eq=False)
class BinCounts:
    """Counts of +1 and -1 in each equal sub-bin of one event. Zeros count in neither."""

    n_plus: np.ndarray
    n_minus: np.ndarray
    bin_size: int

    @property
    def n_bins(self) -> int:
        return self.n_plus.size

    @property
    def total_plus(self) -> int:
        return int(self.n_plus.sum())

    @property
    def total_minus(self) -> int:
        return int(self.n_minus.sum())


@dataclass(frozen=True, eq=False)
class EventSet:
    """
    A sign sequence cut into ``n_events`` consecutive windows.

    ``signs`` is a read-only ``(n_events, window_len)`` int8 array. The first
    event starts at sample ``offset``; a trailing partial window is dropped.
    """

    signs: np.ndarray
    offset: int = 0

    def __post_init__(self):
        arr = np.array(self.signs, dtype=np.int8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("an event set needs at least one non-empty event")
        arr.setflags(write=False)
        object.__setattr__(self, "signs", arr)

    @property
    def n_events(self) -> int:
        return self.signs.shape[0]

    @property
    def window_len(self) -> int:
        return self.signs.shape[1]

    def __len__(self) -> int:
        return self.n_events

    def __iter__(self) -> Iterator[Event]:
        for i, row in enumerate(self.signs):
            yield Event(i, row)

    def __getitem__(self, i: int) -> Event:
        return Event(i, self.signs[i])

    def take(self, indices) -> "EventSet":
        """New event set built from the events at ``indices`` (repeats allowed)."""
        return EventSet(self.signs[np.asarray(indices)], self.offset)

    def flipped(self) -> "EventSet":
        return EventSet(-self.signs, self.offset)

    def bin_counts(self, n_bins: int) -> tuple[np.ndarray, np.ndarray]:
        """``(n_plus, n_minus)`` arrays of shape ``(n_events, n_bins)``, int64."""
        require_divisor(self.window_len, n_bins)
        shaped = self.signs.reshape(self.n_events, n_bins, self.window_len // n_bins)
        n_plus = np.count_nonzero(shaped == 1, axis=2).astype(np.int64)
        n_minus = np.count_nonzero(shaped == -1, axis=2).astype(np.int64)
        return n_plus, n_minus


def partition(signs: SignSequence, cfg: WindowConfig) -> EventSet:
    """Cut ``signs`` into ``floor((len - offset) / window_len)`` disjoint events."""
    available = len(signs) - cfg.offset
    n_events = available // cfg.window_len if available > 0 else 0
    if n_events < 1:
        raise ValueError(
            f"no full window: {len(signs)} signs, offset {cfg.offset}, "
            f"window_len {cfg.window_len}"
        )
    stop = cfg.offset + n_events * cfg.window_len
    block = signs.signs[cfg.offset:stop].reshape(n_events, cfg.window_len)
    return EventSet(block, cfg.offset)


def bin_multiplicities(event: Event, n_bins: int) -> BinCounts:
    window_len = event.window_len
    require_divisor(window_len, n_bins)
    size = window_len // n_bins
    shaped = np.asarray(event.signs).reshape(n_bins, size)
    return BinCounts(
        np.count_nonzero(shaped == 1, axis=1).astype(np.int64),
        np.count_nonzero(shaped == -1, axis=1).astype(np.int64),
        size,
    )
