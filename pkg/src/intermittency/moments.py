"""
Normalized factorial moments of binned sign multiplicities.

For an event set of ``N`` windows, each split into ``B`` equal bins, the
order-``q`` moment of a filtered count ``n`` is::

    F_q = (1/N) sum_events [ sum_k n_k (n_k - 1) ... (n_k - q + 1) / B ] / (<n> / B)**q

where ``<n>`` is the mean full-window count over *all* events. The unlike-sign
second moment replaces the falling factorial by ``n_k+ * n_k-`` and the
normalization by ``<n+> <n-> / B**2``.

All per-event quantities are integers, so sums over events are accumulated
exactly and the final ratio is formed as a rational number before a single
rounding to float. Results are therefore independent of event order and
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .windowing import EventSet, require_divisor

_INT64_SAFE = 2**62


class Mode(str, Enum):
    PP = "PP"
    MM = "MM"
    PM = "PM"
    ALL = "ALL"

    @classmethod
    def parse(cls, value: Union[str, "Mode"]) -> "Mode":
        if isinstance(value, Mode):
            return value
        key = str(value).strip().upper().replace("-", "").replace("_", "")
        aliases = {"ALLSIGNS": "ALL", "++": "PP", "--": "MM", "+-": "PM"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown mode {value!r}; expected PP, MM, PM or ALL") from None


_FILTER_MODE = {"plus": Mode.PP, "minus": Mode.MM, "all": Mode.ALL}


def falling_factorial(n: int, q: int) -> int:
    """``n (n-1) ... (n-q+1)``; zero when ``n < q``."""
    if n < 0 or q < 1:
        raise ValueError("falling_factorial needs n >= 0 and q >= 1")
    out = 1
    for j in range(q):
        out *= n - j
    return out


def _falling_factorial_array(counts: np.ndarray, q: int, exact_object: bool) -> np.ndarray:
    arr = counts.astype(object) if exact_object else counts.astype(np.int64)
    out = arr.copy()
    for j in range(1, q):
        out = out * (arr - j)
    return out


@dataclass(frozen=True)
class MomentResult:
    n_bins: int
    value: float
    mode: Mode
    order: int
    n_events: int
    mean_multiplicity: tuple[float, ...]

    @property
    def log_value(self) -> float:
        return math.log(self.value) if self.value > 0 else float("-inf")


@dataclass(frozen=True)
class MomentSpec:
    order: int = 2
    modes: tuple[Mode, ...] = (Mode.PP, Mode.MM, Mode.PM)
    bins_list: tuple[int, ...] = (1, 2, 4, 10, 20)

    def __post_init__(self):
        modes = self.modes
        if isinstance(modes, (str, Mode)):
            modes = (modes,)
        object.__setattr__(self, "modes", tuple(Mode.parse(m) for m in modes))
        object.__setattr__(self, "bins_list", tuple(int(b) for b in self.bins_list))
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if Mode.PM in self.modes and self.order != 2:
            raise ValueError("PM mode is only defined for order 2")
        if not self.modes or not self.bins_list:
            raise ValueError("at least one mode and one bin count are required")
        if any(b < 1 for b in self.bins_list):
            raise ValueError("n_bins must be >= 1")

    def validate(self, window_len: int) -> None:
        for b in self.bins_list:
            require_divisor(window_len, b)


@dataclass(frozen=True, eq=False)
class EventTerms:
    """
    Per-event integer ingredients of one moment estimate.

    ``numer[e]`` is the bin sum of falling factorials (or of ``n+ n-``), and
    ``counts`` holds one full-window count array per normalizing sign.
    """

    numer: np.ndarray
    counts: tuple[np.ndarray, ...]
    mode: Mode
    order: int
    n_bins: int

    @property
    def n_events(self) -> int:
        return self.numer.shape[0]


def event_terms(events: EventSet, n_bins: int, mode: Union[Mode, str], order: int = 2) -> EventTerms:
    mode = Mode.parse(mode)
    if order < 2:
        raise ValueError("order must be >= 2")
    if mode is Mode.PM and order != 2:
        raise ValueError("PM mode is only defined for order 2")
    n_plus, n_minus = events.bin_counts(n_bins)
    if mode is Mode.PM:
        numer = (n_plus * n_minus).sum(axis=1)
        return EventTerms(numer, (n_plus.sum(axis=1), n_minus.sum(axis=1)), mode, 2, n_bins)

    if mode is Mode.PP:
        nk = n_plus
    elif mode is Mode.MM:
        nk = n_minus
    else:
        nk = n_plus + n_minus
    bin_size = events.window_len // n_bins
    bound = events.n_events * n_bins * float(bin_size) ** order
    per_bin = _falling_factorial_array(nk, order, exact_object=bound >= _INT64_SAFE)
    return EventTerms(per_bin.sum(axis=1), (nk.sum(axis=1),), mode, order, n_bins)


def _exact_value(numer_sum: int, count_sums: Sequence[int], n_events: int, n_bins: int, order: int, mode: Mode) -> float:
    if any(c == 0 for c in count_sums):
        which = {Mode.PP: "positive", Mode.MM: "negative", Mode.ALL: "signed", Mode.PM: "positive or negative"}
        raise ValueError(f"zero mean {which[mode]} multiplicity; moment undefined")
    if mode is Mode.PM:
        cp, cm = count_sums
        ratio = Fraction(numer_sum * n_bins * n_events, cp * cm)
    else:
        (c,) = count_sums
        ratio = Fraction(numer_sum * n_bins ** (order - 1) * n_events ** (order - 1), c**order)
    return float(ratio)


def from_terms(terms: EventTerms) -> MomentResult:
    n = terms.n_events
    numer_sum = int(sum(int(x) for x in terms.numer)) if terms.numer.dtype == object else int(terms.numer.sum())
    count_sums = [int(c.sum()) for c in terms.counts]
    value = _exact_value(numer_sum, count_sums, n, terms.n_bins, terms.order, terms.mode)
    return MomentResult(
        n_bins=terms.n_bins,
        value=value,
        mode=terms.mode,
        order=terms.order,
        n_events=n,
        mean_multiplicity=tuple(c / n for c in count_sums),
    )


def resampled_values(terms: EventTerms, indices: np.ndarray) -> np.ndarray:
    """
    Moment values for a batch of resampled event sets.

    ``indices`` has shape ``(R, m)``; row ``r`` lists the event ordinals
    drawn for resample ``r``. Undefined resamples (zero mean count) come
    back as NaN.
    """
    idx = np.asarray(indices)
    m = idx.shape[1]
    exact = terms.numer.dtype != object and terms.order <= 4
    dtype = np.int64 if exact else np.float64
    # integer sums, so equal rationals round to equal floats
    numer = terms.numer.astype(dtype)[idx].sum(axis=1).astype(np.float64)
    sums = [c[idx].sum(axis=1).astype(np.float64) for c in terms.counts]
    b = float(terms.n_bins)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if terms.mode is Mode.PM:
            out = numer * (b * m) / (sums[0] * sums[1])
        elif exact:
            out = numer * (b * m) ** (terms.order - 1) / sums[0] ** terms.order
        else:
            mean = sums[0] / m
            out = (numer / m) / mean**terms.order * b ** (terms.order - 1)
    out[~np.isfinite(out)] = np.nan
    return out


def moment(events: EventSet, n_bins: int, mode: Union[Mode, str], order: int = 2) -> MomentResult:
    return from_terms(event_terms(events, n_bins, mode, order))


def f_q(events: EventSet, q: int, n_bins: int, sign_filter: str = "plus") -> MomentResult:
    """
    General-order binned factorial moment of one sign filter.

    ``sign_filter`` is ``"plus"``, ``"minus"`` or ``"all"`` (both signs
    pooled, zeros excluded).
    """
    try:
        mode = _FILTER_MODE[sign_filter]
    except KeyError:
        raise ValueError(f"sign_filter must be one of {sorted(_FILTER_MODE)}") from None
    return moment(events, n_bins, mode, q)


def f2_pp(events: EventSet, n_bins: int) -> MomentResult:
    return moment(events, n_bins, Mode.PP, 2)


def f2_mm(events: EventSet, n_bins: int) -> MomentResult:
    return moment(events, n_bins, Mode.MM, 2)


def f2_pm(events: EventSet, n_bins: int) -> MomentResult:
    return moment(events, n_bins, Mode.PM, 2)


def moment_scan(events: EventSet, spec: MomentSpec) -> list[MomentResult]:
    """
    One result per ``(mode, n_bins)``, grouped by mode in ``spec`` order and
    sorted by ``n_bins`` within each mode. Use ``MomentResult.log_value`` for
    the log F versus n_bins intermittency plot.
    """
    spec.validate(events.window_len)
    bins = sorted(spec.bins_list)
    return [moment(events, b, m, spec.order) for m in spec.modes for b in bins]


def is_increasing(results: Iterable[MomentResult], strict: bool = True) -> bool:
    vals = [r.value for r in sorted(results, key=lambda r: r.n_bins)]
    pairs = zip(vals, vals[1:])
    return all(b > a for a, b in pairs) if strict else all(b >= a for a, b in pairs)
