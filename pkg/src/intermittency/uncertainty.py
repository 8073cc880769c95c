"""
Statistical and systematic uncertainties for factorial moments.

Statistical error is a nonparametric bootstrap over events. Resample ``r``
draws ``n_events`` event ordinals uniformly with replacement; draws come
from a single ``PCG64(SeedSequence(seed))`` stream in resample order, in
blocks of ``_CHUNK`` resamples. Because events are indexed by ordinal, the
same seed always selects the same ordinals, whatever the events contain.

Systematic error is the half-spread of the moment over shifted event grids.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .moments import Mode, event_terms, moment, resampled_values
from .series import SignSequence
from .windowing import EventSet, WindowConfig, partition

DEFAULT_RESAMPLES = 1000
MIN_RESAMPLES = 100
_CHUNK = 250


@dataclass(frozen=True)
class UncertaintyReport:
    stat_err: float
    syst_err: float
    n_resamples: int
    offsets_used: tuple[int, ...]
    seed: int
    offset_values: tuple[float, ...] = field(default=())


def bootstrap_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def bootstrap_indices(n_events: int, n_resamples: int, seed: int):
    """Yield ``(rows, n_events)`` ordinal blocks, covering ``n_resamples`` rows in total."""
    rng = bootstrap_rng(seed)
    done = 0
    while done < n_resamples:
        rows = min(_CHUNK, n_resamples - done)
        yield rng.integers(0, n_events, size=(rows, n_events))
        done += rows


def bootstrap_values(
    events: EventSet,
    n_bins: int,
    mode: Union[Mode, str] = Mode.PP,
    order: int = 2,
    n_resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> np.ndarray:
    """Moment value of every bootstrap resample, NaN where undefined."""
    if events.n_events < 2:
        raise ValueError("bootstrap needs at least 2 events")
    if n_resamples < MIN_RESAMPLES:
        raise ValueError(f"n_resamples must be >= {MIN_RESAMPLES}")
    terms = event_terms(events, n_bins, mode, order)
    blocks = [resampled_values(terms, idx) for idx in bootstrap_indices(events.n_events, n_resamples, seed)]
    return np.concatenate(blocks)


def bootstrap_stat(
    events: EventSet,
    n_bins: int,
    mode: Union[Mode, str] = Mode.PP,
    order: int = 2,
    n_resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> float:
    """
    Bootstrap standard error of one moment.

    Returns the population standard deviation of the resampled moment
    values. Resamples whose mean multiplicity is zero are dropped with a
    warning.

    Raises
    ------
    ValueError
        With fewer than 2 events, fewer than ``MIN_RESAMPLES`` resamples, or
        fewer than 2 defined resample values.
    """
    vals = bootstrap_values(events, n_bins, mode, order, n_resamples, seed)
    ok = np.isfinite(vals)
    if not ok.all():
        warnings.warn(f"{int((~ok).sum())} bootstrap resamples had zero mean multiplicity")
    if ok.sum() < 2:
        raise ValueError("fewer than 2 bootstrap resamples produced a defined moment")
    vals = vals[ok]
    # shifting by one sample keeps an all-equal batch at exactly 0
    return float(np.std(vals - vals[0]))


def default_offsets(window_len: int) -> tuple[int, ...]:
    """``(0, window_len // 4, window_len // 2)``; ``(0, 50, 100)`` for a 200-sample window."""
    return tuple(sorted({0, window_len // 4, window_len // 2}))


def offset_values(
    signs: SignSequence,
    cfg: WindowConfig,
    mode: Union[Mode, str] = Mode.PP,
    order: int = 2,
    offsets: Optional[Sequence[int]] = None,
) -> tuple[float, ...]:
    if offsets is None:
        offsets = default_offsets(cfg.window_len)
    if len(offsets) == 0:
        raise ValueError("at least one offset is required")
    out = []
    for off in offsets:
        shifted = WindowConfig(cfg.window_len, cfg.n_bins, int(off))
        try:
            events = partition(signs, shifted)
        except ValueError:
            raise ValueError(f"offset {off} exhausts the series") from None
        out.append(moment(events, cfg.n_bins, mode, order).value)
    return tuple(out)


def half_spread(values: Sequence[float]) -> float:
    return (max(values) - min(values)) / 2.0


def systematic_offset_scan(
    signs: SignSequence,
    cfg: WindowConfig,
    mode: Union[Mode, str] = Mode.PP,
    order: int = 2,
    offsets: Optional[Sequence[int]] = None,
) -> float:
    """Half the max-min spread of the moment across event-grid offsets."""
    return half_spread(offset_values(signs, cfg, mode, order, offsets))


def assess(
    signs: SignSequence,
    cfg: WindowConfig,
    mode: Union[Mode, str] = Mode.PP,
    order: int = 2,
    n_resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    offsets: Optional[Sequence[int]] = None,
) -> UncertaintyReport:
    """Both error components for the moment at ``cfg``; bootstrap uses the ``cfg.offset`` grid."""
    if offsets is None:
        offsets = default_offsets(cfg.window_len)
    events = partition(signs, cfg)
    stat = bootstrap_stat(events, cfg.n_bins, mode, order, n_resamples, seed)
    values = offset_values(signs, cfg, mode, order, offsets)
    return UncertaintyReport(stat, half_spread(values), n_resamples, tuple(int(o) for o in offsets), seed, values)
