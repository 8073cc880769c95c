"""
Synthetic sign sequences and price paths with known correlation structure.

Every generator draws from ``numpy.random.Generator(PCG64(SeedSequence(seed)))``
so a ``(spec, seed)`` pair always reproduces the same output.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .series import PriceSeries, SignSequence, compute_signs
from .windowing import require_divisor

WALK_START = 100.0


class Kind(str, Enum):
    IID = "iid"
    MARKOV = "markov"
    GAUSSIAN_WALK = "gaussian-walk"

    @classmethod
    def parse(cls, value: Union[str, "Kind"]) -> "Kind":
        if isinstance(value, Kind):
            return value
        key = str(value).strip().lower()
        aliases = {
            "iid-bernoulli": "iid",
            "bernoulli": "iid",
            "markov-persistent": "markov",
            "walk": "gaussian-walk",
            "gaussian": "gaussian-walk",
        }
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown generator kind {value!r}") from None


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Parameters of one synthetic stream.

    ``length`` counts signs for the sign generators and price samples for the
    Gaussian walk. ``rho`` is the probability that a sign repeats its
    predecessor; ``rho = 0.5`` is the i.i.d. fair coin.
    """

    kind: Kind = Kind.IID
    length: int = 688_000
    p_plus: float = 0.5
    rho: float = 0.5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if not 0.0 < self.p_plus < 1.0:
            raise ValueError("p_plus must lie strictly between 0 and 1")
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must lie strictly between 0 and 1")
        if self.kind is Kind.GAUSSIAN_WALK and self.length < 2:
            raise ValueError("a walk needs at least 2 samples")

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))


def _require(spec: GeneratorSpec, kind: Kind) -> None:
    if spec.kind is not kind:
        raise ValueError(f"expected a {kind.value} spec, got {spec.kind.value}")


def gen_iid_signs(spec: GeneratorSpec) -> SignSequence:
    _require(spec, Kind.IID)
    u = spec.rng().random(spec.length)
    signs = np.where(u < spec.p_plus, 1, -1).astype(np.int8)
    return SignSequence.from_signs(signs)


def gen_markov_signs(spec: GeneratorSpec) -> SignSequence:
    """Two-state chain on {+1, -1}: repeat with probability ``rho``, else flip."""
    _require(spec, Kind.MARKOV)
    rng = spec.rng()
    first = 1 if rng.random() < 0.5 else -1
    flips = rng.random(spec.length - 1) >= spec.rho
    parity = np.concatenate(([0], np.cumsum(flips) & 1))
    signs = (first * (1 - 2 * parity)).astype(np.int8)
    return SignSequence.from_signs(signs)


def gen_gaussian_walk(spec: GeneratorSpec) -> PriceSeries:
    """
    Unit-variance Gaussian random walk starting at 100.

    If the path would reach zero or below, the whole path is translated up
    so its minimum is 1. Steps, and hence return signs, are unchanged.
    """
    _require(spec, Kind.GAUSSIAN_WALK)
    steps = spec.rng().standard_normal(spec.length - 1)
    path = WALK_START + np.concatenate(([0.0], np.cumsum(steps)))
    low = path.min()
    if low <= 0:
        path = path + (1.0 - low)
    return PriceSeries(path)


def generate_signs(spec: GeneratorSpec) -> SignSequence:
    if spec.kind is Kind.IID:
        return gen_iid_signs(spec)
    if spec.kind is Kind.MARKOV:
        return gen_markov_signs(spec)
    return compute_signs(gen_gaussian_walk(spec))


def price_proxy(signs: SignSequence) -> PriceSeries:
    """
    Integer price path whose one-step return signs are exactly ``signs``.

    The path is the running sum of signs, shifted so its minimum is 1.
    """
    path = np.concatenate(([0], np.cumsum(signs.signs, dtype=np.int64)))
    return PriceSeries((path - path.min() + 1).astype(np.float64))


def generate_series(spec: GeneratorSpec) -> PriceSeries:
    if spec.kind is Kind.GAUSSIAN_WALK:
        return gen_gaussian_walk(spec)
    return price_proxy(generate_signs(spec))


def expected_f2_iid(window_len: int, n_bins: int) -> float:
    """Large-sample F2++ for i.i.d. signs: ``(s - 1) / s`` with ``s`` the bin size."""
    require_divisor(window_len, n_bins)
    s = window_len // n_bins
    return (s - 1) / s


def markov_count_variance(s: int, rho: float) -> float:
    """
    Variance of the number of +1 in ``s`` consecutive stationary chain steps.

    With lag correlation ``r = 2 rho - 1`` the variance of the sign sum is
    ``sum_ij r**|i-j|``; the count is ``(s + sum) / 2``.
    """
    r = 2.0 * rho - 1.0
    if r == 0.0:
        return s / 4.0
    total = s * (1 + r) / (1 - r) - 2 * r * (1 - r**s) / (1 - r) ** 2
    return total / 4.0


def expected_f2_markov(window_len: int, n_bins: int, rho: float, mode: str = "PP") -> float:
    """
    Large-sample F2 under the stationary persistent chain.

    Like-sign: ``1 + (Var(n_k) - mu) / mu**2`` with ``mu = s/2``.
    Unlike-sign, using ``n_k- = s - n_k+``: ``1 - Var(n_k) / mu**2``.
    """
    require_divisor(window_len, n_bins)
    s = window_len // n_bins
    var = markov_count_variance(s, rho)
    mu = s / 2.0
    if mode.upper() == "PM":
        return 1.0 - var / mu**2
    return 1.0 + (var - mu) / mu**2
