"""Factorial moments and intermittency scans for return-sign multiplicities."""

__version__ = "0.1.0"

from .series import PricePoint, PriceSeries, SeriesError, SignSequence, compute_signs, parse_csv
from .windowing import BinCounts, Event, EventSet, WindowConfig, bin_multiplicities, partition
from .moments import (
    Mode,
    MomentResult,
    MomentSpec,
    f2_mm,
    f2_pm,
    f2_pp,
    f_q,
    falling_factorial,
    moment,
    moment_scan,
)
from .uncertainty import UncertaintyReport, assess, bootstrap_stat, systematic_offset_scan
from .synth import (
    GeneratorSpec,
    Kind,
    expected_f2_iid,
    expected_f2_markov,
    gen_gaussian_walk,
    gen_iid_signs,
    gen_markov_signs,
)
