import numpy as np
import pytest

from intermittency.moments import f2_pm, f2_pp
from intermittency.series import compute_signs
from intermittency.synth import (
    GeneratorSpec,
    expected_f2_iid,
    expected_f2_markov,
    gen_gaussian_walk,
    gen_iid_signs,
    gen_markov_signs,
    generate_series,
    markov_count_variance,
    price_proxy,
)
from intermittency.uncertainty import bootstrap_stat
from intermittency.windowing import WindowConfig, partition

BINS = (1, 2, 4, 10, 20)


@pytest.mark.parametrize("field,value", [("p_plus", 1.0), ("p_plus", 0.0), ("rho", 1.0), ("rho", 0.0), ("length", 0)])
def test_spec_bounds(field, value):
    with pytest.raises(ValueError):
        GeneratorSpec("iid", **{field: value})


def test_wrong_kind_rejected():
    with pytest.raises(ValueError):
        gen_markov_signs(GeneratorSpec("iid", 10))
    with pytest.raises(ValueError):
        GeneratorSpec("garch")


def test_iid_fraction_and_determinism():
    spec = GeneratorSpec("iid", 1_000_000, p_plus=0.5, seed=5)
    s = gen_iid_signs(spec)
    assert set(np.unique(s.signs)) == {-1, 1}
    # 3 sigma binomial bound is 0.0015
    assert abs(np.mean(s.signs == 1) - 0.5) < 0.002
    assert gen_iid_signs(spec) == s
    assert gen_iid_signs(GeneratorSpec("iid", 1000, seed=6)) != gen_iid_signs(GeneratorSpec("iid", 1000, seed=7))


def test_markov_stay_frequency():
    s = gen_markov_signs(GeneratorSpec("markov", 1_000_000, rho=0.9, seed=2)).signs
    stays = np.mean(s[1:] == s[:-1])
    sigma = np.sqrt(0.9 * 0.1 / (s.size - 1))
    assert abs(stays - 0.9) < 3 * sigma
    assert gen_markov_signs(GeneratorSpec("markov", 5000, rho=0.9, seed=2)).signs.tolist() == s[:5000].tolist()


def test_markov_half_matches_iid_moments():
    a = partition(gen_markov_signs(GeneratorSpec("markov", 688_000, rho=0.5, seed=1)), WindowConfig(200))
    b = partition(gen_iid_signs(GeneratorSpec("iid", 688_000, seed=2)), WindowConfig(200))
    for n_bins in BINS:
        fa, fb = f2_pp(a, n_bins).value, f2_pp(b, n_bins).value
        se = np.hypot(bootstrap_stat(a, n_bins, seed=1), bootstrap_stat(b, n_bins, seed=1))
        assert abs(fa - fb) < 4 * se


def test_markov_variance_closed_form_by_enumeration():
    # exact enumeration over all 2**s paths of the stationary chain
    import itertools

    for s, rho in ((1, 0.7), (4, 0.6), (7, 0.3), (10, 0.85)):
        mean = var = 0.0
        for path in itertools.product((1, -1), repeat=s):
            p = 0.5
            for a, b in zip(path, path[1:]):
                p *= rho if a == b else 1 - rho
            n = path.count(1)
            mean += p * n
            var += p * n * n
        assert markov_count_variance(s, rho) == pytest.approx(var - mean**2, rel=1e-12)


@pytest.mark.parametrize("rho", [0.6, 0.8, 0.4])
def test_markov_f2_matches_analytic(rho):
    events = partition(gen_markov_signs(GeneratorSpec("markov", 688_000, rho=rho, seed=13)), WindowConfig(200))
    for n_bins in BINS:
        for mode, fn in (("PP", f2_pp), ("PM", f2_pm)):
            got = fn(events, n_bins).value
            se = bootstrap_stat(events, n_bins, mode, seed=13)
            assert abs(got - expected_f2_markov(200, n_bins, rho, mode)) < 4 * se


def test_markov_shape_depends_on_persistence():
    # like-sign F2 = 1 + (g(s) - 2)/s with g the count-variance inflation;
    # it rises with n_bins only when g exceeds 2, i.e. rho > 2/3
    weak = [expected_f2_markov(200, b, 0.6) for b in BINS]
    strong = [expected_f2_markov(200, b, 0.8) for b in BINS]
    assert all(x > y for x, y in zip(weak, weak[1:]))
    assert all(x < y for x, y in zip(strong, strong[1:]))
    events = partition(gen_markov_signs(GeneratorSpec("markov", 688_000, rho=0.8, seed=3)), WindowConfig(200))
    vals = [f2_pp(events, b).value for b in BINS]
    assert all(x < y for x, y in zip(vals, vals[1:]))


def test_persistent_chain_exceeds_iid_baseline():
    events = partition(gen_markov_signs(GeneratorSpec("markov", 10_000 * 200, rho=0.6, seed=8)), WindowConfig(200))
    for n_bins in BINS[1:]:
        got = f2_pp(events, n_bins).value
        se = bootstrap_stat(events, n_bins, seed=8)
        assert got - expected_f2_iid(200, n_bins) > 3 * se


def test_gaussian_walk_shape_and_symmetry():
    short = gen_gaussian_walk(GeneratorSpec("gaussian-walk", 2, seed=0))
    assert len(short) == 2 and short.prices[0] == 100.0
    assert compute_signs(short).signs[0] in (-1, 0, 1)
    walk = gen_gaussian_walk(GeneratorSpec("gaussian-walk", 1_000_001, seed=1))
    assert np.all(walk.prices > 0)
    s = compute_signs(walk).signs
    sigma = np.sqrt(0.25 / s.size)
    assert abs(np.mean(s == 1) - 0.5) < 3 * sigma


def test_gaussian_walk_pipeline_matches_iid_baseline():
    walk = gen_gaussian_walk(GeneratorSpec("gaussian-walk", 688_001, seed=21))
    events = partition(compute_signs(walk), WindowConfig(200))
    assert events.n_events == 3440
    for n_bins in BINS:
        got = f2_pp(events, n_bins).value
        assert abs(got - expected_f2_iid(200, n_bins)) < 3 * bootstrap_stat(events, n_bins, seed=21)


def test_expected_f2_iid():
    assert expected_f2_iid(200, 1) == 0.995
    assert expected_f2_iid(200, 20) == 0.9
    assert expected_f2_iid(1, 1) == 0.0
    with pytest.raises(ValueError):
        expected_f2_iid(200, 3)


@pytest.mark.parametrize("kind", ["iid", "markov"])
def test_price_proxy_round_trip(kind):
    s = gen_markov_signs(GeneratorSpec("markov", 5000, rho=0.9, seed=4)) if kind == "markov" else gen_iid_signs(GeneratorSpec("iid", 5000, seed=4))
    series = price_proxy(s)
    assert len(series) == len(s) + 1
    assert series.prices.min() == 1.0
    assert compute_signs(series) == s
    assert generate_series(GeneratorSpec(kind, 5000, rho=0.9, seed=4)) == series
