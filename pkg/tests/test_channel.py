"""Fading model statistics, SNR containers, and stream reproducibility."""

import math

import numpy as np
import pytest

from outagecap.channel import (FadingDraw, RngStream, SnrPoint,
                               accumulated_mi_prefixes,
                               accumulated_snr_mi_prefixes, block_mutual_info,
                               sample_draw, sample_gains)


def test_snr_point_conversions():
    p = SnrPoint.from_db(20.0)
    assert p.p_linear == pytest.approx(100.0, rel=1e-12)
    q = SnrPoint.from_linear(100.0)
    assert q.p_db == pytest.approx(20.0, abs=1e-12)
    z = SnrPoint.from_db(0.0)
    assert z.p_linear == 1.0


def test_snr_point_validation():
    with pytest.raises(ValueError):
        SnrPoint(p_linear=100.0, p_db=10.0)    # inconsistent pair
    with pytest.raises(ValueError):
        SnrPoint.from_linear(0.0)
    with pytest.raises(ValueError):
        SnrPoint.from_linear(-1.0)
    with pytest.raises(ValueError):
        SnrPoint.from_db(math.nan)


def test_fading_draw_validation():
    d = FadingDraw(gains=np.array([0.5, 1.5]))
    assert d.n_blocks == 2
    assert not d.gains.flags.writeable
    with pytest.raises(ValueError):
        FadingDraw(gains=np.array([[1.0]]))
    with pytest.raises(ValueError):
        FadingDraw(gains=np.array([-0.1]))
    with pytest.raises(ValueError):
        FadingDraw(gains=np.array([math.inf]))


def test_streams_reproducible_and_distinct():
    a = sample_gains(RngStream(seed=7, stream_id=3), 1000, 2)
    b = sample_gains(RngStream(seed=7, stream_id=3), 1000, 2)
    c = sample_gains(RngStream(seed=7, stream_id=4), 1000, 2)
    d = sample_gains(RngStream(seed=8, stream_id=3), 1000, 2)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert a.shape == (1000, 2)


def test_gain_moments():
    g = sample_gains(RngStream(seed=11), 1_000_000, 1).ravel()
    assert np.all(np.isfinite(g)) and np.all(g >= 0.0)
    assert g.mean() == pytest.approx(1.0, abs=0.004)       # 3 sigma at 1e6
    assert g.var() == pytest.approx(1.0, abs=0.01)


def test_deep_fade_probability():
    # P[g < x] = 1 - exp(-x); at the 1% point of the unit-mean exponential
    x = -math.log1p(-0.01)
    hits = 0
    total = 10_000_000
    for j in range(10):
        g = sample_gains(RngStream(seed=5, stream_id=j), total // 10, 1)
        hits += int(np.count_nonzero(g < x))
    assert hits / total == pytest.approx(0.01, abs=1e-4)


def test_empirical_cdf_close_to_exponential():
    n = 1_000_000
    g = np.sort(sample_gains(RngStream(seed=3), n, 1).ravel())
    f = -np.expm1(-g)
    i = np.arange(1, n + 1)
    ks = max(np.max(f - (i - 1) / n), np.max(i / n - f))
    assert ks < 1.63 / math.sqrt(n)


def test_block_mutual_info_values():
    snr = SnrPoint.from_linear(1.0)
    assert block_mutual_info(FadingDraw(gains=np.zeros(2)), snr) == 0.0
    assert block_mutual_info(FadingDraw(gains=np.ones(1)), snr) == pytest.approx(1.0, rel=1e-15)
    d = FadingDraw(gains=np.array([1.0, 3.0]))
    assert block_mutual_info(d, snr) == pytest.approx(1.5, rel=1e-15)


def test_prefix_accumulations():
    snr = SnrPoint.from_linear(1.0)
    d = FadingDraw(gains=np.array([1.0, 3.0]))
    mi = accumulated_mi_prefixes(d, snr)
    assert mi == pytest.approx([1.0, 3.0], rel=1e-15)
    comb = accumulated_snr_mi_prefixes(d, snr)
    assert comb == pytest.approx([1.0, math.log2(5.0)], rel=1e-15)


def test_prefix_orderings_hold_per_draw():
    snr = SnrPoint.from_db(10.0)
    rows = sample_gains(RngStream(seed=21), 20_000, 4)
    p = snr.p_linear
    acc_sep = np.cumsum(np.log1p(p * rows), axis=1) / math.log(2.0)
    acc_comb = np.log1p(p * np.cumsum(rows, axis=1)) / math.log(2.0)
    # separate decoding of each block is worth at least combined-energy decoding
    assert np.all(acc_sep >= acc_comb - 1e-12)
    # per-block average is bounded by the capacity of the averaged gain
    avg = acc_sep / np.arange(1, 5)
    bound = np.log2(1.0 + p * np.cumsum(rows, axis=1) / np.arange(1, 5))
    assert np.all(avg <= bound + 1e-12)


def test_sample_draw_single():
    d = sample_draw(RngStream(seed=1), 3)
    assert isinstance(d, FadingDraw)
    assert d.n_blocks == 3
    assert np.all(d.gains >= 0.0)


def test_sample_gains_validation():
    with pytest.raises(ValueError):
        sample_gains(RngStream(seed=0), 0, 1)
    with pytest.raises(ValueError):
        sample_gains(RngStream(seed=0), 10, 0)
