"""Quantile estimators, hybrid-ARQ simulation, and determinism guarantees."""

import math

import numpy as np
import pytest

from outagecap.analytic import (cc_expected_rounds, cc_initial_rate,
                                outage_capacity_miso)
from outagecap.channel import RngStream, SnrPoint
from outagecap.montecarlo import (HarqTrace, McConfig, McEstimate,
                                  PrecisionError, estimate_ir_expected_rounds,
                                  estimate_ir_initial_rate,
                                  estimate_tf_outage_capacity, ir_throughput,
                                  iter_harq_traces, simulate_harq_protocol)

MC = McConfig(n_samples=200_000, seed=42)
P10 = SnrPoint.from_db(10.0)
P20 = SnrPoint.from_db(20.0)


def test_config_validation():
    with pytest.raises(ValueError):
        McConfig(n_samples=0)
    with pytest.raises(ValueError):
        McConfig(chunk_size=0)
    with pytest.raises(ValueError):
        McConfig(seed="seven")
    with pytest.raises(ValueError):
        McEstimate(value=math.nan, std_error=0.0, n_samples=1, seed=0)
    with pytest.raises(ValueError):
        McEstimate(value=1.0, std_error=-1.0, n_samples=1, seed=0)
    with pytest.raises(ValueError):
        HarqTrace(rounds_used=0, decoded=True, final_mutual_info=1.0)


def test_tail_feasibility_guards():
    with pytest.raises(ValueError):
        estimate_tf_outage_capacity(P10, 1, 0.01, McConfig(n_samples=5_000))
    with pytest.raises(PrecisionError):
        estimate_tf_outage_capacity(P10, 1, 0.002, McConfig(n_samples=20_000))


def test_tf_matches_closed_form_single_block():
    est = estimate_tf_outage_capacity(P10, 1, 0.01, MC)
    want = outage_capacity_miso(P10, 0.01, 1)
    assert est.std_error > 0.0
    assert abs(est.value - want) < 3.0 * est.std_error
    assert est.n_samples == MC.n_samples and est.seed == MC.seed


def test_quantile_moves_with_eps():
    lo = estimate_tf_outage_capacity(P10, 2, 0.01, MC)
    hi = estimate_tf_outage_capacity(P10, 2, 0.99, MC)
    assert hi.value > lo.value


def test_deterministic_across_workers_and_runs():
    a = estimate_tf_outage_capacity(P20, 3, 0.05, MC, workers=1)
    b = estimate_tf_outage_capacity(P20, 3, 0.05, MC, workers=8)
    c = estimate_tf_outage_capacity(P20, 3, 0.05, MC, workers=1)
    assert (a.value, a.std_error) == (b.value, b.std_error)
    assert (a.value, a.std_error) == (c.value, c.std_error)


def test_chunk_remainder_covers_all_samples():
    mc = McConfig(n_samples=100_001, seed=9, chunk_size=1 << 14)
    est = estimate_tf_outage_capacity(P10, 1, 0.05, mc)
    assert est.n_samples == 100_001


def test_ir_rate_is_scaled_tf_quantile_on_shared_draws():
    rate = estimate_ir_initial_rate(P10, 3, 0.01, MC)
    tf = estimate_tf_outage_capacity(P10, 3, 0.01, MC)
    assert rate.value == pytest.approx(3.0 * tf.value, rel=1e-12)


def test_ir_rate_agrees_with_bigger_rerun():
    a = estimate_ir_initial_rate(P20, 2, 0.01, McConfig(n_samples=1_000_000, seed=1))
    b = estimate_ir_initial_rate(P20, 2, 0.01, McConfig(n_samples=10_000_000, seed=2))
    sigma = math.hypot(a.std_error, b.std_error)
    assert abs(a.value - b.value) < 3.0 * sigma


def test_expected_rounds_edges():
    one = estimate_ir_expected_rounds(1.5, P10, 1, MC)
    assert (one.value, one.std_error) == (1.0, 0.0)
    zero = estimate_ir_expected_rounds(0.0, P10, 4, MC)
    assert (zero.value, zero.std_error) == (1.0, 0.0)
    with pytest.raises(ValueError):
        estimate_ir_expected_rounds(-0.5, P10, 2, MC)


def test_expected_rounds_rise_with_power_at_quantile_rate():
    # the L-round service rate outpaces one round's capacity as P grows,
    # so early stopping gets rarer and E[X] climbs toward L
    vals = {}
    for db in (10.0, 40.0):
        snr = SnrPoint.from_db(db)
        r = estimate_ir_initial_rate(snr, 2, 0.01, MC)
        e = estimate_ir_expected_rounds(r.value, snr, 2, MC)
        assert 1.0 <= e.value <= 2.0
        vals[db] = e.value
    assert vals[40.0] > vals[10.0]


def test_throughput_identity_on_shared_draws():
    eta = ir_throughput(P10, 2, 0.01, MC)
    rate = estimate_ir_initial_rate(P10, 2, 0.01, MC)
    rounds = estimate_ir_expected_rounds(rate.value, P10, 2, MC)
    assert eta.value == rate.value / rounds.value
    assert eta.std_error >= rate.std_error / rounds.value


def test_throughput_single_round_matches_outage_capacity():
    eta = ir_throughput(P20, 1, 0.01, McConfig(n_samples=1_000_000, seed=3))
    want = outage_capacity_miso(P20, 0.01, 1)
    assert abs(eta.value - want) < 3.0 * eta.std_error


def test_simulated_outage_hits_target_at_closed_form_rate():
    r = outage_capacity_miso(P20, 0.01, 1)
    out, rounds, _ = simulate_harq_protocol("ir", r, P20, 1,
                                            McConfig(n_samples=1_000_000, seed=4))
    assert abs(out.value - 0.01) < 3.0 * out.std_error
    assert rounds.value == 1.0


def test_simulated_long_run_rate_consistency():
    r = 2.5
    out, rounds, eta = simulate_harq_protocol("ir", r, P10, 3, MC)
    assert eta.value == pytest.approx(r / rounds.value, rel=1e-12)
    assert 0.0 <= out.value <= 1.0
    assert 1.0 <= rounds.value <= 3.0


def test_simulated_cc_rounds_match_survivor_sum():
    r = cc_initial_rate(P10, 0.05, 4)
    _, rounds, _ = simulate_harq_protocol("cc", r, P10, 4,
                                          McConfig(n_samples=1_000_000, seed=5))
    want = cc_expected_rounds(r, P10, 4)
    assert abs(rounds.value - want) < 3.0 * rounds.std_error


def test_simulation_validation():
    with pytest.raises(ValueError):
        simulate_harq_protocol("rr", 1.0, P10, 2, MC)
    with pytest.raises(ValueError):
        simulate_harq_protocol("ir", 0.0, P10, 2, MC)
    with pytest.raises(ValueError):
        simulate_harq_protocol("ir", 1.0, P10, 0, MC)


def test_ir_dominates_cc_per_draw():
    # information combining can never fall below energy combining on the
    # same gains; check every prefix of a large shared batch
    g = np.maximum(np.random.default_rng(7).exponential(size=(100_000, 4)), 0.0)
    p = P10.p_linear
    acc_ir = np.cumsum(np.log1p(p * g), axis=1)
    acc_cc = np.log1p(p * np.cumsum(g, axis=1))
    assert np.all(acc_ir >= acc_cc - 1e-12)


def test_traces_match_protocol_rules():
    r = 2.0
    traces = list(iter_harq_traces("ir", r, P10, 3, RngStream(seed=6), 5_000))
    assert len(traces) == 5_000
    for t in traces:
        assert 1 <= t.rounds_used <= 3
        if t.decoded:
            assert t.final_mutual_info > r
        else:
            assert t.rounds_used == 3
            assert t.final_mutual_info <= r
    assert any(t.decoded for t in traces)
    assert any(not t.decoded for t in traces)


def test_traces_batches_are_not_replays():
    # one stream must keep advancing across internal batches
    traces = list(iter_harq_traces("ir", 2.0, P10, 2, RngStream(seed=8), 10_000))
    first = [t.final_mutual_info for t in traces[:8192]]
    rest = [t.final_mutual_info for t in traces[8192:]]
    assert not np.array_equal(first[: len(rest)], rest)


def test_se_shrinks_with_sample_size():
    small = estimate_tf_outage_capacity(P10, 1, 0.05, McConfig(n_samples=50_000, seed=10))
    big = estimate_tf_outage_capacity(P10, 1, 0.05, McConfig(n_samples=800_000, seed=10))
    assert big.std_error < small.std_error
