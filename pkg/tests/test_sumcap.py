import math
from dataclasses import replace

import numpy as np
import pytest

from helpers import STRONG_EXAMPLE, WEAK_EXAMPLE, NOISY_EXAMPLE, dense_genie_oracle, draw_weak, mc_genie_objective
from pimac import (
    ChannelParams,
    SearchConfig,
    cap,
    genie_objective,
    genie_upper_bound,
    noisy_interference_condition,
    snr_sweep,
    sumcap_bracket,
    tin_lower_bound,
)

ZERO_GAINS = ChannelParams(10.0, 10.0, 10.0, 0.0, 0.0, 0.0)


def test_tin_weak_example_value():
    # cap(20/1.4) + cap(10/1.5)
    assert tin_lower_bound(WEAK_EXAMPLE) == pytest.approx(3.4363557598396998, abs=1e-12)


def test_tin_degenerate_cases():
    assert tin_lower_bound(ZERO_GAINS) == cap(20.0) + cap(10.0)
    p = ChannelParams(10.0, 10.0, 0.0, 0.4, 0.3, 0.2)
    assert tin_lower_bound(p) == cap(20.0)


def test_tin_decreasing_in_gain_magnitude():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = draw_weak(rng)
        for field in ("h12", "h22", "h31"):
            bumped = replace(p, **{field: getattr(p, field) * 1.5})
            assert tin_lower_bound(bumped) <= tin_lower_bound(p) + 1e-12


def test_genie_objective_matches_monte_carlo():
    rng = np.random.default_rng(43)
    for seed in range(3):
        rho1, rho2 = rng.uniform(-0.9, 0.9, 2)
        eta1 = rng.uniform(0.2, 0.99) * math.sqrt(1.0 - rho2**2)
        eta2 = rng.uniform(0.2, 0.99) * math.sqrt(1.0 - rho1**2)
        closed = genie_objective(WEAK_EXAMPLE, rho1, rho2, eta1, eta2)
        sampled = mc_genie_objective(
            WEAK_EXAMPLE, rho1, rho2, eta1, eta2, n_samples=400_000, seed=seed
        )
        assert closed == pytest.approx(sampled, abs=2e-2)


def test_genie_objective_first_term_vanishes_without_mac_power():
    p = ChannelParams(0.0, 0.0, 10.0, 1.2, 1.5, 0.7)
    base = genie_objective(p, 0.0, 0.3, 0.9, 0.5)
    for rho1, eta1 in [(-0.8, 0.1), (0.5, 0.59), (0.0, 0.2)]:
        assert genie_objective(p, rho1, 0.3, eta1, 0.5) == pytest.approx(base, abs=1e-12)


def test_genie_objective_decoupled_channels():
    p = ChannelParams(10.0, 10.0, 10.0, 0.0, 0.0, 0.0)
    value = genie_objective(p, 0.0, 0.0, 1.0, 1.0)
    assert value == pytest.approx(cap(20.0) + cap(10.0), abs=1e-12)


def test_genie_objective_domain_errors():
    with pytest.raises(ValueError):
        genie_objective(WEAK_EXAMPLE, 1.5, 0.0, 0.1, 0.1)
    with pytest.raises(ValueError):
        genie_objective(WEAK_EXAMPLE, 1.0, 0.0, 0.0, 0.1)  # eta1 = 0 with |rho1| = 1
    with pytest.raises(ValueError):
        genie_objective(WEAK_EXAMPLE, 0.0, 0.8, 0.9, 0.1)  # eta1^2 > 1 - rho2^2


def test_genie_objective_noiseless_genie_diverges():
    assert genie_objective(WEAK_EXAMPLE, 0.0, 0.0, 0.0, 0.5) == math.inf
    assert genie_objective(WEAK_EXAMPLE, 0.0, 0.0, 0.5, 0.0) == math.inf
    # with no signal through the genie the S-less value is finite and exact
    p = ChannelParams(10.0, 10.0, 10.0, 0.0, 0.0, 0.0)
    assert genie_objective(p, 0.0, 0.0, 0.0, 0.0) == pytest.approx(
        cap(20.0) + cap(10.0), abs=1e-12
    )


def test_genie_objective_continuous_at_constraint_boundary():
    rho2 = 0.6
    ceiling = math.sqrt(1.0 - rho2**2)
    at = genie_objective(WEAK_EXAMPLE, 0.2, rho2, ceiling, 0.4)
    for eps in (1e-6, 1e-9):
        near = genie_objective(WEAK_EXAMPLE, 0.2, rho2, ceiling - eps, 0.4)
        assert near == pytest.approx(at, abs=1e-4)


def test_genie_upper_bound_zero_power():
    p = ChannelParams(0.0, 0.0, 0.0, 0.2, 0.1, 0.2)
    assert genie_upper_bound(p).value == pytest.approx(0.0, abs=1e-12)


def test_genie_upper_bound_point_is_feasible_and_consistent():
    point = genie_upper_bound(WEAK_EXAMPLE)
    assert abs(point.rho1) <= 1.0 and abs(point.rho2) <= 1.0
    assert point.eta1**2 <= 1.0 - point.rho2**2 + 1e-12
    assert point.eta2**2 <= 1.0 - point.rho1**2 + 1e-12
    assert genie_objective(WEAK_EXAMPLE, point.rho1, point.rho2, point.eta1, point.eta2) == pytest.approx(
        point.value, abs=1e-12
    )


def test_genie_upper_bound_near_dense_grid_oracle():
    got = genie_upper_bound(WEAK_EXAMPLE).value
    reference = dense_genie_oracle(WEAK_EXAMPLE)
    assert got <= reference + 0.05
    assert got >= reference - 0.05


def test_genie_upper_bound_monotone_in_search_effort():
    coarse = genie_upper_bound(WEAK_EXAMPLE, SearchConfig(n_rho=11, n_eta=5))
    default = genie_upper_bound(WEAK_EXAMPLE)
    fine = genie_upper_bound(WEAK_EXAMPLE, SearchConfig(n_rho=41, n_eta=21))
    assert default.value <= coarse.value + 1e-6
    assert fine.value <= default.value + 1e-6


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(n_rho=1)
    with pytest.raises(ValueError):
        SearchConfig(eta_floor=0.5)
    with pytest.raises(ValueError):
        SearchConfig(init_step=1e-6, min_step=1e-4)


def test_bracket_strong_example_capacity_known():
    bracket = sumcap_bracket(STRONG_EXAMPLE)
    assert bracket.lower == pytest.approx(2.6220629716418647, abs=1e-12)  # cap(36.9)
    assert bracket.upper == pytest.approx(2.6220629716418647, abs=1e-12)
    assert bracket.lower_source == "INNER_BOUND"
    assert bracket.upper_source == "OUTER_REGION"
    assert bracket.gap == pytest.approx(0.0, abs=1e-12)


def test_bracket_weak_example_gap_positive_with_sources():
    bracket = sumcap_bracket(WEAK_EXAMPLE)
    assert bracket.gap > 0.0
    assert bracket.lower_source == "TIN"
    assert bracket.upper_source == "GENIE"
    assert bracket.lower == pytest.approx(tin_lower_bound(WEAK_EXAMPLE), abs=1e-12)


def test_bracket_zero_power():
    p = ChannelParams(0.0, 0.0, 0.0, 0.2, 0.1, 0.2)
    bracket = sumcap_bracket(p)
    assert bracket.lower == pytest.approx(0.0, abs=1e-12)
    assert bracket.upper == pytest.approx(0.0, abs=1e-12)


def test_remark_coincidence():
    assert noisy_interference_condition(NOISY_EXAMPLE) == pytest.approx(0.10375, abs=1e-12)
    assert noisy_interference_condition(WEAK_EXAMPLE) is None  # h12 != h22
    bracket = sumcap_bracket(NOISY_EXAMPLE)
    assert bracket.gap <= 1e-3


def test_sweep_single_point_matches_bracket():
    rows = snr_sweep(WEAK_EXAMPLE, [10.0])
    assert len(rows) == 1
    snr_db, bracket = rows[0]
    assert snr_db == 10.0
    direct = sumcap_bracket(WEAK_EXAMPLE)
    assert bracket.lower == pytest.approx(direct.lower, abs=1e-12)
    assert bracket.upper == pytest.approx(direct.upper, abs=1e-12)


def test_sweep_zero_gains_zero_gap():
    rows = snr_sweep(ZERO_GAINS, [0.0, 10.0, 20.0])
    for _, bracket in rows:
        assert abs(bracket.gap) <= 1e-9


def test_sweep_rejects_bad_grid():
    with pytest.raises(ValueError):
        snr_sweep(WEAK_EXAMPLE, [])
    with pytest.raises(ValueError):
        snr_sweep(WEAK_EXAMPLE, [0.0, math.inf])


def test_bracket_order_randomized_weak_interference():
    rng = np.random.default_rng(47)
    config = SearchConfig(n_rho=11, n_eta=5)  # cheap but still sound
    for _ in range(100):
        p = draw_weak(rng)
        assert tin_lower_bound(p) <= genie_upper_bound(p, config).value + 1e-6
