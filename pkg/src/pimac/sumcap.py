"""Sum-capacity bracketing: genie-aided upper bound and TIN lower bound.

The upper bound gives each receiver a noisy linear observation of the
signals it does not decode (receiver 1 sees h12*X1 + h22*X2 + eta1*W1,
receiver 2 sees h31*X3 + eta2*W2, with E[W_i Z_i] = rho_i) and evaluates the
resulting pair of Gaussian mutual informations in closed form.  Any feasible
(rho1, rho2, eta1, eta2) yields a valid upper bound, so the minimizer only
has to be sound, not exact: a coarse grid plus coordinate descent.  The
feasible set couples crosswise, eta1^2 <= 1 - rho2^2 and eta2^2 <= 1 - rho1^2.

The lower bound is Gaussian signaling with interference treated as noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .backend import kernel
from .bounds import InternalConsistencyError, inner_bound, outer_bound
from .model import ChannelParams, cap
from .regions import max_weighted_sum

#: Genie parameters below this floor are excluded from the search: at
#: eta_i = 0 the genie signal becomes noiseless and the objective diverges
#: (unless its gains vanish), so the minimum never sits there.
ETA_FLOOR = 1e-6

#: |rho| is capped so the crosswise eta interval keeps room above the floor.
RHO_CAP = 0.9999


@dataclass(frozen=True)
class GeniePoint:
    """Genie correlations/amplitudes and the upper-bound value they certify."""

    rho1: float
    rho2: float
    eta1: float
    eta2: float
    value: float


@dataclass(frozen=True)
class SearchConfig:
    """Budget of the upper-bound minimizer.

    n_rho points per rho axis and n_eta per eta axis in the coarse grid,
    then coordinate descent with step halving from init_step down to
    min_step, capped at max_evals objective evaluations.
    """

    n_rho: int = 21
    n_eta: int = 11
    init_step: float = 0.05
    min_step: float = 1e-4
    max_evals: int = 10_000
    eta_floor: float = ETA_FLOOR
    rho_cap: float = RHO_CAP

    def __post_init__(self):
        if self.n_rho < 2 or self.n_eta < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if not 0.0 < self.eta_floor <= 0.01:
            raise ValueError("eta_floor must lie in (0, 0.01]")
        if not 0.0 < self.rho_cap <= math.sqrt(1.0 - self.eta_floor**2):
            raise ValueError("rho_cap leaves no room for eta above its floor")
        if self.min_step <= 0 or self.init_step < self.min_step:
            raise ValueError("need init_step >= min_step > 0")


DEFAULT_SEARCH = SearchConfig()


@dataclass(frozen=True)
class SumCapBracket:
    """Best lower/upper sum-rate bounds with provenance.

    lower_source is 'TIN' or 'INNER_BOUND'; upper_source is 'GENIE' or
    'OUTER_REGION'.  The individual candidates are kept for reporting.
    """

    lower: float
    upper: float
    gap: float
    lower_source: str
    upper_source: str
    tin: float
    inner_sum: float
    outer_sum: float
    genie: GeniePoint


def _term1(p: ChannelParams, rho1: float, eta1: float) -> float:
    # I(X1,X2; Y1,S1); eta1 = 0 handled by the caller
    sp1 = p.h12 * p.h12 * p.p1 + p.h22 * p.h22 * p.p2
    sp2 = p.h31 * p.h31 * p.p3
    vy1 = p.p1 + p.p2 + sp2 + 1.0
    vs1 = sp1 + eta1 * eta1
    c1 = p.h12 * p.p1 + p.h22 * p.p2 + eta1 * rho1
    det_b = eta1 * eta1 * (sp2 + 1.0 - rho1 * rho1)
    if det_b <= 0.0:
        return math.inf
    return 0.5 * math.log2((vy1 * vs1 - c1 * c1) / det_b)


def _term2(p: ChannelParams, rho2: float, eta2: float) -> float:
    # I(X3; Y2,S2); eta2 = 0 handled by the caller
    sp1 = p.h12 * p.h12 * p.p1 + p.h22 * p.h22 * p.p2
    sp2 = p.h31 * p.h31 * p.p3
    vy2 = sp1 + p.p3 + 1.0
    vs2 = sp2 + eta2 * eta2
    c2 = p.h31 * p.p3 + eta2 * rho2
    det_b = eta2 * eta2 * (sp1 + 1.0 - rho2 * rho2)
    if det_b <= 0.0:
        return math.inf
    return 0.5 * math.log2((vy2 * vs2 - c2 * c2) / det_b)


def genie_objective(
    params: ChannelParams,
    rho1: float,
    rho2: float,
    eta1: float,
    eta2: float,
) -> float:
    """Closed-form genie-aided mutual-information sum at one genie point.

    Evaluates I(X1,X2; Y1,S1) + I(X3; Y2,S2) with all inputs Gaussian at
    full power, via 2x2 covariance determinants.  With eta_i = 0 the genie
    signal is noiseless and the term diverges, unless its gains vanish too,
    in which case S_i carries nothing and the term reduces to the plain
    I(X; Y) of the channel alone.

    Raises ValueError for |rho_i| > 1, for eta_i = 0 together with
    |rho_i| = 1, and for (eta, rho) outside the crosswise feasible set.
    """
    if abs(rho1) > 1.0 or abs(rho2) > 1.0:
        raise ValueError(f"correlations must satisfy |rho| <= 1, got {rho1!r}, {rho2!r}")
    if (eta1 == 0.0 and abs(rho1) == 1.0) or (eta2 == 0.0 and abs(rho2) == 1.0):
        raise ValueError("eta_i = 0 with |rho_i| = 1 makes the conditional covariance singular")
    guard = 1e-12
    if eta1 * eta1 > 1.0 - rho2 * rho2 + guard:
        raise ValueError(f"infeasible genie point: eta1^2 = {eta1 * eta1!r} exceeds 1 - rho2^2")
    if eta2 * eta2 > 1.0 - rho1 * rho1 + guard:
        raise ValueError(f"infeasible genie point: eta2^2 = {eta2 * eta2!r} exceeds 1 - rho1^2")

    p = params
    if eta1 != 0.0 and eta2 != 0.0:
        return kernel.objective(p.p1, p.p2, p.p3, p.h12, p.h22, p.h31, rho1, rho2, eta1, eta2)

    sp1 = p.h12 * p.h12 * p.p1 + p.h22 * p.h22 * p.p2
    sp2 = p.h31 * p.h31 * p.p3
    if eta1 == 0.0:
        if sp1 > 0.0:
            return math.inf
        term1 = 0.5 * math.log2((p.p1 + p.p2 + sp2 + 1.0) / (sp2 + 1.0))
    else:
        term1 = _term1(p, rho1, eta1)
    if eta2 == 0.0:
        if sp2 > 0.0:
            return math.inf
        term2 = 0.5 * math.log2((sp1 + p.p3 + 1.0) / (sp1 + 1.0))
    else:
        term2 = _term2(p, rho2, eta2)
    return term1 + term2


def genie_upper_bound(
    params: ChannelParams, config: SearchConfig = DEFAULT_SEARCH
) -> GeniePoint:
    """Best found genie point; its value upper-bounds the sum capacity.

    Coarse grid scan followed by coordinate descent from the best cell.
    Because every feasible point certifies a bound, the search can stay
    cheap; more effort only tightens the result.
    """
    p = params
    rho_grid = np.ascontiguousarray(
        np.clip(np.linspace(-1.0, 1.0, config.n_rho), -config.rho_cap, config.rho_cap)
    )
    g_val, g_r1, g_r2, g_e1, g_e2, _ = kernel.grid_scan(
        p.p1, p.p2, p.p3, p.h12, p.h22, p.h31,
        rho_grid, config.n_eta, config.eta_floor,
    )
    d_val, r1, r2, e1, e2, _ = kernel.coordinate_descent(
        p.p1, p.p2, p.p3, p.h12, p.h22, p.h31,
        g_r1, g_r2, g_e1, g_e2,
        config.init_step, config.min_step, config.max_evals,
        config.eta_floor, config.rho_cap,
    )
    if d_val <= g_val:
        return GeniePoint(r1, r2, e1, e2, d_val)
    return GeniePoint(g_r1, g_r2, g_e1, g_e2, g_val)


def tin_lower_bound(params: ChannelParams) -> float:
    """Achievable sum rate with Gaussian codes, interference treated as noise."""
    p = params
    mac_snr = (p.p1 + p.p2) / (1.0 + p.h31 * p.h31 * p.p3)
    p2p_snr = p.p3 / (1.0 + p.h12 * p.h12 * p.p1 + p.h22 * p.h22 * p.p2)
    return cap(mac_snr) + cap(p2p_snr)


def sumcap_bracket(
    params: ChannelParams,
    config: SearchConfig = DEFAULT_SEARCH,
    tol: float = 1e-9,
) -> SumCapBracket:
    """Best available sum-rate bracket with provenance of both ends."""
    tin = tin_lower_bound(params)
    inner_sum = max_weighted_sum(inner_bound(params), (1.0, 1.0, 1.0))
    genie = genie_upper_bound(params, config)
    outer_sum = max_weighted_sum(outer_bound(params), (1.0, 1.0, 1.0))

    if tin > inner_sum:
        lower, lower_source = tin, "TIN"
    else:
        lower, lower_source = inner_sum, "INNER_BOUND"
    if genie.value < outer_sum:
        upper, upper_source = genie.value, "GENIE"
    else:
        upper, upper_source = outer_sum, "OUTER_REGION"

    if lower > upper + tol:
        raise InternalConsistencyError(
            f"sum-rate bracket inverted: lower {lower} ({lower_source}) exceeds "
            f"upper {upper} ({upper_source})"
        )
    return SumCapBracket(
        lower, upper, upper - lower, lower_source, upper_source,
        tin, inner_sum, outer_sum, genie,
    )


def snr_sweep(
    base: ChannelParams,
    snr_db_grid: Sequence[float],
    config: SearchConfig = DEFAULT_SEARCH,
) -> list[tuple[float, SumCapBracket]]:
    """Sum-rate bracket along an SNR grid with P1 = P2 = P3 = 10^(snr/10).

    Gains are taken from ``base``; rows follow the grid order.
    """
    grid = list(snr_db_grid)
    if not grid:
        raise ValueError("snr grid must be nonempty")
    if any(not math.isfinite(x) for x in grid):
        raise ValueError("snr grid must be finite")
    rows = []
    for snr_db in grid:
        power = 10.0 ** (snr_db / 10.0)
        params = replace(base, p1=power, p2=power, p3=power)
        rows.append((snr_db, sumcap_bracket(params, config)))
    return rows


def noisy_interference_condition(params: ChannelParams) -> Optional[float]:
    """Value of the weak-interference coincidence condition, or None.

    Defined for the symmetric case h12 = h22 = h: when
    |h|(1 + h31^2 P3) + |h31|(1 + h^2 (P1 + P2)) <= 1 the genie upper bound
    matches treating interference as noise; the returned value is that left
    side (<= 1 means the condition holds).
    """
    if params.h12 != params.h22:
        return None
    h = abs(params.h12)
    h31 = abs(params.h31)
    return h * (1.0 + h31 * h31 * params.p3) + h31 * (
        1.0 + params.h12 * params.h12 * (params.p1 + params.p2)
    )
