"""Capacity-region bounds and interference-regime classification.

The outer bound intersects the always-valid point-to-point and 2-user MAC
constraints with the receiver-swap MAC regions that become valid once the
corresponding cross gain reaches unit magnitude.  The inner bound lets both
receivers decode everything, i.e. intersects the two full 3-transmitter MAC
regions; its per-subset bounds are the min of the two receivers' bounds.

When the channel falls into one of the strong / very-strong interference
regimes the bounds collapse and the exact capacity region is known; the
classifier reports every satisfied regime together with the signed slack of
each defining inequality.  Conditions are compared with plain non-strict
``>=`` and no epsilon: boundary cases are meant to qualify.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from typing import Optional

from .model import ChannelParams, cap
from .regions import (
    FEAS_TOL,
    RateConstraint,
    RatePolytope,
    intersect,
    mac_region,
    region_equal,
)


class InternalConsistencyError(RuntimeError):
    """Cross-checks that must agree (exact-capacity constructions, bracket
    order) disagreed beyond tolerance; indicates an implementation bug."""


class Regime(enum.Enum):
    STRONG_CAPACITY = "STRONG_CAPACITY"
    VSI_TX1 = "VSI_TX1"
    VSI_TX2 = "VSI_TX2"
    VSI_TX3 = "VSI_TX3"
    FULL_VSI = "FULL_VSI"
    UNCLASSIFIED = "UNCLASSIFIED"


#: Regimes that come with an exact capacity region, most specific first.
#: When several hold simultaneously their constructions describe the same
#: region; the first satisfied one supplies the returned constraint list.
CAPACITY_PRIORITY = (
    Regime.FULL_VSI,
    Regime.VSI_TX3,
    Regime.VSI_TX1,
    Regime.VSI_TX2,
    Regime.STRONG_CAPACITY,
)


@dataclass(frozen=True)
class RegimeReport:
    """Classification result: satisfied regimes plus per-condition margins.

    ``margins`` maps each capacity regime to named signed slacks (condition
    left side minus right side); a regime is satisfied iff all its margins
    are >= 0.  ``satisfied`` contains UNCLASSIFIED exactly when no capacity
    regime holds.  ``capacity_regime`` is the construction capacity_region
    would return, None when unclassified.
    """

    params: ChannelParams
    margins: dict[Regime, dict[str, float]]
    satisfied: frozenset[Regime]
    capacity_regime: Optional[Regime]

    @property
    def unclassified(self) -> bool:
        return Regime.UNCLASSIFIED in self.satisfied

    @property
    def capacity_available(self) -> bool:
        return self.capacity_regime is not None


def regime_margins(params: ChannelParams) -> dict[Regime, dict[str, float]]:
    """Signed slack of every regime-defining inequality."""
    p1, p2, p3 = params.p1, params.p2, params.p3
    g12 = params.h12 * params.h12
    g22 = params.h22 * params.h22
    g31 = params.h31 * params.h31
    return {
        Regime.STRONG_CAPACITY: {
            "h12_sq_ge_1": g12 - 1.0,
            "h22_sq_ge_1": g22 - 1.0,
            "h31_sq_ge_1": g31 - 1.0,
            "rx2_sum_snr_ge_rx1": (g12 * p1 + g22 * p2 + p3) - (p1 + p2 + g31 * p3),
        },
        Regime.VSI_TX1: {
            "h12_sq_very_strong": g12 - (1.0 + p3 + g22 * p2),
            "h22_sq_ge_1": g22 - 1.0,
            "h31_sq_ge_1": g31 - 1.0,
        },
        Regime.VSI_TX2: {
            "h22_sq_very_strong": g22 - (1.0 + p3 + g12 * p1),
            "h12_sq_ge_1": g12 - 1.0,
            "h31_sq_ge_1": g31 - 1.0,
        },
        Regime.VSI_TX3: {
            "h12_sq_ge_1": g12 - 1.0,
            "h22_sq_ge_1": g22 - 1.0,
            "h31_sq_very_strong": g31 - (1.0 + p1 + p2),
            "cross_snr_ge_split": (g12 * p1 + g22 * p2) - (p1 + p2) * (1.0 + p3),
        },
        Regime.FULL_VSI: {
            "h12_sq_ge_1_plus_p3": g12 - (1.0 + p3),
            "h22_sq_ge_1_plus_p3": g22 - (1.0 + p3),
            "h31_sq_very_strong": g31 - (1.0 + p1 + p2),
        },
    }


def classify(params: ChannelParams) -> RegimeReport:
    """Evaluate all regime conditions and report satisfied regimes and margins."""
    margins = regime_margins(params)
    satisfied = {
        regime
        for regime, conds in margins.items()
        if all(v >= 0.0 for v in conds.values())
    }
    chosen = next((r for r in CAPACITY_PRIORITY if r in satisfied), None)
    if not satisfied:
        satisfied = {Regime.UNCLASSIFIED}
    return RegimeReport(params, margins, frozenset(satisfied), chosen)


def p2p_region(params: ChannelParams) -> RatePolytope:
    """Interference-free point-to-point bound R3 <= cap(P3)."""
    return RatePolytope.from_constraints([RateConstraint((0, 0, 1), cap(params.p3))])


def outer_bound(params: ChannelParams) -> RatePolytope:
    """Converse region: unconditional bounds plus gain-triggered MAC memberships.

    R3 <= cap(P3) and (R1,R2) in the 2-user MAC region always hold; each
    receiver-swap MAC region is added once the corresponding squared cross
    gain reaches 1, i.e. once the swapped receiver observes a less noisy
    version of the signal it re-decodes.
    """
    families = [p2p_region(params), mac_region(params, {1, 2}, 1)]
    if params.h12 * params.h12 >= 1.0:
        families.append(mac_region(params, {1, 3}, 2))
    if params.h22 * params.h22 >= 1.0:
        families.append(mac_region(params, {2, 3}, 2))
    if params.h31 * params.h31 >= 1.0:
        families.append(mac_region(params, {1, 2, 3}, 1))
    return reduce(intersect, families)


def inner_bound(params: ChannelParams) -> RatePolytope:
    """Achievable region when both receivers decode all three messages.

    The intersection of the two full MAC regions; every subset bound is the
    min of the two receivers' bounds, giving the canonical seven-constraint
    min form.
    """
    return intersect(
        mac_region(params, {1, 2, 3}, 1),
        mac_region(params, {1, 2, 3}, 2),
    )


def _capacity_construction(params: ChannelParams, regime: Regime) -> RatePolytope:
    if regime is Regime.STRONG_CAPACITY:
        return inner_bound(params)
    if regime is Regime.VSI_TX1:
        return intersect(mac_region(params, {2, 3}, 2), mac_region(params, {1, 2, 3}, 1))
    if regime is Regime.VSI_TX2:
        return intersect(mac_region(params, {1, 3}, 2), mac_region(params, {1, 2, 3}, 1))
    if regime is Regime.VSI_TX3:
        return reduce(
            intersect,
            [
                mac_region(params, {1, 3}, 2),
                mac_region(params, {2, 3}, 2),
                mac_region(params, {1, 2}, 1),
            ],
        )
    if regime is Regime.FULL_VSI:
        return intersect(p2p_region(params), mac_region(params, {1, 2}, 1))
    raise ValueError(f"no capacity construction for {regime!r}")


def capacity_region(
    params: ChannelParams, tol: float = FEAS_TOL
) -> Optional[RatePolytope]:
    """Exact capacity region when a known regime applies, else None.

    Every satisfied regime's construction is built; since each one is exact
    capacity they must all describe the same region, so any disagreement is
    raised as an internal-consistency error rather than silently resolved.
    The constraint list of the most specific satisfied regime is returned.
    """
    report = classify(params)
    if report.capacity_regime is None:
        return None
    built = [
        (regime, _capacity_construction(params, regime))
        for regime in CAPACITY_PRIORITY
        if regime in report.satisfied
    ]
    chosen_tag, chosen = built[0]
    for regime, other in built[1:]:
        if not region_equal(chosen, other, tol):
            raise InternalConsistencyError(
                f"capacity constructions for {chosen_tag.value} and {regime.value} "
                "disagree; both claim to be the exact capacity region"
            )
    return chosen


@dataclass(frozen=True)
class RedundancyClaim:
    """Outcome of one constraint-redundancy or scalar-implication check.

    ``margin`` is the signed slack for scalar implications and None for
    region-equality claims.
    """

    claim_id: str
    holds: bool
    margin: Optional[float]
    detail: str


def _drop_mask(p: RatePolytope, coeffs: tuple[int, int, int]) -> RatePolytope:
    return RatePolytope.from_constraints(
        [c for c in p.constraints if tuple(c.coeffs) != coeffs]
    )


def verify_redundancy_claims(
    params: ChannelParams, tol: float = FEAS_TOL
) -> list[RedundancyClaim]:
    """Check the regime-conditional redundancy and implication claims.

    Each claim is evaluated only when its preconditions hold, so the returned
    list varies with the regime.  Scalar margins are allowed a 1e-12 float
    guard; the regime preconditions themselves are exact.
    """
    report = classify(params)
    margins = report.margins
    claims: list[RedundancyClaim] = []
    p1, p2, p3 = params.p1, params.p2, params.p3
    g12 = params.h12 * params.h12
    g22 = params.h22 * params.h22
    g31 = params.h31 * params.h31

    def scalar(claim_id: str, margin: float, detail: str):
        claims.append(RedundancyClaim(claim_id, margin >= -1e-12, margin, detail))

    def regional(claim_id: str, a: RatePolytope, b: RatePolytope, detail: str):
        claims.append(RedundancyClaim(claim_id, region_equal(a, b, tol), None, detail))

    if Regime.STRONG_CAPACITY in report.satisfied:
        regional(
            "strong_interference_coincidence",
            inner_bound(params),
            outer_bound(params),
            "inner and outer bounds describe the same region",
        )

    strong_family = [
        mac_region(params, {1, 3}, 2),
        mac_region(params, {2, 3}, 2),
        mac_region(params, {1, 2, 3}, 1),
    ]
    if Regime.VSI_TX1 in report.satisfied:
        regional(
            "vsi_tx1_rx2_pair_region_redundant",
            outer_bound(params),
            intersect(strong_family[1], strong_family[2]),
            "dropping the (R1,R3) MAC membership at receiver 2 leaves the outer bound unchanged",
        )
        scalar(
            "vsi_tx1_decode_x1_first",
            cap(g12 * p1 / (1.0 + p3 + g22 * p2)) - cap(p1),
            "receiver 2 can decode transmitter 1 treating the rest as noise at no rate cost",
        )
    if Regime.VSI_TX2 in report.satisfied:
        regional(
            "vsi_tx2_rx2_pair_region_redundant",
            outer_bound(params),
            intersect(strong_family[0], strong_family[2]),
            "dropping the (R2,R3) MAC membership at receiver 2 leaves the outer bound unchanged",
        )
        scalar(
            "vsi_tx2_decode_x2_first",
            cap(g22 * p2 / (1.0 + p3 + g12 * p1)) - cap(p2),
            "receiver 2 can decode transmitter 2 treating the rest as noise at no rate cost",
        )

    vsi3 = margins[Regime.VSI_TX3]
    gains_vsi3 = all(
        vsi3[name] >= 0.0
        for name in ("h12_sq_ge_1", "h22_sq_ge_1", "h31_sq_very_strong")
    )
    if gains_vsi3:
        regional(
            "vsi_tx3_rx1_region_replaceable",
            reduce(intersect, strong_family),
            reduce(
                intersect,
                [strong_family[0], strong_family[1], mac_region(params, {1, 2}, 1)],
            ),
            "the full receiver-1 MAC membership reduces to its 2-user part",
        )
        scalar(
            "vsi_tx3_decode_x3_first",
            cap(g31 * p3 / (1.0 + p1 + p2)) - cap(p3),
            "receiver 1 can decode transmitter 3 treating the MAC signals as noise at no rate cost",
        )
    if Regime.VSI_TX3 in report.satisfied:
        with_sum = intersect(mac_region(params, {1, 2, 3}, 2), mac_region(params, {1, 2}, 1))
        regional(
            "vsi_tx3_rx2_sum_constraint_redundant",
            with_sum,
            _drop_mask(with_sum, (1, 1, 1)),
            "the three-rate sum bound at receiver 2 is implied once (R1,R2) obey the 2-user MAC region",
        )
        scalar(
            "vsi_tx3_rx2_sum_rate_split",
            cap(g12 * p1 + g22 * p2 + p3) - (cap(p1 + p2) + cap(p3)),
            "receiver 2's total rate bound covers the MAC sum rate plus the point-to-point rate",
        )
    return claims
