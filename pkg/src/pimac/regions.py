"""Rate regions in R+^3 as systems of subset-sum halfspace constraints.

Every region handled here is an intersection of constraints of the form
``sum_{i in T} R_i <= rhs`` with T a nonempty subset of {1,2,3}, plus the
implicit nonnegativity R_i >= 0.  Restricting coefficients to {0,1} keeps
everything exact: there are at most seven distinct constraint supports, the
3x3 systems solved during vertex enumeration have integer determinants in
{-2,...,2}, and no LP solver is needed.

A coordinate with no constraint covering it is unbounded; that is legal
(e.g. a 2-user region embedded in R^3) and is reported explicitly by the
operations that require boundedness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .model import ChannelParams, cap, effective_snr

#: Absolute feasibility / equality tolerance in bits.  All region arithmetic
#: is closed form, so only rounding noise has to be absorbed.
FEAS_TOL = 1e-9

#: Euclidean distance below which two enumerated vertices are merged.
DEDUP_TOL = 1e-7

_AXES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class UnboundedRegionError(ValueError):
    """Raised when an operation needs a bounded coordinate that has no bound."""


@dataclass(frozen=True)
class RateConstraint:
    """One halfspace ``coeffs . R <= rhs`` with coeffs in {0,1}^3."""

    coeffs: tuple[int, int, int]
    rhs: float

    def __post_init__(self):
        if tuple(self.coeffs) == (0, 0, 0) or any(c not in (0, 1) for c in self.coeffs):
            raise ValueError(f"coeffs must be a nonzero 0/1 vector, got {self.coeffs!r}")
        if not (self.rhs >= 0):
            raise ValueError(f"rhs must be nonnegative, got {self.rhs!r}")

    @property
    def mask(self) -> str:
        """Support as a 3-character string, e.g. (1,1,0) -> '110'."""
        return "".join(str(c) for c in self.coeffs)

    def value(self, point: Sequence[float]) -> float:
        return sum(c * x for c, x in zip(self.coeffs, point))


@dataclass(frozen=True)
class RatePolytope:
    """Intersection of RateConstraints with implicit R_i >= 0.

    Constraints are kept canonical: at most one per support (the tightest),
    sorted by mask string, so structurally equal regions compare equal.
    """

    constraints: tuple[RateConstraint, ...]

    @classmethod
    def from_constraints(cls, constraints: Iterable[RateConstraint]) -> "RatePolytope":
        tightest: dict[tuple[int, int, int], float] = {}
        for c in constraints:
            key = tuple(c.coeffs)
            if key not in tightest or c.rhs < tightest[key]:
                tightest[key] = c.rhs
        canon = sorted(
            (RateConstraint(k, v) for k, v in tightest.items()),
            key=lambda c: c.mask,
        )
        return cls(tuple(canon))

    def rhs_by_mask(self) -> dict[str, float]:
        return {c.mask: c.rhs for c in self.constraints}

    def bounded_coords(self) -> tuple[bool, bool, bool]:
        """Which of R1, R2, R3 appear in at least one constraint."""
        flags = [False, False, False]
        for c in self.constraints:
            for i in range(3):
                if c.coeffs[i]:
                    flags[i] = True
        return tuple(flags)


@dataclass(frozen=True)
class VertexSet:
    """Deduplicated corner points of a bounded RatePolytope."""

    points: tuple[tuple[float, float, float], ...]
    dedup_tol: float = DEDUP_TOL

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def mac_region(params: ChannelParams, subset: Iterable[int], receiver: int) -> RatePolytope:
    """Multiple-access capacity region of ``subset`` decoded at ``receiver``.

    One constraint per nonempty T within the subset, with rhs equal to the
    Gaussian capacity of the summed received SNR of T.  Rates outside the
    subset are left unconstrained.
    """
    txs = sorted(set(subset))
    if not txs:
        raise ValueError("subset of transmitters must be nonempty")
    constraints = []
    for r in range(1, len(txs) + 1):
        for group in combinations(txs, r):
            coeffs = tuple(1 if i + 1 in group else 0 for i in range(3))
            constraints.append(
                RateConstraint(coeffs, cap(effective_snr(params, group, receiver)))
            )
    return RatePolytope.from_constraints(constraints)


def intersect(a: RatePolytope, b: RatePolytope) -> RatePolytope:
    """Region {R : R in a and R in b}.

    The constraint lists are merged and duplicate supports collapse to the
    tighter rhs; constraints that are merely implied by others are kept, so
    intersect(x, x) returns x unchanged (use eliminate_redundant for pruning).
    """
    return RatePolytope.from_constraints(a.constraints + b.constraints)


def contains(p: RatePolytope, point: Sequence[float], tol: float = FEAS_TOL) -> bool:
    """True iff ``point`` is nonnegative and satisfies every constraint within tol."""
    if len(point) != 3:
        raise ValueError(f"point must have 3 coordinates, got {len(point)}")
    if any(x < -tol for x in point):
        return False
    return all(c.value(point) <= c.rhs + tol for c in p.constraints)


def _solve3(rows, rhs):
    """Solve a 3x3 system by Cramer's rule; None when singular.

    Rows are 0/1 constraint supports or axis unit vectors, so the determinant
    is an integer in {-2,...,2} and exact in floating point.
    """
    (a, b, c), (d, e, f), (g, h, i) = rows
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        return None
    r0, r1, r2 = rhs
    x = r0 * (e * i - f * h) - b * (r1 * i - f * r2) + c * (r1 * h - e * r2)
    y = a * (r1 * i - f * r2) - r0 * (d * i - f * g) + c * (d * r2 - r1 * g)
    z = a * (e * r2 - r1 * h) - b * (d * r2 - r1 * g) + r0 * (d * h - e * g)
    return (x / det, y / det, z / det)


def _enumerate_vertices(p: RatePolytope, feas_tol: float, dedup_tol: float):
    planes = [(c.coeffs, c.rhs) for c in p.constraints]
    planes += [(axis, 0.0) for axis in _AXES]
    accepted: list[tuple[float, float, float]] = []
    for trio in combinations(range(len(planes)), 3):
        rows = tuple(planes[i][0] for i in trio)
        rhs = tuple(planes[i][1] for i in trio)
        point = _solve3(rows, rhs)
        if point is None:
            continue
        if not contains(p, point, feas_tol):
            continue
        if any(
            (point[0] - q[0]) ** 2 + (point[1] - q[1]) ** 2 + (point[2] - q[2]) ** 2
            < dedup_tol * dedup_tol
            for q in accepted
        ):
            continue
        accepted.append(point)
    accepted.sort()
    return accepted


def vertices(
    p: RatePolytope, feas_tol: float = FEAS_TOL, dedup_tol: float = DEDUP_TOL
) -> VertexSet:
    """All corner points of ``p``: feasible intersections of plane triples.

    Candidate planes are the constraints plus the three axis planes R_i = 0.
    Requires a fully bounded region.
    """
    bounded = p.bounded_coords()
    for i, ok in enumerate(bounded):
        if not ok:
            raise UnboundedRegionError(f"region is unbounded in R{i + 1}")
    return VertexSet(tuple(_enumerate_vertices(p, feas_tol, dedup_tol)), dedup_tol)


def _clamped_for_objective(p: RatePolytope, support: tuple[int, int, int]) -> RatePolytope:
    # Coordinates outside the objective's support can be pinned to 0 without
    # changing the optimum: all constraint coefficients are nonnegative.
    bounded = p.bounded_coords()
    extra = [
        RateConstraint(_AXES[i], 0.0)
        for i in range(3)
        if not bounded[i] and not support[i]
    ]
    return RatePolytope.from_constraints(p.constraints + tuple(extra))


def max_weighted_sum(
    p: RatePolytope, weights: Sequence[float], feas_tol: float = FEAS_TOL
) -> float:
    """Maximum of ``weights . R`` over the region; weights must be >= 0."""
    if len(weights) != 3 or any(w < 0 for w in weights):
        raise ValueError(f"weights must be 3 nonnegative numbers, got {weights!r}")
    bounded = p.bounded_coords()
    for i in range(3):
        if weights[i] > 0 and not bounded[i]:
            raise UnboundedRegionError(
                f"objective weights R{i + 1} but the region is unbounded in R{i + 1}"
            )
    support = tuple(1 if weights[i] > 0 else 0 for i in range(3))
    clamped = _clamped_for_objective(p, support)
    points = _enumerate_vertices(clamped, feas_tol, DEDUP_TOL)
    if not points:
        raise ValueError("region is empty within tolerance")
    return max(sum(w * x for w, x in zip(weights, pt)) for pt in points)


def eliminate_redundant(p: RatePolytope, tol: float = FEAS_TOL) -> RatePolytope:
    """Drop every constraint implied by the remaining ones.

    A constraint c is redundant when the maximum of its left-hand side over
    the region without c stays below rhs(c) + tol; removals are applied
    sequentially against the surviving set, so the region never changes.
    """
    kept = list(p.constraints)
    for c in list(kept):
        rest = RatePolytope.from_constraints([k for k in kept if k is not c])
        bounded = rest.bounded_coords()
        if any(c.coeffs[i] and not bounded[i] for i in range(3)):
            continue  # c is the only bound on some coordinate
        clamped = _clamped_for_objective(rest, c.coeffs)
        points = _enumerate_vertices(clamped, tol, DEDUP_TOL)
        if not points:
            continue
        if max(c.value(pt) for pt in points) <= c.rhs + tol:
            kept.remove(c)
    return RatePolytope.from_constraints(kept)


def region_equal(a: RatePolytope, b: RatePolytope, tol: float = FEAS_TOL) -> bool:
    """Mutual containment check via vertex enumeration; needs bounded inputs."""
    for v in vertices(a, feas_tol=tol):
        if not contains(b, v, tol):
            return False
    for v in vertices(b, feas_tol=tol):
        if not contains(a, v, tol):
            return False
    return True
