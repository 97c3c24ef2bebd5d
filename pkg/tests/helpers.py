"""Shared test utilities: parameter draws and independent oracles.

The oracles here deliberately avoid the library's own code paths: rate
bounds are recomputed from the defining formulas with math.log2, vertex sets
are enumerated with exact Fraction arithmetic, mutual informations are
estimated from sample covariances, and the genie search is cross-checked
against a dense grid evaluated by separable prefix minimization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from pimac import ChannelParams

STRONG_EXAMPLE = ChannelParams(10.0, 10.0, 10.0, 1.2, 1.5, 1.3)
VSI_TX3_EXAMPLE = ChannelParams(10.0, 10.0, 10.0, 4.3, 2.0, 4.6)
FULL_VSI_EXAMPLE = ChannelParams(10.0, 10.0, 10.0, 3.5, 3.5, 4.6)
WEAK_EXAMPLE = ChannelParams(10.0, 10.0, 10.0, 0.2, 0.1, 0.2)
NOISY_EXAMPLE = ChannelParams(10.0, 10.0, 10.0, 0.05, 0.05, 0.05)

MASKS = ("001", "010", "011", "100", "101", "110", "111")


def draw_unconstrained(rng) -> ChannelParams:
    p = rng.uniform(0.0, 30.0, 3)
    h = rng.uniform(-5.0, 5.0, 3)
    return ChannelParams(p[0], p[1], p[2], h[0], h[1], h[2])


def draw_strong_capacity(rng) -> ChannelParams:
    """Rejection-sample channels satisfying the strong-interference capacity
    conditions (all squared cross gains >= 1 and receiver 2's total SNR at
    least receiver 1's)."""
    while True:
        p = rng.uniform(0.1, 20.0, 3)
        h = rng.uniform(1.0, 4.0, 3) * rng.choice([-1.0, 1.0], 3)
        lhs = h[0] ** 2 * p[0] + h[1] ** 2 * p[1] + p[2]
        rhs = p[0] + p[1] + h[2] ** 2 * p[2]
        if lhs >= rhs:
            return ChannelParams(p[0], p[1], p[2], h[0], h[1], h[2])


def draw_weak(rng) -> ChannelParams:
    p = rng.uniform(0.01, 100.0, 3)
    h = rng.uniform(-1.0, 1.0, 3)
    return ChannelParams(p[0], p[1], p[2], h[0], h[1], h[2])


def min_form_oracle(params: ChannelParams) -> dict[str, float]:
    """Direct evaluation of the seven min-form subset bounds.

    For each nonempty subset T the bound is 0.5*log2(1 + min(sa, sb)) where
    sa/sb sum the per-transmitter received powers at receivers 1 and 2.
    """
    a = (params.p1, params.p2, params.h31**2 * params.p3)
    b = (params.h12**2 * params.p1, params.h22**2 * params.p2, params.p3)
    out = {}
    for bits in range(1, 8):
        sa = 0.0
        sb = 0.0
        mask = ""
        for i in range(3):
            on = (bits >> i) & 1
            mask += str(on)
            if on:
                sa += a[i]
                sb += b[i]
        out[mask] = 0.5 * math.log2(1.0 + min(sa, sb))
    return out


def fraction_vertices(constraints):
    """Exact brute-force vertex enumeration over rational halfspace data.

    ``constraints`` is a list of (coeffs, rhs) with integer coeffs in {0,1}
    and Fraction-convertible rhs.  Intersects all plane triples (constraints
    plus axis planes), keeps exactly feasible points, dedups exactly.
    """
    planes = [(tuple(c), Fraction(r)) for c, r in constraints]
    planes += [((1, 0, 0), Fraction(0)), ((0, 1, 0), Fraction(0)), ((0, 0, 1), Fraction(0))]

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    found = set()
    for trio in combinations(planes, 3):
        m = [list(row[0]) for row in trio]
        d = det3(m)
        if d == 0:
            continue
        rhs = [row[1] for row in trio]
        point = []
        for col in range(3):
            mc = [list(row) for row in m]
            for r in range(3):
                mc[r][col] = rhs[r]
            point.append(Fraction(det3(mc), d))
        if any(x < 0 for x in point):
            continue
        ok = all(
            sum(c * x for c, x in zip(coeffs, point)) <= r for coeffs, r in planes[:-3]
        )
        if ok:
            found.add(tuple(point))
    return sorted(found)


def mc_genie_objective(
    params: ChannelParams,
    rho1: float,
    rho2: float,
    eta1: float,
    eta2: float,
    n_samples: int = 1_000_000,
    seed: int = 0,
) -> float:
    """Covariance-plug-in Monte Carlo estimate of the genie objective.

    Samples the full joint system (inputs, correlated noise/genie pairs),
    forms the observed signals, and plugs sample covariances into the
    Gaussian entropy formula, conditioning via Schur complements.
    """
    rng = np.random.default_rng(seed)
    p = params
    x1 = rng.standard_normal(n_samples) * math.sqrt(p.p1)
    x2 = rng.standard_normal(n_samples) * math.sqrt(p.p2)
    x3 = rng.standard_normal(n_samples) * math.sqrt(p.p3)
    z1 = rng.standard_normal(n_samples)
    w1 = rho1 * z1 + math.sqrt(1.0 - rho1 * rho1) * rng.standard_normal(n_samples)
    z2 = rng.standard_normal(n_samples)
    w2 = rho2 * z2 + math.sqrt(1.0 - rho2 * rho2) * rng.standard_normal(n_samples)

    y1 = x1 + x2 + p.h31 * x3 + z1
    s1 = p.h12 * x1 + p.h22 * x2 + eta1 * w1
    y2 = p.h12 * x1 + p.h22 * x2 + x3 + z2
    s2 = p.h31 * x3 + eta2 * w2

    def plug_in(obs, inputs):
        k = obs.shape[0]
        cov = np.cov(np.vstack([obs, inputs]))
        joint = cov[:k, :k]
        cross = cov[:k, k:]
        inp = cov[k:, k:]
        cond = joint - cross @ np.linalg.solve(inp, cross.T)
        return 0.5 * math.log2(np.linalg.det(joint) / np.linalg.det(cond))

    return plug_in(np.vstack([y1, s1]), np.vstack([x1, x2])) + plug_in(
        np.vstack([y2, s2]), x3[None, :]
    )


def dense_genie_oracle(
    params: ChannelParams,
    n_rho: int = 201,
    n_eta: int = 101,
    eta_floor: float = 1e-6,
    rho_cap: float = 0.9999,
) -> float:
    """Minimum of the genie objective over a dense 4-d grid.

    The objective separates into a (rho1, eta1) term and a (rho2, eta2)
    term that only interact through the crosswise eta ceilings, so the full
    grid minimum equals min over (rho1, rho2) of the per-term minima; both
    terms are evaluated on the complete grid and reduced exactly.
    """
    p = params
    rho = np.clip(np.linspace(-1.0, 1.0, n_rho), -rho_cap, rho_cap)
    s = np.sqrt(np.maximum(0.0, 1.0 - rho * rho))
    t = np.arange(n_eta) / (n_eta - 1)
    eta = eta_floor + (s[:, None] - eta_floor) * t[None, :]  # ceiling index x t

    g12, g22, g31 = p.h12**2, p.h22**2, p.h31**2
    sp1 = g12 * p.p1 + g22 * p.p2
    sp2 = g31 * p.p3

    # term 1 on (rho1[a], eta1[b, k]); eta1 ceiling indexed by rho2[b]
    vy1 = p.p1 + p.p2 + sp2 + 1.0
    vs1 = sp1 + eta[None, :, :] ** 2
    c1 = p.h12 * p.p1 + p.h22 * p.p2 + eta[None, :, :] * rho[:, None, None]
    det_b1 = eta[None, :, :] ** 2 * (sp2 + 1.0 - (rho**2)[:, None, None])
    i1 = 0.5 * np.log2((vy1 * vs1 - c1 * c1) / det_b1)
    m1 = i1.min(axis=2)  # best eta1 per (rho1, rho2)

    # term 2 on (rho2[b], eta2[a, l]); eta2 ceiling indexed by rho1[a]
    vy2 = sp1 + p.p3 + 1.0
    vs2 = sp2 + eta[:, None, :] ** 2
    c2 = p.h31 * p.p3 + eta[:, None, :] * rho[None, :, None]
    det_b2 = eta[:, None, :] ** 2 * (sp1 + 1.0 - (rho**2)[None, :, None])
    i2 = 0.5 * np.log2((vy2 * vs2 - c2 * c2) / det_b2)
    m2 = i2.min(axis=2)  # best eta2 per (rho1, rho2)

    return float((m1 + m2).min())
