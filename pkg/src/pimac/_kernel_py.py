"""Pure-Python/numpy genie-search kernels (fallback backend).

Mirrors the compiled extension in pimac._kernel: same grid layout, same
clamping, same acceptance rule, same tie-breaking (first strict improvement
in lexicographic (rho1, rho2, eta1, eta2) order), so the two backends are
interchangeable up to last-ulp vector-math differences.

The objective is the two-term Gaussian mutual information upper bound on the
sum rate: each term is a log ratio of 2x2 covariance determinants, joint over
(output, genie signal) versus conditioned on the decoded inputs.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure-python"


def objective(
    p1: float, p2: float, p3: float,
    h12: float, h22: float, h31: float,
    rho1: float, rho2: float, eta1: float, eta2: float,
) -> float:
    """Sum of the two genie-aided mutual informations in bits/channel use.

    Assumes an interior point (eta_i != 0, conditional covariances
    nonsingular); returns +inf when a conditional determinant is not
    positive.  Input validation lives in the public wrapper.
    """
    vy1 = p1 + p2 + h31 * h31 * p3 + 1.0
    vs1 = h12 * h12 * p1 + h22 * h22 * p2 + eta1 * eta1
    c1 = h12 * p1 + h22 * p2 + eta1 * rho1
    det_a1 = vy1 * vs1 - c1 * c1
    det_b1 = eta1 * eta1 * (h31 * h31 * p3 + 1.0 - rho1 * rho1)

    vy2 = h12 * h12 * p1 + h22 * h22 * p2 + p3 + 1.0
    vs2 = h31 * h31 * p3 + eta2 * eta2
    c2 = h31 * p3 + eta2 * rho2
    det_a2 = vy2 * vs2 - c2 * c2
    det_b2 = eta2 * eta2 * (h12 * h12 * p1 + h22 * h22 * p2 + 1.0 - rho2 * rho2)

    if det_b1 <= 0.0 or det_b2 <= 0.0:
        return math.inf
    return 0.5 * math.log2(det_a1 / det_b1) + 0.5 * math.log2(det_a2 / det_b2)


def grid_scan(
    p1, p2, p3, h12, h22, h31,
    rho_grid: np.ndarray, n_eta: int, eta_floor: float,
):
    """Minimum of the objective over the coarse feasible grid.

    The grid is rho_grid x rho_grid for (rho1, rho2) and, per pair, n_eta
    points on [eta_floor, sqrt(1 - rho_other^2)] for each eta.  Returns
    (value, rho1, rho2, eta1, eta2, evals); ties resolve to the first point
    in lexicographic parameter order.
    """
    rho = np.asarray(rho_grid, dtype=np.float64)
    n_rho = rho.shape[0]
    s = np.sqrt(np.maximum(0.0, 1.0 - rho * rho))  # eta ceiling per rho value
    t = np.arange(n_eta, dtype=np.float64) / float(n_eta - 1)

    # eta1[b, k]: ceiling set by rho2[b]; eta2[a, l]: ceiling set by rho1[a]
    eta1 = eta_floor + (s[:, None] - eta_floor) * t[None, :]
    eta2 = eta_floor + (s[:, None] - eta_floor) * t[None, :]

    g12, g22, g31 = h12 * h12, h22 * h22, h31 * h31
    sp1 = g12 * p1 + g22 * p2
    sp2 = g31 * p3

    # term 1 over (rho1[a], eta1[b, k])
    vy1 = p1 + p2 + g31 * p3 + 1.0
    vs1 = sp1 + eta1 * eta1
    c1 = h12 * p1 + h22 * p2 + eta1[None, :, :] * rho[:, None, None]
    det_a1 = vy1 * vs1[None, :, :] - c1 * c1
    det_b1 = (eta1 * eta1)[None, :, :] * (g31 * p3 + 1.0 - (rho * rho)[:, None, None])
    i1 = 0.5 * np.log2(det_a1 / det_b1)  # (a, b, k)

    # term 2 over (rho2[b], eta2[a, l])
    vy2 = sp1 + p3 + 1.0
    vs2 = sp2 + eta2 * eta2
    c2 = h31 * p3 + eta2[:, None, :] * rho[None, :, None]
    det_a2 = vy2 * vs2[:, None, :] - c2 * c2
    det_b2 = (eta2 * eta2)[:, None, :] * (sp1 + 1.0 - (rho * rho)[None, :, None])
    i2 = 0.5 * np.log2(det_a2 / det_b2)  # (a, b, l)

    total = i1[:, :, :, None] + i2[:, :, None, :]  # (a, b, k, l)
    flat = int(np.argmin(total))
    a, b, k, l = np.unravel_index(flat, total.shape)
    value = float(total[a, b, k, l])
    return (
        value,
        float(rho[a]),
        float(rho[b]),
        float(eta1[b, k]),
        float(eta2[a, l]),
        n_rho * n_rho * n_eta * n_eta,
    )


def coordinate_descent(
    p1, p2, p3, h12, h22, h31,
    rho1, rho2, eta1, eta2,
    init_step: float, min_step: float, max_evals: int,
    eta_floor: float, rho_cap: float,
):
    """Cyclic coordinate descent with step halving from a feasible start.

    Each proposal moves one coordinate by +/-step and re-clamps into the box
    (the eta ceilings move with the rhos); only strict improvements are
    accepted.  Stops when the step drops below min_step or the evaluation
    budget is spent.  Returns (value, rho1, rho2, eta1, eta2, evals).
    """

    def clamp(x):
        r1 = min(max(x[0], -rho_cap), rho_cap)
        r2 = min(max(x[1], -rho_cap), rho_cap)
        s1 = math.sqrt(max(0.0, 1.0 - r2 * r2))
        s2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
        e1 = min(max(x[2], eta_floor), max(eta_floor, s1))
        e2 = min(max(x[3], eta_floor), max(eta_floor, s2))
        return [r1, r2, e1, e2]

    x = clamp([rho1, rho2, eta1, eta2])
    best = objective(p1, p2, p3, h12, h22, h31, x[0], x[1], x[2], x[3])
    evals = 1
    step = init_step
    while step >= min_step and evals < max_evals:
        improved = False
        for i in range(4):
            for sign in (1.0, -1.0):
                y = list(x)
                y[i] += sign * step
                y = clamp(y)
                value = objective(p1, p2, p3, h12, h22, h31, y[0], y[1], y[2], y[3])
                evals += 1
                if value < best:
                    best = value
                    x = y
                    improved = True
                if evals >= max_evals:
                    break
            if evals >= max_evals:
                break
        if not improved:
            step *= 0.5
    return best, x[0], x[1], x[2], x[3], evals
