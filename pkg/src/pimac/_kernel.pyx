# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled genie-search kernels.

Same grid layout, clamping, acceptance rule and tie-breaking as the
pure-Python fallback in pimac._kernel_py; see that module for the contract.
The objective splits into a (rho1, eta1) term and a (rho2, eta2) term, so
the grid scan evaluates each term once per eta point and only sums over the
(eta1, eta2) product.
"""

import numpy as np

from libc.math cimport INFINITY, log2, sqrt

BACKEND_NAME = "compiled"


cdef inline double _term1(double p1, double p2, double p3,
                          double h12, double h22, double h31,
                          double rho1, double eta1) noexcept nogil:
    cdef double vy1 = p1 + p2 + h31 * h31 * p3 + 1.0
    cdef double vs1 = h12 * h12 * p1 + h22 * h22 * p2 + eta1 * eta1
    cdef double c1 = h12 * p1 + h22 * p2 + eta1 * rho1
    cdef double det_a = vy1 * vs1 - c1 * c1
    cdef double det_b = eta1 * eta1 * (h31 * h31 * p3 + 1.0 - rho1 * rho1)
    if det_b <= 0.0:
        return INFINITY
    return 0.5 * log2(det_a / det_b)


cdef inline double _term2(double p1, double p2, double p3,
                          double h12, double h22, double h31,
                          double rho2, double eta2) noexcept nogil:
    cdef double vy2 = h12 * h12 * p1 + h22 * h22 * p2 + p3 + 1.0
    cdef double vs2 = h31 * h31 * p3 + eta2 * eta2
    cdef double c2 = h31 * p3 + eta2 * rho2
    cdef double det_a = vy2 * vs2 - c2 * c2
    cdef double det_b = eta2 * eta2 * (h12 * h12 * p1 + h22 * h22 * p2 + 1.0 - rho2 * rho2)
    if det_b <= 0.0:
        return INFINITY
    return 0.5 * log2(det_a / det_b)


cdef inline double _objective(double p1, double p2, double p3,
                              double h12, double h22, double h31,
                              double rho1, double rho2,
                              double eta1, double eta2) noexcept nogil:
    return (_term1(p1, p2, p3, h12, h22, h31, rho1, eta1)
            + _term2(p1, p2, p3, h12, h22, h31, rho2, eta2))


def objective(double p1, double p2, double p3,
              double h12, double h22, double h31,
              double rho1, double rho2, double eta1, double eta2):
    return _objective(p1, p2, p3, h12, h22, h31, rho1, rho2, eta1, eta2)


def grid_scan(double p1, double p2, double p3,
              double h12, double h22, double h31,
              double[::1] rho_grid, int n_eta, double eta_floor):
    cdef int n_rho = rho_grid.shape[0]
    cdef int a, b, k, l
    cdef double r1, r2, s1, s2, e1, e2, t, v, i1k
    cdef double best = INFINITY
    cdef double br1 = 0.0, br2 = 0.0, be1 = eta_floor, be2 = eta_floor
    cdef double inv = 1.0 / (n_eta - 1)

    buf_e1 = np.empty(n_eta)
    buf_e2 = np.empty(n_eta)
    buf_i1 = np.empty(n_eta)
    buf_i2 = np.empty(n_eta)
    cdef double[::1] e1s = buf_e1
    cdef double[::1] e2s = buf_e2
    cdef double[::1] i1s = buf_i1
    cdef double[::1] i2s = buf_i2

    with nogil:
        for a in range(n_rho):
            r1 = rho_grid[a]
            s2 = sqrt(max(0.0, 1.0 - r1 * r1))
            for b in range(n_rho):
                r2 = rho_grid[b]
                s1 = sqrt(max(0.0, 1.0 - r2 * r2))
                for k in range(n_eta):
                    t = k * inv
                    e1 = eta_floor + (s1 - eta_floor) * t
                    e1s[k] = e1
                    i1s[k] = _term1(p1, p2, p3, h12, h22, h31, r1, e1)
                for l in range(n_eta):
                    t = l * inv
                    e2 = eta_floor + (s2 - eta_floor) * t
                    e2s[l] = e2
                    i2s[l] = _term2(p1, p2, p3, h12, h22, h31, r2, e2)
                for k in range(n_eta):
                    i1k = i1s[k]
                    for l in range(n_eta):
                        v = i1k + i2s[l]
                        if v < best:
                            best = v
                            br1 = r1
                            br2 = r2
                            be1 = e1s[k]
                            be2 = e2s[l]
    return best, br1, br2, be1, be2, n_rho * n_rho * n_eta * n_eta


def coordinate_descent(double p1, double p2, double p3,
                       double h12, double h22, double h31,
                       double rho1, double rho2, double eta1, double eta2,
                       double init_step, double min_step, long max_evals,
                       double eta_floor, double rho_cap):
    cdef double x0, x1, x2, x3, y0, y1, y2, y3, s1, s2
    cdef double best, value, step, sign
    cdef long evals
    cdef int i, j
    cdef bint improved

    # clamp the start into the feasible box
    x0 = min(max(rho1, -rho_cap), rho_cap)
    x1 = min(max(rho2, -rho_cap), rho_cap)
    s1 = sqrt(max(0.0, 1.0 - x1 * x1))
    s2 = sqrt(max(0.0, 1.0 - x0 * x0))
    x2 = min(max(eta1, eta_floor), max(eta_floor, s1))
    x3 = min(max(eta2, eta_floor), max(eta_floor, s2))

    best = _objective(p1, p2, p3, h12, h22, h31, x0, x1, x2, x3)
    evals = 1
    step = init_step
    with nogil:
        while step >= min_step and evals < max_evals:
            improved = False
            for i in range(4):
                for j in range(2):
                    sign = 1.0 if j == 0 else -1.0
                    y0 = x0
                    y1 = x1
                    y2 = x2
                    y3 = x3
                    if i == 0:
                        y0 += sign * step
                    elif i == 1:
                        y1 += sign * step
                    elif i == 2:
                        y2 += sign * step
                    else:
                        y3 += sign * step
                    y0 = min(max(y0, -rho_cap), rho_cap)
                    y1 = min(max(y1, -rho_cap), rho_cap)
                    s1 = sqrt(max(0.0, 1.0 - y1 * y1))
                    s2 = sqrt(max(0.0, 1.0 - y0 * y0))
                    y2 = min(max(y2, eta_floor), max(eta_floor, s1))
                    y3 = min(max(y3, eta_floor), max(eta_floor, s2))
                    value = _objective(p1, p2, p3, h12, h22, h31, y0, y1, y2, y3)
                    evals += 1
                    if value < best:
                        best = value
                        x0 = y0
                        x1 = y1
                        x2 = y2
                        x3 = y3
                        improved = True
                    if evals >= max_evals:
                        break
                if evals >= max_evals:
                    break
            if not improved:
                step *= 0.5
    return best, x0, x1, x2, x3, evals
