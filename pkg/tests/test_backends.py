"""Parity between the compiled kernel and the pure-Python fallback."""

import numpy as np
import pytest

from helpers import WEAK_EXAMPLE, draw_weak
from pimac.backend import available_backends, backend_name

BACKENDS = available_backends()

needs_both = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled kernel not built"
)


def _rho_grid(n=21, cap=0.9999):
    return np.ascontiguousarray(np.clip(np.linspace(-1.0, 1.0, n), -cap, cap))


def test_some_backend_selected():
    assert backend_name() in BACKENDS


@needs_both
def test_objective_parity():
    rng = np.random.default_rng(53)
    pure, compiled = BACKENDS["pure-python"], BACKENDS["compiled"]
    for _ in range(200):
        p = draw_weak(rng)
        rho1, rho2 = rng.uniform(-0.99, 0.99, 2)
        eta1 = rng.uniform(0.01, 1.0) * np.sqrt(1 - rho2**2)
        eta2 = rng.uniform(0.01, 1.0) * np.sqrt(1 - rho1**2)
        args = (p.p1, p.p2, p.p3, p.h12, p.h22, p.h31, rho1, rho2, eta1, eta2)
        assert pure.objective(*args) == pytest.approx(compiled.objective(*args), abs=1e-12)


@needs_both
def test_grid_scan_parity():
    rng = np.random.default_rng(59)
    pure, compiled = BACKENDS["pure-python"], BACKENDS["compiled"]
    grid = _rho_grid()
    for _ in range(20):
        p = draw_weak(rng)
        args = (p.p1, p.p2, p.p3, p.h12, p.h22, p.h31, grid, 11, 1e-6)
        a = pure.grid_scan(*args)
        b = compiled.grid_scan(*args)
        assert a[0] == pytest.approx(b[0], abs=1e-9)
        assert a[5] == b[5]  # same evaluation count
        for x, y in zip(a[1:5], b[1:5]):
            assert x == pytest.approx(y, abs=1e-9)


@needs_both
def test_coordinate_descent_parity():
    pure, compiled = BACKENDS["pure-python"], BACKENDS["compiled"]
    start = (0.1, -0.2, 0.5, 0.4)
    args = (10.0, 10.0, 10.0, 0.2, 0.1, 0.2) + start + (0.05, 1e-4, 10_000, 1e-6, 0.9999)
    a = pure.coordinate_descent(*args)
    b = compiled.coordinate_descent(*args)
    assert a[0] == pytest.approx(b[0], abs=1e-9)
    assert a[5] == b[5]


def test_grid_scan_deterministic():
    mod = BACKENDS[backend_name()]
    grid = _rho_grid()
    args = (WEAK_EXAMPLE.p1, WEAK_EXAMPLE.p2, WEAK_EXAMPLE.p3, WEAK_EXAMPLE.h12, WEAK_EXAMPLE.h22, WEAK_EXAMPLE.h31, grid, 11, 1e-6)
    assert mod.grid_scan(*args) == mod.grid_scan(*args)
