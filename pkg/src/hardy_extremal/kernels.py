"""The Cauchy-Szego kernel, its conj(z)-derivative and the weighted combination.

The weighted kernel is stored so that its complex conjugate, the function being
approximated, reads ``conj(phi * dC/dzbar) + lam * conj(C)``. Pairing a boundary
function against it is then linear in ``lam``:

    integral f * conj(K) dm = (f/phi)'(z) + lam * f(z).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import BoundarySamples, CircleGrid, mean_integral
from .inner import ONE, InnerFunctionSpec, eval_inner

MAX_DISK_MODULUS = 0.99


class DiskPointError(ValueError):
    """Raised when a kernel point violates the ``|z| <= 0.99`` operating cap."""


def check_disk_point(z) -> complex:
    try:
        z = complex(z)
    except (TypeError, ValueError):
        raise DiskPointError(f"not a complex number: {z!r}") from None
    if not np.isfinite(z):
        raise DiskPointError(f"disk point must be finite, got {z!r}")
    if abs(z) > MAX_DISK_MODULUS:
        raise DiskPointError(
            f"|z| = {abs(z):.6g} exceeds the supported cap |z| <= {MAX_DISK_MODULUS}"
        )
    return z


@dataclass(frozen=True)
class WeightQuery:
    z: complex
    lam: complex = 0.0
    phi: InnerFunctionSpec = ONE

    def __post_init__(self):
        object.__setattr__(self, "z", check_disk_point(self.z))
        lam = complex(self.lam)
        if not np.isfinite(lam):
            raise ValueError(f"lambda must be finite, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)


def cauchy_szego(t, z):
    """``C(t, z) = 1 / (1 - t conj(z))``."""
    return 1.0 / (1.0 - t * np.conj(z))


def cauchy_szego_dzbar(t, z):
    """``dC/dzbar = t / (1 - t conj(z))**2``."""
    return t / (1.0 - t * np.conj(z)) ** 2


def sample_weighted_kernel(q: WeightQuery, grid: CircleGrid) -> BoundarySamples:
    t = grid.points
    phi = eval_inner(q.phi, t)
    values = phi * cauchy_szego_dzbar(t, q.z) + np.conj(q.lam) * cauchy_szego(t, q.z)
    return BoundarySamples(grid, values)


def cauchy_pairing(f: BoundarySamples, q: WeightQuery) -> complex:
    """Quadrature of ``f * conj(weighted kernel)``.

    Equals ``(f/phi)'(z) + lam * f(z)`` when ``f/phi`` is holomorphic; the
    caller is responsible for that.
    """
    kernel = sample_weighted_kernel(q, f.grid)
    return mean_integral(f * kernel.conj())


def reproducing_check(f: BoundarySamples, z) -> complex:
    """Quadrature of ``f * conj(C(., z))``; reproduces ``f(z)`` for ``f`` in H^1."""
    z = check_disk_point(z)
    c = BoundarySamples(f.grid, cauchy_szego(f.grid.points, z))
    return mean_integral(f * c.conj())


def poisson_kernel(t, z):
    return (1.0 - abs(z) ** 2) * np.abs(cauchy_szego(t, z)) ** 2
