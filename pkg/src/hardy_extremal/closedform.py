"""Explicit best-approximation value, extremal function and inner certificate.

For ``z`` in the disk and complex ``lam`` the L1 distance from the conjugated
weighted kernel to H^1_0 is

    1/(1-|z|^2) + |lam|^2 (1-|z|^2)/4     if |lam| <= 2/(1-|z|^2)
    |lam|                                  if |lam| >= 2/(1-|z|^2)

independently of the inner function ``phi``.
"""
from __future__ import annotations

import cmath
import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .circle import BoundarySamples, CircleGrid
from .inner import eval_inner
from .kernels import (
    WeightQuery,
    cauchy_szego,
    cauchy_szego_dzbar,
    check_disk_point,
    sample_weighted_kernel,
)

CRITICAL_TOL = 1e-12


class Branch(str, enum.Enum):
    SUBCRITICAL = "Subcritical"
    CRITICAL = "Critical"
    SUPERCRITICAL = "Supercritical"


class DegenerateCertificateWarning(UserWarning):
    """The Mobius certificate collapses to a unimodular constant (``|beta| = 1``)."""


@dataclass(frozen=True)
class ClosedFormResult:
    value: float
    beta: complex
    branch: Branch
    threshold: float


def threshold(z) -> float:
    """Critical modulus ``2 / (1 - |z|^2)`` separating the two regimes."""
    z = check_disk_point(z)
    return 2.0 / (1.0 - abs(z) ** 2)


def subcritical_value(z, lam) -> float:
    s = 1.0 - abs(complex(z)) ** 2
    return 1.0 / s + abs(complex(lam)) ** 2 * s / 4.0


def supercritical_value(z, lam) -> float:
    return abs(complex(lam))


def classify(z, lam) -> Branch:
    thr = threshold(z)
    r = abs(complex(lam))
    if abs(r - thr) <= CRITICAL_TOL * thr:
        return Branch.CRITICAL
    return Branch.SUBCRITICAL if r < thr else Branch.SUPERCRITICAL


def closed_form(z, lam) -> ClosedFormResult:
    z = check_disk_point(z)
    lam = complex(lam)
    thr = threshold(z)
    branch = classify(z, lam)
    if branch is Branch.SUBCRITICAL:
        value = subcritical_value(z, lam)
        beta = lam * (1.0 - abs(z) ** 2) / 2.0
    else:
        # Critical routes through the |lam| formula; both agree there.
        value = supercritical_value(z, lam)
        beta = cmath.exp(1j * cmath.phase(lam))
    return ClosedFormResult(value, beta, branch, thr)


def extremal_h(q: WeightQuery, grid: CircleGrid) -> BoundarySamples:
    """``h = beta^2 phi dC/dzbar + lam t conj(z) C`` sampled on ``grid``."""
    beta = closed_form(q.z, q.lam).beta
    t = grid.points
    phi = eval_inner(q.phi, t)
    values = beta**2 * phi * cauchy_szego_dzbar(t, q.z) + q.lam * t * np.conj(q.z) * cauchy_szego(t, q.z)
    return BoundarySamples(grid, values)


def extremal_residual(q: WeightQuery, grid: CircleGrid) -> BoundarySamples:
    """``conj(weighted kernel) + h``, assembled from the raw ingredients."""
    return sample_weighted_kernel(q, grid).conj() + extremal_h(q, grid)


def certificate_I(q: WeightQuery, grid: CircleGrid) -> BoundarySamples:
    """Unimodular ``I`` with ``I * residual >= 0`` on the circle.

    ``I = (u + conj(beta)) / (1 + beta u)`` with ``u = phi * b_z``. When
    ``|beta| = 1`` this is the constant ``conj(beta)``; a
    :class:`DegenerateCertificateWarning` is issued and the constant returned.
    """
    beta = closed_form(q.z, q.lam).beta
    if abs(abs(beta) - 1.0) <= CRITICAL_TOL:
        warnings.warn(
            "certificate degenerates to the constant exp(-i arg lambda)",
            DegenerateCertificateWarning,
            stacklevel=2,
        )
        return BoundarySamples(grid, np.full(grid.size, np.conj(beta), dtype=complex))
    t = grid.points
    u = eval_inner(q.phi, t) * (t - q.z) / (1.0 - t * np.conj(q.z))
    return BoundarySamples(grid, (u + np.conj(beta)) / (1.0 + beta * u))
