"""Uniform grids on the unit circle and quadrature against normalised arc length.

All integrands handled by this package are restrictions to the circle of
functions analytic in an annulus, so the rectangle rule on ``M`` equispaced
nodes converges geometrically.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_GRID_SIZE = 4096
MIN_GRID_SIZE = 16
UNIMODULAR_TOL = 1e-12


class GridError(ValueError):
    """Raised for an unsupported grid resolution or mismatched sample grids."""


def check_circle_point(t: complex, tol: float = UNIMODULAR_TOL) -> complex:
    t = complex(t)
    if abs(abs(t) - 1.0) > tol:
        raise ValueError(f"|t| = {abs(t)!r} is not on the unit circle")
    return t


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """The ``size`` roots of unity ``exp(2*pi*i*j/size)``, ``j = 0..size-1``."""

    size: int
    points: np.ndarray = field(repr=False)

    def __len__(self):
        return self.size

    def __eq__(self, other):
        return isinstance(other, CircleGrid) and other.size == self.size

    def __hash__(self):
        return hash(("CircleGrid", self.size))

    def sample(self, func) -> "BoundarySamples":
        """Evaluate a vectorised callable on the grid nodes."""
        values = np.asarray(func(self.points), dtype=complex)
        if values.shape == ():
            values = np.full(self.size, complex(values))
        return BoundarySamples(self, values)

    def doubled(self) -> "CircleGrid":
        return make_grid(2 * self.size)


def make_grid(M: int = DEFAULT_GRID_SIZE) -> CircleGrid:
    if isinstance(M, bool) or int(M) != M:
        raise GridError(f"grid size must be an integer, got {M!r}")
    M = int(M)
    if M < MIN_GRID_SIZE or M & (M - 1):
        raise GridError(
            f"unsupported grid size {M}: need a power of two >= {MIN_GRID_SIZE}"
        )
    j = np.arange(M)
    points = np.exp(2j * np.pi * j / M)
    # Pin the quarter points so that e.g. points[M//4] is exactly i.
    points[0] = 1.0
    points[M // 4] = 1j
    points[M // 2] = -1.0
    points[3 * M // 4] = -1j
    points.setflags(write=False)
    return CircleGrid(M, points)


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    """Complex values of a boundary function at the nodes of ``grid``."""

    grid: CircleGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.size,):
            raise GridError(
                f"expected {self.grid.size} samples, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.grid.size

    def _check_same_grid(self, other):
        if other.grid.size != self.grid.size:
            raise GridError(
                f"grid mismatch: {self.grid.size} vs {other.grid.size} points"
            )

    def _binary(self, other, op):
        if isinstance(other, BoundarySamples):
            self._check_same_grid(other)
            other = other.values
        return BoundarySamples(self.grid, op(self.values, other))

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __neg__(self):
        return BoundarySamples(self.grid, -self.values)

    def conj(self) -> "BoundarySamples":
        return BoundarySamples(self.grid, np.conj(self.values))

    def abs(self) -> "BoundarySamples":
        return BoundarySamples(self.grid, np.abs(self.values).astype(complex))


def mean_integral(f: BoundarySamples) -> complex:
    """Rectangle-rule value of the integral of ``f`` against normalised arc length.

    Exact for trigonometric polynomials of degree below ``M``.
    """
    return complex(np.mean(f.values))


def l1_norm(f: BoundarySamples) -> float:
    return float(np.mean(np.abs(f.values)))


def l2_norm_sq(f: BoundarySamples) -> float:
    return float(np.mean(np.abs(f.values) ** 2))


def doubling_gap(build, M: int = DEFAULT_GRID_SIZE, functional=l1_norm) -> float:
    """Return ``|functional(build(2M grid)) - functional(build(M grid))|``.

    ``build`` maps a :class:`CircleGrid` to :class:`BoundarySamples`; the gap is
    the convergence check used in place of an a-priori error estimate.
    """
    grid = make_grid(M)
    coarse = functional(build(grid))
    fine = functional(build(grid.doubled()))
    return abs(fine - coarse)
