"""Sharp bound for ``|(f/phi)'(z)| + lam |f(z)|`` and the resulting Schwarz-Pick form.

For ``f`` holomorphic with ``sup |f| <= 1`` and ``phi`` inner with ``f/phi``
holomorphic,

    |(f/phi)'(z)| + lam |f(z)| <= closed_form(z, lam).value,
    |(f/phi)'(z)| <= (1 - |f(z)|^2) / (1 - |z|^2).

Both sides are computed from boundary samples through the Cauchy pairing and
cross-checked against a finite difference of the structural quotient ``f/phi``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .circle import CircleGrid, make_grid
from .closedform import closed_form
from .inner import InnerFunctionSpec, eval_inner, mobius_disk_automorphism
from .kernels import WeightQuery, cauchy_pairing, check_disk_point, reproducing_check

ADMISSION_GRID = 8192
ADMISSION_MARGIN = 1e-9
FD_STEP = 1e-5
FD_RTOL = 1e-7
ROUTE_TOL = 1e-9
ZERO_MATCH_TOL = 1e-14


class DivisibilityError(ValueError):
    """``phi`` does not divide ``f`` structurally, so ``f/phi`` may have poles."""


class FunctionKind(str, enum.Enum):
    INNER_TIMES_MOBIUS = "InnerTimesMobius"
    BLASCHKE_PRODUCT = "BlaschkeProduct"
    SCALED_POLYNOMIAL = "ScaledPolynomial"


@dataclass(frozen=True)
class TestFunctionSpec:
    """A bounded holomorphic test function ``f`` with ``sup |f| <= 1``.

    * ``BlaschkeProduct``: ``scale * inner``.
    * ``InnerTimesMobius``: ``scale * inner * b_a`` with ``a = mobius_point``.
    * ``ScaledPolynomial``: ``sum coeffs[n] w^n``, admitted only if its sup
      modulus on a dense boundary grid is at most ``1 + 1e-9``.
    """

    __test__ = False  # not a pytest class

    kind: FunctionKind
    inner: InnerFunctionSpec | None = None
    scale: complex = 1.0
    mobius_point: complex = 0.0
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", FunctionKind(self.kind))
        object.__setattr__(self, "scale", complex(self.scale))
        if abs(self.scale) > 1.0:
            raise ValueError(f"|scale| must be <= 1, got {abs(self.scale)}")
        if self.kind is FunctionKind.SCALED_POLYNOMIAL:
            coeffs = tuple(complex(c) for c in self.coeffs)
            if not coeffs:
                raise ValueError("polynomial needs at least one coefficient")
            object.__setattr__(self, "coeffs", coeffs)
            grid = make_grid(ADMISSION_GRID)
            sup = float(np.max(np.abs(np.polynomial.polynomial.polyval(grid.points, coeffs))))
            if sup > 1.0 + ADMISSION_MARGIN:
                raise ValueError(f"polynomial sup modulus {sup:.12g} exceeds 1")
        else:
            if self.inner is None:
                raise ValueError(f"{self.kind.value} needs an inner factor")
            if self.kind is FunctionKind.INNER_TIMES_MOBIUS:
                mobius_disk_automorphism(self.mobius_point)

    @property
    def blaschke(self) -> InnerFunctionSpec:
        """Inner part of a Blaschke-type ``f`` (scale excluded)."""
        if self.kind is FunctionKind.INNER_TIMES_MOBIUS:
            return self.inner * mobius_disk_automorphism(self.mobius_point)
        return self.inner

    def __call__(self, w):
        if self.kind is FunctionKind.SCALED_POLYNOMIAL:
            return np.polynomial.polynomial.polyval(np.asarray(w, dtype=complex), self.coeffs)
        return self.scale * eval_inner(self.blaschke, w)

    def quotient(self, phi: InnerFunctionSpec):
        """Return a callable evaluating ``f/phi`` with the common zeros cancelled."""
        if self.kind is FunctionKind.SCALED_POLYNOMIAL:
            origin, nonzero = phi.zero_multiset()
            if nonzero:
                raise DivisibilityError("polynomial test functions admit only monomial phi")
            if any(abs(c) != 0 for c in self.coeffs[:origin]):
                raise DivisibilityError(
                    f"phi vanishes to order {origin} at 0 but f does not"
                )
            shifted = self.coeffs[origin:] or (0j,)
            unit = np.exp(-1j * phi.phase)
            return lambda w: unit * np.polynomial.polynomial.polyval(
                np.asarray(w, dtype=complex), shifted
            )

        f_origin, f_zeros = self.blaschke.zero_multiset()
        p_origin, p_zeros = phi.zero_multiset()
        if p_origin > f_origin:
            raise DivisibilityError(
                f"phi vanishes to order {p_origin} at 0, f only to order {f_origin}"
            )
        remaining = list(f_zeros)
        for a in p_zeros:
            for i, b in enumerate(remaining):
                if abs(a - b) <= ZERO_MATCH_TOL:
                    del remaining[i]
                    break
            else:
                raise DivisibilityError(f"zero {a!r} of phi is not a zero of f")
        g = InnerFunctionSpec(
            self.blaschke.phase - phi.phase, f_origin - p_origin, tuple(remaining)
        )
        scale = self.scale
        return lambda w: scale * eval_inner(g, w)


def _fd_derivative(g, z: complex, h: float = FD_STEP) -> complex:
    # Fourth-order central stencil along the real axis (g is holomorphic).
    return (-g(z + 2 * h) + 8 * g(z + h) - 8 * g(z - h) + g(z - 2 * h)) / (12 * h)


@dataclass(frozen=True)
class CorollaryTerms:
    derivative: complex  # (f/phi)'(z) from the Cauchy pairing
    value: complex  # f(z) from the reproducing pairing
    derivative_fd: complex
    value_direct: complex


def corollary_terms(
    f: TestFunctionSpec, phi: InnerFunctionSpec, z, grid: CircleGrid | None = None
) -> CorollaryTerms:
    z = check_disk_point(z)
    g = f.quotient(phi)  # raises DivisibilityError before any quadrature
    grid = grid if grid is not None else make_grid()
    samples = grid.sample(f)
    derivative = cauchy_pairing(samples, WeightQuery(z, 0.0, phi))
    value = reproducing_check(samples, z)
    derivative_fd = complex(_fd_derivative(g, z))
    value_direct = complex(f(z))
    scale = max(1.0, abs(derivative_fd))
    if abs(derivative - derivative_fd) > FD_RTOL * scale:
        raise ArithmeticError(
            f"pairing and finite-difference derivatives disagree: {derivative} vs {derivative_fd}"
        )
    return CorollaryTerms(derivative, value, derivative_fd, value_direct)


def corollary_lhs(
    f: TestFunctionSpec, phi: InnerFunctionSpec, z, lam: float, grid: CircleGrid | None = None
) -> float:
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    terms = corollary_terms(f, phi, z, grid)
    return abs(terms.derivative) + lam * abs(terms.value)


def corollary_rhs(z, lam: float) -> float:
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return closed_form(z, lam).value


@dataclass(frozen=True)
class SchwarzPickResult:
    lhs: float
    rhs: float
    holds: bool
    slack: float

    def to_record(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "slack": self.slack}


def schwarz_pick_check(
    f: TestFunctionSpec, phi: InnerFunctionSpec, z, grid: CircleGrid | None = None
) -> SchwarzPickResult:
    """Evaluate ``|(f/phi)'(z)| <= (1 - |f(z)|^2) / (1 - |z|^2)``.

    The right side is also obtained from the Corollary bound at
    ``lam = 2|f(z)| / (1 - |z|^2)`` minus ``lam |f(z)|``; the two routes must
    agree to 1e-9.
    """
    z = check_disk_point(z)
    terms = corollary_terms(f, phi, z, grid)
    lhs = abs(terms.derivative)
    fz = abs(terms.value)
    s = 1.0 - abs(z) ** 2
    rhs = (1.0 - fz**2) / s
    lam = 2.0 * fz / s
    via_corollary = corollary_rhs(z, lam) - lam * fz
    if abs(via_corollary - rhs) > ROUTE_TOL * max(1.0, rhs):
        raise ArithmeticError(f"Schwarz-Pick routes disagree: {rhs} vs {via_corollary}")
    return SchwarzPickResult(lhs, rhs, lhs <= rhs + ROUTE_TOL, rhs - lhs)


def random_case(rng: np.random.Generator, max_z: float = 0.8, max_zero: float = 0.8):
    """Draw an admissible ``(f, phi, z, lam)`` with ``f`` a scaled Blaschke product.

    ``phi`` takes a random sub-multiset of ``f``'s zeros, so ``f/phi`` is
    holomorphic; ``lam`` is uniform on ``[0, 3 * threshold]``.
    """

    def disk(r_max):
        r = r_max * np.sqrt(rng.uniform())
        return complex(r * np.exp(2j * np.pi * rng.uniform()))

    n_zeros = int(rng.integers(0, 5))
    zeros = tuple(disk(max_zero) for _ in range(n_zeros))
    power = int(rng.integers(0, 3))
    keep = rng.uniform(size=n_zeros) < 0.5
    phi = InnerFunctionSpec(
        float(rng.uniform(0, 2 * np.pi)),
        int(rng.integers(0, power + 1)),
        tuple(a for a, k in zip(zeros, keep) if k),
    )
    inner = InnerFunctionSpec(float(rng.uniform(0, 2 * np.pi)), power, zeros)
    scale = complex(rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.uniform()))
    f = TestFunctionSpec(FunctionKind.BLASCHKE_PRODUCT, inner, scale=scale)
    z = disk(max_z)
    lam = float(rng.uniform(0, 3 * 2.0 / (1.0 - abs(z) ** 2)))
    return f, phi, z, lam
