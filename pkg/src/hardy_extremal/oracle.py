"""Independent ground truth for the L1 best approximation by H^1_0.

``solve_l1`` minimises the discretised distance

    (1/M) sum_j | k(t_j) + sum_{n=1..N} c_n t_j^n |

by iteratively reweighted least squares. In the monomial basis the weighted
Gram matrix is Hermitian Toeplitz, so every iteration costs two FFTs plus one
dense ``N x N`` Cholesky solve.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .circle import BoundarySamples, CircleGrid, mean_integral

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 64
DEFAULT_MAX_ITER = 500
DEFAULT_TOL = 1e-12
DEFAULT_DELTA = 1e-9
UNIMODULAR_CERT_TOL = 1e-9


class IllConditionedError(RuntimeError):
    """The weighted normal equations could not be factorised."""


class AdmissibilityWarning(UserWarning):
    """A dual witness exceeds the unit ball of H^infinity."""


@dataclass(frozen=True)
class TrigCoefficients:
    """``h(t) = sum_{n=1..N} coeffs[n-1] t^n``; no constant term by construction."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise ValueError("at least one coefficient is required")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        # Horner in t, then one extra factor of t for the missing constant.
        acc = np.zeros_like(t)
        for c in self.coeffs[::-1]:
            acc = acc * t + c
        return acc * t

    def sample(self, grid: CircleGrid) -> BoundarySamples:
        return BoundarySamples(grid, _synthesize(self.coeffs, grid.size))


@dataclass
class SolveReport:
    coefficients: TrigCoefficients
    objective: float
    iterations: int
    converged: bool
    objective_history: list = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "objective": self.objective,
            "iterations": self.iterations,
            "converged": self.converged,
            "coefficient_magnitudes": [float(a) for a in np.abs(self.coefficients.coeffs)],
        }


@dataclass
class CertificateReport:
    is_certified: bool
    min_real: float
    max_abs_imag: float
    p: BoundarySamples


def _synthesize(coeffs: np.ndarray, M: int) -> np.ndarray:
    """Values of ``sum_n coeffs[n-1] t^n`` at the ``M`` roots of unity."""
    padded = np.zeros(M, dtype=complex)
    padded[1 : coeffs.size + 1] = coeffs
    return np.fft.ifft(padded) * M


def _weighted_solve(w: np.ndarray, k: np.ndarray, N: int) -> np.ndarray:
    M = w.size
    moments = np.fft.fft(w)[:N] / M
    gram = scipy.linalg.toeplitz(moments, np.conj(moments))
    rhs = -(np.fft.fft(w * k)[1 : N + 1] / M)
    # Jacobi scaling; the diagonal is the constant mean weight.
    d = 1.0 / np.sqrt(moments[0].real)
    try:
        factor = scipy.linalg.cho_factor(gram * d * d, lower=False, check_finite=True)
        return scipy.linalg.cho_solve(factor, rhs * d) * d
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise IllConditionedError(f"weighted Gram factorisation failed: {exc}") from exc


def solve_l1(
    k: BoundarySamples,
    N: int = DEFAULT_TRUNCATION,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    smoothing_delta: float = DEFAULT_DELTA,
) -> SolveReport:
    """Best L1 approximation of ``-k`` by ``span{t, ..., t^N}`` on the grid of ``k``.

    Iterates ``w_j = 1 / max(|r_j|, delta)`` and the weighted normal
    equations, starting from ``c = 0``, until the relative objective change
    drops below ``tol``. A step that would increase the (unsmoothed) objective
    is rejected and the iteration stops there, so the returned history is
    non-increasing.
    """
    M = k.grid.size
    N = int(N)
    if N < 1 or N >= M // 4:
        raise ValueError(f"truncation N={N} must satisfy 1 <= N < M/4 = {M // 4}")
    kv = k.values
    if not np.all(np.isfinite(kv)):
        raise ValueError("target samples contain non-finite entries")

    c = np.zeros(N, dtype=complex)
    r = kv.copy()
    obj = float(np.mean(np.abs(r)))
    history = [obj]
    converged = obj == 0.0
    it = 0
    while not converged and it < max_iter:
        it += 1
        w = 1.0 / np.maximum(np.abs(r), smoothing_delta)
        c_new = _weighted_solve(w, kv, N)
        r_new = kv + _synthesize(c_new, M)
        obj_new = float(np.mean(np.abs(r_new)))
        if obj_new > obj:
            logger.debug("IRLS step %d rejected: %.17g > %.17g", it, obj_new, obj)
            converged = True
            break
        change = (obj - obj_new) / obj
        c, r, obj = c_new, r_new, obj_new
        history.append(obj)
        if change < tol or obj == 0.0:
            converged = True
    if not converged:
        logger.info("IRLS stopped at max_iter=%d with objective %.17g", max_iter, obj)
    return SolveReport(TrigCoefficients(c), obj, it, converged, history)


def duality_lower_bound(k: BoundarySamples, f: BoundarySamples) -> float:
    """``|integral f k dm|``; a lower bound on the distance when ``f`` is in the H^inf unit ball."""
    if f.grid.size != k.grid.size:
        raise ValueError("witness and target must share a grid")
    if np.max(np.abs(f.values)) > 1.0 + 1e-9:
        warnings.warn(
            "dual witness has sup modulus > 1; the bound is not a valid lower bound",
            AdmissibilityWarning,
            stacklevel=2,
        )
    return abs(mean_integral(f * k))


def lemma1_certificate(
    k: BoundarySamples, h: BoundarySamples, I: BoundarySamples, tol: float = 1e-9
) -> CertificateReport:
    """Check ``I (k + h) = p >= 0``, which certifies ``h`` as the best approximation."""
    if np.max(np.abs(np.abs(I.values) - 1.0)) > UNIMODULAR_CERT_TOL:
        raise ValueError("certificate I is not unimodular on the grid")
    p = I * (k + h)
    min_real = float(np.min(p.values.real))
    max_abs_imag = float(np.max(np.abs(p.values.imag)))
    ok = min_real >= -tol and max_abs_imag <= tol
    return CertificateReport(ok, min_real, max_abs_imag, p)


def fourier_coefficients(f: BoundarySamples, kmin: int, kmax: int) -> np.ndarray:
    """``c_n = integral f(t) t^(-n) dm`` for ``n = kmin..kmax`` (aliased mod M)."""
    M = f.grid.size
    if kmax < kmin or kmax - kmin >= M:
        raise ValueError(f"index window [{kmin}, {kmax}] must be shorter than M={M}")
    spectrum = np.fft.fft(f.values) / M
    return spectrum[np.arange(kmin, kmax + 1) % M]
