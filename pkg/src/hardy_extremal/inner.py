"""Finite inner functions: unimodular constant times monomial times Blaschke product."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import BoundarySamples, CircleGrid

MAX_ZERO_MODULUS = 1.0 - 1e-9
MAX_ZEROS = 32
CLOSED_DISK_TOL = 1e-12


class InnerSpecError(ValueError):
    """Raised for an inner-function description outside the supported family."""


@dataclass(frozen=True)
class InnerFunctionSpec:
    """``phi(w) = exp(i*phase) * w**power * prod_k (w - a_k) / (1 - conj(a_k) w)``.

    Zeros with multiplicity are given by repetition.
    """

    phase: float = 0.0
    power: int = 0
    zeros: tuple = ()

    def __post_init__(self):
        if not np.isfinite(self.phase):
            raise InnerSpecError(f"phase must be finite, got {self.phase!r}")
        if isinstance(self.power, bool) or int(self.power) != self.power or self.power < 0:
            raise InnerSpecError(f"monomial power must be a nonnegative integer, got {self.power!r}")
        zeros = tuple(complex(a) for a in self.zeros)
        if len(zeros) > MAX_ZEROS:
            raise InnerSpecError(f"at most {MAX_ZEROS} Blaschke zeros supported, got {len(zeros)}")
        for a in zeros:
            if not np.isfinite(a) or abs(a) > MAX_ZERO_MODULUS:
                raise InnerSpecError(
                    f"Blaschke zero {a!r} must satisfy |a| <= 1 - 1e-9"
                )
        object.__setattr__(self, "phase", float(self.phase))
        object.__setattr__(self, "power", int(self.power))
        object.__setattr__(self, "zeros", zeros)

    def __call__(self, w):
        return eval_inner(self, w)

    def __mul__(self, other: "InnerFunctionSpec") -> "InnerFunctionSpec":
        return InnerFunctionSpec(
            self.phase + other.phase,
            self.power + other.power,
            self.zeros + other.zeros,
        )

    def zero_multiset(self) -> tuple[int, list[complex]]:
        """Order of vanishing at the origin and the remaining nonzero zeros."""
        at_origin = self.power + sum(1 for a in self.zeros if a == 0)
        return at_origin, [a for a in self.zeros if a != 0]

    def to_dict(self) -> dict:
        return {
            "phase": self.phase,
            "power": self.power,
            "zeros": [[a.real, a.imag] for a in self.zeros],
        }

    @classmethod
    def from_dict(cls, data: dict | None) -> "InnerFunctionSpec":
        if data is None:
            return cls()
        unknown = set(data) - {"phase", "power", "zeros"}
        if unknown:
            raise InnerSpecError(f"unknown phi keys: {sorted(unknown)}")
        zeros = []
        for pair in data.get("zeros") or []:
            if isinstance(pair, (list, tuple)) and len(pair) == 2:
                zeros.append(complex(float(pair[0]), float(pair[1])))
            else:
                raise InnerSpecError(f"zero must be a [re, im] pair, got {pair!r}")
        return cls(float(data.get("phase", 0.0)), data.get("power", 0), tuple(zeros))


def eval_inner(spec: InnerFunctionSpec, w):
    """Evaluate ``spec`` at points of the closed unit disk (scalar or array)."""
    w_arr = np.asarray(w, dtype=complex)
    if np.any(np.abs(w_arr) > 1.0 + CLOSED_DISK_TOL):
        raise InnerSpecError("inner functions are evaluated on the closed unit disk only")
    out = np.exp(1j * spec.phase) * w_arr**spec.power
    for a in spec.zeros:
        out = out * (w_arr - a) / (1.0 - np.conj(a) * w_arr)
    if out.ndim == 0:
        return complex(out)
    return out


def sample_inner(spec: InnerFunctionSpec, grid: CircleGrid) -> BoundarySamples:
    return BoundarySamples(grid, eval_inner(spec, grid.points))


def mobius_disk_automorphism(z: complex) -> InnerFunctionSpec:
    """The Blaschke factor ``b_z(w) = (w - z) / (1 - conj(z) w)`` vanishing at ``z``."""
    z = complex(z)
    if not abs(z) < 1.0:
        raise InnerSpecError(f"Mobius point must lie in the open disk, got |z| = {abs(z)}")
    return InnerFunctionSpec(0.0, 0, (z,))


ONE = InnerFunctionSpec()
