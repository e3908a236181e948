"""Finite-difference verification of the block Cauchy-Riemann system.

A map F = U + iV of n complex variables has the real 2m x 2n Jacobian

    | U_X  U_Y |
    | V_X  V_Y |

and is holomorphic exactly when U_X = V_Y and U_Y = -V_X.  Infinite
dimensional maps are checked on a finite window of coordinates; see
:func:`window_map` for how the constant tail is folded into one extra
coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .core import CSeq, encode_complex, get_depth_cap
from .errors import CInftyError, EvalFailure, ShapeMismatch

DEFAULT_STEP = 1e-5
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class TruncatedMap:
    """A map C^n_in -> C^m_out given by a vector function.

    ``eval`` must be deterministic and safe to call concurrently.
    """

    n_in: int
    m_out: int
    eval: Callable[[np.ndarray], Sequence[complex]]
    name: str = ""

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.n_in,):
            raise ShapeMismatch(f"expected input of length {self.n_in}, got shape {z.shape}")
        try:
            out = np.asarray(self.eval(z), dtype=complex)
        except ShapeMismatch:
            raise
        except (CInftyError, ArithmeticError, ValueError) as exc:
            raise EvalFailure(f"{self.name or 'map'} undefined at {z.tolist()}: {exc}") from exc
        if out.shape != (self.m_out,):
            raise ShapeMismatch(f"expected output of length {self.m_out}, got shape {out.shape}")
        if not np.all(np.isfinite(out)):
            raise EvalFailure(f"{self.name or 'map'} is not finite at {z.tolist()}")
        return out


@dataclass(frozen=True)
class JacobianBlocks:
    ux: np.ndarray
    uy: np.ndarray
    vx: np.ndarray
    vy: np.ndarray

    def __post_init__(self):
        shapes = {b.shape for b in (self.ux, self.uy, self.vx, self.vy)}
        if len(shapes) != 1:
            raise ShapeMismatch(f"inconsistent block shapes {sorted(shapes)}")
        if not all(np.all(np.isfinite(b)) for b in (self.ux, self.uy, self.vx, self.vy)):
            raise ValueError("Jacobian blocks must be finite")

    @property
    def shape(self) -> tuple[int, int]:
        return self.ux.shape

    def full(self) -> np.ndarray:
        """The real 2m x 2n Jacobian."""
        return np.block([[self.ux, self.uy], [self.vx, self.vy]])

    def complex_derivative(self) -> np.ndarray:
        """dF/dz = U_X + i V_X; meaningful when the CR system holds."""
        return self.ux + 1j * self.vx


def fd_jacobian(F: TruncatedMap, Z0, h: float = DEFAULT_STEP) -> JacobianBlocks:
    """Central-difference estimate of the four Jacobian blocks at ``Z0``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    z0 = np.asarray(Z0, dtype=complex)
    n, m = F.n_in, F.m_out
    dx = np.empty((m, n), dtype=complex)
    dy = np.empty((m, n), dtype=complex)
    for p in range(n):
        e = np.zeros(n, dtype=complex)
        e[p] = h
        dx[:, p] = (F(z0 + e) - F(z0 - e)) / (2 * h)
        dy[:, p] = (F(z0 + 1j * e) - F(z0 - 1j * e)) / (2 * h)
    return JacobianBlocks(dx.real.copy(), dy.real.copy(), dx.imag.copy(), dy.imag.copy())


def cr_residual(J: JacobianBlocks) -> float:
    """max |U_X - V_Y| and |U_Y + V_X| over all entries."""
    return float(max(np.max(np.abs(J.ux - J.vy), initial=0.0),
                     np.max(np.abs(J.uy + J.vx), initial=0.0)))


def diagonality_defect(J: JacobianBlocks) -> float:
    """Largest off-diagonal entry across the four blocks."""
    m, n = J.shape
    if m != n:
        raise ShapeMismatch(f"diagonality needs square blocks, got {m}x{n}")
    mask = ~np.eye(n, dtype=bool)
    return float(max(np.max(np.abs(b[mask]), initial=0.0)
                     for b in (J.ux, J.uy, J.vx, J.vy)))


@dataclass
class HolomorphyReport:
    holomorphic: bool
    residual: float
    worst_sample: list[complex] | None
    n_samples: int
    tol: float
    h: float
    residuals: list[float] = field(default_factory=list, repr=False)

    @property
    def vacuous(self) -> bool:
        return self.n_samples == 0

    def to_json(self) -> dict:
        return {
            "holomorphic": self.holomorphic,
            "residual": self.residual,
            "worst_sample": None if self.worst_sample is None
            else [encode_complex(z) for z in self.worst_sample],
            "samples": self.n_samples,
            "vacuous": self.vacuous,
            "tol": self.tol,
            "h": self.h,
        }


def is_holomorphic_numeric(F: TruncatedMap, samples, h: float = DEFAULT_STEP,
                           tol: float = DEFAULT_TOL) -> HolomorphyReport:
    """Check the CR system at every sample; an empty sample list passes vacuously."""
    worst, worst_z = 0.0, None
    residuals = []
    for z in samples:
        r = cr_residual(fd_jacobian(F, z, h))
        residuals.append(r)
        if worst_z is None or r > worst:
            worst, worst_z = r, [complex(v) for v in np.asarray(z, dtype=complex)]
    return HolomorphyReport(worst <= tol, worst, worst_z, len(residuals), tol, h, residuals)


def polydisc_samples(n: int, count: int, radius: float = 0.5, seed: int = 0) -> np.ndarray:
    """Scrambled Halton points, area-uniform in the closed polydisc |z_k| <= radius."""
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1)")
    if count == 0:
        return np.empty((0, n), dtype=complex)
    u = qmc.Halton(d=2 * n, scramble=True, seed=seed).random(count)
    mod = radius * np.sqrt(u[:, :n])
    return mod * np.exp(2j * np.pi * u[:, n:])


def diagonal_map(f: Callable[[complex], complex] | Sequence[Callable[[complex], complex]],
                 n: int, name: str = "") -> TruncatedMap:
    """(z_1..z_n) -> (f_1(z_1), ..., f_n(z_n)); a single ``f`` is used for every coordinate."""
    fs = list(f) if isinstance(f, Sequence) else [f] * n
    if len(fs) != n:
        raise ShapeMismatch(f"{len(fs)} coordinate functions for window {n}")
    return TruncatedMap(n, n, lambda z: [fk(complex(zk)) for fk, zk in zip(fs, z)], name)


def window_map(F: Callable[[CSeq], CSeq], depth: int, name: str = "") -> TruncatedMap:
    """Restrict a map on C^inf to the window of ``depth`` head coordinates plus the tail.

    The last window coordinate is the common value of every coordinate
    ``k >= depth``; perturbing it moves the entire tail together, which is
    exact for maps that treat all tail coordinates alike.
    """
    if depth > get_depth_cap():
        raise ValueError(f"window depth {depth} exceeds the depth cap")

    def ev(v: np.ndarray):
        W = F(CSeq(tuple(v[:depth]), v[depth]))
        if W.depth > depth:
            raise ShapeMismatch(f"output head of length {W.depth} does not fit window {depth}")
        return W.coords(depth)

    return TruncatedMap(depth + 1, depth + 1, ev, name)
