"""Vector power series F(Z) = sum_p A_p Z^p and the elementary-function catalog.

Coefficients are sequences, powers are componentwise, so coordinate k of the
sum is the scalar series sum_p a_p^(k) z_k^p.  A coefficient growth bound
that does not depend on k makes every tail estimate uniform in the
coordinate index, which is what certifies uniform convergence inside the
polydisc.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .core import (CSeq, as_cseq, cexp, cinv, cmodulus, cmul, _indexed,
                   _where, span)
from .errors import (GrowthBoundViolated, NoGrowthBound, OutsideDomain, ParseError,
                     RadiusBoundary, ThetaMember)

DEFAULT_ORDER = 128

GROWTH_KINDS = ("geometric", "polynomial", "factorial")


@dataclass(frozen=True)
class Growth:
    """Declared bound on the coefficients, uniform in the coordinate index.

    geometric:  |a_p| <= M rho^-p
    polynomial: |a_p| <= M p^degree
    factorial:  |a_p| <= M / p!
    """

    kind: str
    M: float = 1.0
    rho: float = 1.0
    degree: float = 0.0

    def __post_init__(self):
        if self.kind not in GROWTH_KINDS:
            raise ValueError(f"unknown growth kind {self.kind!r}")
        if not self.M >= 0 or not self.rho > 0:
            raise ValueError("growth needs M >= 0 and rho > 0")

    def coeff_bound(self, p: int) -> float:
        if self.kind == "geometric":
            return self.M * self.rho ** (-p)
        if self.kind == "polynomial":
            return self.M * float(p) ** self.degree
        return self.M * math.exp(-math.lgamma(p + 1))

    @property
    def radius(self) -> float:
        """Radius of convergence guaranteed by the bound."""
        if self.kind == "geometric":
            return self.rho
        if self.kind == "polynomial":
            return 1.0
        return math.inf

    def tail(self, P: int, r: float) -> float:
        """Upper bound for sum_{p > P} |a_p| r^p."""
        if r == 0 or self.M == 0:
            return 0.0
        if r >= self.radius:
            return math.inf
        if self.kind == "geometric":
            q = r / self.rho
            return self.M * q ** (P + 1) / (1 - q)
        if self.kind == "polynomial":
            d = self.degree
            if d == 0:
                return self.M * r ** (P + 1) / (1 - r)
            if d == 1:
                # sum_{p>P} p r^p in closed form
                return self.M * r ** (P + 1) * ((P + 1) - P * r) / (1 - r) ** 2
            q = max(((P + 2) / (P + 1)) ** d, 1.0) * r
            if q >= 1:
                return math.inf
            return self.M * (P + 1) ** d * r ** (P + 1) / (1 - q)
        # factorial: r^(P+1)/(P+1)! times min(e^r, 1/(1 - r/(P+2)))
        lead = math.exp((P + 1) * math.log(r) - math.lgamma(P + 2))
        q = r / (P + 2)
        factor = math.exp(r) if q >= 1 else min(math.exp(r), 1 / (1 - q))
        return self.M * lead * factor

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "M": self.M}
        if self.kind == "geometric":
            out["rho"] = self.rho
        elif self.kind == "polynomial":
            out["degree"] = self.degree
        return out

    @classmethod
    def from_json(cls, obj: Any) -> Growth:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError("growth must be an object with a 'kind'")
        try:
            return cls(obj["kind"], float(obj.get("M", 1.0)), float(obj.get("rho", 1.0)),
                       float(obj.get("degree", 0.0)))
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class VectorPowerSeries:
    coeffs: tuple[CSeq, ...]
    growth: Growth | None = None

    def __post_init__(self):
        coeffs = tuple(as_cseq(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        if self.growth is not None:
            for p, A in enumerate(coeffs):
                bound = self.growth.coeff_bound(p)
                worst = max(abs(a) for a in A.coords())
                if worst > bound * (1 + 1e-12):
                    raise GrowthBoundViolated(
                        f"|a_{p}| = {worst} exceeds the declared bound {bound}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, Z: CSeq) -> CSeq:
        return series_eval(self, Z).value

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs],
                "growth": None if self.growth is None else self.growth.to_json()}

    @classmethod
    def from_json(cls, obj: Any) -> VectorPowerSeries:
        if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), list):
            raise ParseError("series must be an object with a 'coeffs' list")
        growth = obj.get("growth")
        return cls(tuple(CSeq.from_json(c) for c in obj["coeffs"]),
                   None if growth is None else Growth.from_json(growth))


@dataclass(frozen=True)
class SeriesValue:
    value: CSeq
    tail_bound: float
    order: int

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.tail_bound)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(),
                "tail_bound": self.tail_bound if self.bounded else "unbounded",
                "order": self.order}


@dataclass(frozen=True)
class ConvergenceCertificate:
    radius: float
    epsilon: float
    order_needed: int
    tail_bound: float

    def to_json(self) -> dict:
        return {"radius": self.radius, "epsilon": self.epsilon,
                "order_needed": self.order_needed, "tail_bound": self.tail_bound}


def _sup_modulus(Z: CSeq) -> float:
    return max(cmodulus(Z).coords())


def series_eval(S: VectorPowerSeries, Z: CSeq, order: int | None = None) -> SeriesValue:
    """Partial sum up to ``order`` (default: every stored coefficient) plus its tail bound.

    The tail bound uses r = sup_k |z_k| and is therefore the same for every
    coordinate.  Without a growth descriptor it is ``inf`` (unbounded).
    """
    P = S.order if order is None else order
    if not 0 <= P <= S.order:
        raise ValueError(f"order {P} outside 0..{S.order}")
    if S.growth is not None:
        R = S.growth.radius
        for k, in_tail, (z,) in _indexed(Z):
            if abs(z) >= R:
                raise OutsideDomain(
                    f"|z| = {abs(z)} >= convergence radius {R} at {_where(k, in_tail)}",
                    k, in_tail)
    coeffs = S.coeffs[:P + 1]
    n = span(Z, *coeffs)
    z = np.array(Z.coords(n), dtype=complex)
    powers = np.ones((P + 1, n + 1), dtype=complex)
    if P:
        powers[1:] = np.cumprod(np.broadcast_to(z, (P, n + 1)), axis=0)
    A = np.array([c.coords(n) for c in coeffs], dtype=complex)
    value = CSeq.from_coords((A * powers).sum(axis=0).tolist())
    tail = math.inf if S.growth is None else S.growth.tail(P, _sup_modulus(Z))
    return SeriesValue(value, tail, P)


def certify_uniform_convergence(S: VectorPowerSeries, r: float, eps: float,
                                max_order: int = 100_000) -> ConvergenceCertificate:
    """Smallest n0 with sup_{||Z|| <= r} ||F_n(Z) - F(Z)|| <= eps for every n >= n0.

    The bound comes from the growth descriptor alone, so it holds for all
    coordinates at once.
    """
    if not 0 < r < 1:
        raise RadiusBoundary(f"radius must satisfy 0 < r < 1, got {r}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if S.growth is None:
        raise NoGrowthBound("uniform convergence needs a coefficient growth descriptor")
    if r >= S.growth.radius:
        raise RadiusBoundary(f"r = {r} is not inside the convergence radius {S.growth.radius}")
    for n in range(max_order + 1):
        t = S.growth.tail(n, r)
        if t <= eps:
            return ConvergenceCertificate(r, eps, n, t)
    raise RadiusBoundary(f"no order <= {max_order} reaches eps = {eps} at r = {r}")


# ---------------------------------------------------------------------------
# catalog series (coefficients constant across coordinates)

def from_scalar_coeffs(coeffs: Sequence[complex], growth: Growth | None = None) -> VectorPowerSeries:
    return VectorPowerSeries(tuple(CSeq.const(c) for c in coeffs), growth)


def exp_series(order: int = DEFAULT_ORDER) -> VectorPowerSeries:
    coeffs, c = [], 1.0
    for p in range(order + 1):
        coeffs.append(c)
        c /= p + 1
    return from_scalar_coeffs(coeffs, Growth("factorial"))


def binomial_sqrt_coeffs(order: int) -> list[float]:
    """Taylor coefficients of (1 - z)^(1/2): 1, -1/2, -1/8, -1/16, ..."""
    out, c = [1.0], 1.0
    for p in range(1, order + 1):
        c *= (p - 1.5) / p
        out.append(c)
    return out


def sqrt_binomial_series(order: int = DEFAULT_ORDER) -> VectorPowerSeries:
    return from_scalar_coeffs(binomial_sqrt_coeffs(order), Growth("geometric", 1.0, 1.0))


def koebe_series(order: int = DEFAULT_ORDER) -> VectorPowerSeries:
    """z/(1-z)^2 = sum p z^p."""
    return from_scalar_coeffs(range(order + 1), Growth("polynomial", 1.0, degree=1.0))


def geometric_series(order: int = DEFAULT_ORDER) -> VectorPowerSeries:
    """z/(1-z) = sum_{p>=1} z^p."""
    return from_scalar_coeffs([0] + [1] * order, Growth("geometric", 1.0, 1.0))


CATALOG_SERIES: dict[str, Callable[[int], VectorPowerSeries]] = {
    "exp": exp_series,
    "sqrt_binomial": sqrt_binomial_series,
    "koebe": koebe_series,
    "geometric": geometric_series,
}


# ---------------------------------------------------------------------------
# elementary maps, evaluated in closed form

def _nonzero(Z: CSeq, what: str) -> None:
    for k, in_tail, (z,) in _indexed(Z):
        if z == 0:
            raise ThetaMember(f"{what} vanishes at {_where(k, in_tail)}", k, in_tail)


def moebius(Z: CSeq, A1=1, A2=0, A3=0, A4=1) -> CSeq:
    """(A1 Z + A2) / (A3 Z + A4)."""
    A1, A2, A3, A4 = (as_cseq(a) for a in (A1, A2, A3, A4))
    den = cmul(A3, Z) + A4
    _nonzero(den, "denominator A3*Z + A4")
    return cmul(cmul(A1, Z) + A2, cinv(den))


def power(Z: CSeq, n: int) -> CSeq:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError("power needs a natural exponent")
    return Z ** n


def zhukovsky(Z: CSeq) -> CSeq:
    _nonzero(Z, "argument")
    return (Z + cinv(Z)) * 0.5


def polynomial(Z: CSeq, coeffs: Sequence) -> CSeq:
    """sum_k A_k Z^k by Horner's rule."""
    if not coeffs:
        raise ValueError("polynomial needs at least one coefficient")
    acc = as_cseq(coeffs[-1])
    for A in reversed(coeffs[:-1]):
        acc = cmul(acc, Z) + as_cseq(A)
    return acc


def reciprocal(Z: CSeq, Z0=0) -> CSeq:
    """1 / (Z - Z0)."""
    d = Z - as_cseq(Z0)
    _nonzero(d, "Z - Z0")
    return cinv(d)


def sqrt_binomial(Z: CSeq) -> CSeq:
    """(1 - Z)^(1/2) on the unit polydisc, principal branch."""
    for k, in_tail, (z,) in _indexed(Z):
        if abs(z) >= 1:
            raise OutsideDomain(f"|z| = {abs(z)} >= 1 at {_where(k, in_tail)}", k, in_tail)
    return Z._map(lambda z: cmath.sqrt(1 - z))


ELEMENTARY: dict[str, Callable[..., CSeq]] = {
    "moebius": moebius,
    "power": power,
    "zhukovsky": zhukovsky,
    "polynomial": polynomial,
    "reciprocal": reciprocal,
    "exp": cexp,
    "sqrt_binomial": sqrt_binomial,
}


def elementary_map(kind: str, Z: CSeq, **params) -> CSeq:
    """Evaluate a catalog elementary function componentwise.

    >>> elementary_map("zhukovsky", CSeq.one()) == CSeq.one()
    True
    """
    try:
        fn = ELEMENTARY[kind]
    except KeyError:
        raise ValueError(f"unknown elementary map {kind!r}; expected one of {sorted(ELEMENTARY)}")
    return fn(as_cseq(Z), **params)


__all__ = [
    "Growth", "VectorPowerSeries", "SeriesValue", "ConvergenceCertificate",
    "series_eval", "certify_uniform_convergence", "from_scalar_coeffs", "exp_series",
    "sqrt_binomial_series", "koebe_series", "geometric_series", "binomial_sqrt_coeffs",
    "CATALOG_SERIES", "moebius", "power", "zhukovsky", "polynomial", "reciprocal",
    "sqrt_binomial", "ELEMENTARY", "elementary_map",
]
