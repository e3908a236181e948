"""Partially-conformal maps of the unit polydisc and the class S^(inf).

A partially-conformal map acts by one univalent function per coordinate,
F(Z) = (f_1(z_1), f_2(z_2), ...), with delta < |f_k'(0)| < 1/delta.  When
every f_k is normalized (f_k(0) = 0, f_k'(0) = 1) the map lies in S^(inf)
and the classical growth, distortion and coefficient bounds hold in every
coordinate; the checks below verify them coordinate by coordinate.

Class membership is declared, not tested: catalog members are known to be
univalent and custom members carry a caller-asserted flag.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .core import CSeq, _where, decode_complex, encode_complex
from .errors import NotInClass, OutsideDomain, ParseError, VanishingDerivative

EQ_TOL = 1e-9

KINDS = ("koebe", "identity", "geometric", "custom", "composed")


@dataclass(frozen=True)
class ScalarUnivalent:
    """One coordinate function f: unit disc -> C, times an optional ``scale``."""

    kind: str
    theta: float = 0.0
    coeffs: tuple = ()
    univalent: bool = True
    scale: complex = 1
    outer: ScalarUnivalent | None = None
    inner: ScalarUnivalent | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown univalent kind {self.kind!r}")
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        if self.kind == "composed":
            if self.outer is None or self.inner is None:
                raise ValueError("composed member needs outer and inner")
            if self.inner.coeff(0) != 0:
                raise ValueError("inner map must fix 0 for coefficient composition")

    @classmethod
    def koebe(cls, theta: float = 0.0) -> ScalarUnivalent:
        """k_theta(z) = z (1 - e^{i theta} z)^-2."""
        return cls("koebe", theta=float(theta))

    @classmethod
    def identity(cls) -> ScalarUnivalent:
        return cls("identity")

    @classmethod
    def geometric(cls) -> ScalarUnivalent:
        """z / (1 - z)."""
        return cls("geometric")

    @classmethod
    def custom(cls, coeffs: Sequence[complex], univalent: bool) -> ScalarUnivalent:
        """Polynomial sum_n coeffs[n] z^n with a caller-asserted univalence flag."""
        return cls("custom", coeffs=tuple(coeffs), univalent=bool(univalent))

    @classmethod
    def composed(cls, outer: ScalarUnivalent, inner: ScalarUnivalent) -> ScalarUnivalent:
        """outer(inner(z)); ``inner`` must fix 0.

        The composite is flagged univalent only when that is certain: both
        factors univalent and either ``outer`` is a multiple of the identity
        (univalent on all of C) or ``inner`` is c*z with |c| <= 1, so the
        disc lands inside the disc where ``outer`` is univalent.
        """
        safe = outer.kind == "identity" or (inner.kind == "identity" and abs(inner.scale) <= 1)
        return cls("composed", univalent=outer.univalent and inner.univalent and safe,
                   outer=outer, inner=inner)

    def scaled(self, c: complex) -> ScalarUnivalent:
        return dataclasses.replace(self, scale=self.scale * c)

    @property
    def is_koebe_rotation(self) -> bool:
        return self.kind == "koebe" and self.scale == 1

    @property
    def in_class_s(self) -> bool:
        return self.univalent and self.coeff(0) == 0 and self.coeff(1) == 1

    def _rot(self) -> complex:
        return 1 if self.theta == 0 else cmath.exp(1j * self.theta)

    def coeff(self, n: int):
        """n-th Taylor coefficient; exact ``int`` whenever the member has integer coefficients."""
        if n < 0:
            raise ValueError("coefficient order must be >= 0")
        if self.kind == "koebe":
            base = n if self.theta == 0 else n * cmath.exp(1j * (n - 1) * self.theta)
        elif self.kind == "identity":
            base = 1 if n == 1 else 0
        elif self.kind == "geometric":
            base = 1 if n >= 1 else 0
        elif self.kind == "custom":
            base = self.coeffs[n] if n < len(self.coeffs) else 0
        else:
            base = _compose_coeffs(self.outer, self.inner, n)[n]
        return base if self.scale == 1 else self.scale * base

    def __call__(self, z: complex) -> complex:
        if self.kind == "koebe":
            v = z / (1 - self._rot() * z) ** 2
        elif self.kind == "identity":
            v = z
        elif self.kind == "geometric":
            v = z / (1 - z)
        elif self.kind == "custom":
            v = 0j
            for a in reversed(self.coeffs):
                v = v * z + a
        else:
            v = self.outer(self.inner(z))
        return self.scale * v

    def deriv(self, z: complex) -> complex:
        if self.kind == "koebe":
            w = self._rot() * z
            v = (1 + w) / (1 - w) ** 3
        elif self.kind == "identity":
            v = 1
        elif self.kind == "geometric":
            v = 1 / (1 - z) ** 2
        elif self.kind == "custom":
            v = 0j
            for n in range(len(self.coeffs) - 1, 0, -1):
                v = v * z + n * self.coeffs[n]
        else:
            v = self.outer.deriv(self.inner(z)) * self.inner.deriv(z)
        return self.scale * complex(v)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == "koebe":
            out["theta"] = self.theta
        elif self.kind == "custom":
            out["coeffs"] = [encode_complex(complex(a)) for a in self.coeffs]
            out["univalent"] = self.univalent
        elif self.kind == "composed":
            out["outer"] = self.outer.to_json()
            out["inner"] = self.inner.to_json()
        if self.scale != 1:
            out["scale"] = encode_complex(complex(self.scale))
        return out

    @classmethod
    def from_json(cls, obj: Any) -> ScalarUnivalent:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError("univalent member must be an object with a 'kind'")
        kind = obj["kind"]
        try:
            if kind == "koebe":
                f = cls.koebe(float(obj.get("theta", 0.0)))
            elif kind == "identity":
                f = cls.identity()
            elif kind == "geometric":
                f = cls.geometric()
            elif kind == "custom":
                f = cls.custom([decode_complex(a) for a in obj["coeffs"]], bool(obj["univalent"]))
            elif kind == "composed":
                f = cls.composed(cls.from_json(obj["outer"]), cls.from_json(obj["inner"]))
            else:
                raise ParseError(f"unknown univalent kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad univalent member: {exc}") from exc
        if "scale" in obj:
            f = f.scaled(decode_complex(obj["scale"]))
        return f


def _compose_coeffs(outer: ScalarUnivalent, inner: ScalarUnivalent, n: int) -> list:
    """Coefficients 0..n of outer(inner(z)) for inner(0) = 0 (exact for integer inputs)."""
    b = [inner.coeff(j) for j in range(n + 1)]
    out = [outer.coeff(0)] + [0] * n
    power = [1] + [0] * n  # coefficients of inner(z)^j, truncated at degree n
    for j in range(1, n + 1):
        power = [sum(power[i] * b[d - i] for i in range(d + 1)) for d in range(n + 1)]
        a = outer.coeff(j)
        if a != 0:
            for d in range(n + 1):
                out[d] += a * power[d]
    return out


IDENTITY = ScalarUnivalent.identity()


@dataclass(frozen=True)
class PartiallyConformalMap:
    """Per-coordinate assignment: ``head`` members, then ``tail`` for every later coordinate.

    ``delta`` is optional; when given it must satisfy delta < |f_k'(0)| < 1/delta
    in every coordinate.
    """

    head: tuple[ScalarUnivalent, ...] = ()
    tail: ScalarUnivalent = IDENTITY
    delta: float | None = None

    def __post_init__(self):
        head = tuple(self.head)
        end = len(head)
        while end and head[end - 1] == self.tail:
            end -= 1
        object.__setattr__(self, "head", head[:end])
        if self.delta is not None:
            d = self.delta
            if not d > 0:
                raise ValueError("delta must be positive")
            for k, tl, f in self.members():
                a = abs(f.deriv(0))
                if not d < a < 1 / d:
                    raise ValueError(f"|f'(0)| = {a} violates delta = {d} at {_where(k, tl)}")

    @classmethod
    def uniform(cls, f: ScalarUnivalent, delta: float | None = None) -> PartiallyConformalMap:
        return cls((), f, delta)

    def __getitem__(self, k: int) -> ScalarUnivalent:
        return self.head[k] if k < len(self.head) else self.tail

    def members(self, n: int | None = None) -> Iterator[tuple[int, bool, ScalarUnivalent]]:
        """Representative coordinates (k, in_tail, f_k); ``n`` widens the head window."""
        n = len(self.head) if n is None else max(n, len(self.head))
        for k in range(n):
            yield k, False, self[k]
        yield n, True, self.tail

    def is_class_s(self) -> bool:
        return all(f.in_class_s for _, _, f in self.members())

    def __call__(self, Z: CSeq) -> CSeq:
        return apply(self, Z)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"head": [f.to_json() for f in self.head], "tail": self.tail.to_json()}
        if self.delta is not None:
            out["delta"] = self.delta
        return out

    @classmethod
    def from_json(cls, obj: Any) -> PartiallyConformalMap:
        if not isinstance(obj, dict):
            raise ParseError("map must be a JSON object")
        head = obj.get("head", [])
        if not isinstance(head, list):
            raise ParseError("'head' must be a list")
        try:
            return cls(tuple(ScalarUnivalent.from_json(f) for f in head),
                       ScalarUnivalent.from_json(obj.get("tail", {"kind": "identity"})),
                       obj.get("delta"))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class CoeffVector:
    n: int
    value: CSeq


def _label(k: int, in_tail: bool):
    return "tail" if in_tail else k


def _pairs(F: PartiallyConformalMap, Z: CSeq):
    n = max(len(F.head), len(Z.head))
    for k, in_tail, f in F.members(n):
        yield k, in_tail, f, Z[k]


def _require_polydisc(F: PartiallyConformalMap, Z: CSeq) -> None:
    for k, in_tail, _, z in _pairs(F, Z):
        if abs(z) >= 1:
            raise OutsideDomain(f"|z| = {abs(z)} >= 1 at {_where(k, in_tail)}", k, in_tail)


def _require_class_s(F: PartiallyConformalMap) -> None:
    for k, in_tail, f in F.members():
        if not f.in_class_s:
            raise NotInClass(f"coordinate function at {_where(k, in_tail)} is not in class S")


def delta_of(F: PartiallyConformalMap) -> float:
    """Supremal admissible margin: min over coordinates of min(|f_k'(0)|, 1/|f_k'(0)|)."""
    best = math.inf
    for k, in_tail, f in F.members():
        a = abs(f.deriv(0))
        if a == 0:
            raise VanishingDerivative(f"f'(0) = 0 at {_where(k, in_tail)}", k, in_tail)
        best = min(best, a, 1 / a)
    return best


def apply(F: PartiallyConformalMap, Z: CSeq) -> CSeq:
    _require_polydisc(F, Z)
    return CSeq.from_coords([f(z) for _, _, f, z in _pairs(F, Z)])


def derivative(F: PartiallyConformalMap, Z: CSeq) -> CSeq:
    """F'(Z) = (f_1'(z_1), f_2'(z_2), ...)."""
    _require_polydisc(F, Z)
    return CSeq.from_coords([f.deriv(z) for _, _, f, z in _pairs(F, Z)])


def growth_bounds(r: float) -> tuple[float, float]:
    """(r/(1+r)^2, r/(1-r)^2)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r >= 1:
        raise OutsideDomain(f"r = {r} must be < 1")
    return r / (1 + r) ** 2, r / (1 - r) ** 2


def distortion_bounds(r: float) -> tuple[float, float]:
    """((1-r)/(1+r)^3, (1+r)/(1-r)^3)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r >= 1:
        raise OutsideDomain(f"r = {r} must be < 1")
    return (1 - r) / (1 + r) ** 3, (1 + r) / (1 - r) ** 3


@dataclass
class BoundReport:
    bound: str
    violations: list[dict] = field(default_factory=list)
    equalities: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    lower: list = field(default_factory=list)
    extremal: bool = False
    koebe_consistent: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"bound": self.bound, "ok": self.ok, "violations": self.violations,
                "equalities": self.equalities, "upper": self.upper, "lower": self.lower,
                "extremal": self.extremal, "koebe_consistent": self.koebe_consistent}


def _check_bound(name: str, F: PartiallyConformalMap, Z: CSeq, value_of, bounds_of,
                 slack: float, eq_tol: float) -> BoundReport:
    _require_class_s(F)
    _require_polydisc(F, Z)
    rep = BoundReport(name)
    for k, in_tail, f, z in _pairs(F, Z):
        r = abs(z)
        lo, hi = bounds_of(r)
        value = abs(value_of(f, z))
        label = _label(k, in_tail)
        if value < lo - slack or value > hi + slack:
            rep.violations.append({"k": label, "value": value, "lo": lo, "hi": hi})
        if r == 0:
            continue  # lo == hi there; equality carries no information
        hit = False
        if abs(value - hi) <= eq_tol:
            rep.upper.append(label)
            hit = True
        if abs(value - lo) <= eq_tol:
            rep.lower.append(label)
            hit = True
        if hit:
            rep.equalities.append(label)
            rep.koebe_consistent &= f.is_koebe_rotation
    rep.extremal = bool(rep.equalities) and rep.koebe_consistent
    return rep


def check_growth(F: PartiallyConformalMap, Z: CSeq, slack: float = EQ_TOL,
                 eq_tol: float = EQ_TOL) -> BoundReport:
    """lo(|z_k|) <= |f_k(z_k)| <= hi(|z_k|) in every coordinate."""
    return _check_bound("growth", F, Z, lambda f, z: f(z), growth_bounds, slack, eq_tol)


def check_distortion(F: PartiallyConformalMap, Z: CSeq, slack: float = EQ_TOL,
                     eq_tol: float = EQ_TOL) -> BoundReport:
    """(1-r)/(1+r)^3 <= |f_k'(z_k)| <= (1+r)/(1-r)^3 with r = |z_k|.

    This is the classical one-variable form applied per coordinate.
    """
    return _check_bound("distortion", F, Z, lambda f, z: f.deriv(z), distortion_bounds,
                        slack, eq_tol)


def taylor_coeff(F: PartiallyConformalMap, n: int) -> CoeffVector:
    """A_n = (a_n^(1), a_n^(2), ...)."""
    if n < 1:
        raise ValueError("coefficient order must be >= 1")
    return CoeffVector(n, CSeq.from_coords([f.coeff(n) for _, _, f in F.members()]))


def check_bieberbach(F: PartiallyConformalMap, n_max: int, tol: float = EQ_TOL) -> BoundReport:
    """|A_n| <= n * 1 for 2 <= n <= n_max.

    ``equalities`` lists coordinates with |a_n| = n at every tested order;
    ``extremal`` is true when that holds in every coordinate, i.e. equality
    in the vector inequality itself.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    _require_class_s(F)
    rep = BoundReport("bieberbach")
    all_equal = True
    for k, in_tail, f in F.members():
        label = _label(k, in_tail)
        every = True
        for n in range(2, n_max + 1):
            a = f.coeff(n)
            mod = abs(a)
            if isinstance(a, int):
                over, equal = mod > n, mod == n
            else:
                over, equal = mod > n + tol, abs(mod - n) <= tol
            if over:
                rep.violations.append({"k": label, "n": n, "value": mod, "lo": 0.0, "hi": float(n)})
            every &= equal
        if every:
            rep.equalities.append(label)
            rep.upper.append(label)
            rep.koebe_consistent &= f.is_koebe_rotation
        all_equal &= every
    rep.extremal = all_equal
    return rep
