"""Catalog planar domains and the polycylindrical Riemann map.

Each coordinate domain of a polycylinder B = B_1 x B_2 x ... comes with a
closed-form conformal map f_k onto the unit disc normalized by f_k(a_k) = 0,
f_k'(a_k) > 0.  The inner radius is r(B_k, a_k) = 1/f_k'(a_k); at the point
at infinity derivatives and radii are taken in the local coordinate w = 1/z.

Only simply connected catalog domains are supported: discs, half-planes and
disc exteriors (the latter contain infinity).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterator

from .core import INF, CSeq, ExtCSeq, Order, RSeq, _where, compare, decode_complex, encode_complex
from .errors import InfinityUnsupported, OutsideDomain, ParseError, PointOutsideDomain

Point = complex  # or INF


class PlanarDomain:
    """Base class for catalog domains in the extended plane."""

    kind: str = ""

    def contains(self, z) -> bool:
        raise NotImplementedError

    def _radius(self, a) -> float:
        raise NotImplementedError

    def _map(self, a) -> CoordMap:
        raise NotImplementedError

    def _require(self, a) -> None:
        if a is INF and not self.contains(INF):
            raise InfinityUnsupported(f"{self!r} does not contain infinity")
        if not self.contains(a):
            raise PointOutsideDomain(f"{a!r} is not in {self!r}")

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_json(obj: Any) -> PlanarDomain:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError("domain must be an object with a 'kind'")
        kind = obj["kind"]
        try:
            if kind == "unit_disc":
                return UnitDisc()
            if kind == "disc":
                return Disc(decode_complex(obj.get("center", 0)), float(obj["radius"]))
            if kind == "exterior_disc":
                return ExteriorDisc(decode_complex(obj.get("center", 0)), float(obj["radius"]))
            if kind == "half_plane":
                return HalfPlane(float(obj.get("angle", 0.0)), float(obj.get("offset", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad {kind} domain: {exc}") from exc
        raise ParseError(f"unknown domain kind {kind!r}")


@dataclass(frozen=True)
class CoordMap:
    """Normalized conformal map of one coordinate domain onto the unit disc.

    ``deriv`` is d f/dz at finite points and d f/dw, w = 1/z, at infinity.
    """

    domain: PlanarDomain
    base: Point
    f: Callable[[Point], complex]
    deriv: Callable[[Point], complex]
    inverse: Callable[[complex], Point]

    @property
    def derivative_at_base(self) -> float:
        return self.deriv(self.base).real

    def __call__(self, z) -> complex:
        return self.f(z)


def _disc_automorphism(b: complex):
    """u -> (u - b)/(1 - conj(b) u) with its derivative and inverse."""
    bc = b.conjugate()
    return (lambda u: (u - b) / (1 - bc * u),
            lambda u: (1 - abs(b) ** 2) / (1 - bc * u) ** 2,
            lambda v: (v + b) / (1 + bc * v))


@dataclass(frozen=True)
class Disc(PlanarDomain):
    center: complex = 0j
    radius: float = 1.0

    kind = "disc"

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise ValueError("disc radius must be positive and finite")

    def contains(self, z) -> bool:
        return z is not INF and abs(z - self.center) < self.radius

    def _radius(self, a) -> float:
        return self.radius - abs(a - self.center) ** 2 / self.radius

    def _map(self, a) -> CoordMap:
        c, R = self.center, self.radius
        m, dm, minv = _disc_automorphism((a - c) / R)
        return CoordMap(self, a,
                        lambda z: m((z - c) / R),
                        lambda z: dm((z - c) / R) / R,
                        lambda w: c + R * minv(w))

    def to_json(self) -> dict:
        return {"kind": "disc", "center": encode_complex(self.center), "radius": self.radius}


class UnitDisc(Disc):
    kind = "unit_disc"

    def __init__(self):
        super().__init__(0j, 1.0)

    def __repr__(self) -> str:
        return "UnitDisc()"

    def to_json(self) -> dict:
        return {"kind": "unit_disc"}


@dataclass(frozen=True)
class HalfPlane(PlanarDomain):
    """{z : Re(e^{-i angle} z) > offset}; ``angle`` is the direction of the inward normal."""

    angle: float = 0.0
    offset: float = 0.0

    kind = "half_plane"

    @property
    def normal(self) -> complex:
        return cmath.exp(1j * self.angle)

    def _s(self, z: complex) -> complex:
        return z / self.normal - self.offset

    def contains(self, z) -> bool:
        return z is not INF and self._s(z).real > 0

    def _radius(self, a) -> float:
        return 2 * self._s(a).real

    def _map(self, a) -> CoordMap:
        e = self.normal
        al = self._s(a)
        alc = al.conjugate()

        def f(z):
            s = self._s(z)
            return e * (s - al) / (s + alc)

        def df(z):
            s = self._s(z)
            return (al + alc) / (s + alc) ** 2

        def inv(w):
            v = w / e
            return e * ((al + v * alc) / (1 - v) + self.offset)

        return CoordMap(self, a, f, df, inv)

    def to_json(self) -> dict:
        return {"kind": "half_plane", "angle": self.angle, "offset": self.offset}


@dataclass(frozen=True)
class ExteriorDisc(PlanarDomain):
    """{z : |z - center| > radius} together with the point at infinity."""

    center: complex = 0j
    radius: float = 1.0

    kind = "exterior_disc"

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise ValueError("disc radius must be positive and finite")

    def contains(self, z) -> bool:
        return z is INF or abs(z - self.center) > self.radius

    def _radius(self, a) -> float:
        if a is INF:
            return 1 / self.radius
        return abs(a - self.center) ** 2 / self.radius - self.radius

    def _map(self, a) -> CoordMap:
        c, R = self.center, self.radius

        def u(z):
            return 0j if z is INF else R / (z - c)

        def du(z):
            # d u/dw at infinity (w = 1/z) is R
            return complex(R) if z is INF else -R / (z - c) ** 2

        def from_u(v):
            return INF if v == 0 else c + R / v

        if a is INF:
            return CoordMap(self, a, u, du, from_u)
        s = a - c
        lam = -s / s.conjugate()
        m, dm, minv = _disc_automorphism(R / s)
        return CoordMap(self, a,
                        lambda z: lam * m(u(z)),
                        lambda z: lam * dm(u(z)) * du(z),
                        lambda w: from_u(minv(w / lam)))

    def to_json(self) -> dict:
        return {"kind": "exterior_disc", "center": encode_complex(self.center),
                "radius": self.radius}


def inner_radius(B: PlanarDomain, a) -> float:
    """Conformal radius r(B, a) from its closed form."""
    B._require(a)
    return B._radius(a)


def riemann_map_coord(B: PlanarDomain, a) -> CoordMap:
    """Closed-form f: B -> unit disc with f(a) = 0 and f'(a) > 0."""
    B._require(a)
    return B._map(a)


@dataclass(frozen=True)
class Polycylinder:
    """B = B_1 x B_2 x ... (head domains then a repeated tail domain) with base point A."""

    head: tuple[PlanarDomain, ...]
    tail: PlanarDomain
    base: ExtCSeq

    def __post_init__(self):
        head = tuple(self.head)
        end = len(head)
        while end and head[end - 1] == self.tail:
            end -= 1
        object.__setattr__(self, "head", head[:end])
        base = self.base
        if isinstance(base, CSeq):
            base = base.to_ext()
        object.__setattr__(self, "base", base)
        for k, in_tail, B, a in self.members():
            if not B.contains(a):
                err = InfinityUnsupported if a is INF else PointOutsideDomain
                raise err(f"base point {a!r} not in {B!r} at {_where(k, in_tail)}", k, in_tail)

    @classmethod
    def uniform(cls, B: PlanarDomain, base=None) -> Polycylinder:
        return cls((), B, ExtCSeq() if base is None else base)

    @property
    def span(self) -> int:
        return max(len(self.head), len(self.base.head))

    def domain(self, k: int) -> PlanarDomain:
        return self.head[k] if k < len(self.head) else self.tail

    def members(self, n: int | None = None) -> Iterator[tuple[int, bool, PlanarDomain, Any]]:
        """(k, in_tail, B_k, a_k) for each representative coordinate."""
        n = self.span if n is None else max(n, self.span)
        for k in range(n):
            yield k, False, self.domain(k), self.base[k]
        yield n, True, self.tail, self.base.tail

    def to_json(self) -> dict:
        return {"domains": {"head": [B.to_json() for B in self.head], "tail": self.tail.to_json()},
                "base": self.base.to_json()}

    @classmethod
    def from_json(cls, obj: Any) -> Polycylinder:
        if not isinstance(obj, dict) or "domains" not in obj:
            raise ParseError("polycylinder must be an object with 'domains'")
        doms = obj["domains"]
        if not isinstance(doms, dict) or "tail" not in doms:
            raise ParseError("'domains' must be an object with 'head' and 'tail'")
        head = doms.get("head", [])
        if not isinstance(head, list):
            raise ParseError("'domains.head' must be a list")
        return cls(tuple(PlanarDomain.from_json(d) for d in head),
                   PlanarDomain.from_json(doms["tail"]),
                   ExtCSeq.from_json(obj.get("base", {"head": [], "tail": {"kind": "zero"}})))


def radii(P: Polycylinder) -> RSeq:
    """(r(B_1, a_1), r(B_2, a_2), ...)."""
    return RSeq.from_coords([inner_radius(B, a) for _, _, B, a in P.members()])


def is_finite_relative(P: Polycylinder, delta: float) -> bool:
    """delta < r(B_k, a_k) < 1/delta for every coordinate."""
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    return all(delta < r < 1 / delta for r in radii(P).coords())


@dataclass(frozen=True)
class PolyRiemannMap:
    """F_B(Z) = (f_1(z_1), f_2(z_2), ...) onto the unit polydisc."""

    cylinder: Polycylinder
    head: tuple[CoordMap, ...]
    tail: CoordMap

    def coord(self, k: int) -> CoordMap:
        return self.head[k] if k < len(self.head) else self.tail

    def _cols(self, Z):
        n = max(len(self.head), len(Z.head))
        for k in range(n + 1):
            in_tail = k == n
            yield k, in_tail, (self.tail if in_tail else self.coord(k)), (Z.tail if in_tail else Z[k])

    def __call__(self, Z) -> CSeq:
        if isinstance(Z, CSeq):
            Z = Z.to_ext()
        out = []
        for k, in_tail, m, z in self._cols(Z):
            if not m.domain.contains(z):
                raise PointOutsideDomain(f"{z!r} not in {m.domain!r} at {_where(k, in_tail)}",
                                         k, in_tail)
            out.append(m.f(z))
        return CSeq.from_coords(out)

    def derivative(self, Z) -> CSeq:
        """F_B'(Z); coordinates at infinity use w = 1/z."""
        if isinstance(Z, CSeq):
            Z = Z.to_ext()
        out = []
        for k, in_tail, m, z in self._cols(Z):
            if not m.domain.contains(z):
                raise PointOutsideDomain(f"{z!r} not in {m.domain!r} at {_where(k, in_tail)}",
                                         k, in_tail)
            out.append(m.deriv(z))
        return CSeq.from_coords(out)

    def at_base(self) -> CSeq:
        return self(self.cylinder.base)

    def derivative_at_base(self) -> RSeq:
        return RSeq.from_coords([m.derivative_at_base for m in self.head + (self.tail,)])

    def inverse(self, W: CSeq):
        return riemann_map_inverse(self, W)

    def is_normalized(self, tol: float = 0.0) -> bool:
        """F_B(A) = O within ``tol`` and every coordinate of F_B'(A) real and > 0."""
        FA = self.at_base()
        dA = self.derivative(self.cylinder.base)
        real_pos = all(abs(d.imag) <= tol and d.real > 0 for d in dA.coords())
        return (max(abs(v) for v in FA.coords()) <= tol and real_pos
                and compare(self.derivative_at_base(), RSeq(), positivity="all") is Order.GT)


def riemann_map(P: Polycylinder) -> PolyRiemannMap:
    n = P.span
    maps = [riemann_map_coord(B, a) for _, _, B, a in P.members(n)]
    return PolyRiemannMap(P, tuple(maps[:-1]), maps[-1])


def riemann_map_inverse(F: PolyRiemannMap | Polycylinder, W: CSeq):
    """G = F_B^{-1} on the unit polydisc.

    Returns a :class:`CSeq` when every coordinate is finite and an
    :class:`ExtCSeq` when some coordinate is the point at infinity.
    """
    if isinstance(F, Polycylinder):
        F = riemann_map(F)
    n = max(len(F.head), len(W.head))
    out = []
    for k in range(n + 1):
        in_tail = k == n
        w = W.tail if in_tail else W[k]
        if abs(w) >= 1:
            raise OutsideDomain(f"|w| = {abs(w)} >= 1 at {_where(k, in_tail)}", k, in_tail)
        out.append((F.tail if in_tail else F.coord(k)).inverse(w))
    if any(v is INF for v in out):
        return ExtCSeq.from_coords(out)
    return CSeq.from_coords(out)
