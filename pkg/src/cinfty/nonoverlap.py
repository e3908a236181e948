"""Pairs of non-overlapping polycylinders and the product of inner radii.

For a pair (B1, A1), (B2, A2) whose coordinate domains B1_k, B2_k are
disjoint for every k, the functional J = R(B1, A1) * R(B2, A2) is the
coordinatewise product of the inner-radius vectors.  On the class with
A1 = O and A2 = (inf, inf, ...) it never exceeds 1, and equality holds in a
coordinate exactly when the two domains are a disc |z| < R and its
complement |z| > R.

Membership in the class is decided by exact catalog geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import ExtCSeq, RSeq, _where
from .errors import NotInClass, ParseError, UnsupportedPair, WrongBasePoints
from .polydomain import Disc, ExteriorDisc, HalfPlane, PlanarDomain, Polycylinder, radii

EQ_TOL = 1e-12
_ANGLE_TOL = 1e-12


def _disc_disc(a: Disc, b: Disc) -> bool:
    return abs(a.center - b.center) >= a.radius + b.radius


def _disc_exterior(d: Disc, e: ExteriorDisc) -> bool:
    # the open disc must fit inside the closed complement of the exterior
    return abs(d.center - e.center) + d.radius <= e.radius


def _disc_half(d: Disc, h: HalfPlane) -> bool:
    return h._s(d.center).real + d.radius <= 0


def _half_half(a: HalfPlane, b: HalfPlane) -> bool:
    if abs(a.normal + b.normal) > _ANGLE_TOL:
        return False  # non-opposite normals always intersect
    return a.offset + b.offset >= 0


def coordwise_disjoint(D1: PlanarDomain, D2: PlanarDomain) -> bool:
    """Exact disjointness of two open catalog domains."""
    for x, y in ((D1, D2), (D2, D1)):
        if isinstance(x, Disc) and isinstance(y, Disc):
            return _disc_disc(x, y)
        if isinstance(x, Disc) and isinstance(y, ExteriorDisc):
            return _disc_exterior(x, y)
        if isinstance(x, Disc) and isinstance(y, HalfPlane):
            return _disc_half(x, y)
        if isinstance(x, HalfPlane) and isinstance(y, HalfPlane):
            return _half_half(x, y)
        if isinstance(x, ExteriorDisc) and isinstance(y, (ExteriorDisc, HalfPlane)):
            return False  # both reach arbitrarily far out
    raise UnsupportedPair(f"no exact disjointness test for {D1!r} and {D2!r}")


def is_circle_complement(D1: PlanarDomain, D2: PlanarDomain, center: complex | None = None) -> bool:
    """D1 = {|z - c| < R} and D2 = {|z - c| > R} (in either order), optionally with c fixed."""
    for x, y in ((D1, D2), (D2, D1)):
        if isinstance(x, Disc) and isinstance(y, ExteriorDisc):
            return (x.center == y.center and x.radius == y.radius
                    and (center is None or x.center == center))
    return False


@dataclass(frozen=True)
class DomainPair:
    B1: Polycylinder
    B2: Polycylinder

    @property
    def A1(self) -> ExtCSeq:
        return self.B1.base

    @property
    def A2(self) -> ExtCSeq:
        return self.B2.base

    @property
    def span(self) -> int:
        return max(self.B1.span, self.B2.span)

    def columns(self):
        """(k, in_tail, B1_k, B2_k) for each representative coordinate."""
        n = self.span
        for k in range(n + 1):
            in_tail = k == n
            yield (k, in_tail, self.B1.tail if in_tail else self.B1.domain(k),
                   self.B2.tail if in_tail else self.B2.domain(k))

    def overlaps(self) -> list[int | str]:
        return ["tail" if t else k for k, t, D1, D2 in self.columns() if not coordwise_disjoint(D1, D2)]

    def in_class(self) -> bool:
        return not self.overlaps()

    def swapped(self) -> DomainPair:
        return DomainPair(self.B2, self.B1)

    def to_json(self) -> dict:
        return {"B1": self.B1.to_json(), "B2": self.B2.to_json()}

    @classmethod
    def from_json(cls, obj: Any) -> DomainPair:
        if not isinstance(obj, dict) or "B1" not in obj or "B2" not in obj:
            raise ParseError("domain pair must be an object with 'B1' and 'B2'")
        return cls(Polycylinder.from_json(obj["B1"]), Polycylinder.from_json(obj["B2"]))


def radius_vector(B: Polycylinder) -> RSeq:
    return radii(B)


def _require_class(P: DomainPair) -> None:
    for k, in_tail, D1, D2 in P.columns():
        if not coordwise_disjoint(D1, D2):
            raise NotInClass(f"{D1!r} and {D2!r} overlap at {_where(k, in_tail)}")


def functional_J(P: DomainPair) -> RSeq:
    """R(B1, A1) * R(B2, A2), coordinatewise."""
    _require_class(P)
    return radius_vector(P.B1) * radius_vector(P.B2)


@dataclass
class LavrentievReport:
    J: RSeq
    in_class: bool = True
    equalities: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    circle_complements: list = field(default_factory=list)
    n_coords: int = 0

    @property
    def max_J(self) -> float:
        return self.J.max()

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def equality_consistent(self) -> bool:
        """Equality coordinates are exactly the circle complements |z| < R, |z| > R."""
        return self.equalities == self.circle_complements

    @property
    def all_equal(self) -> bool:
        return len(self.equalities) == self.n_coords

    def to_json(self) -> dict:
        return {"J": self.J.to_json(), "max_J": self.max_J, "equalities": self.equalities,
                "violations": self.violations, "in_class": self.in_class,
                "holds": self.holds, "all_equal": self.all_equal,
                "equality_consistent": self.equality_consistent}


def lavrentiev_check(P: DomainPair, slack: float = EQ_TOL, eq_tol: float = EQ_TOL) -> LavrentievReport:
    """Verify R(B1, O) * R(B2, inf) <= 1 coordinatewise and locate equality cases."""
    A1, A2 = P.A1, P.A2
    if A1.is_infinite_point or any(v != 0 for v in A1.coords()):
        raise WrongBasePoints("the first base point must be O = (0, 0, ...)")
    if not A2.is_infinity():
        raise WrongBasePoints("the second base point must be (inf, inf, ...)")
    J = functional_J(P)
    rep = LavrentievReport(J, n_coords=P.span + 1)
    for (k, in_tail, D1, D2), j in zip(P.columns(), J.coords(P.span)):
        label = "tail" if in_tail else k
        if j > 1 + slack:
            rep.violations.append({"k": label, "J": j})
        if abs(j - 1) <= eq_tol:
            rep.equalities.append(label)
        if is_circle_complement(D1, D2, center=0):
            rep.circle_complements.append(label)
    return rep


def extremal_pair(R: float = 1.0) -> DomainPair:
    """Disc |z| < R against its complement |z| > R with bases O and infinity.

    For R = 1 this is the unit polydisc and its image under Z -> 1/Z.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    return DomainPair(Polycylinder.uniform(Disc(0, R), ExtCSeq()),
                      Polycylinder.uniform(ExteriorDisc(0, R), ExtCSeq.infinity()))


def random_lavrentiev_pair(rng: np.random.Generator, depth: int = 8,
                           p_extremal: float = 0.2) -> DomainPair:
    """Random member of the class with bases O and infinity, built from catalog discs.

    Coordinate k gets an exterior disc {|z - c2| > R2} and a disc
    {|z - c1| < R1} containing 0 inside the closed complement.  With
    probability ``p_extremal`` the coordinate pair is an exact circle
    complement centred at 0.
    """
    d1, d2 = [], []
    for _ in range(depth + 1):
        R2 = float(np.exp(rng.uniform(-3, 3)))
        if rng.random() < p_extremal:
            d1.append(Disc(0, R2))
            d2.append(ExteriorDisc(0, R2))
            continue
        c2 = R2 * float(rng.uniform(0, 0.9)) * complex(np.exp(2j * np.pi * rng.random()))
        # |c1| < R1 puts 0 in the disc; |c1| + |c2| + R1 <= R2 keeps it inside |z - c2| <= R2
        R1 = float(rng.uniform(0.05, 1.0)) * (R2 - abs(c2))
        room = min(R1, R2 - abs(c2) - R1)
        c1 = room * float(rng.uniform(0, 0.99)) * complex(np.exp(2j * np.pi * rng.random()))
        d1.append(Disc(c1, R1))
        d2.append(ExteriorDisc(c2, R2))
    return DomainPair(Polycylinder(tuple(d1[:-1]), d1[-1], ExtCSeq()),
                      Polycylinder(tuple(d2[:-1]), d2[-1], ExtCSeq.infinity()))
