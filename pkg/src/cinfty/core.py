"""The algebra of infinite-dimensional complex numbers.

Elements of C^inf are stored as an explicit finite ``head`` followed by a
constant ``tail`` repeated forever.  Every operation acts coordinatewise, so
it is enough to evaluate it on the head coordinates and once on the tail
value, which stands for all remaining coordinates at once.

    >>> Z = CSeq([3 + 4j], tail=1)
    >>> cmodulus(Z)
    RSeq(head=(5.0,), tail=1.0)
    >>> cmul(Z, cconj(Z))
    CSeq(head=((25+0j),), tail=(1+0j))
"""

from __future__ import annotations

import cmath
import enum
import math
from contextlib import contextmanager
from dataclasses import dataclass
from numbers import Number
from typing import Any, Callable, ClassVar, Iterator, Sequence

from .errors import DomainViolation, NegativeModulus, ParseError, ThetaMember

__all__ = [
    "CSeq", "RSeq", "ExtCSeq", "INF", "Order", "ONE", "ZERO", "RONE", "RZERO",
    "get_depth_cap", "set_depth_cap", "depth_cap",
    "cmul", "cadd", "csub", "cconj", "cmodulus", "cnorm", "euclidean_norm",
    "compare", "is_theta_member", "cinv", "carg", "to_polar", "from_polar",
    "cexp", "clog", "lift_scalar", "re", "im", "span", "as_cseq",
    "encode_complex", "decode_complex",
]

DEFAULT_DEPTH = 64
_depth_cap = DEFAULT_DEPTH


def get_depth_cap() -> int:
    return _depth_cap


def set_depth_cap(n: int) -> None:
    """Set the maximal head length accepted by sequence constructors."""
    global _depth_cap
    if n < 1:
        raise ValueError("depth cap must be >= 1")
    _depth_cap = int(n)


@contextmanager
def depth_cap(n: int) -> Iterator[None]:
    old = _depth_cap
    set_depth_cap(n)
    try:
        yield
    finally:
        set_depth_cap(old)


class _Infinity:
    """The point at infinity of the Riemann sphere, used as a coordinate value."""

    _instance: ClassVar[_Infinity | None] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def encode_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def decode_complex(v: Any) -> complex:
    if isinstance(v, bool):
        raise ParseError(f"not a complex number: {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return complex(v[0], v[1])
    raise ParseError(f"not a complex number: {v!r}")


class _Seq:
    """Shared head + constant-tail machinery; subclasses fix the scalar field."""

    head: tuple
    tail: Any

    def __post_init__(self) -> None:
        head = tuple(self._coerce(v) for v in self.head)
        tail = self._coerce(self.tail)
        for v in head + (tail,):
            self._check(v)
        end = len(head)
        while end and head[end - 1] == tail:
            end -= 1
        head = head[:end]
        if len(head) > _depth_cap:
            raise ValueError(f"head length {len(head)} exceeds depth cap {_depth_cap}")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)

    @staticmethod
    def _coerce(v):
        raise NotImplementedError

    @staticmethod
    def _check(v) -> None:
        if not cmath.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")

    @classmethod
    def const(cls, value):
        return cls((), value)

    @classmethod
    def from_coords(cls, values: Sequence):
        """Build from head coordinates followed by the tail value (last item)."""
        values = tuple(values)
        return cls(values[:-1], values[-1])

    @property
    def depth(self) -> int:
        """Number of explicitly stored coordinates."""
        return len(self.head)

    @property
    def tail_kind(self) -> str:
        if self.tail == 0:
            return "zero"
        if self.tail == 1:
            return "one"
        return "const"

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError("coordinates are indexed from 0")
        return self.head[k] if k < len(self.head) else self.tail

    def window(self, n: int) -> tuple:
        """The first ``n`` coordinates."""
        return tuple(self[k] for k in range(n))

    def coords(self, n: int | None = None) -> tuple:
        """First ``n`` coordinates (default: the head) followed by the tail."""
        if n is None:
            n = len(self.head)
        return self.window(n) + (self.tail,)

    def is_constant(self) -> bool:
        return not self.head

    def _map(self, fn: Callable, cls=None):
        return (cls or type(self)).from_coords([fn(v) for v in self.coords()])


def span(*seqs) -> int:
    """Common head length needed to represent all coordinates of ``seqs``."""
    return max((len(s.head) for s in seqs), default=0)


def _zip(fn: Callable, cls, *seqs):
    n = span(*seqs)
    cols = zip(*(s.coords(n) for s in seqs))
    return cls.from_coords([fn(*c) for c in cols])


def _indexed(*seqs) -> Iterator[tuple[int, bool, tuple]]:
    """Yield (index, in_tail, values) for each representative coordinate."""
    n = span(*seqs)
    cols = list(zip(*(s.coords(n) for s in seqs)))
    for k, vals in enumerate(cols):
        yield k, k == n, vals


def _where(k: int, in_tail: bool) -> str:
    return f"tail coordinates k >= {k}" if in_tail else f"coordinate {k}"


@dataclass(frozen=True, repr=True)
class CSeq(_Seq):
    """An element of C^inf: finite head, constant complex tail."""

    head: tuple = ()
    tail: complex = 0j

    @staticmethod
    def _coerce(v) -> complex:
        if isinstance(v, _Infinity):
            raise ValueError("infinite coordinate in CSeq; use ExtCSeq")
        return complex(v)

    @classmethod
    def zero(cls) -> CSeq:
        return cls((), 0)

    @classmethod
    def one(cls) -> CSeq:
        return cls((), 1)

    def __add__(self, other):
        return cadd(self, as_cseq(other))

    __radd__ = __add__

    def __sub__(self, other):
        return csub(self, as_cseq(other))

    def __rsub__(self, other):
        return csub(as_cseq(other), self)

    def __mul__(self, other):
        return cmul(self, as_cseq(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return cmul(self, cinv(as_cseq(other)))

    def __rtruediv__(self, other):
        return cmul(as_cseq(other), cinv(self))

    def __neg__(self):
        return self._map(lambda z: -z)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are componentwise-polynomial")
        return self._map(lambda z: z ** n)

    def conjugate(self) -> CSeq:
        return cconj(self)

    @property
    def real(self) -> RSeq:
        return re(self)

    @property
    def imag(self) -> RSeq:
        return im(self)

    def to_ext(self) -> ExtCSeq:
        return ExtCSeq(self.head, self.tail)

    def to_json(self) -> dict:
        return {"head": [encode_complex(z) for z in self.head], "tail": _tail_json(self.tail, True)}

    @classmethod
    def from_json(cls, obj: Any) -> CSeq:
        head, tail = _parse_seq_json(obj, decode_complex)
        try:
            return cls(head, tail)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True, repr=True)
class RSeq(_Seq):
    """An element of R^inf (moduli, arguments, radii)."""

    head: tuple = ()
    tail: float = 0.0

    @staticmethod
    def _coerce(v) -> float:
        if isinstance(v, complex):
            if v.imag != 0:
                raise ValueError(f"non-real coordinate {v!r}")
            v = v.real
        return float(v)

    @staticmethod
    def _check(v) -> None:
        if math.isnan(v) or math.isinf(v):
            raise ValueError(f"non-finite coordinate {v!r}")

    def __add__(self, other):
        return _zip(lambda a, b: a + b, RSeq, self, _as_rseq(other))

    __radd__ = __add__

    def __sub__(self, other):
        return _zip(lambda a, b: a - b, RSeq, self, _as_rseq(other))

    def __rsub__(self, other):
        return _zip(lambda a, b: a - b, RSeq, _as_rseq(other), self)

    def __mul__(self, other):
        return _zip(lambda a, b: a * b, RSeq, self, _as_rseq(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._map(lambda x: -x)

    def to_complex(self) -> CSeq:
        """Embedding R^inf -> C^inf."""
        return CSeq(self.head, self.tail)

    def max(self) -> float:
        return max(self.coords())

    def min(self) -> float:
        return min(self.coords())

    def to_json(self) -> dict:
        return {"head": list(self.head), "tail": _tail_json(self.tail, False)}

    @classmethod
    def from_json(cls, obj: Any) -> RSeq:
        head, tail = _parse_seq_json(obj, _decode_real)
        try:
            return cls(head, tail)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True, repr=True)
class ExtCSeq(_Seq):
    """A point of the compactified space: coordinates in C or equal to ``INF``."""

    head: tuple = ()
    tail: Any = 0j

    @staticmethod
    def _coerce(v):
        if isinstance(v, _Infinity) or v == "inf":
            return INF
        z = complex(v)
        return INF if cmath.isinf(z) else z

    @staticmethod
    def _check(v) -> None:
        if v is not INF and cmath.isnan(v):
            raise ValueError("NaN coordinate")

    @classmethod
    def infinity(cls) -> ExtCSeq:
        """The point (inf, inf, ...)."""
        return cls((), INF)

    @property
    def is_infinite_point(self) -> bool:
        return any(v is INF for v in self.coords())

    def is_infinity(self) -> bool:
        return all(v is INF for v in self.coords())

    def to_cseq(self) -> CSeq:
        if self.is_infinite_point:
            raise ValueError("point has infinite coordinates")
        return CSeq(self.head, self.tail)

    def to_json(self) -> dict:
        enc = lambda v: "inf" if v is INF else encode_complex(v)
        tail = {"kind": "const", "value": "inf"} if self.tail is INF else _tail_json(self.tail, True)
        return {"head": [enc(v) for v in self.head], "tail": tail}

    @classmethod
    def from_json(cls, obj: Any) -> ExtCSeq:
        dec = lambda v: INF if v == "inf" else decode_complex(v)
        head, tail = _parse_seq_json(obj, dec)
        try:
            return cls(head, tail)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def _decode_real(v: Any) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"not a real number: {v!r}")
    return float(v)


def _tail_json(t, is_complex: bool) -> dict:
    if t == 0:
        return {"kind": "zero"}
    if t == 1:
        return {"kind": "one"}
    return {"kind": "const", "value": encode_complex(t) if is_complex else t}


def _parse_seq_json(obj: Any, dec: Callable) -> tuple[list, Any]:
    if not isinstance(obj, dict):
        raise ParseError(f"sequence must be a JSON object, got {type(obj).__name__}")
    head = obj.get("head", [])
    if not isinstance(head, list):
        raise ParseError("'head' must be a list")
    tail = obj.get("tail", {"kind": "zero"})
    if not isinstance(tail, dict) or "kind" not in tail:
        raise ParseError("'tail' must be an object with a 'kind'")
    kind = tail["kind"]
    if kind == "zero":
        t = dec(0)
    elif kind == "one":
        t = dec(1)
    elif kind == "const":
        if "value" not in tail:
            raise ParseError("const tail needs a 'value'")
        t = dec(tail["value"])
    else:
        raise ParseError(f"unknown tail kind {kind!r}")
    return [dec(v) for v in head], t


ONE = CSeq.one()
ZERO = CSeq.zero()
RONE = RSeq((), 1.0)
RZERO = RSeq((), 0.0)


def as_cseq(x) -> CSeq:
    """Accept a CSeq, an RSeq or a scalar (promoted to a constant sequence)."""
    if isinstance(x, CSeq):
        return x
    if isinstance(x, RSeq):
        return x.to_complex()
    if isinstance(x, ExtCSeq):
        return x.to_cseq()
    if isinstance(x, Number):
        return CSeq((), x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a CSeq")


def _as_rseq(x) -> RSeq:
    if isinstance(x, RSeq):
        return x
    if isinstance(x, Number) and not isinstance(x, complex):
        return RSeq((), x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an RSeq")


# ---------------------------------------------------------------------------
# algebra

def cmul(Z: CSeq, W: CSeq) -> CSeq:
    """Vector multiplication: (Z W)_k = z_k w_k."""
    return _zip(lambda a, b: a * b, CSeq, Z, W)


def cadd(Z: CSeq, W: CSeq) -> CSeq:
    return _zip(lambda a, b: a + b, CSeq, Z, W)


def csub(Z: CSeq, W: CSeq) -> CSeq:
    return _zip(lambda a, b: a - b, CSeq, Z, W)


def cconj(Z: CSeq) -> CSeq:
    return Z._map(lambda z: z.conjugate())


def re(Z: CSeq) -> RSeq:
    return Z._map(lambda z: z.real, RSeq)


def im(Z: CSeq) -> RSeq:
    return Z._map(lambda z: z.imag, RSeq)


def cmodulus(Z: CSeq) -> RSeq:
    """Vector modulus |Z| = (|z_1|, |z_2|, ...)."""
    return Z._map(abs, RSeq)


def cnorm(Z: CSeq) -> RSeq:
    """The polycylindrical (vector) norm; it coincides with the vector modulus.

    Satisfies ||Z|| >= O with equality iff Z = O, ||g Z|| = |g| ||Z|| and
    ||Z + W|| <= ||Z|| + ||W||, all coordinatewise.
    """
    return cmodulus(Z)


def euclidean_norm(Z: CSeq) -> float:
    """sqrt(sum |z_k|^2); ``math.inf`` whenever the tail is nonzero."""
    if Z.tail != 0:
        return math.inf
    return math.hypot(*(abs(z) for z in Z.head)) if Z.head else 0.0


class Order(enum.Enum):
    EQ = "eq"
    GEQ = "geq"
    GT = "gt"
    LEQ = "leq"
    LT = "lt"
    INCOMPARABLE = "incomparable"

    @property
    def geq(self) -> bool:
        """True when X >= Y holds (X - Y is nonnegative)."""
        return self in (Order.EQ, Order.GEQ, Order.GT)

    @property
    def leq(self) -> bool:
        return self in (Order.EQ, Order.LEQ, Order.LT)


def compare(X: RSeq, Y: RSeq, positivity: str = "some") -> Order:
    """Partial order on R^inf.

    ``X > Y`` means ``X - Y >= O`` with at least one strictly positive
    coordinate (``positivity="some"``, the default).  With
    ``positivity="all"`` strictness needs every coordinate positive and a
    nonnegative difference with some zero coordinates reports ``GEQ``.
    """
    if positivity not in ("some", "all"):
        raise ValueError("positivity must be 'some' or 'all'")
    d = X - Y
    vals = d.coords()
    pos = any(v > 0 for v in vals)
    neg = any(v < 0 for v in vals)
    if pos and neg:
        return Order.INCOMPARABLE
    if not pos and not neg:
        return Order.EQ
    zero = any(v == 0 for v in vals)
    if pos:
        return Order.GEQ if positivity == "all" and zero else Order.GT
    return Order.LEQ if positivity == "all" and zero else Order.LT


def is_theta_member(Z: CSeq, tol: float = 0.0) -> bool:
    """True iff Z is not invertible: some |z_k| <= tol (tail included)."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    return any(abs(z) <= tol for z in Z.coords())


def _require_invertible(Z: CSeq, what: str, tol: float = 0.0) -> None:
    for k, in_tail, (z,) in _indexed(Z):
        if abs(z) <= tol:
            raise ThetaMember(f"{what}: zero at {_where(k, in_tail)}", k, in_tail)


def cinv(Z: CSeq, tol: float = 0.0) -> CSeq:
    _require_invertible(Z, "not invertible", tol)
    return Z._map(lambda z: 1 / z)


def _principal(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    return math.pi if a == -math.pi else a


def _branch(a: float, centre: float) -> float:
    a += 2 * math.pi * round((centre - a) / (2 * math.pi))
    if a <= centre - math.pi:
        a += 2 * math.pi
    elif a > centre + math.pi:
        a -= 2 * math.pi
    return a


def carg(Z: CSeq, branch: RSeq | None = None) -> RSeq:
    """Vector argument.

    Principal values in (-pi, pi] by default.  ``branch`` gives a per-coordinate
    centre ``c_k``; the argument is then taken in (c_k - pi, c_k + pi].
    """
    _require_invertible(Z, "argument undefined")
    if branch is None:
        return Z._map(_principal, RSeq)
    return _zip(lambda z, c: _branch(_principal(z), c), RSeq, Z, branch)


def to_polar(Z: CSeq) -> tuple[RSeq, RSeq]:
    return cmodulus(Z), carg(Z)


def from_polar(mod: RSeq, arg: RSeq) -> CSeq:
    for k, in_tail, (m,) in _indexed(mod):
        if m < 0:
            raise NegativeModulus(f"negative modulus at {_where(k, in_tail)}", k, in_tail)
    return _zip(lambda m, a: cmath.rect(m, a), CSeq, mod, arg)


def cexp(Z: CSeq) -> CSeq:
    return Z._map(cmath.exp)


def clog(Z: CSeq) -> CSeq:
    """ln Z = ln|Z| + i arg Z with the principal argument."""
    _require_invertible(Z, "logarithm undefined")
    return Z._map(lambda z: complex(math.log(abs(z)), _principal(z)))


def lift_scalar(f: Callable[[complex], complex], W: CSeq,
                valid: Callable[[complex], bool] | None = None) -> CSeq:
    """Diagonal extension F(W) = (f(w_1), f(w_2), ...).

    ``valid`` is an optional per-coordinate domain predicate; coordinates that
    fail it, or on which ``f`` raises or returns a non-finite value, produce
    :class:`DomainViolation` naming the coordinate.
    """
    out = []
    for k, in_tail, (w,) in _indexed(W):
        if valid is not None and not valid(w):
            raise DomainViolation(f"outside the domain at {_where(k, in_tail)}", k, in_tail)
        try:
            v = complex(f(w))
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise DomainViolation(f"{exc} at {_where(k, in_tail)}", k, in_tail) from exc
        if not cmath.isfinite(v):
            raise DomainViolation(f"non-finite value at {_where(k, in_tail)}", k, in_tail)
        out.append(v)
    return CSeq.from_coords(out)
