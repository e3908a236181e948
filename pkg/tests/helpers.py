"""Shared strategies and generators for the test suite."""

import cmath
import math

import numpy as np
from hypothesis import strategies as st

from cinfty.core import CSeq, ExtCSeq, RSeq
from cinfty.polydomain import Disc, ExteriorDisc, HalfPlane, Polycylinder

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
small = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, small, small)
reals = small


def cseqs(max_head=8, elements=complexes):
    return st.builds(lambda h, t: CSeq(tuple(h), t), st.lists(elements, max_size=max_head), elements)


def rseqs(max_head=8, elements=reals):
    return st.builds(lambda h, t: RSeq(tuple(h), t), st.lists(elements, max_size=max_head), elements)


def nonzero_cseqs(max_head=8):
    el = complexes.filter(lambda z: abs(z) > 1e-3)
    return cseqs(max_head, el)


def polydisc_points(max_head=8, radius=0.95):
    el = st.builds(cmath.rect, st.floats(0, radius), st.floats(-math.pi, math.pi))
    return cseqs(max_head, el)


def random_cseq(rng: np.random.Generator, depth: int, scale: float = 1.0) -> CSeq:
    v = scale * (rng.standard_normal(depth + 1) + 1j * rng.standard_normal(depth + 1))
    return CSeq.from_coords(v.tolist())


def random_domain_and_point(rng: np.random.Generator):
    """A catalog domain together with an interior base point (possibly infinity)."""
    kind = rng.integers(3)
    if kind == 0:
        c = complex(*rng.uniform(-3, 3, 2))
        R = float(np.exp(rng.uniform(-2, 2)))
        a = c + R * rng.uniform(0, 0.9) * cmath.exp(2j * math.pi * rng.random())
        return Disc(c, R), a
    if kind == 1:
        phi = float(rng.uniform(-math.pi, math.pi))
        d = float(rng.uniform(-2, 2))
        h = HalfPlane(phi, d)
        a = cmath.exp(1j * phi) * complex(d + rng.uniform(0.05, 3), rng.uniform(-3, 3))
        return h, a
    c = complex(*rng.uniform(-3, 3, 2))
    R = float(np.exp(rng.uniform(-2, 2)))
    if rng.random() < 0.5:
        from cinfty.core import INF
        return ExteriorDisc(c, R), INF
    a = c + R * rng.uniform(1.1, 4) * cmath.exp(2j * math.pi * rng.random())
    return ExteriorDisc(c, R), a


def random_polycylinder(rng: np.random.Generator, depth: int = 16) -> Polycylinder:
    pairs = [random_domain_and_point(rng) for _ in range(depth + 1)]
    doms = [d for d, _ in pairs]
    base = ExtCSeq.from_coords([a for _, a in pairs])
    return Polycylinder(tuple(doms[:-1]), doms[-1], base)
