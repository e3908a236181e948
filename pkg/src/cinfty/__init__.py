"""Componentwise complex analysis on C^infinity.

Submodules:

- :mod:`cinfty.core`        sequence algebra, norms, order, polar form, exp/log
- :mod:`cinfty.holomorphy`  finite-difference Cauchy-Riemann verification
- :mod:`cinfty.series`      vector power series and elementary maps
- :mod:`cinfty.schlicht`    partially-conformal maps and the class S^(inf)
- :mod:`cinfty.polydomain`  catalog domains, inner radii, Riemann maps
- :mod:`cinfty.nonoverlap`  non-overlapping pairs and the inner-radius product
"""

from .core import (INF, ONE, ZERO, CSeq, ExtCSeq, Order, RSeq, carg, cconj, cexp, cinv, clog,
                   cmodulus, cmul, cnorm, compare, euclidean_norm, from_polar, is_theta_member,
                   lift_scalar, to_polar)
from .errors import CInftyError

__version__ = "0.1.0"

__all__ = [
    "INF", "ONE", "ZERO", "CSeq", "ExtCSeq", "Order", "RSeq", "carg", "cconj", "cexp", "cinv",
    "clog", "cmodulus", "cmul", "cnorm", "compare", "euclidean_norm", "from_polar",
    "is_theta_member", "lift_scalar", "to_polar", "CInftyError",
]
