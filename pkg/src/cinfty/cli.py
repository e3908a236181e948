"""JSON command-line front end.

    cinfty eval expr.json
    cinfty check {cr,growth,distortion,bieberbach,lavrentiev} spec.json
    cinfty riemann cylinder.json points.json

Exit codes: 0 success / all checks pass, 1 a check failed, 2 domain error,
3 parse error.  Errors are printed as {"error": <name>, "message": ...}.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import core, holomorphy, nonoverlap, polydomain, schlicht, series
from .core import INF, CSeq, ExtCSeq, RSeq, decode_complex, encode_complex
from .errors import CInftyError, ParseError

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    depth: int = core.DEFAULT_DEPTH
    tol: float = holomorphy.DEFAULT_TOL
    fd_step: float = holomorphy.DEFAULT_STEP
    seed: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("--depth must be >= 1")
        if not self.tol > 0:
            raise ValueError("--tol must be > 0")
        if not self.fd_step > 0:
            raise ValueError("--fd-step must be > 0")


def _jsonable(x: Any) -> Any:
    """Replace non-finite floats by strings so the output is strict JSON."""
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# decoders

def _cseq(v) -> CSeq:
    if isinstance(v, (int, float, list)) and not isinstance(v, bool):
        return CSeq.const(decode_complex(v))
    return CSeq.from_json(v)


def _rseq(v) -> RSeq:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return RSeq.const(float(v))
    return RSeq.from_json(v)


def _point(v):
    return INF if v == "inf" else decode_complex(v)


def _ext(v) -> ExtCSeq:
    if v == "inf":
        return ExtCSeq.infinity()
    if isinstance(v, (int, float, list)) and not isinstance(v, bool):
        return ExtCSeq.const(decode_complex(v))
    return ExtCSeq.from_json(v)


def _real(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"expected a real number, got {v!r}")
    return float(v)


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}")
    return v


def _series(v) -> series.VectorPowerSeries:
    if isinstance(v, dict) and "catalog" in v:
        name = v["catalog"]
        if name not in series.CATALOG_SERIES:
            raise ParseError(f"unknown catalog series {name!r}")
        return series.CATALOG_SERIES[name](_int(v.get("order", series.DEFAULT_ORDER)))
    return series.VectorPowerSeries.from_json(v)


def _enc_point(v):
    return "inf" if v is INF else encode_complex(v)


def _enc(x):
    if isinstance(x, (CSeq, RSeq, ExtCSeq)):
        return x.to_json()
    if isinstance(x, complex):
        return encode_complex(x)
    if isinstance(x, core.Order):
        return x.value
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


# name -> (parameters as (key, decoder, default), function)
_REQ = object()

OPS: dict[str, tuple[list[tuple[str, Callable, Any]], Callable]] = {
    "cmul": ([("Z", _cseq, _REQ), ("W", _cseq, _REQ)], core.cmul),
    "cadd": ([("Z", _cseq, _REQ), ("W", _cseq, _REQ)], core.cadd),
    "csub": ([("Z", _cseq, _REQ), ("W", _cseq, _REQ)], core.csub),
    "cconj": ([("Z", _cseq, _REQ)], core.cconj),
    "cmodulus": ([("Z", _cseq, _REQ)], core.cmodulus),
    "cnorm": ([("Z", _cseq, _REQ)], core.cnorm),
    "euclidean_norm": ([("Z", _cseq, _REQ)], core.euclidean_norm),
    "compare": ([("X", _rseq, _REQ), ("Y", _rseq, _REQ)], core.compare),
    "is_theta_member": ([("Z", _cseq, _REQ), ("tol", _real, 0.0)], core.is_theta_member),
    "cinv": ([("Z", _cseq, _REQ)], core.cinv),
    "carg": ([("Z", _cseq, _REQ)], core.carg),
    "to_polar": ([("Z", _cseq, _REQ)],
                 lambda Z: dict(zip(("modulus", "argument"), (s.to_json() for s in core.to_polar(Z))))),
    "from_polar": ([("mod", _rseq, _REQ), ("arg", _rseq, _REQ)], core.from_polar),
    "cexp": ([("Z", _cseq, _REQ)], core.cexp),
    "clog": ([("Z", _cseq, _REQ)], core.clog),
    "series_eval": ([("series", _series, _REQ), ("Z", _cseq, _REQ), ("order", _int, None)],
                    series.series_eval),
    "certify_uniform_convergence": ([("series", _series, _REQ), ("r", _real, _REQ),
                                     ("eps", _real, _REQ)], series.certify_uniform_convergence),
    "growth_bounds": ([("r", _real, _REQ)], lambda r: list(schlicht.growth_bounds(r))),
    "distortion_bounds": ([("r", _real, _REQ)], lambda r: list(schlicht.distortion_bounds(r))),
    "delta_of": ([("map", schlicht.PartiallyConformalMap.from_json, _REQ)], schlicht.delta_of),
    "apply": ([("map", schlicht.PartiallyConformalMap.from_json, _REQ), ("Z", _cseq, _REQ)],
              schlicht.apply),
    "taylor_coeff": ([("map", schlicht.PartiallyConformalMap.from_json, _REQ), ("n", _int, _REQ)],
                     lambda F, n: schlicht.taylor_coeff(F, n).value),
    "inner_radius": ([("domain", polydomain.PlanarDomain.from_json, _REQ), ("a", _point, _REQ)],
                     polydomain.inner_radius),
    "radius_vector": ([("polycylinder", polydomain.Polycylinder.from_json, _REQ)],
                      nonoverlap.radius_vector),
    "functional_J": ([("pair", nonoverlap.DomainPair.from_json, _REQ)], nonoverlap.functional_J),
}

_ELEMENTARY_PARAMS: dict[str, list[tuple[str, Callable, Any]]] = {
    "moebius": [("A1", _cseq, 1), ("A2", _cseq, 0), ("A3", _cseq, 0), ("A4", _cseq, 1)],
    "power": [("n", _int, _REQ)],
    "zhukovsky": [],
    "polynomial": [("coeffs", lambda v: [_cseq(c) for c in v], _REQ)],
    "reciprocal": [("Z0", _cseq, 0)],
    "exp": [],
    "sqrt_binomial": [],
}


def _bind(params, args: Any, where: str) -> list:
    if isinstance(args, list):
        if len(args) > len(params):
            raise ParseError(f"{where}: too many arguments")
        args = {key: v for (key, _, _), v in zip(params, args)}
    if not isinstance(args, dict):
        raise ParseError(f"{where}: arguments must be a list or an object")
    out = []
    for key, dec, default in params:
        if key in args:
            out.append(dec(args[key]))
        elif default is _REQ:
            raise ParseError(f"{where}: missing argument {key!r}")
        else:
            out.append(default)
    return out


def _elementary_fn(kind: str, params: dict) -> Callable[[CSeq], CSeq]:
    if kind not in _ELEMENTARY_PARAMS:
        raise ParseError(f"unknown elementary map {kind!r}")
    specs = _ELEMENTARY_PARAMS[kind]
    vals = _bind(specs, params, kind)
    kw = {key: v for (key, _, _), v in zip(specs, vals)}
    return lambda Z: series.elementary_map(kind, Z, **kw)


def cmd_eval(doc: Any, config: CliConfig) -> tuple[int, dict]:
    if not isinstance(doc, dict) or "op" not in doc:
        raise ParseError("expression must be an object with an 'op'")
    op = doc["op"]
    if op == "elementary_map":
        if "kind" not in doc:
            raise ParseError("elementary_map needs a 'kind'")
        params = dict(doc.get("params", {}))
        params.update({k: v for k, v in doc.items() if k not in ("op", "kind", "Z", "args", "params")})
        Zsrc = doc.get("Z", (doc.get("args") or [None])[0])
        if Zsrc is None:
            raise ParseError("elementary_map needs 'Z'")
        result = _elementary_fn(doc["kind"], params)(_cseq(Zsrc))
    elif op in OPS:
        params, fn = OPS[op]
        args = doc.get("args", {k: v for k, v in doc.items() if k != "op"})
        result = fn(*_bind(params, args, op))
    else:
        raise ParseError(f"unknown op {op!r}")
    return EXIT_OK, {"op": op, "result": _enc(result)}


# ---------------------------------------------------------------------------
# checks

def _map_on_cinf(spec: Any) -> Callable[[CSeq], CSeq]:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("'map' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "identity":
        return lambda Z: Z
    if kind == "conjugation":
        return core.cconj
    if kind in ("re", "im"):
        part = core.re if kind == "re" else core.im
        if "coordinate" not in spec:
            return lambda Z: part(Z).to_complex()
        j = _int(spec["coordinate"])

        def one_coord(Z: CSeq) -> CSeq:
            vals = list(Z.coords(max(j + 1, Z.depth)))
            vals[j] = complex(part(CSeq.const(vals[j])).tail)
            return CSeq.from_coords(vals)

        return one_coord
    if kind == "koebe":
        f = schlicht.ScalarUnivalent.koebe(_real(spec.get("theta", 0.0)))
        return lambda Z: core.lift_scalar(f, Z)
    if kind == "univalent":
        F = schlicht.PartiallyConformalMap.from_json(spec.get("map", {}))
        return lambda Z: schlicht.apply(F, Z)
    if kind == "riemann":
        R = polydomain.riemann_map(polydomain.Polycylinder.from_json(spec.get("polycylinder")))
        return R
    if kind in _ELEMENTARY_PARAMS:
        return _elementary_fn(kind, spec.get("params", {}))
    raise ParseError(f"unknown map kind {kind!r}")


def _check_cr(doc: dict, config: CliConfig) -> tuple[int, dict]:
    F = holomorphy.window_map(_map_on_cinf(doc.get("map")), config.depth, str(doc.get("map")))
    if "points" in doc:
        samples = [[decode_complex(v) for v in p] for p in doc["points"]]
    else:
        count = _int(doc.get("samples", 20))
        radius = _real(doc.get("radius", 0.5))
        shift = decode_complex(doc.get("center", 0))
        samples = holomorphy.polydisc_samples(F.n_in, count, radius, config.seed) + shift
    rep = holomorphy.is_holomorphic_numeric(F, samples, config.fd_step, config.tol)
    return (EXIT_OK if rep.holomorphic else EXIT_FAIL), rep.to_json()


def _grid(doc: dict) -> list[CSeq]:
    points = [_cseq(p) for p in doc.get("points", [])]
    g = doc.get("grid")
    if g is not None:
        radii = g.get("radii", [g.get("radius", 0.5)])
        n = _int(g.get("angles", 8))
        for r in radii:
            for j in range(n):
                points.append(CSeq.const(cmath.rect(_real(r), 2 * math.pi * j / n)))
    if not points:
        raise ParseError("growth/distortion checks need 'points' or 'grid'")
    return points


def _check_bound(kind: str, doc: dict) -> tuple[int, dict]:
    F = schlicht.PartiallyConformalMap.from_json(doc.get("map"))
    fn = schlicht.check_growth if kind == "growth" else schlicht.check_distortion
    violations, equalities = [], []
    consistent = True
    points = _grid(doc)
    for i, Z in enumerate(points):
        rep = fn(F, Z)
        violations += [dict(v, point=i) for v in rep.violations]
        equalities += [{"point": i, "k": k, "side": "upper" if k in rep.upper else "lower"}
                       for k in rep.equalities]
        consistent &= rep.koebe_consistent
    out = {"bound": kind, "points": len(points), "ok": not violations, "violations": violations,
           "equalities": equalities, "extremal": bool(equalities) and consistent}
    return (EXIT_OK if not violations else EXIT_FAIL), out


def cmd_check(kind: str, doc: Any, config: CliConfig) -> tuple[int, dict]:
    if not isinstance(doc, dict):
        raise ParseError("check spec must be a JSON object")
    if kind == "cr":
        return _check_cr(doc, config)
    if kind in ("growth", "distortion"):
        return _check_bound(kind, doc)
    if kind == "bieberbach":
        F = schlicht.PartiallyConformalMap.from_json(doc.get("map"))
        rep = schlicht.check_bieberbach(F, _int(doc.get("n_max", 10)))
        return (EXIT_OK if rep.ok else EXIT_FAIL), rep.to_json()
    if kind == "lavrentiev":
        pair = nonoverlap.DomainPair.from_json(doc.get("pair", doc))
        rep = nonoverlap.lavrentiev_check(pair)
        return (EXIT_OK if rep.holds else EXIT_FAIL), rep.to_json()
    raise ParseError(f"unknown check kind {kind!r}")


def cmd_riemann(cyl_doc: Any, points_doc: Any, config: CliConfig) -> tuple[int, dict]:
    P = polydomain.Polycylinder.from_json(cyl_doc)
    if isinstance(points_doc, dict):
        points_doc = points_doc.get("points")
    if not isinstance(points_doc, list):
        raise ParseError("points file must hold a list of sequences")
    F = polydomain.riemann_map(P)
    images = [F(_ext(p)).to_json() for p in points_doc]
    FA = F.at_base()
    dA = F.derivative_at_base()
    radii = polydomain.radii(P)
    duality = max(abs(d * r - 1) for d, r in zip(dA.coords(P.span), radii.coords(P.span)))
    return EXIT_OK, {
        "images": images,
        "F_A": FA.to_json(),
        "F_prime_A": dA.to_json(),
        "radii": radii.to_json(),
        "residuals": {"F_A": max(abs(v) for v in FA.coords()), "duality": duality},
        "normalized": F.is_normalized(1e-12),
    }


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=core.DEFAULT_DEPTH,
                        help="depth cap and window size (default %(default)s)")
    common.add_argument("--tol", type=float, default=holomorphy.DEFAULT_TOL)
    common.add_argument("--fd-step", type=float, default=holomorphy.DEFAULT_STEP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="cinfty", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("eval", parents=[common], help="evaluate one JSON operation")
    e.add_argument("expr_file")
    c = sub.add_parser("check", parents=[common], help="run a verifier")
    c.add_argument("kind", choices=["cr", "growth", "distortion", "bieberbach", "lavrentiev"])
    c.add_argument("spec_file")
    r = sub.add_parser("riemann", parents=[common], help="evaluate a polycylindrical Riemann map")
    r.add_argument("polycylinder_file")
    r.add_argument("points_file")
    return p


def run(argv: list[str] | None = None) -> tuple[int, str, str | None]:
    """Execute the CLI; returns (exit code, JSON text, output path)."""
    args = build_parser().parse_args(argv)
    old_cap = core.get_depth_cap()
    try:
        config = CliConfig(args.depth, args.tol, args.fd_step, args.seed)
        core.set_depth_cap(max(config.depth, old_cap))
        if args.command == "eval":
            code, out = cmd_eval(load_json(args.expr_file), config)
        elif args.command == "check":
            code, out = cmd_check(args.kind, load_json(args.spec_file), config)
        else:
            code, out = cmd_riemann(load_json(args.polycylinder_file),
                                    load_json(args.points_file), config)
    except ParseError as exc:
        code, out = EXIT_PARSE, {"error": exc.code, "message": str(exc)}
    except CInftyError as exc:
        code, out = EXIT_DOMAIN, {"error": exc.code, "message": str(exc)}
        if getattr(exc, "index", None) is not None:
            out["index"] = exc.index
            out["in_tail"] = exc.in_tail
    except (ValueError, TypeError, KeyError) as exc:
        code, out = EXIT_PARSE, {"error": "ParseError", "message": f"{type(exc).__name__}: {exc}"}
    finally:
        core.set_depth_cap(old_cap)
    return code, dumps(out), args.out


def main(argv: list[str] | None = None) -> int:
    code, text, path = run(argv)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
