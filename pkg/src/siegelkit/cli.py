"""Command-line interface: ``siegelkit {dist,convert,seb,gen,bench}``.

Every command prints one JSON report on standard output. Exit codes: 0 ok,
2 unreadable input, 3 point outside its domain or bad arguments, 4 numerical
failure.
"""

import argparse
import hashlib
import json
import math
import sys
import time

import numpy as np

from . import seb as seb_mod
from .counters import counting
from .errors import ContractViolation, DomainViolation, NumericalConvergence, NumericalDomain, SingularMatrix
from .io import FORMAT_ERRORS, MatrixFile, encode_matrix, write_matrix_file
from .sampling import DOMAINS, sample
from .siegel_klein import (
    convert_K_to_W,
    convert_W_to_K,
    dist_klein_bounds,
    dist_klein_diagonal,
    dist_klein_exact,
    dist_klein_line_origin,
    dist_klein_origin,
    dist_klein_via_poincare,
    frobenius_klein_distance,
)
from .siegel_poincare_disk import dist_disk_origin, dist_kobayashi
from .siegel_upper import (
    cayley_disk_to_upper,
    cayley_upper_to_disk,
    dist_upper,
    dist_upper_series,
    dist_upper_truncated,
    spd_dist,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4

MODELS = ("upper", "spd", "poincare", "klein")
METHODS = {
    "upper": ("exact", "truncated", "series"),
    "spd": ("exact",),
    "poincare": ("exact", "origin"),
    "klein": ("exact", "bisection", "diagonal", "origin", "line", "frobenius", "via-poincare"),
}
SEB_MODEL = {"spd": seb_mod.SPD, "poincare": seb_mod.POINCARE_DISK, "klein": seb_mod.KLEIN_DISK}


class InputError(Exception):
    pass


def _load(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        return MatrixFile.from_json(raw.decode()), raw
    except (OSError, UnicodeDecodeError) + FORMAT_ERRORS as err:
        raise InputError(f"cannot read {path}: {err}") from err


def _digest(raws):
    h = hashlib.sha256()
    for raw in raws:
        h.update(raw)
    return h.hexdigest()


def _pair(args):
    mf, raw = _load(args.a)
    raws = [raw]
    if args.b is not None:
        mb, rb = _load(args.b)
        raws.append(rb)
        mats = mf.matrices[:1] + mb.matrices[:1]
    else:
        mats = mf.matrices[:2]
    return mats, raws


def _dist(args):
    if args.method not in METHODS[args.model]:
        raise ContractViolation(f"method {args.method!r} not available for model {args.model!r}")
    mats, raws = _pair(args)
    if args.method == "origin":
        if not mats:
            raise InputError("no matrix in input")
        f = dist_disk_origin if args.model == "poincare" else dist_klein_origin
        return {"distance": f(mats[0])}, raws
    if len(mats) < 2:
        raise InputError("dist needs two matrices (one file with two, or two files)")
    A, B = mats
    m = args.model, args.method
    if m == ("upper", "exact"):
        return {"distance": dist_upper(A, B)}, raws
    if m == ("upper", "truncated"):
        return {"distance": dist_upper_truncated(A, B, args.terms), "terms": args.terms}, raws
    if m == ("upper", "series"):
        value, used = dist_upper_series(A, B, delta=args.delta)
        return {"distance": value, "terms": used}, raws
    if m == ("spd", "exact"):
        return {"distance": spd_dist(A, B)}, raws
    if m == ("poincare", "exact"):
        return {"distance": dist_kobayashi(A, B)}, raws
    if m == ("klein", "bisection"):
        b = dist_klein_bounds(A, B, args.eps)
        out = {"distance": b.midpoint, "bounds": [b.lower, b.upper]}
        if b.bracket is not None:
            out["alpha_minus"] = list(b.bracket.alpha_minus)
            out["alpha_plus"] = list(b.bracket.alpha_plus)
        return out, raws
    if m == ("klein", "frobenius"):
        return {"distance": frobenius_klein_distance(A, B, math.sqrt(A.shape[0]))}, raws
    f = {
        "exact": dist_klein_exact,
        "diagonal": dist_klein_diagonal,
        "line": dist_klein_line_origin,
        "via-poincare": dist_klein_via_poincare,
    }[args.method]
    return {"distance": f(A, B)}, raws


_TO_POINCARE = {"upper": cayley_upper_to_disk, "klein": convert_K_to_W, "poincare": lambda W: W}
_FROM_POINCARE = {"upper": cayley_disk_to_upper, "klein": convert_W_to_K, "poincare": lambda W: W}


def convert_matrix(M, source, target):
    """Convert a point between the upper, Poincare and Klein models (through Poincare)."""
    if source == target:
        return np.array(M, dtype=np.complex128)
    return _FROM_POINCARE[target](_TO_POINCARE[source](M))


def _convert(args):
    mf, raw = _load(args.input)
    out = [convert_matrix(M, args.source, args.target) for M in mf.matrices]
    result = {"model": args.target, "matrices": [encode_matrix(M) for M in out]}
    if args.roundtrip:
        back = [convert_matrix(M, args.target, args.source) for M in out]
        err = max((float(np.max(np.abs(a - b))) for a, b in zip(back, mf.matrices)), default=0.0)
        result["roundtrip_error"] = err
        result["roundtrip_ok"] = err <= 1e-9
    if args.output:
        write_matrix_file(args.output, MatrixFile(mf.dim, out, args.target))
    return result, [raw]


def _ball(ball, trace):
    out = {
        "model": ball.model,
        "center": encode_matrix(ball.center),
        "radius": ball.radius,
        "iterations": ball.iterations_run,
        "loop_counters": ball.loop_counters,
    }
    if trace:
        out["trace"] = [
            {"iteration": r.iteration, "farthest": r.farthest, "radius": r.radius, "counters": r.counters}
            for r in ball.trace
        ]
    return out


def _seb(args):
    mf, raw = _load(args.input)
    cloud = seb_mod.PointCloud(SEB_MODEL[args.model], mf.matrices)
    cfg = seb_mod.SebConfig(iterations=args.iters, eps=args.eps, trace=args.trace)
    ball = seb_mod.solve_seb(cloud, cfg)
    return _ball(ball, args.trace), [raw]


def _gen(args):
    mats = sample(args.domain, args.count, args.dim, np.random.default_rng(args.seed), args.norm_cap)
    model = {"disk": "poincare", "upper": "upper", "spd": "spd"}[args.domain]
    mf = MatrixFile(args.dim, mats, model)
    if args.output:
        write_matrix_file(args.output, mf)
        return {"file": args.output, "count": len(mats)}, []
    return {"file": json.loads(mf.to_json()), "count": len(mats)}, []


def _bench(args):
    mf, raw = _load(args.input)
    poincare = seb_mod.PointCloud(seb_mod.POINCARE_DISK, mf.matrices)
    klein = seb_mod.PointCloud(seb_mod.KLEIN_DISK, [convert_W_to_K(W) for W in mf.matrices])
    cfg = seb_mod.SebConfig(iterations=args.iters, eps=args.eps)
    rows = []
    for _ in range(args.repeats):
        t0 = time.perf_counter()
        bp = seb_mod.seb_siegel_poincare(poincare, cfg)
        t1 = time.perf_counter()
        bk = seb_mod.seb_siegel_klein(klein, cfg)
        t2 = time.perf_counter()
        rows.append(
            {
                "poincare_ms": 1e3 * (t1 - t0),
                "klein_ms": 1e3 * (t2 - t1),
                "poincare_counters": bp.loop_counters,
                "klein_counters": bk.loop_counters,
            }
        )
    if any(r["klein_counters"]["matrix_sqrt"] != 0 for r in rows):
        raise NumericalDomain("Klein loop performed matrix square roots")
    out = {"n": len(poincare), "dim": poincare.dim, "iterations": args.iters, "rows": rows}
    if poincare.dim == 1 and len(poincare) >= 2:
        W1, W2 = poincare.points[:2]
        dp = dist_kobayashi(W1, W2)
        dk = dist_klein_exact(klein.points[0], klein.points[1])
        out["sanity_d1"] = {"poincare": dp, "klein": dk, "equal": abs(dp - dk) <= 1e-9}
    return out, [raw]


def build_parser():
    p = argparse.ArgumentParser(prog="siegelkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distance between two points")
    d.add_argument("--model", choices=MODELS, required=True)
    d.add_argument("--method", default="exact")
    d.add_argument("a", help="matrix file (first matrix, or first two when B is omitted)")
    d.add_argument("b", nargs="?", help="second matrix file")
    d.add_argument("--eps", type=float, default=1e-10, help="Klein bisection bracket width")
    d.add_argument("--terms", type=int, default=20, help="series terms for method=truncated")
    d.add_argument("--delta", type=float, default=1e-12, help="stopping threshold for method=series")
    d.set_defaults(run=_dist)

    c = sub.add_parser("convert", help="convert points between models")
    c.add_argument("--from", dest="source", choices=("upper", "poincare", "klein"), required=True)
    c.add_argument("--to", dest="target", choices=("upper", "poincare", "klein"), required=True)
    c.add_argument("input")
    c.add_argument("--roundtrip", action="store_true")
    c.add_argument("-o", "--output")
    c.set_defaults(run=_convert)

    s = sub.add_parser("seb", help="approximate smallest enclosing ball")
    s.add_argument("--model", choices=tuple(SEB_MODEL), required=True)
    s.add_argument("input")
    s.add_argument("--iters", type=int, default=1000)
    s.add_argument("--eps", type=float, default=1e-8)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(run=_seb)

    g = sub.add_parser("gen", help="sample random points")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--domain", choices=DOMAINS, default="disk")
    g.add_argument("--norm-cap", type=float, default=0.95)
    g.add_argument("-o", "--output")
    g.set_defaults(run=_gen)

    b = sub.add_parser("bench", help="Poincare vs Klein SEB timing and counters")
    b.add_argument("input", help="Poincare disk cloud")
    b.add_argument("--iters", type=int, default=200)
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--eps", type=float, default=1e-8)
    b.set_defaults(run=_bench)

    for sp in (d, c, s, g, b):
        sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(obj, stream):
    stream.write(json.dumps(obj))
    stream.write("\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    echo = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        with counting() as counts:
            outputs, raws = args.run(args)
    except InputError as err:
        _emit({"command": echo, "error": "parse", "message": str(err)}, sys.stderr)
        return EXIT_PARSE
    except (DomainViolation, ContractViolation) as err:
        _emit({"command": echo, "error": "domain", "message": str(err)}, sys.stderr)
        return EXIT_DOMAIN
    except (NumericalConvergence, NumericalDomain, SingularMatrix) as err:
        _emit({"command": echo, "error": "numerical", "message": str(err)}, sys.stderr)
        return EXIT_NUMERICAL
    report = {
        "command": echo,
        "inputs_digest": _digest(raws),
        "outputs": outputs,
        "timing_ms": 1e3 * (time.perf_counter() - t0),
        "counters": counts.snapshot(),
        "seed": args.seed,
    }
    _emit(report, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
