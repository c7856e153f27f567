"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--dims 2 4 8] [--number 200]

Each kernel runs on the same inputs under both backends. The table reports
microseconds per call, the speedup, and the largest disagreement between
the two outputs.
"""

import argparse
import timeit

import numpy as np

from siegelkit._backend import available_backends


def _hermitian(g, d):
    A = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    return 0.5 * (A + A.conj().T)


def _disk(g, d, cap=0.8):
    A = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    A = A + A.T
    return A * (cap / np.linalg.norm(A, 2))


def cases(d, g):
    """Kernel name, argument builder and output extractor for dimension ``d``."""
    M = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    H = _hermitian(g, d)
    x0 = np.ones(d, dtype=complex)
    X0 = g.standard_normal((d, d)) + 0j
    K1, K2 = _disk(g, d), _disk(g, d)
    return [
        ("opnorm", lambda k: k.opnorm(M, x0, 1e-13, 10_000), lambda out: np.array([out[0]])),
        ("deflation_eigh", lambda k: k.deflation_eigh(H, X0, 1e-13, 10_000), lambda out: np.sort(out[0])),
        ("gauss_inverse", lambda k: k.gauss_inverse(M, 1e-14), lambda out: out[0]),
        (
            "boundary_search",
            lambda k: k.boundary_search(K1, K2 - K1, 1, 0.0, 0.0, 1e-10, 1e-12, 10_000, x0),
            lambda out: np.array(out[:2]),
        ),
        (
            "hessenberg_qr_eigvals",
            lambda k: k.hessenberg_qr_eigvals(M, 1e-14, 10_000),
            lambda out: np.sort_complex(np.asarray(out[0])),
        ),
    ]


def run(dims, number, seed):
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the Python backend is available")
    names = sorted(backends)
    header = f"{'kernel':<22}{'d':>3}" + "".join(f"{n + ' us':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}{'max diff':>11}"
    print(header)
    for d in dims:
        for name, call, extract in cases(d, np.random.default_rng(seed + d)):
            times, outs = {}, {}
            for b in names:
                mod = backends[b]
                outs[b] = extract(call(mod))
                times[b] = min(timeit.repeat(lambda: call(mod), number=number, repeat=3)) / number * 1e6
            row = f"{name:<22}{d:>3}" + "".join(f"{times[b]:>14.1f}" for b in names)
            if len(names) == 2:
                diff = float(np.max(np.abs(outs["compiled"] - outs["python"])))
                row += f"{times['python'] / times['compiled']:>10.1f}{diff:>11.1e}"
            print(row)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--number", type=int, default=200, help="calls per timing sample")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    run(args.dims, args.number, args.seed)


if __name__ == "__main__":
    main()
