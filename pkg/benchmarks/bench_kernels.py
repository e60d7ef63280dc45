"""Compiled (numba) versus interpreted (numpy) elimination kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Both backends run the same source, so besides timing this checks that
they return identical pivots and residuals.
"""

import argparse
import time

import numpy as np

from symhom import sym_complex as S
from symhom.linalg import _kernels
from symhom.linalg.snf import _csc


def random_csc(rng, rows, cols, per_col):
    indptr = [0]
    indices, data = [], []
    for _ in range(cols):
        rs = np.sort(rng.choice(rows, size=per_col, replace=False))
        indices.extend(rs.tolist())
        data.extend(rng.choice([1, -1], size=per_col).tolist())
        indptr.append(len(indices))
    return rows, np.array(indptr), np.array(indices), np.array(data)


def cases(quick):
    rng = np.random.default_rng(0)
    out = [("random 300x300, 4/col", random_csc(rng, 300, 300, 4))]
    p_max = 3 if quick else 4
    for p in range(2, p_max + 1):
        d = S.sym_complex(p).differentials[-1]
        out.append((f"Sym p={p} top map {d.rows}x{d.cols}", (d.rows, *_csc(d))))
    if not quick:
        out.append(("random 1500x1500, 5/col", random_csc(rng, 1500, 1500, 5)))
    return out


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        res = fn()
        best = min(best, time.perf_counter() - t)
    return best, res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small cases only")
    args = ap.parse_args()
    # compile outside the timings
    _kernels.unit_reduce(2, np.array([0, 1, 2]), np.array([0, 1]), np.array([1, 1]), kernel="numba")
    _kernels.dense_reduce(np.eye(2, dtype=np.int64), kernel="numba")
    print(f"{'case':34s} {'numba s':>9s} {'numpy s':>9s} {'speedup':>8s}  agree")
    for name, (rows, ip, ix, da) in cases(args.quick):
        tn, a = timed(lambda: _kernels.unit_reduce(rows, ip, ix, da, kernel="numba"), args.repeat)
        tp, b = timed(lambda: _kernels.unit_reduce(rows, ip, ix, da, kernel="numpy"), 1)
        same = (a.status == b.status
                and np.array_equal(a.pivot_rows, b.pivot_rows)
                and np.array_equal(a.pivot_cols, b.pivot_cols)
                and a.residual == b.residual)
        print(f"{name:34s} {tn:9.4f} {tp:9.4f} {tp / tn:8.1f}  {same}")
    rng = np.random.default_rng(1)
    n = 60 if args.quick else 150
    dense = rng.choice([0, 0, 0, 1, -1, 2], size=(n, n)).astype(np.int64)
    tn, a = timed(lambda: _kernels.dense_reduce(dense, kernel="numba"), args.repeat)
    tp, b = timed(lambda: _kernels.dense_reduce(dense, kernel="numpy"), 1)
    same = all(np.array_equal(x, y) for x, y in zip(a[1:], b[1:]))
    print(f"{f'dense {n}x{n}':34s} {tn:9.4f} {tp:9.4f} {tp / tn:8.1f}  {same}")


if __name__ == "__main__":
    main()
