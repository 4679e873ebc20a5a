"""Compare the compiled and pure-Python reduction kernels on Graver completion.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import time

from toricdual import kernels
from toricdual.exactla import IntMat
from toricdual.graver import graver_completion

CASES = {
    "(4 5 6 7)": IntMat.from_rows([[4, 5, 6, 7]]),
    "(3 5 7 11)": IntMat.from_rows([[3, 5, 7, 11]]),
    "(5 7 9 11 13)": IntMat.from_rows([[5, 7, 9, 11, 13]]),
    "2x5": IntMat.from_rows([[1, 1, 1, 1, 1], [0, 2, 3, 5, 7]]),
    "(2 3 5 7 11 13)": IntMat.from_rows([[2, 3, 5, 7, 11, 13]]),
}


def bench(A, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        G = graver_completion(A, backend=backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), len(G)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernels._ckernels is not None else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'case':18s} {'|Gr|':>6s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, A in CASES.items():
        res = {b: bench(A, b, args.repeat) for b in backends}
        sizes = {n for _, n in res.values()}
        assert len(sizes) == 1, f"backends disagree on {name}"
        cols = " ".join(f"{res[b][0]:9.3f}s" for b in backends)
        speed = f"{res['python'][0] / res['cython'][0]:8.1f}x" if "cython" in res else ""
        print(f"{name:18s} {sizes.pop():6d} {cols} {speed}")


if __name__ == "__main__":
    main()
