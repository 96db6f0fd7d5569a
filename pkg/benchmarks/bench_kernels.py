"""Time the compiled and the pure-Python kernels on Khovanov differentials.

Run ``python3 benchmarks/bench_kernels.py``; prints one line per diagram.
"""

import time

from arckh import _kernels_py
from arckh.library import diagram
from arckh.khovanov import KhComplex

try:
    from arckh import _kernels
except ImportError:  # extension not built
    _kernels = None


def best_of(fn, arg, reps=3):
    t = float("inf")
    for _ in range(reps):
        s = time.perf_counter()
        fn(arg)
        t = min(t, time.perf_counter() - s)
    return t


def main():
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    for name in ("trefoil", "5_2", "K1", "8_19"):
        C = KhComplex(diagram(name))
        cols = C.d
        row = [f"{name:8s} dim={C.dim:5d}"]
        for label, mod in backends:
            row.append(f"{label} eliminate {best_of(mod.eliminate_units, cols) * 1e3:8.2f} ms")
        print("  ".join(row))


if __name__ == "__main__":
    main()
