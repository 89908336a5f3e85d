"""Head-to-head timing of the compiled and pure-python kernel backends.

Times the three hot kernels on protocol-sized arrays and a full sweep run
through each backend.

Example:
  python3 benchmarks/bench_backends.py --grid 30 --repeats 5
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from clonecert import _kernels, sweep


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_times(repeats: int) -> dict[str, float]:
    # protocol sizes: 9x9 reduced densities, 27-dim probe states, 9x3 products
    rng = np.random.default_rng(20260814)
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    h = (m + m.conj().T) / 2.0
    psi = rng.normal(size=27) + 1j * rng.normal(size=27)
    psi /= np.linalg.norm(psi)
    a = rng.normal(size=9) + 1j * rng.normal(size=9)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)

    def eig():
        for _ in range(1000):
            _kernels.eigh_descending(h)

    def ptrace():
        for _ in range(1000):
            _kernels.partial_trace_ket(psi, (3, 3, 3), (0, 1))

    def kron():
        for _ in range(1000):
            _kernels.kron_vec(a, b)

    return {
        "eigh 9x9 x1000": _time(eig, repeats),
        "ptrace 27-dim x1000": _time(ptrace, repeats),
        "kron 9x3 x1000": _time(kron, repeats),
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=20, help="sweep resolution (default 20)")
    ap.add_argument("--repeats", type=int, default=3, help="best-of repeats (default 3)")
    args = ap.parse_args()

    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("note: compiled backend unavailable; timing python only")

    results: dict[str, dict[str, float]] = {}
    for name in backends:
        _kernels.use_backend(name)
        results[name] = kernel_times(args.repeats)
        results[name][f"sweep grid={args.grid}"] = _time(
            lambda: sweep(args.grid), args.repeats)
    _kernels.use_backend(backends[0])

    rows = list(results[backends[0]])
    width = max(len(r) for r in rows)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += "  speedup"
    print(header)
    for row in rows:
        line = f"{row:<{width}}  " + "  ".join(
            f"{results[b][row] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"  {results[backends[1]][row] / results[backends[0]][row]:>6.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
