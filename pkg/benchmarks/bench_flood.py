"""Compare the numba-compiled flood kernel with the pure-python fallback.

Usage: python3 benchmarks/bench_flood.py [n ...]

For each torus size n the script generates a random Morse stack on
TOR(n, n), packs the facet adjacency once, and times the label flood
with both kernels.  The numba path requires numba to be importable and
MORSESHED_NUMBA unset or != 0.
"""

from __future__ import annotations

import sys
import time

from morseshed import _kernels, generate_torus, random_morse_stack


def bench(n: int, repeats: int = 5) -> None:
    X = generate_torus(n, n)
    F = random_morse_stack(X, seed=0)
    pk = X.packed()
    alt = F.alt_array()
    nbr, sep_ids, facet_alt, sep_alt, _, _ = _kernels.top_adjacency(pk, alt)
    seeds = [
        (int(i), lab)
        for lab, i in enumerate(
            _kernels.minimum_facets(nbr, sep_ids, facet_alt, sep_alt), start=1
        )
    ]

    import numpy as np

    def run(kernel):
        B = np.zeros(nbr.shape[0], dtype=np.int64)
        queue = np.empty(nbr.shape[0], dtype=np.int64)
        tail = 0
        for i, label in seeds:
            B[i] = label
            queue[tail] = i
            tail += 1
        t0 = time.perf_counter()
        out = kernel(nbr, sep_ids, facet_alt, sep_alt, B, queue, tail)
        return time.perf_counter() - t0, out

    results = {}
    kernels = {"python": _kernels._flood_python}
    if _kernels.NUMBA_ENABLED:
        run(_kernels._flood_numba)  # warm up the JIT
        kernels["numba"] = _kernels._flood_numba
    for name, kernel in kernels.items():
        best, out = min((run(kernel) for _ in range(repeats)), key=lambda r: r[0])
        results[name] = (best, out)
    line = f"TOR({n},{n}) facets={nbr.shape[0]}"
    for name, (best, _) in results.items():
        line += f"  {name}={best * 1e3:.2f}ms"
    if len(results) == 2:
        (tp, bp), (tn, bn) = results["python"], results["numba"]
        assert (bp == bn).all(), "kernels disagree"
        line += f"  speedup={tp / tn:.1f}x"
    print(line)


if __name__ == "__main__":
    sizes = [int(a) for a in sys.argv[1:]] or [20, 50, 100, 200]
    if not _kernels.NUMBA_ENABLED:
        print("numba disabled (MORSESHED_NUMBA=0 or not installed); python only")
    for n in sizes:
        bench(n)
