"""Compare the compiled and pure-Python coset-enumeration kernels.

    python3 benchmarks/bench_coset.py [--repeat N]

Each case runs through both kernels on identical input; the tables must agree
exactly, and the best wall time of N runs is reported.
"""

from __future__ import annotations

import argparse
import sys
import time

from lefschetz.fixtures import xk_augmented_presentation, zk_presentation
from lefschetz.fpgroups import BACKEND, Presentation, tietze_simplify
from lefschetz.fpgroups import _coset_py

CASES = [
    ("classical trivial", Presentation.parse(["a", "b"], ["a b a^-1 b^-1 b^-1", "b a b^-1 a^-1 a^-1"])),
    ("(2,3,5) order 60", Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^5"])),
    ("PSL(2,7) order 168", Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^7", "[a,b]^4"])),
    ("Z/4000", Presentation.parse(["x"], ["x^4000"])),
    ("X(3,4) augmented", tietze_simplify(xk_augmented_presentation(3))),
    ("Z(3) amalgamated", tietze_simplify(zk_presentation(3))),
]


def columns(P: Presentation) -> tuple[int, list[list[int]]]:
    rels = [[2 * g + (0 if e > 0 else 1) for g, e in r] for r in P.relators]
    return 2 * len(P.generators), [r for r in rels if r]


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-cosets", type=int, default=10**6)
    ns = ap.parse_args(argv)
    if BACKEND != "compiled":
        print("compiled kernel not built; only the Python kernel is timed")
        compiled = None
    else:
        from lefschetz.fpgroups import _coset as compiled

    print(f"{'case':<22}{'order':>8}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, P in CASES:
        ncols, rels = columns(P)
        tp, rp = best_of(lambda: _coset_py.hlt_enumerate(ncols, rels, ns.max_cosets), ns.repeat)
        if compiled is None:
            print(f"{name:<22}{rp[0]:>8}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc, rc = best_of(lambda: compiled.hlt_enumerate(ncols, rels, ns.max_cosets), ns.repeat)
        if rc != rp:
            print(f"{name}: kernels disagree", file=sys.stderr)
            return 1
        print(f"{name:<22}{rp[0]:>8}{tp:>12.4f}{tc:>12.4f}{tp / max(tc, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
