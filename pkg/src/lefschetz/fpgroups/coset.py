"""Bounded Todd-Coxeter enumeration with a self-audit of the result.

The hot loop lives in a compiled extension (``_coset``); when it is not
built, or ``LEFSCHETZ_PURE_PYTHON=1`` is set, the identical pure-Python
kernel is used instead.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _coset_py
from .presentation import Presentation

try:
    if os.environ.get("LEFSCHETZ_PURE_PYTHON") == "1":
        raise ImportError("pure Python requested")
    from . import _coset as _kernel  # type: ignore[attr-defined]
    BACKEND = "compiled"
except ImportError:
    _kernel = _coset_py
    BACKEND = "python"

DEFAULT_MAX_COSETS = 10**6


@dataclass(frozen=True)
class Finite:
    order: int

    def __str__(self) -> str:
        return f"Finite({self.order})"


@dataclass(frozen=True)
class Exhausted:
    max_cosets: int

    def __str__(self) -> str:
        return "Exhausted"


def _columns(P: Presentation) -> list[list[int]]:
    return [[2 * g + (0 if e > 0 else 1) for g, e in r] for r in P.relators]


def audit_table(ncols: int, relators: list[list[int]], order: int, table: list[int]) -> bool:
    """Table closed, inverse-consistent, and every relator a loop at every coset."""
    if len(table) != order * ncols:
        return False
    for c in range(order):
        for x in range(ncols):
            t = table[c * ncols + x]
            if not 0 <= t < order or table[t * ncols + (x ^ 1)] != c:
                return False
    for c in range(order):
        for w in relators:
            d = c
            for x in w:
                d = table[d * ncols + x]
            if d != c:
                return False
    return True


def todd_coxeter(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS, *, kernel=None):
    """Order of the group presented by ``P`` as ``Finite(k)``, or ``Exhausted``."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ncols = 2 * len(P.generators)
    rels = [w for w in _columns(P) if w]
    if ncols == 0:
        return Finite(1)
    k = kernel or _kernel
    n, table = k.hlt_enumerate(ncols, rels, max_cosets)
    if n < 0:
        return Exhausted(max_cosets)
    if not audit_table(ncols, rels, n, table):
        raise RuntimeError("coset table failed its self-audit")
    return Finite(n)
