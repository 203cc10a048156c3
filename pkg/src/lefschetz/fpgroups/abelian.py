"""Smith normal form over Z and finitely generated abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, U, V)`` with ``D = U M V``, U and V unimodular.

    D is diagonal with non-negative entries and d_1 | d_2 | ... .  Works for
    any shape, including empty matrices; all arithmetic is exact.
    """
    D = [list(map(int, r)) for r in M]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in D:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q col_src
        for R in D:
            R[dst] += q * R[src]
        for R in V:
            R[dst] += q * R[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            break
    return D, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k, d_i >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0 or any(d < 2 for d in t):
            raise ValueError("free rank must be >= 0 and torsion divisors >= 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion divisors must form a divisibility chain")

    @classmethod
    def from_relation_matrix(cls, rows: Sequence[Sequence[int]], ngens: int) -> "AbelianGroup":
        rows = [list(r) for r in rows if any(r)]
        if not rows or ngens == 0:
            return cls(ngens)
        diag = invariant_factors(rows)
        return cls(ngens - len(diag), tuple(d for d in diag if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d: dict) -> "AbelianGroup":
        return cls(int(d.get("free_rank", 0)), tuple(d.get("torsion", ())))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"
