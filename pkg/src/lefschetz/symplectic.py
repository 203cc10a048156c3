"""Homology representation Mod_g -> Sp(2g, Z) by transvections.

Handedness.  A right-handed Dehn twist about ``c`` acts on H_1 by

    T_c(x) = x + TWIST_SIGN * <x, c> c,      TWIST_SIGN = -1,

with ``<a_i, b_i> = +1``.  The sign is pinned by calibration: with this
choice Matsumoto's W_2 evaluates to the identity on the curve classes read
off the recorded pi_1 words, and the Meyer-cocycle signature of W_2 is -4.
The opposite sign fails the identity check for the same classes.

Composition.  A word ``t_1 t_2 ... t_n`` evaluates to the matrix product
``T_1 T_2 ... T_n`` acting on column vectors, so the rightmost letter is
applied first (``fh`` means ``h`` first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Curve, HomologyClass, Surface

TWIST_SIGN = -1


def intersection_pairing(u: HomologyClass | Sequence[int], v: HomologyClass | Sequence[int]) -> int:
    """Standard symplectic form ``u^T J v``."""
    if len(u) != len(v):
        raise ValueError("dimension mismatch in intersection pairing")
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def j_vector(c: Sequence[int]) -> list[int]:
    """``J c`` in the (a_i, b_i) basis, so that ``<x, c> = x . (J c)``."""
    out = []
    for i in range(0, len(c), 2):
        out += [c[i + 1], -c[i]]
    return out


def standard_form(genus: int) -> "SpMatrix":
    """Block-diagonal J with blocks [[0, 1], [-1, 0]]."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        rows[i][i + 1] = 1
        rows[i + 1][i] = -1
    return SpMatrix.from_lists(rows)


@dataclass(frozen=True)
class SpMatrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, genus: int) -> "SpMatrix":
        n = 2 * genus
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_lists(cls, rows: Iterable[Iterable[int]]) -> "SpMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return self.n // 2

    def __matmul__(self, other: "SpMatrix") -> "SpMatrix":
        if other.n != self.n:
            raise ValueError("size mismatch")
        cols = list(zip(*other.rows))
        return SpMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def apply(self, v: HomologyClass | Sequence[int]) -> HomologyClass:
        return HomologyClass(tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows))

    def transpose(self) -> "SpMatrix":
        return SpMatrix(tuple(zip(*self.rows)))

    def inverse(self) -> "SpMatrix":
        """Exact inverse of a symplectic matrix: ``M^-1 = J^-1 M^T J``."""
        J = standard_form(self.genus)
        minus_j = SpMatrix(tuple(tuple(-x for x in r) for r in J.rows))
        return minus_j @ self.transpose() @ J

    def is_identity(self) -> bool:
        return all(x == int(i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_symplectic(self) -> bool:
        n = self.n
        if n % 2 or any(len(r) != n for r in self.rows):
            return False
        cols = list(zip(*self.rows))
        for i in range(n):
            for j in range(n):
                want = 1 if (i % 2 == 0 and j == i + 1) else (-1 if (j % 2 == 0 and i == j + 1) else 0)
                if intersection_pairing(cols[i], cols[j]) != want:
                    return False
        return True

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:3d}" for x in r) for r in self.rows)


@dataclass(frozen=True)
class TwistLetter:
    curve: Curve
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.exponent == 0:
            raise ValueError("twist exponent must be nonzero")

    def label(self) -> str:
        return self.curve.name if self.exponent == 1 else f"{self.curve.name}^{self.exponent}"


@dataclass(frozen=True)
class MappingWord:
    """Product of twists, read as composition (rightmost applied first)."""

    letters: tuple[TwistLetter, ...] = ()
    name: str = ""

    def inverse(self) -> "MappingWord":
        return MappingWord(tuple(TwistLetter(t.curve, -t.exponent) for t in reversed(self.letters)),
                           f"{self.name}^-1" if self.name else "")

    def __len__(self) -> int:
        return len(self.letters)

    def label(self) -> str:
        return self.name or " ".join(t.label() for t in self.letters)


def _surface_of(letters: Sequence[TwistLetter]) -> Surface | None:
    genera = {t.curve.surface.genus for t in letters}
    if len(genera) > 1:
        raise ValueError(f"letters live on surfaces of different genus {sorted(genera)}")
    return letters[0].curve.surface if letters else None


def right_multiply_twist(P: list[list[int]], c: Sequence[int], k: int = 1) -> None:
    """In place ``P <- P T_c^k``; a rank-one update, since T_c^k = I + s k c (Jc)^T."""
    if not any(c):
        return
    jc = j_vector(c)
    coef = TWIST_SIGN * k
    for row in P:
        pc = sum(a * b for a, b in zip(row, c))
        if pc:
            f = coef * pc
            for j, w in enumerate(jc):
                if w:
                    row[j] += f * w


def transvection_matrix(c: Curve | HomologyClass | Sequence[int], k: int = 1) -> SpMatrix:
    """Matrix of ``t_c^k``; unchanged under ``c -> -c``."""
    v = c.homology if isinstance(c, Curve) else c
    n = len(v)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    right_multiply_twist(P, tuple(v), k)
    return SpMatrix.from_lists(P)


def _letters_of(w) -> tuple[TwistLetter, ...]:
    if isinstance(w, MappingWord):
        return w.letters
    if hasattr(w, "letters"):
        return tuple(w.letters)
    return tuple(w)


def evaluate_word(w, genus: int | None = None) -> SpMatrix:
    """Image in Sp(2g, Z) of a MappingWord, Factorization or letter sequence."""
    letters = _letters_of(w)
    surf = _surface_of(letters)
    if genus is None:
        if surf is None:
            surf = getattr(w, "surface", None)
            if surf is None:
                raise ValueError("empty word: genus must be given")
        genus = surf.genus
    elif surf is not None and surf.genus != genus:
        raise ValueError("word lives on a different surface")
    n = 2 * genus
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for t in letters:
        right_multiply_twist(P, t.curve.homology.coeffs, t.exponent)
    return SpMatrix.from_lists(P)


def prefix_products(letters: Sequence[TwistLetter], genus: int) -> list[SpMatrix]:
    """``[P_1, ..., P_n]`` with ``P_k`` the product of the first k letters."""
    n = 2 * genus
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    out = []
    for t in letters:
        right_multiply_twist(P, t.curve.homology.coeffs, t.exponent)
        out.append(SpMatrix.from_lists(P))
    return out


def act_on_curve(w: MappingWord, c: Curve, name: str | None = None) -> Curve:
    """Image curve ``w(c)`` at the homology level.

    The pi_1 word is dropped for a nonempty ``w``: recomputing it would be
    isotopy-level work.
    """
    letters = _letters_of(w)
    if not letters:
        return c if name is None else c.with_name(name)
    surf = _surface_of(letters)
    if surf.genus != c.surface.genus:
        raise ValueError("mapping word and curve live on different surfaces")
    h = evaluate_word(w, surf.genus).apply(c.homology)
    label = name or f"{getattr(w, 'name', '') or 'w'}({c.name})"
    return Curve(label, c.surface, h, h.is_zero() or c.separating, None,
                 c.boundary, "derived")


def verify_identity(F) -> bool:
    """True iff the letters of ``F`` evaluate to the identity matrix.

    Necessary but not sufficient for the mapping class identity: separating
    twists are invisible in homology.
    """
    genus = F.surface.genus if hasattr(F, "surface") else None
    return evaluate_word(F, genus).is_identity()
