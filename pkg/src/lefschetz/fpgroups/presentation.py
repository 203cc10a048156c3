"""Finite presentations, surface groups, abelianization and amalgamation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..core import Letter, format_letters, free_reduce, parse_letters
from .abelian import AbelianGroup


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[Letter, ...], ...] = ()

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be unique")
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            for g, e in r:
                if not 0 <= g < len(gens) or e not in (1, -1):
                    raise ValueError(f"relator letter {(g, e)} out of range")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Iterable[str]) -> "Presentation":
        gens = tuple(generators)
        return cls(gens, tuple(parse_letters(r, gens) for r in relators))

    def relator_strings(self) -> list[str]:
        return [format_letters(r, self.generators) for r in self.relators]

    def word(self, text: str) -> tuple[Letter, ...]:
        return parse_letters(text, self.generators)

    def with_relators(self, extra: Iterable[Sequence[Letter] | str]) -> "Presentation":
        new = [self.word(r) if isinstance(r, str) else tuple(r) for r in extra]
        return Presentation(self.generators, self.relators + tuple(new))

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def to_dict(self) -> dict:
        return {"generators": list(self.generators), "relators": self.relator_strings()}

    @classmethod
    def from_dict(cls, d: dict) -> "Presentation":
        return cls.parse(d["generators"], d["relators"])

    def __str__(self) -> str:
        return f"< {', '.join(self.generators)} | {', '.join(self.relator_strings())} >"


def surface_generators(g: int) -> tuple[str, ...]:
    return tuple(n for k in range(1, g + 1) for n in (f"a{k}", f"b{k}"))


def surface_relator_text(g: int, form: str = "conjugates") -> str:
    """The surface relator.

    ``conjugates``: ``b_g^-1 ... b_1^-1 (a1 b1 a1^-1) ... (ag bg ag^-1)``, the
    form attached to the genus-3 generator system of the X-construction.
    ``commutators``: ``[a1,b1] ... [ag,bg]``, the form used with the
    genus-3k generator system.
    """
    if g == 0:
        return ""
    if form == "commutators":
        return " ".join(f"[a{k},b{k}]" for k in range(1, g + 1))
    if form != "conjugates":
        raise ValueError(f"unknown surface relator form {form!r}")
    inv_bs = " ".join(f"b{k}^-1" for k in range(g, 0, -1))
    conj = " ".join(f"(a{k} b{k} a{k}^-1)" for k in range(1, g + 1))
    return f"{inv_bs} {conj}"


def surface_presentation(g: int, form: str = "conjugates") -> Presentation:
    gens = surface_generators(g)
    if g == 0:
        return Presentation(gens, ())
    return Presentation.parse(gens, [surface_relator_text(g, form)])


def vanishing_cycle_quotient(g: int, cycles: Iterable[Sequence[Letter] | str],
                             form: str = "conjugates") -> Presentation:
    """pi_1(Sigma_g) modulo the normal closure of the given cycles."""
    P = surface_presentation(g, form)
    n = len(P.generators)
    rels = []
    for c in cycles:
        r = P.word(c) if isinstance(c, str) else tuple(c)
        for gi, _ in r:
            if not 0 <= gi < n:
                raise ValueError(f"generator index {gi} out of range for genus {g}")
        rels.append(r)
    return Presentation(P.generators, P.relators + tuple(rels))


def relation_matrix(P: Presentation) -> list[list[int]]:
    rows = []
    for r in P.relators:
        v = [0] * len(P.generators)
        for g, e in r:
            v[g] += e
        rows.append(v)
    return rows


def abelianization(P: Presentation) -> AbelianGroup:
    return AbelianGroup.from_relation_matrix(relation_matrix(P), len(P.generators))


def amalgamate(P1: Presentation, P2: Presentation,
               identifications: Iterable[tuple[str, str]], *,
               prefixes: tuple[str, str] = ("", "")) -> Presentation:
    """Disjoint union of the two presentations plus ``u v^-1`` per pair.

    Generator names must be disjoint unless ``prefixes`` disambiguate them.
    """
    g1 = tuple(prefixes[0] + n for n in P1.generators)
    g2 = tuple(prefixes[1] + n for n in P2.generators)
    if set(g1) & set(g2):
        raise ValueError(f"generator names collide: {sorted(set(g1) & set(g2))}")
    off = len(g1)
    rels = list(P1.relators) + [tuple((g + off, e) for g, e in r) for r in P2.relators]
    for u, v in identifications:
        wu = P1.word(u)
        wv = tuple((g + off, e) for g, e in P2.word(v))
        rels.append(wu + tuple((g, -e) for g, e in reversed(wv)))
    return Presentation(g1 + g2, tuple(rels))
