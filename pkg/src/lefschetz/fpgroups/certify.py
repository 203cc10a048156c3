"""Certificates that a fundamental group is trivial.

The presentation handed in may be a *sub-collection* of the true relators
(the normal closure of fewer relators is smaller, so its quotient is bigger).
Triviality is certified in one of two ways:

* Todd-Coxeter on the Tietze-simplified presentation returns ``Finite(1)``.
* The simplified presentation is visibly abelian (at most one generator, or
  every commutator of two generators is a relator).  The true group is then
  an abelian quotient, hence equal to its abelianization, and ``h1`` (the
  first homology of the whole space, computed independently) is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup
from .coset import DEFAULT_MAX_COSETS, Finite, todd_coxeter
from .presentation import Presentation, abelianization
from .tietze import canonical_cyclic, tietze_run


@dataclass(frozen=True)
class Pi1Certificate:
    status: str              # "trivial" | "inconclusive" | "nontrivial"
    method: str | None       # "todd-coxeter" | "abelian-quotient" | None
    enumeration: str         # Finite(k) / Exhausted / skipped
    simplified_generators: int
    abelianization: AbelianGroup

    @property
    def certified(self) -> bool:
        return self.status == "trivial"

    def to_dict(self) -> dict:
        return {"status": self.status, "method": self.method, "enumeration": self.enumeration,
                "simplified_generators": self.simplified_generators,
                "abelianization": self.abelianization.to_dict()}


def visibly_abelian(P: Presentation) -> bool:
    n = len(P.generators)
    if n <= 1:
        return True
    have = {canonical_cyclic(r) for r in P.relators}
    for i in range(n):
        for j in range(i + 1, n):
            comm = ((i, -1), (j, -1), (i, 1), (j, 1))
            if canonical_cyclic(comm) not in have:
                return False
    return True


def certify_trivial(P: Presentation, h1: AbelianGroup | None = None, *,
                    max_cosets: int = DEFAULT_MAX_COSETS, tietze_budget: int = 10_000,
                    enumerate_cosets: bool = True) -> Pi1Certificate:
    """Try to show the group of the whole space is trivial.

    ``P`` presents a group surjecting onto it; ``h1`` is its first homology
    (defaults to the abelianization of ``P``).
    """
    ab = abelianization(P)
    h1 = ab if h1 is None else h1
    T = tietze_run(P, tietze_budget).presentation
    ngen = len(T.generators)
    if not h1.is_trivial:
        return Pi1Certificate("nontrivial", None, "skipped", ngen, ab)
    verdict = "skipped"
    if enumerate_cosets:
        r = todd_coxeter(T, max_cosets)
        verdict = str(r)
        if isinstance(r, Finite) and r.order == 1:
            return Pi1Certificate("trivial", "todd-coxeter", verdict, ngen, ab)
    if visibly_abelian(T):
        return Pi1Certificate("trivial", "abelian-quotient", verdict, ngen, ab)
    return Pi1Certificate("inconclusive", None, verdict, ngen, ab)


__all__ = ["Pi1Certificate", "certify_trivial", "visibly_abelian"]
