"""Deterministic Tietze simplification.

Each step eliminates one generator ``g`` that occurs exactly once in some
relator ``r``: writing ``r`` cyclically as ``g^e w`` gives ``g = w^-e``, which
is substituted everywhere before ``r`` and ``g`` are dropped.  The chosen
pair minimizes ``(len(r), name of g)``; a substitution that would push the
total relator length past ``growth`` times its starting value is skipped.
Between steps relators are freely and cyclically reduced and put in a
canonical cyclic form, so the procedure is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Letter, free_reduce, invert_letters
from .presentation import Presentation


def cyclic_reduce(r: tuple[Letter, ...]) -> tuple[Letter, ...]:
    r = free_reduce(r)
    i, j = 0, len(r) - 1
    while i < j and r[i][0] == r[j][0] and r[i][1] == -r[j][1]:
        i += 1
        j -= 1
    return r[i:j + 1]


def canonical_cyclic(r: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Lexicographically least rotation of ``r`` or of its inverse."""
    if not r:
        return r
    inv = invert_letters(r)
    return min(w[k:] + w[:k] for w in (r, inv) for k in range(len(w)))


def normalize(P: Presentation) -> Presentation:
    seen = set()
    rels = []
    for r in P.relators:
        c = canonical_cyclic(cyclic_reduce(r))
        if c and c not in seen:
            seen.add(c)
            rels.append(c)
    rels.sort(key=lambda w: (len(w), w))
    return Presentation(P.generators, tuple(rels))


@dataclass(frozen=True)
class TietzeResult:
    presentation: Presentation
    steps: int
    exhausted: bool


def _substitute(r, g, image):
    out = []
    inv = invert_letters(image)
    for h, e in r:
        if h == g:
            out.extend(image if e == 1 else inv)
        else:
            out.append((h, e))
    return tuple(out)


def tietze_run(P: Presentation, budget: int = 10_000, growth: float = 4.0) -> TietzeResult:
    P = normalize(P)
    start_len = max(P.total_length(), 1)
    steps = 0
    while True:
        gens = P.generators
        cands = []
        for ri, r in enumerate(P.relators):
            counts: dict[int, int] = {}
            for h, _ in r:
                counts[h] = counts.get(h, 0) + 1
            for h, c in counts.items():
                if c == 1:
                    cands.append((len(r), gens[h], ri, h))
        cands.sort()
        chosen = None
        for _, _, ri, h in cands:
            r = P.relators[ri]
            k = next(i for i, (x, _) in enumerate(r) if x == h)
            rot = r[k:] + r[:k]
            e, w = rot[0][1], rot[1:]
            image = invert_letters(w) if e == 1 else w
            new_rels = [_substitute(s, h, image) for j, s in enumerate(P.relators) if j != ri]
            if sum(len(free_reduce(s)) for s in new_rels) <= growth * start_len:
                chosen = (h, new_rels)
                break
        if chosen is None:
            return TietzeResult(P, steps, False)
        if steps >= budget:
            return TietzeResult(P, steps, True)
        h, new_rels = chosen
        remap = {old: (old if old < h else old - 1) for old in range(len(gens)) if old != h}
        rels = tuple(tuple((remap[x], e) for x, e in s) for s in new_rels)
        P = normalize(Presentation(gens[:h] + gens[h + 1:], rels))
        steps += 1


def tietze_simplify(P: Presentation, budget: int = 10_000, growth: float = 4.0) -> Presentation:
    return tietze_run(P, budget, growth).presentation
