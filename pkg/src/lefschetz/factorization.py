"""Positive factorizations and the operations that build new ones from old.

A :class:`Factorization` is an all-positive twist word together with its
target (the identity, or a product of boundary multitwists on Sigma_g^n),
the self-intersections of the sections it witnesses, and an append-only
construction history.  The history is what the signature ledger reads.

Positions passed to the operations are 1-based, matching the usual
``t_{a_1} t_{a_2} ... t_{a_n}`` indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Collection, Iterable, Sequence

from .core import Curve, Surface
from .symplectic import (MappingWord, TwistLetter, act_on_curve, evaluate_word,
                         intersection_pairing)

# Signature change of a whitelisted substitution, oriented removed -> inserted.
# Keys are relator names; values are functions of (len removed, len inserted).
RELATOR_WHITELIST = {
    "lantern": {(4, 3): 1, (3, 4): -1},
    "commutation": None,  # any lengths, delta 0; see relator_substitute
}


# ---------------------------------------------------------------------------
# targets and history


@dataclass(frozen=True)
class Target:
    """Identity when ``boundaries`` is empty, else prod t_{delta_j}^{m_j}."""

    boundaries: tuple[tuple[int, int], ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.boundaries

    def describe(self) -> str:
        if self.is_identity:
            return "1"
        return " ".join(f"t_delta{j}^{m}" if m != 1 else f"t_delta{j}" for j, m in self.boundaries)


IDENTITY = Target()


@dataclass(frozen=True)
class LedgerEntry:
    relator: str
    multiplicity: int
    value: int


@dataclass(frozen=True)
class BaseRelator:
    name: str
    entries: tuple[LedgerEntry, ...] | None  # None: Endo-Nagami value unknown
    kind: str = field(default="base", init=False)


@dataclass(frozen=True)
class GlobalConjugate:
    word: str
    kind: str = field(default="conjugate", init=False)


@dataclass(frozen=True)
class TwistedFiberSum:
    left: tuple
    right: tuple
    gluing: str
    kind: str = field(default="fiber_sum", init=False)


@dataclass(frozen=True)
class RelatorSubstitution:
    relator: str
    removed: tuple[str, ...]
    inserted: tuple[str, ...]
    delta: int | None
    position: int
    kind: str = field(default="substitute", init=False)


@dataclass(frozen=True)
class HurwitzMove:
    index: int
    direction: str
    kind: str = field(default="hurwitz", init=False)


@dataclass(frozen=True)
class CapBoundary:
    index: int
    multiplicity: int
    kind: str = field(default="cap", init=False)


@dataclass(frozen=True)
class Rotation:
    shift: int
    kind: str = field(default="rotate", init=False)


@dataclass(frozen=True)
class Relabel:
    index: int
    old: str
    new: str
    kind: str = field(default="relabel", init=False)


Step = (BaseRelator | GlobalConjugate | TwistedFiberSum | RelatorSubstitution
        | HurwitzMove | CapBoundary | Rotation | Relabel)


def step_to_dict(step) -> dict:
    d = {"kind": step.kind}
    for k, v in step.__dict__.items():
        if k == "kind":
            continue
        if k in ("left", "right"):
            d[k] = [step_to_dict(s) for s in v]
        elif k == "entries":
            d[k] = None if v is None else [[e.relator, e.multiplicity, e.value] for e in v]
        elif isinstance(v, tuple):
            d[k] = list(v)
        else:
            d[k] = v
    return d


# ---------------------------------------------------------------------------
# factorization


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    surface: Surface
    letters: tuple[TwistLetter, ...]
    target: Target = IDENTITY
    sections: tuple[int, ...] = ()
    history: tuple = ()
    name: str = ""

    def __post_init__(self) -> None:
        for t in self.letters:
            if t.exponent != 1:
                raise FactorizationError(f"letter {t.curve.name} has exponent {t.exponent}; factorizations are positive")
            if t.curve.surface.genus != self.surface.genus:
                raise FactorizationError(f"letter {t.curve.name} lives on genus {t.curve.surface.genus}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def curves(self) -> list[Curve]:
        return [t.curve for t in self.letters]

    def names(self) -> list[str]:
        return [t.curve.name for t in self.letters]

    def census(self) -> tuple[int, int]:
        """(nonseparating letters, separating letters)."""
        sep = sum(1 for t in self.letters if t.curve.separating)
        return len(self.letters) - sep, sep

    def _with(self, letters=None, step=None, **kw) -> "Factorization":
        hist = self.history + ((step,) if step is not None else ())
        return replace(self, letters=tuple(letters) if letters is not None else self.letters,
                       history=hist, **kw)


def base_factorization(name: str, curves: Sequence[Curve], surface: Surface, *,
                       target: Target = IDENTITY,
                       ledger: Iterable[tuple[str, int, int]] | None = None) -> Factorization:
    """A factorization taken as given (a relator from the library)."""
    entries = None if ledger is None else tuple(LedgerEntry(*e) for e in ledger)
    sections = tuple(-m for _, m in target.boundaries)
    return Factorization(surface, tuple(TwistLetter(c) for c in curves), target, sections,
                         (BaseRelator(name, entries),), name)


def _check_index(F: Factorization, i: int) -> None:
    if not 1 <= i < len(F.letters):
        raise IndexError(f"position {i} out of range for {len(F.letters)} letters")


def _declared_disjoint(a: Curve, b: Curve, disjoint: Collection[frozenset] | None) -> bool:
    return bool(disjoint) and frozenset((a.name, b.name)) in disjoint


def hurwitz_move(F: Factorization, i: int, direction: str = "right", *,
                 disjoint: Collection[frozenset] | None = None) -> Factorization:
    """Hurwitz move at positions (i, i+1).

    right:  t_a t_b = t_b t_{t_b^-1(a)}
    left:   t_a t_b = t_{t_a(b)} t_a
    A pair declared disjoint simply swaps, keeping the curve records.
    """
    _check_index(F, i)
    L = list(F.letters)
    a, b = L[i - 1].curve, L[i].curve
    if _declared_disjoint(a, b, disjoint) and intersection_pairing(a.homology, b.homology) == 0:
        L[i - 1], L[i] = L[i], L[i - 1]
    elif direction == "right":
        inv = MappingWord((TwistLetter(b, -1),), f"t_{b.name}^-1")
        L[i - 1], L[i] = TwistLetter(b), TwistLetter(act_on_curve(inv, a))
    elif direction == "left":
        fw = MappingWord((TwistLetter(a, 1),), f"t_{a.name}")
        L[i - 1], L[i] = TwistLetter(act_on_curve(fw, b)), TwistLetter(a)
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return F._with(L, HurwitzMove(i, direction))


def commute(F: Factorization, i: int, disjoint: Collection[frozenset]) -> Factorization:
    """Swap letters i, i+1; legal only for declared-disjoint, zero-pairing curves."""
    _check_index(F, i)
    a, b = F.letters[i - 1].curve, F.letters[i].curve
    if intersection_pairing(a.homology, b.homology) != 0:
        raise FactorizationError(f"{a.name} and {b.name} pair nontrivially; they cannot commute")
    if not _declared_disjoint(a, b, disjoint) and a.name != b.name:
        raise FactorizationError(f"{a.name} and {b.name} are not declared disjoint")
    L = list(F.letters)
    L[i - 1], L[i] = L[i], L[i - 1]
    return F._with(L, HurwitzMove(i, "swap"))


def global_conjugate(F: Factorization, w: MappingWord) -> Factorization:
    """Replace every t_c by t_{w(c)}."""
    if not w.letters:
        return F
    label = w.label()
    L = [TwistLetter(act_on_curve(w, t.curve, name=f"{w.name or 'w'}({t.curve.name})")) for t in F.letters]
    return F._with(L, GlobalConjugate(label))


def rotate(F: Factorization, shift: int) -> Factorization:
    """Cyclic shift by ``shift`` places to the right.

    Valid whenever the target is central (identity or boundary twists):
    ``t_1^-1 (t_1 ... t_n) t_1 = t_2 ... t_n t_1``.
    """
    n = len(F.letters)
    if n == 0:
        return F
    s = shift % n
    L = F.letters[n - s:] + F.letters[:n - s]
    return F._with(L, Rotation(shift))


def relabel(F: Factorization, i: int, curve: Curve) -> Factorization:
    """Record that letter i is (a copy of) the fixture curve ``curve``.

    Checked at homology level: classes agree up to sign and the separating
    flags agree.  Used where the source asserts an isotopy such as
    ``alpha(B2') = c3``.
    """
    if not 1 <= i <= len(F.letters):
        raise IndexError(f"position {i} out of range")
    old = F.letters[i - 1].curve
    if not old.homology.same_up_to_sign(curve.homology) or old.separating != curve.separating:
        raise FactorizationError(f"cannot identify {old.name} ({old.homology.pretty()}) "
                                 f"with {curve.name} ({curve.homology.pretty()})")
    L = list(F.letters)
    L[i - 1] = TwistLetter(curve)
    return F._with(L, Relabel(i, old.name, curve.name))


def twisted_fiber_sum(F1: Factorization, F2: Factorization,
                      w: MappingWord | None = None, name: str = "") -> Factorization:
    """``F1 . F2^w`` for two closed fibrations (targets must be the identity)."""
    if F1.surface.genus != F2.surface.genus:
        raise FactorizationError("fiber sum of fibrations with different genus")
    if not (F1.target.is_identity and F2.target.is_identity):
        raise FactorizationError("cap boundary targets before forming a fiber sum")
    G2 = global_conjugate(F2, w) if w is not None and w.letters else F2
    sections = tuple(s1 + s2 for s1, s2 in zip(F1.sections, F2.sections))
    step = TwistedFiberSum(F1.history, G2.history, w.label() if w is not None else "id")
    return Factorization(F1.surface, F1.letters + G2.letters, IDENTITY, sections, (step,), name)


def apply_certificate(F: Factorization, swaps: Sequence[int],
                      disjoint: Collection[frozenset]) -> Factorization:
    for i in swaps:
        F = commute(F, i, disjoint)
    return F


def _match(letter: Curve, wanted: Curve) -> bool:
    return (letter.name == wanted.name or
            (letter.homology.same_up_to_sign(wanted.homology) and letter.separating == wanted.separating))


def relator_substitute(F: Factorization, start: int, removed: Sequence[Curve],
                       inserted: Sequence[Curve], relator: str, *,
                       certificate: Sequence[int] = (),
                       disjoint: Collection[frozenset] = frozenset()) -> Factorization:
    """Replace the span ``removed`` (starting at 1-based ``start``) by ``inserted``.

    ``certificate`` lists adjacent swaps applied first; each must be a legal
    :func:`commute`.  The span must match ``removed`` letter by letter (same
    name, or same class up to sign with the same separating flag), and the
    homology images of the two words must agree.
    """
    if relator not in RELATOR_WHITELIST:
        raise FactorizationError(f"relator {relator!r} is not whitelisted")
    G = apply_certificate(F, certificate, disjoint)
    k = len(removed)
    if start < 1 or start + k - 1 > len(G.letters):
        raise FactorizationError("substitution span out of range")
    span = [t.curve for t in G.letters[start - 1:start - 1 + k]]
    for have, want in zip(span, removed):
        if not _match(have, want):
            raise FactorizationError(f"span mismatch: letter {have.name} does not match {want.name}")
    genus = F.surface.genus
    if evaluate_word([TwistLetter(c) for c in span], genus) != evaluate_word([TwistLetter(c) for c in inserted], genus):
        raise FactorizationError(f"{relator}: homology images of the two sides differ")
    rule = RELATOR_WHITELIST[relator]
    if rule is None:
        if sorted(c.name for c in span) != sorted(c.name for c in inserted):
            raise FactorizationError("commutation rewrite must permute the same letters")
        delta = 0
    else:
        if (k, len(inserted)) not in rule:
            raise FactorizationError(f"{relator}: unexpected word lengths {(k, len(inserted))}")
        delta = rule[(k, len(inserted))]
    L = list(G.letters[:start - 1]) + [TwistLetter(c) for c in inserted] + list(G.letters[start - 1 + k:])
    step = RelatorSubstitution(relator, tuple(c.name for c in span), tuple(c.name for c in inserted), delta, start)
    return G._with(L, step)


def cap_off(F: Factorization, boundary: int) -> Factorization:
    """Cap boundary component ``boundary``; its twists disappear from the target."""
    mult = dict(F.target.boundaries)
    if boundary not in mult:
        raise FactorizationError(f"target has no boundary component {boundary}")
    L = [t for t in F.letters if t.curve.boundary != boundary]
    new_target = Target(tuple((j, m) for j, m in F.target.boundaries if j != boundary))
    surf = F.surface.capped()
    return replace(F, surface=surf, letters=tuple(L), target=new_target,
                   history=F.history + (CapBoundary(boundary, mult[boundary]),))


def verify_factorization(F: Factorization) -> bool:
    """Homology check of ``F = target``; boundary twists act trivially on the
    closed-surface basis, so the letters must evaluate to the identity."""
    return evaluate_word(F.letters, F.surface.genus).is_identity()
