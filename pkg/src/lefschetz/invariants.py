"""Invariants of the total space of a closed Lefschetz fibration over S^2."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .factorization import (BaseRelator, Factorization, LedgerEntry, RelatorSubstitution,
                            TwistedFiberSum)
from .fpgroups.abelian import AbelianGroup
from .meyer import cocycle_sum

# Endo-Nagami values I_g of the relators in the library.
RELATOR_VALUES = {
    "separating": -1,
    "lantern": 1,
    "matsumoto_even": -4,
    "matsumoto_odd": -8,
    "commutation": 0,
}

ODD_FORM_CAVEAT = ("homeomorphism label assumes an odd intersection form; "
                   "parity is not determined from the factorization")


class Minimality(str, Enum):
    PROP8_DECOMPOSITION = "Prop8Decomposition"
    LANTERN_BLOWDOWN_CHAIN = "LanternBlowdownChain"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SignatureLedger:
    entries: tuple[LedgerEntry, ...]
    adjustments: tuple[tuple[str, int | None], ...]
    known: bool

    @property
    def total(self) -> int | None:
        if not self.known:
            return None
        return (sum(e.multiplicity * e.value for e in self.entries)
                + sum(d for _, d in self.adjustments))


def signature_ledger(history) -> SignatureLedger:
    entries: list[LedgerEntry] = []
    adjustments: list[tuple[str, int | None]] = []
    known = True

    def walk(steps):
        nonlocal known
        for s in steps:
            if isinstance(s, BaseRelator):
                if s.entries is None:
                    known = False
                else:
                    entries.extend(s.entries)
            elif isinstance(s, TwistedFiberSum):
                walk(s.left)
                walk(s.right)
            elif isinstance(s, RelatorSubstitution):
                adjustments.append((f"{s.relator} at {s.position}", s.delta))
                if s.delta is None:
                    known = False

    walk(history)
    return SignatureLedger(tuple(entries), tuple(adjustments), known)


def _require_closed(F: Factorization) -> None:
    if not F.target.is_identity:
        raise ValueError("invariants need a closed fibration: cap boundary targets first")


def euler_characteristic(F: Factorization) -> int:
    _require_closed(F)
    return 2 * (2 - 2 * F.surface.genus) + len(F.letters)


def signature_endo_nagami(F: Factorization) -> int | None:
    """Ledger total, or None when the history has a step of unknown value."""
    _require_closed(F)
    return signature_ledger(F.history).total


def signature_meyer(F: Factorization) -> int:
    """``-sum tau(P_{k-1}, T_k) - (number of separating letters)``."""
    _require_closed(F)
    seps = sum(1 for t in F.letters if t.curve.separating)
    return -cocycle_sum(F.letters, F.surface.genus) - seps


def minimality_evidence(F: Factorization) -> Minimality:
    """Structural evidence read off the construction history.

    A history rooted in a fiber sum of two closed factorizations has the
    shape ``W_1^phi W_2``; lantern substitutions applied afterwards are
    rational blowdowns of a minimal input.
    """
    hist = F.history
    if not hist or not isinstance(hist[0], TwistedFiberSum):
        return Minimality.UNKNOWN
    lanterns = [s for s in hist if isinstance(s, RelatorSubstitution) and s.relator == "lantern"]
    return Minimality.LANTERN_BLOWDOWN_CHAIN if lanterns else Minimality.PROP8_DECOMPOSITION


def fiber_sum_euler(e1: int, e2: int, fiber_genus: int) -> int:
    return e1 + e2 - 2 * (2 - 2 * fiber_genus)


def fiber_sum_signature(s1: int, s2: int) -> int:
    return s1 + s2


@dataclass(frozen=True)
class InvariantReport:
    e: int
    sigma: int
    c1sq: int
    b1: int
    b2plus: int
    b2minus: int
    h1: AbelianGroup
    homeo_label: str | None = None
    minimality: Minimality = Minimality.UNKNOWN
    caveats: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "e": self.e, "sigma": self.sigma, "c1sq": self.c1sq, "b1": self.b1,
            "b2plus": self.b2plus, "b2minus": self.b2minus, "h1": self.h1.to_dict(),
            "label": self.homeo_label, "minimality": self.minimality.value,
            "caveats": list(self.caveats),
        }


def report_from_numbers(e: int, sigma: int, h1: AbelianGroup, pi1_trivial: bool,
                        minimality: Minimality = Minimality.UNKNOWN,
                        caveats: tuple[str, ...] = ()) -> InvariantReport:
    """Betti numbers from ``e = 2 - 2 b1 + b2`` and ``sigma = b2+ - b2-``."""
    b1 = h1.free_rank
    b2 = e - 2 + 2 * b1
    if b2 < 0 or (b2 + sigma) % 2 or abs(sigma) > b2:
        raise ValueError(f"inconsistent invariants: e={e}, sigma={sigma}, b1={b1}")
    b2plus, b2minus = (b2 + sigma) // 2, (b2 - sigma) // 2
    label = None
    notes = list(caveats)
    if pi1_trivial and b2plus >= 1:
        label = f"{b2plus} CP2 # {b2minus} CP2bar"
        notes.append(ODD_FORM_CAVEAT)
    elif not pi1_trivial:
        notes.append("no homeomorphism label: simple connectivity not certified")
    return InvariantReport(e, sigma, 2 * e + 3 * sigma, b1, b2plus, b2minus, h1, label,
                           minimality, tuple(notes))


def invariant_report(F: Factorization, h1: AbelianGroup, pi1_trivial: bool) -> InvariantReport:
    e = euler_characteristic(F)
    sigma = signature_endo_nagami(F)
    caveats = []
    if sigma is None:
        sigma = signature_meyer(F)
        caveats.append("signature from the Meyer cocycle only (ledger unknown)")
    return report_from_numbers(e, sigma, h1, pi1_trivial, minimality_evidence(F), tuple(caveats))
