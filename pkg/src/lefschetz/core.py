"""Surfaces, homology classes, curves and the pi_1 word grammar.

Homology basis order is ``(a1, b1, a2, b2, ..., ag, bg)`` with
``<a_i, b_i> = +1``.  Generator ``a_k`` has index ``2(k-1)`` and ``b_k`` has
index ``2(k-1) + 1``; every other module inherits this convention.

Word grammar (whitespace between items is optional)::

    word  := item*
    item  := atom power?
    atom  := NAME | '(' word ')' | '[' word ',' word ']'
    power := '^' INT          (nonzero; '^-1' is the usual inverse)

``[x, y]`` is sugar for ``x y x^-1 y^-1``.  On a surface the names are
``a<k>`` and ``b<k>`` with ``1 <= k <= g``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]  # (generator index, +1 or -1)


class WordSyntaxError(ValueError):
    """Malformed word text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at byte {offset}")


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary_count: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError("genus and boundary count must be non-negative")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @property
    def closed(self) -> bool:
        return self.boundary_count == 0

    def generator_names(self) -> list[str]:
        names = []
        for k in range(1, self.genus + 1):
            names += [f"a{k}", f"b{k}"]
        return names

    def capped(self) -> "Surface":
        if self.boundary_count == 0:
            raise ValueError("surface has no boundary to cap")
        return Surface(self.genus, self.boundary_count - 1)


def generator_index(kind: str, k: int) -> int:
    """Index of ``a_k`` (kind 'a') or ``b_k`` (kind 'b') in the basis."""
    return 2 * (k - 1) + (0 if kind == "a" else 1)


@dataclass(frozen=True)
class HomologyClass:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) % 2:
            raise ValueError("homology vectors have even length 2g")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, genus: int) -> "HomologyClass":
        return cls((0,) * (2 * genus))

    @classmethod
    def basis(cls, genus: int, name: str) -> "HomologyClass":
        """``HomologyClass.basis(3, 'b2')`` is the class of ``b2``."""
        m = re.fullmatch(r"([ab])(\d+)", name)
        if not m or not 1 <= int(m.group(2)) <= genus:
            raise ValueError(f"no basis element {name!r} in genus {genus}")
        v = [0] * (2 * genus)
        v[generator_index(m.group(1), int(m.group(2)))] = 1
        return cls(tuple(v))

    @classmethod
    def from_dict(cls, genus: int, terms: Mapping[str, int]) -> "HomologyClass":
        total = cls.zero(genus)
        for name, coef in terms.items():
            total = total + coef * cls.basis(genus, name)
        return total

    @property
    def genus(self) -> int:
        return len(self.coeffs) // 2

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "HomologyClass") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("homology classes live on different surfaces")

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._check(other)
        return HomologyClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coeffs))

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * x for x in self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def same_up_to_sign(self, other: "HomologyClass") -> bool:
        return self == other or self == -other

    def pretty(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            name = f"{'ab'[i % 2]}{i // 2 + 1}"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{name}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


# ---------------------------------------------------------------------------
# words


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((g, -e) for g, e in reversed(letters))


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z_]*\d*'*)|(?P<pow>\^\s*-?\s*\d+)|(?P<sym>[\[\](),]))")


class _Parser:
    def __init__(self, text: str, index: Mapping[str, int]):
        self.text = text
        self.index = index
        self.raw = text.encode("utf-8")
        self.pos = 0
        self.tokens = self._tokenize()
        self.i = 0

    def _byte(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode("utf-8"))

    def _tokenize(self) -> list[tuple[str, str, int]]:
        toks = []
        pos = 0
        n = len(self.text)
        while pos < n:
            if self.text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(self.text, pos)
            if not m or m.end() == pos:
                raise WordSyntaxError(f"unexpected character {self.text[pos]!r}", self._byte(pos), self.text)
            kind = m.lastgroup
            start = m.start(kind)
            toks.append((kind, m.group(kind), start))
            pos = m.end()
        return toks

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def end_offset(self) -> int:
        return len(self.raw)

    def parse(self) -> tuple[Letter, ...]:
        w = self.word(top=True)
        if self.peek() is not None:
            kind, val, pos = self.peek()
            raise WordSyntaxError(f"unbalanced or stray {val!r}", self._byte(pos), self.text)
        return w

    def word(self, top: bool = False) -> tuple[Letter, ...]:
        out: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "sym" and tok[1] in ")],"):
                return tuple(out)
            out.extend(self.item())

    def item(self) -> tuple[Letter, ...]:
        kind, val, pos = self.take()
        if kind == "name":
            if val not in self.index:
                raise WordSyntaxError(f"unknown generator {val!r}", self._byte(pos), self.text)
            base: tuple[Letter, ...] = ((self.index[val], 1),)
        elif kind == "sym" and val == "(":
            base = self.word()
            self.expect(")", pos)
        elif kind == "sym" and val == "[":
            x = self.word()
            self.expect(",", pos)
            y = self.word()
            self.expect("]", pos)
            base = x + y + invert_letters(x) + invert_letters(y)
        else:
            raise WordSyntaxError(f"malformed token {val!r}", self._byte(pos), self.text)
        tok = self.peek()
        if tok is not None and tok[0] == "pow":
            self.take()
            k = int(tok[1][1:].replace(" ", ""))
            if k == 0:
                raise WordSyntaxError("zero exponent", self._byte(tok[2]), self.text)
            unit = base if k > 0 else invert_letters(base)
            base = unit * abs(k)
        return base

    def expect(self, sym: str, opened_at: int) -> None:
        tok = self.take()
        if tok is None:
            raise WordSyntaxError(f"unbalanced bracket, expected {sym!r}", self._byte(opened_at), self.text)
        if tok[0] != "sym" or tok[1] != sym:
            raise WordSyntaxError(f"expected {sym!r}, found {tok[1]!r}", self._byte(tok[2]), self.text)


def parse_letters(text: str, names: Sequence[str]) -> tuple[Letter, ...]:
    """Parse ``text`` over the generator list ``names`` into reduced letters."""
    index = {n: i for i, n in enumerate(names)}
    return free_reduce(_Parser(text, index).parse())


def format_letters(letters: Sequence[Letter], names: Sequence[str]) -> str:
    return " ".join(names[g] if e > 0 else f"{names[g]}^-1" for g, e in letters)


@dataclass(frozen=True)
class Pi1Word:
    """Freely reduced word in the standard generators of pi_1(Sigma_g)."""

    genus: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", free_reduce(self.letters))
        for g, e in self.letters:
            if not 0 <= g < 2 * self.genus or e not in (1, -1):
                raise ValueError(f"bad letter {(g, e)} for genus {self.genus}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Pi1Word") -> "Pi1Word":
        if other.genus != self.genus:
            raise ValueError("words over different surfaces")
        return Pi1Word(self.genus, self.letters + other.letters)

    def inverse(self) -> "Pi1Word":
        return Pi1Word(self.genus, invert_letters(self.letters))

    def __str__(self) -> str:
        return format_letters(self.letters, Surface(self.genus).generator_names())


def parse_pi1_word(text: str, surface: Surface | int) -> Pi1Word:
    genus = surface.genus if isinstance(surface, Surface) else surface
    return Pi1Word(genus, parse_letters(text, Surface(genus).generator_names()))


def print_pi1_word(w: Pi1Word) -> str:
    return str(w)


def abelianize_word(w: Pi1Word) -> HomologyClass:
    v = [0] * (2 * w.genus)
    for g, e in w.letters:
        v[g] += e
    return HomologyClass(tuple(v))


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class Curve:
    """A named simple closed curve, tracked through its homology class.

    ``boundary`` tags a boundary-parallel curve (index of the boundary
    component); such curves have the zero class in the closed-surface basis.
    """

    name: str
    surface: Surface
    homology: HomologyClass
    separating: bool = False
    pi1_word: Pi1Word | None = None
    boundary: int | None = None
    provenance: str = "paper"
    note: str = field(default="", compare=False)

    def with_name(self, name: str) -> "Curve":
        return Curve(name, self.surface, self.homology, self.separating,
                     self.pi1_word, self.boundary, self.provenance, self.note)


def make_curve(name: str, surface: Surface, word: str | None = None, *,
               homology: HomologyClass | Sequence[int] | None = None,
               separating: bool | None = None, provenance: str = "paper",
               boundary: int | None = None, note: str = "") -> Curve:
    """Build a curve; the class defaults to the abelianization of ``word``."""
    w = parse_pi1_word(word, surface) if word is not None else None
    if homology is None:
        if w is None:
            raise ValueError(f"curve {name}: need a word or a homology class")
        h = abelianize_word(w)
    else:
        h = homology if isinstance(homology, HomologyClass) else HomologyClass(tuple(homology))
    if separating is None:
        separating = h.is_zero()
    return Curve(name, surface, h, separating, w, boundary, provenance, note)


def validate_curve(c: Curve) -> list[str]:
    """Return the list of violated invariants (empty when valid)."""
    problems = []
    if len(c.homology) != c.surface.dim:
        problems.append(f"{c.name}: homology vector has length {len(c.homology)}, expected {c.surface.dim}")
        return problems
    if c.boundary is not None:
        if not c.homology.is_zero():
            problems.append(f"{c.name}: boundary-parallel curve must carry the zero class")
    elif c.surface.closed and c.separating != c.homology.is_zero():
        problems.append(f"{c.name}: separating={c.separating} but class is {c.homology.pretty()}")
    if c.pi1_word is not None:
        if c.pi1_word.genus != c.surface.genus:
            problems.append(f"{c.name}: pi1 word lives on genus {c.pi1_word.genus}")
        elif abelianize_word(c.pi1_word) != c.homology:
            problems.append(f"{c.name}: word abelianizes to {abelianize_word(c.pi1_word).pretty()}, "
                            f"declared class {c.homology.pretty()}")
    return problems
