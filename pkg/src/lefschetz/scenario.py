"""Scenario files: declarative constructions with attached expectations.

A scenario file is UTF-8 JSON.  Its top level is either one scenario object
or ``{"format": ..., "scenarios": [...]}``.  A scenario object has the keys

``name, surface, curves, disjoint_pairs, words, factorizations, pipeline,
presentations, expectations``

(plus optional ``description`` and ``caveats``).  An entry of the form
``{"name": ..., "generator": {"family": "X(k)", "k": 2}}`` is expanded by
the fixture builders at load time, so parametric scenarios stay generated.

Pipeline steps are objects with an ``op`` field (cap, conjugate, relabel,
rotate, fiber_sum, hurwitz, commute, substitute, glue); ``_step`` documents
their arguments by example.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .core import Curve, HomologyClass, Surface, WordSyntaxError, parse_pi1_word, validate_curve
from .factorization import (Factorization, FactorizationError, Target, base_factorization,
                            cap_off, commute, global_conjugate, hurwitz_move, relabel,
                            relator_substitute, rotate, twisted_fiber_sum, verify_factorization)
from .fpgroups import (AbelianGroup, Pi1Certificate, Presentation, abelianization, amalgamate,
                       certify_trivial, vanishing_cycle_quotient)
from .fpgroups.coset import DEFAULT_MAX_COSETS
from .invariants import (InvariantReport, Minimality, euler_characteristic, minimality_evidence,
                         report_from_numbers, signature_endo_nagami, signature_meyer)
from .symplectic import MappingWord

FORMAT = "lefschetz-scenario/1"
SCENARIO_KEYS = ("surface", "curves", "disjoint_pairs", "words", "factorizations", "pipeline",
                 "presentations", "expectations")


class ScenarioError(ValueError):
    """Malformed scenario input.  ``line``/``column`` locate JSON syntax errors;
    ``where`` names the offending field otherwise."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None,
                 where: str = ""):
        self.line, self.column, self.where = line, column, where
        loc = f"line {line}, column {column}: " if line is not None else (f"{where}: " if where else "")
        super().__init__(loc + message)


# ---------------------------------------------------------------------------
# (de)serialization of curves and scenarios


def curve_to_dict(c: Curve) -> dict:
    d: dict[str, Any] = {"name": c.name, "homology": list(c.homology.coeffs),
                         "separating": c.separating}
    if c.pi1_word is not None:
        d["pi1_word"] = str(c.pi1_word)
    d["provenance"] = c.provenance
    if c.boundary is not None:
        d["boundary"] = c.boundary
    if c.note:
        d["note"] = c.note
    return d


def curve_from_dict(d: dict, surface: Surface) -> Curve:
    try:
        word = d.get("pi1_word")
        h = HomologyClass(tuple(int(x) for x in d["homology"]))
        w = parse_pi1_word(word, surface) if word is not None else None
        return Curve(d["name"], surface, h, bool(d.get("separating", h.is_zero())), w,
                     d.get("boundary"), d.get("provenance", "paper"), d.get("note", ""))
    except WordSyntaxError as exc:
        raise ScenarioError(f"{exc} (byte {exc.offset} of the word)", where=f"curve {d.get('name')}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad curve record: {exc}", where=f"curve {d.get('name')}") from exc


@dataclass
class Scenario:
    name: str
    surface: Surface
    curves: dict[str, Curve]
    disjoint_pairs: list[tuple[str, str]]
    words: dict[str, str]
    factorizations: dict[str, dict]
    pipeline: dict
    presentations: dict
    expectations: dict
    description: str = ""
    caveats: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "surface": {"genus": self.surface.genus},
            "curves": [curve_to_dict(c) for c in self.curves.values()],
            "disjoint_pairs": [list(p) for p in self.disjoint_pairs],
            "words": dict(self.words),
            "factorizations": self.factorizations,
            "pipeline": self.pipeline,
            "presentations": self.presentations,
            "expectations": self.expectations,
            "caveats": list(self.caveats),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        name = d.get("name", "?")
        missing = [k for k in SCENARIO_KEYS if k not in d]
        if missing:
            raise ScenarioError(f"missing keys {missing}", where=f"scenario {name}")
        try:
            surface = Surface(int(d["surface"]["genus"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad surface: {exc}", where=f"scenario {name}") from exc
        curves = {}
        for cd in d["curves"]:
            c = curve_from_dict(cd, surface)
            if c.name in curves:
                raise ScenarioError(f"duplicate curve {c.name}", where=f"scenario {name}")
            curves[c.name] = c
        pairs = [tuple(p) for p in d["disjoint_pairs"]]
        for p in pairs:
            if len(p) != 2 or any(x not in curves for x in p):
                raise ScenarioError(f"disjoint pair {list(p)} names unknown curves", where=f"scenario {name}")
        return cls(name, surface, curves, pairs, dict(d["words"]), d["factorizations"],
                   d["pipeline"], d["presentations"], d["expectations"],
                   d.get("description", ""), list(d.get("caveats", [])))

    @property
    def disjoint(self) -> frozenset:
        return frozenset(frozenset(p) for p in self.disjoint_pairs)


def _expand(entry: dict) -> Scenario:
    if "generator" in entry:
        from .fixtures import build_family_scenario
        gen = entry["generator"]
        try:
            S = build_family_scenario(gen["family"], int(gen["k"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ScenarioError(f"bad generator entry: {exc}", where=f"scenario {entry.get('name')}") from exc
        if entry.get("name") not in (None, S.name):
            raise ScenarioError(f"generator produces {S.name}, entry says {entry['name']}")
        return S
    return Scenario.from_dict(entry)


def loads(text: str) -> list[Scenario]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if isinstance(data, dict) and "scenarios" in data:
        if data.get("format", FORMAT) != FORMAT:
            raise ScenarioError(f"unsupported format {data.get('format')!r}")
        entries = data["scenarios"]
    elif isinstance(data, dict):
        entries = [data]
    else:
        raise ScenarioError("top level must be a JSON object")
    if not isinstance(entries, list):
        raise ScenarioError("'scenarios' must be a list")
    return [_expand(e) for e in entries]


def load(path: str) -> list[Scenario]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(scenarios: list[Scenario | dict]) -> str:
    items = [s.to_dict() if isinstance(s, Scenario) else s for s in scenarios]
    return json.dumps({"format": FORMAT, "scenarios": items}, indent=1, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# pipeline evaluation


@dataclass(frozen=True)
class GluedSpace:
    """A closed fibration glued to a complement along a fiber neighbourhood;
    only e and sigma are tracked (both additive up to the fiber term)."""

    base: Factorization
    complement: str
    e: int
    sigma_ledger: int | None
    sigma_meyer: int


def _curve(S: Scenario, name: str) -> Curve:
    try:
        return S.curves[name]
    except KeyError:
        raise ScenarioError(f"unknown curve {name!r}", where=f"scenario {S.name}") from None


def mapping_word(S: Scenario, name: str) -> MappingWord:
    from .fixtures import parse_mapping_word
    if name not in S.words:
        raise ScenarioError(f"unknown mapping word {name!r}", where=f"scenario {S.name}")
    try:
        return parse_mapping_word(S.words[name], S.curves, name)
    except KeyError as exc:
        raise ScenarioError(str(exc), where=f"word {name}") from exc


def _base(S: Scenario, name: str, spec: dict) -> Factorization:
    surf = Surface(S.surface.genus, int(spec.get("boundary_count", 0)))
    target = Target(tuple((int(j), int(m)) for j, m in spec.get("target", [])))
    ledger = spec.get("ledger")
    ledger = None if ledger is None else [(r, int(m), int(v)) for r, m, v in ledger]
    return base_factorization(name, [_curve(S, n) for n in spec["letters"]], surf,
                              target=target, ledger=ledger)


def _step(S: Scenario, env: dict, st: dict):
    op = st.get("op")

    def get(key="in"):
        n = st[key]
        if n not in env:
            raise ScenarioError(f"step refers to unknown factorization {n!r}", where=f"scenario {S.name}")
        return env[n]

    if op == "cap":
        return cap_off(get(), int(st.get("boundary", 1)))
    if op == "conjugate":
        return global_conjugate(get(), mapping_word(S, st["word"]))
    if op == "relabel":
        F = get()
        for i in st["positions"]:
            F = relabel(F, int(i), _curve(S, st["curve"]))
        return F
    if op == "rotate":
        return rotate(get(), int(st["shift"]))
    if op == "fiber_sum":
        w = mapping_word(S, st["word"]) if st.get("word") else None
        return twisted_fiber_sum(get("left"), get("right"), w, name=st.get("out", ""))
    if op == "hurwitz":
        F = get()
        for i, direction in st["moves"]:
            F = hurwitz_move(F, int(i), direction, disjoint=S.disjoint)
        return F
    if op == "commute":
        F = get()
        for i in st["swaps"]:
            F = commute(F, int(i), S.disjoint)
        return F
    if op == "substitute":
        return relator_substitute(get(), int(st["start"]), [_curve(S, n) for n in st["removed"]],
                                  [_curve(S, n) for n in st["inserted"]], st["relator"],
                                  certificate=[int(i) for i in st.get("certificate", [])],
                                  disjoint=S.disjoint)
    if op == "glue":
        F = get()
        comp = st["complement"]
        g = F.surface.genus
        e = euler_characteristic(F) + int(comp["e"]) - 2 * (2 - 2 * g)
        led = signature_endo_nagami(F)
        return GluedSpace(F, comp.get("name", "complement"), e,
                          None if led is None else led + int(comp["sigma"]),
                          signature_meyer(F) + int(comp["sigma"]))
    raise ScenarioError(f"unknown pipeline op {op!r}", where=f"scenario {S.name}")


def evaluate_pipeline(S: Scenario) -> tuple[dict, Any]:
    env: dict[str, Any] = {n: _base(S, n, spec) for n, spec in S.factorizations.items()}
    for k, st in enumerate(S.pipeline.get("steps", []), 1):
        try:
            env[st["out"]] = _step(S, env, st)
        except FactorizationError as exc:
            raise FactorizationError(f"{S.name}, step {k} ({st.get('op')}): {exc}") from exc
        except KeyError as exc:
            raise ScenarioError(f"step {k} lacks field {exc}", where=f"scenario {S.name}") from exc
    result = S.pipeline.get("result")
    if result not in env:
        raise ScenarioError(f"pipeline result {result!r} is never produced", where=f"scenario {S.name}")
    return env, env[result]


# ---------------------------------------------------------------------------
# presentations


def build_presentation(S: Scenario, name: str, _seen: frozenset = frozenset()) -> Presentation:
    groups = S.presentations.get("groups", {})
    if name not in groups or name in _seen:
        raise ScenarioError(f"unknown or cyclic presentation {name!r}", where=f"scenario {S.name}")
    spec = groups[name]
    kind = spec.get("kind")
    seen = _seen | {name}
    try:
        if kind == "vanishing_cycles":
            words = []
            for n in spec["cycles"]:
                c = _curve(S, n)
                if c.pi1_word is None:
                    raise ScenarioError(f"curve {n} has no pi1 word", where=f"presentation {name}")
                words.append(c.pi1_word.letters)
            P = vanishing_cycle_quotient(int(spec["genus"]), words, form=spec.get("form", "conjugates"))
            extra = tuple(spec.get("extra_generators", []))
            if extra:
                P = Presentation(P.generators + extra, P.relators)
            return P.with_relators(spec.get("relators", []))
        if kind == "explicit":
            return Presentation.parse(spec["generators"], spec["relators"])
        if kind == "with_relators":
            return build_presentation(S, spec["base"], seen).with_relators(spec["relators"])
        if kind == "amalgamate":
            return amalgamate(build_presentation(S, spec["left"], seen),
                              build_presentation(S, spec["right"], seen),
                              [tuple(p) for p in spec["identifications"]])
    except WordSyntaxError as exc:
        raise ScenarioError(f"{exc} (byte {exc.offset} of the word)", where=f"presentation {name}") from exc
    except KeyError as exc:
        raise ScenarioError(f"missing field {exc}", where=f"presentation {name}") from exc
    raise ScenarioError(f"unknown presentation kind {kind!r}", where=f"presentation {name}")


def h1_of_factorization(F: Factorization, exclude: frozenset = frozenset()) -> AbelianGroup:
    """H_1 of the total space: H_1(fiber) modulo the vanishing classes
    (valid for fibrations with a section)."""
    rows = [list(t.curve.homology.coeffs) for t in F.letters if t.curve.name not in exclude]
    return AbelianGroup.from_relation_matrix(rows, F.surface.dim)


def h1_of_scenario(S: Scenario, result) -> AbelianGroup:
    spec = S.presentations.get("h1", {"source": "factorization"})
    if spec.get("source") == "presentation":
        return abelianization(build_presentation(S, spec["name"]))
    F = result.base if isinstance(result, GluedSpace) else result
    return h1_of_factorization(F, frozenset(spec.get("exclude", [])))


# ---------------------------------------------------------------------------
# running


@dataclass(frozen=True)
class Check:
    name: str
    status: str            # pass | fail | inconclusive
    computed: Any = None
    expected: Any = None
    mandatory: bool = True

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "computed": self.computed,
                "expected": self.expected, "mandatory": self.mandatory}


@dataclass
class RunReport:
    scenario: str
    checks: list[Check]
    report: InvariantReport | None = None
    pi1: Pi1Certificate | None = None
    timings: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def status(self) -> str:
        if self.error or any(c.status == "fail" and c.mandatory for c in self.checks):
            return "fail"
        return "pass"

    def to_dict(self, timings: bool = False) -> dict:
        d = {"scenario": self.scenario, "status": self.status,
             "checks": [c.to_dict() for c in self.checks],
             "report": self.report.to_dict() if self.report else None,
             "pi1": self.pi1.to_dict() if self.pi1 else None}
        if self.error:
            d["error"] = self.error
        if timings:
            d["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return d


def _cmp(name: str, computed, expected, mandatory: bool = True) -> Check:
    if expected is None:
        return Check(name, "pass", computed, None, mandatory)
    return Check(name, "pass" if computed == expected else "fail", computed, expected, mandatory)


def expectation_checks(exp: dict) -> list[Check]:
    out = []
    if all(k in exp for k in ("e", "sigma", "c1sq")):
        out.append(_cmp("expectations_c1sq", exp["c1sq"], 2 * exp["e"] + 3 * exp["sigma"]))
    if all(k in exp for k in ("e", "b1", "b2plus", "b2minus")):
        out.append(_cmp("expectations_euler", exp["e"], 2 - 2 * exp["b1"] + exp["b2plus"] + exp["b2minus"]))
    if all(k in exp for k in ("sigma", "b2plus", "b2minus")):
        out.append(_cmp("expectations_sigma", exp["sigma"], exp["b2plus"] - exp["b2minus"]))
    return out


def run_scenario(S: Scenario, *, max_cosets: int = DEFAULT_MAX_COSETS, tietze_budget: int = 10_000,
                 enumerate_cosets: bool = True) -> RunReport:
    exp = S.expectations
    checks: list[Check] = list(expectation_checks(exp))
    timings: dict[str, float] = {}
    t0 = time.perf_counter()

    bad = [p for c in S.curves.values() for p in validate_curve(c)]
    checks.append(Check("curves", "fail" if bad else "pass", bad or len(S.curves), None))

    try:
        _, result = evaluate_pipeline(S)
    except (FactorizationError, ScenarioError, ValueError) as exc:
        return RunReport(S.name, checks, error=str(exc))
    timings["pipeline"] = time.perf_counter() - t0

    F = result.base if isinstance(result, GluedSpace) else result
    checks.append(Check("identity", "pass" if verify_factorization(F) else "fail", True, True))
    if not isinstance(result, GluedSpace):
        checks.append(_cmp("letters", len(F.letters), exp.get("letters")))
        checks.append(_cmp("census", list(F.census()), exp.get("census")))

    t = time.perf_counter()
    if isinstance(result, GluedSpace):
        e, s_led, s_mey = result.e, result.sigma_ledger, result.sigma_meyer
    else:
        e, s_led, s_mey = euler_characteristic(F), signature_endo_nagami(F), signature_meyer(F)
    timings["signature"] = time.perf_counter() - t
    checks.append(_cmp("e", e, exp.get("e")))
    checks.append(_cmp("sigma_ledger", s_led, exp.get("sigma")))
    checks.append(_cmp("sigma_meyer", s_mey, exp.get("sigma")))
    checks.append(Check("sigma_agree", "pass" if s_led == s_mey else "fail", [s_led, s_mey], None))

    t = time.perf_counter()
    h1 = h1_of_scenario(S, result)
    timings["h1"] = time.perf_counter() - t
    checks.append(_cmp("h1", h1.to_dict(), exp.get("h1")))

    cert = None
    want_trivial = bool(exp.get("pi1_trivial"))
    pi1_name = S.presentations.get("pi1")
    if want_trivial:
        checks.append(Check("pi1_abelianization", "pass" if h1.is_trivial else "fail", str(h1), "0"))
        if pi1_name:
            t = time.perf_counter()
            cert = certify_trivial(build_presentation(S, pi1_name), h1, max_cosets=max_cosets,
                                   tietze_budget=tietze_budget, enumerate_cosets=enumerate_cosets)
            timings["pi1"] = time.perf_counter() - t
            status = {"trivial": "pass", "inconclusive": "inconclusive"}.get(cert.status, "fail")
            checks.append(Check("pi1_certificate", status, cert.method or cert.enumeration, "trivial",
                                mandatory=False))

    certified = cert is not None and cert.certified
    minimality = Minimality.UNKNOWN if isinstance(result, GluedSpace) else minimality_evidence(F)
    try:
        rep = report_from_numbers(e, s_led if s_led is not None else s_mey, h1, certified,
                                  minimality, tuple(S.caveats))
    except ValueError as exc:
        checks.append(Check("report", "fail", str(exc), None))
        return RunReport(S.name, checks, None, cert, timings)
    checks.append(_cmp("c1sq", rep.c1sq, exp.get("c1sq")))
    checks.append(_cmp("b1", rep.b1, exp.get("b1")))
    checks.append(_cmp("b2plus", rep.b2plus, exp.get("b2plus")))
    checks.append(_cmp("b2minus", rep.b2minus, exp.get("b2minus")))
    checks.append(_cmp("minimality", rep.minimality.value, exp.get("minimality")))
    if exp.get("label"):
        if rep.homeo_label is None:
            checks.append(Check("label", "inconclusive", None, exp["label"], mandatory=False))
        else:
            checks.append(_cmp("label", rep.homeo_label, exp["label"]))
    timings["total"] = time.perf_counter() - t0
    return RunReport(S.name, checks, rep, cert, timings)
