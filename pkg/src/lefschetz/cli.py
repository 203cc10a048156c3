"""Command-line front end.

    lefschetz verify [FILE] [--scenario NAME ...] [--jobs N]
    lefschetz report [FILE] --scenario NAME [--format json|table]
    lefschetz pi1    [FILE] --scenario NAME [--max-cosets N] [--tietze-budget B]
    lefschetz meyer  --self-test N
    lefschetz export [--output PATH] [--scenario NAME]

FILE defaults to the bundled scenario file.  Exit codes: 0 when every
mandatory check passes, 1 when one fails, 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .factorization import FactorizationError
from .fpgroups import abelianization, certify_trivial, tietze_run, todd_coxeter
from .fpgroups.coset import BACKEND, DEFAULT_MAX_COSETS
from .scenario import (RunReport, Scenario, ScenarioError, build_presentation, evaluate_pipeline,
                       h1_of_scenario, load, run_scenario)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
BUNDLED = "paper.scen"


def bundled_path() -> str:
    return str(resources.files("lefschetz") / "data" / BUNDLED)


def _resolve(path: str | None) -> str:
    if path is None:
        return bundled_path()
    if not os.path.exists(path) and os.path.basename(path) == BUNDLED:
        return bundled_path()
    return path


def _select(scenarios: list[Scenario], names: list[str] | None) -> list[Scenario]:
    if not names:
        return scenarios
    by_name = {s.name: s for s in scenarios}
    unknown = [n for n in names if n not in by_name]
    if unknown:
        raise ScenarioError(f"unknown scenario(s): {', '.join(unknown)}")
    return [by_name[n] for n in names]


def _one(scenarios: list[Scenario], name: str) -> Scenario:
    return _select(scenarios, [name])[0]


def _run(args) -> RunReport:
    S, kw = args
    return run_scenario(S, **kw)


def _status_line(r: RunReport) -> str:
    notes = [f"{c.name}={c.status}" for c in r.checks if c.status != "pass"]
    tail = f" ({', '.join(notes)})" if notes else ""
    err = f" error: {r.error}" if r.error else ""
    return f"{r.status.upper():5} {r.scenario}{tail}{err}"


def cmd_verify(ns) -> int:
    scenarios = _select(load(_resolve(ns.file)), ns.scenario)
    kw = {"max_cosets": ns.max_cosets, "tietze_budget": ns.tietze_budget,
          "enumerate_cosets": not ns.no_enumerate}
    jobs = [(S, kw) for S in scenarios]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as ex:
            reports = list(ex.map(_run, jobs))
    else:
        reports = [_run(j) for j in jobs]
    if ns.format == "json":
        print(json.dumps([r.to_dict(ns.timings) for r in reports], indent=1, sort_keys=True))
    else:
        for r in reports:
            print(_status_line(r))
            if ns.timings:
                print("      " + " ".join(f"{k}={v:.3f}s" for k, v in r.timings.items()))
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


def _table(d: dict) -> str:
    width = max(len(k) for k in d)
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            v = json.dumps(v, sort_keys=True)
        elif isinstance(v, list):
            v = "; ".join(str(x) for x in v) if v else "-"
        lines.append(f"{k:<{width}}  {v}")
    return "\n".join(lines)


def cmd_report(ns) -> int:
    S = _one(load(_resolve(ns.file)), ns.scenario)
    r = run_scenario(S, max_cosets=ns.max_cosets, tietze_budget=ns.tietze_budget)
    if r.report is None:
        print(f"error: {r.error or 'report could not be formed'}", file=sys.stderr)
        return EXIT_FAIL
    d = r.report.to_dict()
    print(json.dumps(d, sort_keys=True) if ns.format == "json" else _table(d))
    return EXIT_FAIL if r.status == "fail" else EXIT_OK


def cmd_pi1(ns) -> int:
    S = _one(load(_resolve(ns.file)), ns.scenario)
    name = S.presentations.get("pi1")
    if not name:
        raise ScenarioError(f"scenario {S.name} has no pi1 presentation")
    P = build_presentation(S, name)
    _, result = evaluate_pipeline(S)
    h1 = h1_of_scenario(S, result)
    print(f"H1 = {h1}")
    print(f"abelianization of presentation {name!r} = {abelianization(P)}")
    T = tietze_run(P, ns.tietze_budget)
    print(f"tietze: {len(P.generators)} -> {len(T.presentation.generators)} generators"
          f"{' (budget exhausted)' if T.exhausted else ''}")
    print(f"todd-coxeter ({BACKEND}): {todd_coxeter(T.presentation, ns.max_cosets)}")
    if h1.is_trivial:
        cert = certify_trivial(P, h1, max_cosets=ns.max_cosets, tietze_budget=ns.tietze_budget)
        print(f"pi1: {cert.status}" + (f" via {cert.method}" if cert.method else ""))
    return EXIT_OK if h1.is_trivial or not S.expectations.get("pi1_trivial") else EXIT_FAIL


def cmd_meyer(ns) -> int:
    from .fixtures import genus3_curves
    from .meyer import cocycle_self_test
    seed = int(os.environ.get("LF_SEED", ns.seed))
    classes = [c.homology.coeffs for c in genus3_curves().values() if not c.homology.is_zero()]
    res = cocycle_self_test(classes, 3, ns.self_test, random.Random(seed))
    res["seed"] = seed
    print(json.dumps(res, sort_keys=True))
    return EXIT_FAIL if any(res["violations"].values()) else EXIT_OK


def cmd_export(ns) -> int:
    from .fixtures import build_scenario, shipped_scenario_text
    from .scenario import dumps
    text = dumps([build_scenario(n) for n in ns.scenario]) if ns.scenario else shipped_scenario_text()
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lefschetz", description="Lefschetz fibration factorization checker")
    sub = p.add_subparsers(dest="command", required=True)

    def limits(sp):
        sp.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
        sp.add_argument("--tietze-budget", type=int, default=10_000)

    v = sub.add_parser("verify", help="run every check of the selected scenarios")
    v.add_argument("file", nargs="?")
    v.add_argument("--scenario", action="append")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=("table", "json"), default="table")
    v.add_argument("--timings", action="store_true", help="include wall-clock timings")
    v.add_argument("--no-enumerate", action="store_true", help="skip Todd-Coxeter")
    limits(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="invariant report of one scenario")
    r.add_argument("file", nargs="?")
    r.add_argument("--scenario", required=True)
    r.add_argument("--format", choices=("json", "table"), default="json")
    limits(r)
    r.set_defaults(func=cmd_report)

    q = sub.add_parser("pi1", help="abelianization and coset enumeration")
    q.add_argument("file", nargs="?")
    q.add_argument("--scenario", required=True)
    limits(q)
    q.set_defaults(func=cmd_pi1)

    m = sub.add_parser("meyer", help="Meyer cocycle property self-test")
    m.add_argument("--self-test", type=int, required=True, metavar="N")
    m.add_argument("--seed", type=int, default=0, help="overridden by LF_SEED")
    m.set_defaults(func=cmd_meyer)

    e = sub.add_parser("export", help="write the regenerated scenario file")
    e.add_argument("--output")
    e.add_argument("--scenario", action="append")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FactorizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
