"""Command-line front end: ``tacnodal {analyze,verify,enumerate,render}``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .algebra.cases import CASES, verify_case
from .classify import census_consistency, classify, theorem_gate
from .corpus import random_tropical_polynomial
from .lattice import EnumerationRangeError, catalog_matches, enumerate_class, polygon_stats
from .refine import EDGE_CATALOG, edge_1tacnodal_check
from .render import render_svg
from .tropical import (InputError, TropicalPolynomial, curve_from_subdivision,
                       dual_subdivision, verify_duality)

EDGE_PREFIX = "EDGE_"
VERIFY_IDS = tuple(CASES) + tuple(EDGE_PREFIX + k for k in EDGE_CATALOG)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: str | None
    output_path: str | None
    case: str | None
    format: str | None
    seed: int | None
    interior: int | None = None
    lengths: str | None = None
    parallel: str = "any"


# ---------------------------------------------------------------- input


def load_polynomial(cfg: RunConfig) -> TropicalPolynomial:
    if cfg.input_path is None:
        if cfg.seed is None:
            raise UsageError("--input PATH is required (or --seed N for a random instance)")
        return random_tropical_polynomial(random.Random(cfg.seed))
    try:
        text = Path(cfg.input_path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {cfg.input_path}: {e.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{cfg.input_path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    return TropicalPolynomial.from_json(obj)


# ---------------------------------------------------------------- commands


def analyze_report(F: TropicalPolynomial) -> dict:
    gate = theorem_gate(F)
    S = gate.subdivision
    C = curve_from_subdivision(S)
    cls = classify(S)
    c = cls.census
    return {
        "input": F.to_json(),
        "subdivision": S.to_json(),
        "curve": C.to_json(),
        "duality": verify_duality(C, S).to_json(),
        "rank": c.rk, "rkexp": c.rkexp, "d": c.d,
        "census": c.to_json(),
        "verdict": cls.label(),
        "classification": cls.to_json(),
        "case": cls.case,
        "gate": {k: v for k, v in gate.to_json().items() if k != "classification"},
        "consistency": census_consistency(S).to_json() if c.rk == c.lattice_points - 4 else None,
    }


def analyze_text(rep: dict) -> str:
    c = rep["census"]
    lines = [
        f"verdict      {rep['verdict']}",
        f"case         {rep['case']}",
        f"cells        {len(rep['subdivision']['cells'])}",
        f"lattice pts  {c['lattice_points']}",
        f"rank         {rep['rank']}  (expected {rep['rkexp']}, defect {rep['d']})",
        f"regime       {rep['gate']['regime']}",
        f"duality      {'ok' if rep['duality']['passed'] else 'FAILED'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    rep = analyze_report(load_polynomial(cfg))
    if cfg.format == "text":
        return analyze_text(rep), 0
    if cfg.format == "svg":
        raise UsageError("analyze emits json or text; use the render command for svg")
    return _dump(rep), 0


def _verify_one(case_id: str):
    if case_id.startswith(EDGE_PREFIX) and case_id[len(EDGE_PREFIX):] in EDGE_CATALOG:
        return edge_1tacnodal_check(case_id[len(EDGE_PREFIX):])
    return verify_case(case_id)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    if not cfg.case:
        raise UsageError("--case ID is required (or --case all)")
    ids = VERIFY_IDS if cfg.case == "all" else (cfg.case,)
    unknown = [i for i in ids if i not in VERIFY_IDS]
    if unknown:
        raise UsageError(f"--case: unknown id {unknown[0]!r}; known: all, {', '.join(VERIFY_IDS)}")
    results = [(i, _verify_one(i)) for i in ids]
    code = 0 if all(r.passed for _, r in results) else 1
    fmt = cfg.format or ("text" if cfg.case == "all" else "json")
    if fmt == "json":
        body = [r.to_json() for _, r in results]
        return _dump(body if cfg.case == "all" else body[0]), code
    rows = [f"{'case':<12} {'result':<6} verdict"]
    for i, r in results:
        rows.append(f"{i:<12} {'pass' if r.passed else 'FAIL':<6} {r.verdict}")
    rows.append(f"{sum(r.passed for _, r in results)}/{len(results)} passed")
    return "\n".join(rows) + "\n", code


def cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    if cfg.interior is None or not cfg.lengths:
        raise UsageError("--interior N and --lengths L1,L2,... are required")
    try:
        lengths = [int(s) for s in cfg.lengths.split(",")]
    except ValueError:
        raise UsageError(f"--lengths: expected comma-separated integers, got {cfg.lengths!r}") from None
    parallel = {"any": None, "yes": True, "no": False}[cfg.parallel]
    try:
        reps = enumerate_class(len(lengths), cfg.interior, lengths, parallel)
    except EnumerationRangeError as e:
        raise UsageError(f"--lengths/--interior: {e}") from None
    out = [{"vertices": [list(v) for v in P.vertices],
            "stats": _jsonable(asdict(polygon_stats(P))),
            "catalog": [str(t) for t in catalog_matches(P)]} for P in reps]
    if cfg.format == "text":
        lines = [f"{len(out)} class(es)"] + [
            f"  {o['vertices']}  {' = '.join(o['catalog'])}" for o in out]
        return "\n".join(lines) + "\n", 0
    return _dump({"m": len(lengths), "interior": cfg.interior, "lengths": lengths,
                  "parallel": cfg.parallel, "classes": out}), 0


def cmd_render(cfg: RunConfig) -> tuple[str, int]:
    F = load_polynomial(cfg)
    if cfg.format in (None, "svg"):
        S = dual_subdivision(F)
        return render_svg(curve_from_subdivision(S), S), 0
    rep = analyze_report(F)
    if cfg.format == "text":
        return analyze_text(rep), 0
    return _dump({"subdivision": rep["subdivision"], "curve": rep["curve"]}), 0


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify,
            "enumerate": cmd_enumerate, "render": cmd_render}


def _jsonable(d: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tacnodal",
                                 description="Tropical 1-tacnodal curves: analysis and exact checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", metavar="PATH")
    common.add_argument("--output", dest="output_path", metavar="PATH")
    common.add_argument("--case")
    common.add_argument("--format", choices=("json", "svg", "text"))
    common.add_argument("--seed", type=int, metavar="N")
    sub.add_parser("analyze", parents=[common], help="subdivision, rank, census and verdict")
    sub.add_parser("verify", parents=[common], help="replay an exact computation (--case ID|all)")
    en = sub.add_parser("enumerate", parents=[common], help="lattice polygon classes")
    en.add_argument("--interior", type=int, metavar="N")
    en.add_argument("--lengths", metavar="L1,L2,...")
    en.add_argument("--parallel", choices=("any", "yes", "no"), default="any")
    sub.add_parser("render", parents=[common], help="SVG of curve and subdivision")
    return ap


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(ns.command, ns.input_path, ns.output_path, ns.case, ns.format, ns.seed,
                    getattr(ns, "interior", None), getattr(ns, "lengths", None),
                    getattr(ns, "parallel", "any"))
    try:
        text, code = COMMANDS[cfg.command](cfg)
    except (InputError, UsageError) as e:
        print(f"tacnodal {cfg.command}: error: {e}", file=sys.stderr)
        return 2
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
