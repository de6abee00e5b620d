"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import io as jio
from .axioms import run_axiom_suite
from .classical import (
    as_joint_dist,
    as_prob_dist,
    conditional_tsallis,
    conditional_via_ratio,
    shannon_entropy,
    tsallis_entropy,
)
from .constants import DEFAULT_Q_GRID, DomainError, ValidationError
from .quantum_entropy import (
    conditional_quantum,
    ensemble_conditional,
    ppt_test,
    quantum_tsallis,
    separable_positivity_experiment,
    von_neumann,
)
from .quantum_state import assemble_separable, tensor, werner_popescu
from .werner import BELL_BOUND, ONE_THIRD, criterion_table, default_scan_grid, threshold, threshold_scan


class UsageError(Exception):
    pass


def fmt(value, digits: int):
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{digits}g}")
    if isinstance(value, list):
        return [fmt(v, digits) for v in value]
    return value


def _table(rows: list[dict]) -> str:
    keys = list(rows[0])
    cells = [[str(fmt(r[k], 6)) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: fmt(v, 12) for k, v in r.items()})
    return buf.getvalue().rstrip("\n")


def render(rows: list[dict] | dict, output: str) -> str:
    if isinstance(rows, dict):
        rows = [rows]
    if output == "json":
        data = [{k: fmt(v, 12) for k, v in r.items()} for r in rows]
        return json.dumps(data[0] if len(data) == 1 else data)
    if output == "csv":
        return _csv(rows)
    return _table(rows)


def parse_q_grid(text: str | None) -> list[float] | None:
    if text is None:
        return None
    text = text.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse q grid {text!r}") from exc
    if not values:
        raise UsageError("empty q grid")
    return [float(v) for v in values]


# -- subcommands --------------------------------------------------------------------


def cmd_entropy(args) -> tuple[str, int]:
    if args.dist is not None:
        p = as_prob_dist(jio.read_json_arg(args.dist))
        row = {"kind": "classical", "q": args.q, "shannon": shannon_entropy(p), "tsallis": tsallis_entropy(p, args.q)}
    else:
        s = jio.state_from_json(jio.read_json_arg(args.state))
        row = {"kind": "quantum", "q": args.q, "von_neumann": von_neumann(s.rho), "tsallis": quantum_tsallis(s.rho, args.q)}
    return render(row, args.output or "table"), 0


def cmd_cond(args) -> tuple[str, int]:
    if args.joint is not None:
        j = as_joint_dist(jio.read_json_arg(args.joint))
        if args.given == "B":
            j = j.T
        row = {"kind": "classical", "q": args.q, "given": args.given,
               "value": conditional_tsallis(j, args.q), "ratio_form": conditional_via_ratio(j, args.q)}
        return render(row, args.output or "table"), 0
    if args.ensemble is not None:
        ens = jio.ensemble_from_json(jio.read_json_arg(args.ensemble))
        state = assemble_separable(ens)
    else:
        ens = None
        state = jio.state_from_json(jio.read_json_arg(args.state))
    rep = conditional_quantum(state, args.q, given=args.given)
    row = {"kind": "quantum", "q": args.q, "given": args.given, "value": rep.value,
           "s_joint": rep.s_joint, "s_marginal": rep.s_marginal}
    if ens is not None and args.given == "A":
        row["ensemble_value"] = ensemble_conditional(ens, args.q)
    row["verdict"] = "negative => entangled" if rep.entangled else "nonnegative => inconclusive"
    return render(row, args.output or "table"), 0


def cmd_werner_scan(args) -> tuple[str, int]:
    grid = parse_q_grid(args.q_grid) or default_scan_grid(args.q_min, args.q_max, args.points)
    points = threshold_scan(grid)
    rows = [{"q": p.q, "x_star": p.x_star, "residual": p.solver_residual} for p in points]
    output = args.output or "csv"
    text = render(rows, output)
    if output == "csv":
        text += (
            f"\n# floor: x_star -> 1/3 = {ONE_THIRD:.12g} as q -> infinity"
            f"\n# landmark: q = 1 (von Neumann) x_star = {threshold(1.0).x_star:.12g}"
        )
    return text, 0


def cmd_criteria(args) -> tuple[str, int]:
    table = criterion_table()
    if (args.output or "table") == "json":
        return render(table.to_dict(), "json"), 0
    rows = [{"criterion": name, "x_threshold": value} for name, value in table.rows()]
    return render(rows, args.output or "table"), 0


def cmd_ppt(args) -> tuple[str, int]:
    s = jio.state_from_json(jio.read_json_arg(args.state))
    v = ppt_test(s)
    row = {"min_eig": v.min_eig, "is_ppt": v.is_ppt, "verdict": "PPT" if v.is_ppt else "NPT (entangled)"}
    return render(row, args.output or "table"), 0


def cmd_axioms(args) -> tuple[str, int]:
    q_grid = parse_q_grid(args.q_grid) or list(DEFAULT_Q_GRID)
    reports = run_axiom_suite(q_grid, trials=args.trials, seed=args.seed)
    ok = all(r.passed for r in reports)
    output = args.output or "table"
    if output == "json":
        text = "\n".join(render({k: getattr(r, k) for k in r.__dataclass_fields__}, "json") for r in reports)
    else:
        rows = [{"axiom": r.axiom_id, "q": r.q, "trials": r.trials, "max_violation": r.max_violation,
                 "tolerance": r.tolerance, "result": "pass" if r.passed else "FAIL"} for r in reports]
        text = render(rows, output)
        if output == "table":
            text += "\n" + ("all checks passed at tolerance" if ok else "some checks FAILED")
    return text, 0 if ok else 1


def cmd_positivity(args) -> tuple[str, int]:
    q_grid = parse_q_grid(args.q_grid) or list(DEFAULT_Q_GRID)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    summary = separable_positivity_experiment(args.samples, q_grid, args.seed, inject_singlet=args.inject_singlet)
    row = {"min_value": summary.min_value, "violations": summary.violations, "n_samples": summary.n_samples,
           "q_grid": summary.q_grid, "seed": summary.seed}
    if args.inject_singlet:
        row["control_q"] = summary.control_q
        row["control_value"] = summary.control_value
    output = args.output or "table"
    if output == "table":
        row = {**row, "q_grid": ",".join(f"{q:g}" for q in summary.q_grid)}
    return render(row, output), 0 if summary.passed else 1


def cmd_gen(args) -> tuple[str, int]:
    if args.kind == "werner":
        if args.x is None:
            raise UsageError("gen werner requires --x")
        s = werner_popescu(args.x)
    elif args.kind == "singlet":
        s = werner_popescu(1.0)
    else:
        if args.pa is None or args.pb is None:
            raise UsageError("gen product requires --pa and --pb")
        pa = as_prob_dist(jio.read_json_arg(args.pa))
        pb = as_prob_dist(jio.read_json_arg(args.pb))
        s = tensor(np.diag(pa), np.diag(pb))
    return json.dumps(jio.state_to_json(s)), 0


# -- parser ---------------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = {"default": argparse.SUPPRESS} if suppress else {}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", choices=["json", "csv", "table"], **({"default": None} | d))
    p.add_argument("--seed", type=int, **({"default": 0} | d))
    p.add_argument("--out", metavar="PATH", **({"default": None} | d))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonadditive", parents=[_global_flags(False)],
                                     description="Tsallis conditional entropy and entanglement detection.")
    sub = parser.add_subparsers(dest="command", required=True)
    flags = _global_flags(True)

    p = sub.add_parser("entropy", parents=[flags], help="Shannon/Tsallis or von Neumann/quantum Tsallis entropy")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dist", help="probability vector (JSON literal or file)")
    src.add_argument("--state", help="bipartite state JSON (literal or file)")
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("cond", parents=[flags], help="nonadditive conditional entropy")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--joint", help="joint distribution (2-D JSON, rows = A)")
    src.add_argument("--state", help="bipartite state JSON")
    src.add_argument("--ensemble", help="separable ensemble JSON")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--given", choices=["A", "B"], default="A", help="subsystem conditioned on")
    p.set_defaults(func=cmd_cond)

    p = sub.add_parser("werner-scan", parents=[flags], help="zero crossing x*(q) of the Werner conditional entropy")
    p.add_argument("--q-grid", help="comma-separated q values (default: log-spaced plus q = 1)")
    p.add_argument("--q-min", type=float, default=0.2)
    p.add_argument("--q-max", type=float, default=1e6)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_werner_scan)

    p = sub.add_parser("criteria", parents=[flags], help="separability thresholds of the Werner family")
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("ppt", parents=[flags], help="partial-transpose test")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_ppt)

    p = sub.add_parser("axioms", parents=[flags], help="randomized checks of the generalized axioms")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--q-grid")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("positivity", parents=[flags], help="Monte Carlo nonnegativity on separable states")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--q-grid")
    p.add_argument("--inject-singlet", action="store_true", help="also evaluate the singlet as a control")
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("gen", parents=[flags], help="emit state JSON")
    p.add_argument("kind", choices=["werner", "singlet", "product"])
    p.add_argument("--x", type=float)
    p.add_argument("--pa", help="diagonal of the A factor (product)")
    p.add_argument("--pb", help="diagonal of the B factor (product)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (ValidationError, DomainError, UsageError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
