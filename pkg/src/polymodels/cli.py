"""Command-line entry point: ``polymodels <subcommand> [flags]``.

Exit status: 0 when every requested check passes, 1 on a verification
failure, 2 on a usage error, 3 on an I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, payload: dict) -> None:
    """Write ``payload`` to ``--json`` atomically, or to stdout."""
    from .numerics import atomic_write
    text = _dumps(payload)
    if args.json:
        atomic_write(args.json, text)
    else:
        sys.stdout.write(text)


def _fail(names: Sequence[str]) -> int:
    if names:
        sys.stderr.write("failing checks: " + ", ".join(names) + "\n")
        return EXIT_FAIL
    return EXIT_OK


def _load(args):
    from .catalog.models import UnknownModel, model
    if not args.model:
        raise UsageError("--model is required")
    try:
        return model(args.model, args.n)
    except UnknownModel as exc:
        raise UsageError(f"unknown model {exc.args[0]!r}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------------

def cmd_molien(args) -> int:
    from .groups import UnknownGroup, UnsupportedOrder, construct_named, molien
    if not args.group:
        raise UsageError("--group is required")
    try:
        g = construct_named(args.group, args.n, args.p)
    except (UnknownGroup, UnsupportedOrder, ValueError) as exc:
        raise UsageError(str(exc)) from None
    series = molien(g, args.terms)
    _emit(args, {"kind": "molien", "group": g.name, "order": g.order, **series.to_json()})
    return EXIT_OK


def cmd_model(args) -> int:
    from .catalog.export import model_to_json
    _emit(args, model_to_json(_load(args)))
    return EXIT_OK


def _numeric_section(m, args) -> tuple[dict, list[str]]:
    from .numerics import ellipticity_check, sample_interior
    cloud = sample_interior(m, args.samples, args.seed)
    stats = ellipticity_check(m, cloud)
    return ({"samples": args.samples, "seed": args.seed, "acceptance": cloud.acceptance,
             "ellipticity": {"minimum": stats.minimum, "mean": stats.mean,
                             "passed": stats.passed}},
            [] if stats.passed else ["ellipticity"])


def cmd_verify(args) -> int:
    from .modelcheck.report import run_model
    m = _load(args)
    report = run_model(m, args.degree)
    payload = report.to_json(args.deterministic)
    failing = report.failing()
    if args.samples:
        payload["numerics"], extra = _numeric_section(m, args)
        failing += extra
    _emit(args, payload)
    return _fail([f"{m.label}:{name}" for name in failing])


def _verify_row(task: tuple[str, int | None, int, bool]) -> dict:
    from .catalog.models import GROUP_LABELS, model
    from .modelcheck.report import run_model
    key, n, cap, deterministic = task
    m = model(key, n)
    report = run_model(m, cap)
    groups, t1, t2, eta = GROUP_LABELS[key]
    row = {"model": key, "label": m.label, "n": n, "group": groups, "theta1": t1,
           "theta2": t2, "eta": eta, "boundary": m.summary_boundary,
           "verdict": "PASS" if report.passed else "FAIL", "failing": report.failing(),
           "typos": len(m.typos)}
    if not deterministic:
        row["seconds"] = round(sum(report.timings.values()), 6)
    return row


def cmd_verify_all(args) -> int:
    from .catalog.models import BUILDERS, PARAMETRISED
    n = args.n or 3
    tasks = [(key, n if key in PARAMETRISED else None, args.degree, args.deterministic)
             for key in BUILDERS]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_verify_row, tasks))
    else:
        rows = [_verify_row(t) for t in tasks]
    table = _format_table(rows)
    if args.json:
        _emit(args, {"kind": "summary", "n": n, "rows": rows})
        sys.stdout.write(table)
    else:
        sys.stdout.write(table)
    return _fail([f"{r['label']}:{name}" for r in rows for name in r["failing"]])


def _format_table(rows: list[dict]) -> str:
    head = ("model", "group", "theta1", "theta2", "eta", "boundary", "verdict")
    body = [(r["label"], r["group"], r["theta1"], r["theta2"], r["eta"] or "-",
             r["boundary"], r["verdict"] + ("*" if r["typos"] else "")) for r in rows]
    widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip()
             for line in (head, *body)]
    lines.append("* verified after replacing suspected misprints by recomputed values")
    return "\n".join(lines) + "\n"


def cmd_render(args) -> int:
    from .numerics import DEFAULT_GRID, render_boundary, write_rendering
    m = _load(args)
    if m.dim not in (2, 3):
        raise UsageError("render needs a 2-d or 3-d model")
    r = render_boundary(m, args.grid or DEFAULT_GRID)
    stem = Path(args.out) if args.out else Path(m.label.replace("(", "_").replace(")", ""))
    svg, csv = write_rendering(r, stem)
    info = {"kind": "render", "model": m.label, "svg": str(svg), "csv": str(csv),
            "contours": len(r.contours), "points": r.point_count(),
            "slice": r.slice_value}
    if args.json:
        _emit(args, info)
    return EXIT_OK if r.point_count() else _fail(["render: empty contour"])


def cmd_spectrum(args) -> int:
    from .modelcheck.closure import drift_closure
    from .modelcheck.operator import assemble_operator, block_spectra, spherical_eigenvalue
    from .numerics import numeric_eigenvalues
    m = _load(args)
    drift = drift_closure(m.system)
    if not drift.closed:
        return _fail([f"{m.label}:drift_closure"])
    cap = args.degree
    op = assemble_operator(m, drift.drift, cap)
    d = m.system.ambient_dim
    allowed = [spherical_eigenvalue(k, d) for k in range(0, 2 * cap + 2)]
    blocks = block_spectra(op, allowed)
    numeric = numeric_eigenvalues(op, 1e-9)
    exact = sorted((r for b in blocks for r in b.exact), key=float)
    ok = all(b.complete for b in blocks) and all(r in set(allowed) for r in exact)
    close = len(numeric) == len(exact) and all(
        abs(x - float(r)) <= 1e-8 * max(1.0, abs(float(r))) for x, r in zip(numeric, exact))
    _emit(args, {"kind": "spectrum", "model": m.label, "cap": cap, "size": op.size,
                 "block_triangular": op.is_block_triangular(),
                 "exact": [r.to_text() for r in exact], "numeric": numeric,
                 "spherical": ok, "numeric_agrees": close})
    failing = []
    if not op.is_block_triangular():
        failing.append("filtration")
    if not ok:
        failing.append("spherical eigenvalues")
    if not close:
        failing.append("numeric certification")
    return _fail([f"{m.label}:{f}" for f in failing])


def cmd_covers(args) -> int:
    from .catalog.covers import COVER_PAIRS, cover_map
    from .modelcheck.covers import verify_cover
    n = args.n or 3
    verdicts = []
    for src, tgt in COVER_PAIRS:
        cover = cover_map(src, tgt, None if tgt == "omega11" else n)
        verdicts.append(verify_cover(cover).to_json())
    _emit(args, {"kind": "covers", "n": n, "covers": verdicts})
    return _fail([f"{v['source']}->{v['target']}" for v in verdicts if not v["passed"]])


def cmd_cornulier(args) -> int:
    from .modelcheck.negative import cornulier_check
    v = cornulier_check(args.p or 3)
    _emit(args, {"kind": "cornulier", **v.to_json()})
    return _fail([] if v.passed else ["cornulier negative control"])


COMMANDS = {
    "molien": cmd_molien, "model": cmd_model, "catalog": cmd_model, "verify": cmd_verify,
    "verify-all": cmd_verify_all, "render": cmd_render, "spectrum": cmd_spectrum,
    "covers": cmd_covers, "cornulier": cmd_cornulier,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


HELP = {
    "molien": "Molien series of a group (--group, --terms)",
    "model": "dump a catalog model as JSON (--model, --n)",
    "verify": "run every check on one model (--model, --n, --samples)",
    "verify-all": "summary table over the whole catalog",
    "render": "SVG and CSV boundary plot (--model, --grid, --out)",
    "spectrum": "exact operator spectrum up to a degree cap (--degree)",
    "covers": "verify the covering maps between models (--n)",
    "cornulier": "negative control on the cornulier group (--p)",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model")
    common.add_argument("--n", type=int)
    common.add_argument("--group")
    common.add_argument("--p", type=int)
    common.add_argument("--terms", type=int, default=12)
    common.add_argument("--degree", type=int, default=8,
                        help="valuation cap of the operator matrix")
    common.add_argument("--samples", type=int, default=0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", type=int, default=None)
    common.add_argument("--json", metavar="PATH")
    common.add_argument("--out", metavar="STEM", help="output stem for render")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--deterministic", action="store_true",
                        help="omit timings so output is byte-reproducible")
    parser = _Parser(prog="polymodels", description="Exact checks for polynomial diffusion models "
                     "built from finite subgroups of O(3).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        if name == "catalog":
            p = sub.add_parser(name, parents=[common], help="alias of 'model'")
            p.add_argument("action", nargs="?", choices=["dump"], default="dump")
        else:
            sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"polymodels: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"polymodels: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
