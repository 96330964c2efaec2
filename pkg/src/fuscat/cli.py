"""Command-line front end: ``fuscat <command> ...``.

Exit codes: 0 when every check passed, 2 for invalid input, 3 when two computation
routes disagree or a verification fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import cocycle as cc
from . import mtc, pointed, tube
from .cyclo import Cyclotomic, one
from .grp import FiniteGroup, GroupError, from_table, parse_group

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing of group and cocycle specs

def max_group_order() -> int:
    raw = os.environ.get("FUSCAT_MAX_GROUP_ORDER", "64")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"FUSCAT_MAX_GROUP_ORDER must be an integer, got {raw!r}") from None


def load_group(spec: str) -> FiniteGroup:
    """A builtin name (``Z6``, ``Z2xZ4``, ``S3``, ``D4``) or a JSON file with a Cayley table."""
    if spec.startswith("file:"):
        spec = spec[5:]
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
            G = from_table(data["table"], name=path.stem)
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read group file {spec}: {exc}") from None
        if "order" in data and data["order"] != G.order:
            raise InputError("group file: 'order' disagrees with the table")
    else:
        G = parse_group(spec)
    limit = max_group_order()
    if G.order > limit:
        raise InputError(f"|G| = {G.order} exceeds FUSCAT_MAX_GROUP_ORDER = {limit}")
    return G


def load_cocycle(spec: str, G: FiniteGroup) -> cc.Cocycle3:
    """``trivial``, ``cyclic:N:t``, ``basis:m:i`` or ``file:path``."""
    kind, _, rest = spec.partition(":")
    if kind == "trivial" and not rest:
        return cc.trivial(G)
    if kind == "cyclic":
        try:
            N, t = (int(x) for x in rest.split(":"))
        except ValueError:
            raise InputError(f"expected cyclic:N:t, got {spec!r}") from None
        w = cc.omega_t(N, t)
        if w.group != G:
            raise InputError(f"cyclic:{N}:{t} needs the group Z{N}")
        return w
    if kind == "basis":
        try:
            m, i = (int(x) for x in rest.split(":"))
        except ValueError:
            raise InputError(f"expected basis:m:i, got {spec!r}") from None
        reps = cc.cohomology_basis(G, m).representatives
        if not 0 <= i < len(reps):
            raise InputError(f"basis index {i} out of range (there are {len(reps)} generators)")
        return reps[i]
    if kind == "file":
        try:
            w = cc.Cocycle3.load(rest)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read cocycle file {rest}: {exc}") from None
        if w.group != G:
            raise InputError("cocycle file is defined on a different group table")
        return w
    raise InputError(f"unknown cocycle spec {spec!r}")


# ---------------------------------------------------------------------------
# output

def _cell(x, approx: bool):
    if isinstance(x, Cyclotomic):
        return x.format()
    return x


def _json_value(x, approx: bool):
    if isinstance(x, Cyclotomic):
        out = {"value": x.format(), "exact": x.to_json()}
        if approx:
            z = x.to_complex()
            out["approx"] = [round(z.real, 12), round(z.imag, 12)]
        return out
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _approx(x) -> str:
    z = x.to_complex()
    return f"{z.real:.12f}{z.imag:+.12f}i"


def render(columns: list[str], rows: list[list], fmt: str, approx: bool,
           meta: dict | None = None, notes: list[str] | None = None) -> str:
    """Render one table as text, CSV or JSON with identical exact content."""
    meta = meta or {}
    notes = notes or []
    if approx:
        cyc_cols = [j for j, c in enumerate(columns)
                    if any(isinstance(r[j], Cyclotomic) for r in rows)]
    else:
        cyc_cols = []
    if fmt == "json":
        doc = dict(meta)
        doc["columns"] = columns
        doc["rows"] = [{c: _json_value(v, approx) for c, v in zip(columns, r)} for r in rows]
        if notes:
            doc["notes"] = notes
        return json.dumps(doc, indent=2) + "\n"
    cols = list(columns) + [f"{columns[j]}~" for j in cyc_cols]
    body = [[_cell(v, approx) for v in r] + [_approx(r[j]) if isinstance(r[j], Cyclotomic) else ""
                                            for j in cyc_cols] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(body)
        return buf.getvalue()
    widths = [max([len(str(c))] + [len(str(r[j])) for r in body]) for j, c in enumerate(cols)]
    lines = []
    for k, v in meta.items():
        lines.append(f"# {k}: {v}")
    lines.append("  ".join(str(c).ljust(w) for c, w in zip(cols, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip())
    lines.extend(notes)
    return "\n".join(lines) + "\n"


def _check_rows(checks: list[tuple[str, bool, str]]) -> list[list]:
    return [[name, "pass" if ok else "FAIL", detail] for name, ok, detail in checks]


# ---------------------------------------------------------------------------
# commands

def cmd_indicators(args) -> tuple[str, int]:
    G = load_group(args.group)
    w = load_cocycle(args.cocycle, G)
    C = pointed.PointedCategory(G, w)
    n_max = args.max_n
    table = pointed.indicator_table(C, n_max)
    columns = ["g", "label", "fsexp"] + [f"nu_{n}" for n in range(1, n_max + 1)]
    rows = [[g, G.label(g), pointed.fs_exponent_object(C, g)] + table[g] for g in range(G.order)]
    F = pointed.fs_exponent_category(C)
    rows.append(["*", "category", F] + [""] * n_max)
    meta = {"command": "indicators", "group": args.group, "cocycle": args.cocycle,
            "modulus": w.modulus, "fsexp_category": F}
    return render(columns, rows, args.format, args.approx, meta), EXIT_OK


def cmd_fsexp(args) -> tuple[str, int]:
    G = load_group(args.group)
    w = load_cocycle(args.cocycle, G)
    C = pointed.PointedCategory(G, w)
    lcm_value = pointed.fs_exponent_category(C)
    A = tube.build(C, verify=args.verify == "full")
    tube_value = tube.fs_exponent_via_tube(A)
    rows, ok = [], lcm_value == tube_value
    for g in range(G.order):
        formula = pointed.fs_exponent_object(C, g)
        least = next(n for n in range(1, formula + 1) if pointed.indicator(C, g, n) == one())
        ok &= least == formula
        rows.append([g, G.label(g), formula, least])
    rows.append(["*", "category (lcm formula)", lcm_value, ""])
    rows.append(["*", "category (tube algebra)", tube_value, ""])
    meta = {"command": "fsexp", "group": args.group, "cocycle": args.cocycle,
            "fsexp_lcm": lcm_value, "fsexp_tube": tube_value, "agree": ok}
    notes = [] if ok else ["routes DISAGREE"]
    out = render(["g", "label", "fsexp", "least_n_with_nu_1"], rows, args.format, args.approx,
                 meta, notes)
    return out, EXIT_OK if ok else EXIT_MISMATCH


def cmd_tube_verify(args) -> tuple[str, int]:
    G = load_group(args.group)
    w = load_cocycle(args.cocycle, G)
    C = pointed.PointedCategory(G, w)
    checks = []
    try:
        A = tube.build(C, verify=True)
        checks.append(("algebra_axioms", True,
                       f"associativity, unit and central t on {len(A)} basis elements"))
    except tube.TubeError as exc:
        checks.append(("algebra_axioms", False, str(exc)))
        A = tube.build(C, verify=False)
    F = pointed.fs_exponent_category(C)
    bad = 0
    seqs = {}
    for g in range(G.order):
        seqs[g] = tube.indicator_sequence_via_tube(A, g, F)
        bad += sum(1 for n in range(1, F + 1) if seqs[g][n - 1] != pointed.indicator(C, g, n))
    checks.append(("indicator_residuals", bad == 0,
                   f"{bad} nonzero residuals over {G.order} objects and n <= {F}"))
    try:
        Ft = tube.fs_exponent_via_tube(A)
        checks.append(("fsexp_cross_check", Ft == F, f"tube {Ft}, lcm formula {F}"))
    except tube.TubeError as exc:
        checks.append(("fsexp_cross_check", False, str(exc)))
    rng = np.random.default_rng(args.seed)
    beta = cc.random_cochain2(G, w.modulus, rng)
    A2 = tube.build(pointed.PointedCategory(G, w * cc.coboundary(beta)), verify=False)
    gauge = all(tube.indicator_sequence_via_tube(A2, g, F) == seqs[g] for g in range(G.order))
    checks.append(("gauge_invariance", gauge, f"random coboundary, seed {args.seed}"))
    ok = all(c[1] for c in checks)
    meta = {"command": "tube verify", "group": args.group, "cocycle": args.cocycle, "passed": ok}
    out = render(["check", "status", "detail"], _check_rows(checks), args.format, args.approx, meta)
    return out, EXIT_OK if ok else EXIT_MISMATCH


def cmd_cocycle_class(args) -> tuple[str, int]:
    G = load_group(args.group)
    w = load_cocycle(args.cocycle, G)
    k = cc.class_order(w)
    rows = [[args.cocycle, w.modulus, k]]
    meta = {"command": "cocycle class-order", "group": args.group, "class_order": k}
    return render(["cocycle", "modulus", "class_order"], rows, args.format, args.approx, meta), EXIT_OK


def cmd_cocycle_basis(args) -> tuple[str, int]:
    G = load_group(args.group)
    m = args.modulus or G.order
    B = cc.cohomology_basis(G, m)
    rows = [[i, f, f"basis:{m}:{i}", cc.class_order(r)]
            for i, (f, r) in enumerate(zip(B.invariant_factors, B.representatives))]
    meta = {"command": "cocycle basis", "group": args.group, "modulus": m,
            "invariant_factors": list(B.invariant_factors)}
    if args.format == "json":
        meta["representatives"] = [r.to_json()["exponents"] for r in B.representatives]
    out = render(["index", "invariant_factor", "spec", "class_order"], rows, args.format,
                 args.approx, meta)
    return out, EXIT_OK


def _load_md(args) -> tuple[mtc.ModularData, str]:
    if args.file:
        try:
            return mtc.load(args.file), args.file
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from None
    return mtc.fixture(args.fixture), args.fixture


def cmd_mtc_indicators(args) -> tuple[str, int]:
    M, source = _load_md(args)
    n_max = args.max_n
    columns = ["j", "label", "dim", "twist"] + [f"nu_{n}" for n in range(1, n_max + 1)]
    rows = [[j, M.labels[j], M.dims[j], M.twist(j)]
            + [mtc.bantay_indicator(M, j, n) for n in range(1, n_max + 1)] for j in range(M.rank)]
    meta = {"command": "mtc indicators", "source": source, "fsexp": mtc.fs_exponent(M),
            "etingof_exponent": mtc.etingof_exponent(M)}
    return render(columns, rows, args.format, args.approx, meta), EXIT_OK


def cmd_mtc_diagnostics(args) -> tuple[str, int]:
    M, source = _load_md(args)
    diags = mtc.diagnostics(M)
    ok = all(d.passed for d in diags)
    F, E = mtc.fs_exponent(M), mtc.etingof_exponent(M)
    meta = {"command": "mtc diagnostics", "source": source, "fsexp": F, "etingof_exponent": E,
            "ratio": F // E if F % E == 0 else f"{F}/{E}", "passed": ok}
    rows = _check_rows([(d.name, d.passed, d.detail) for d in diags])
    return render(["check", "status", "detail"], rows, args.format, args.approx, meta), \
        EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("table", "csv", "json"), default=argparse.SUPPRESS)
    p.add_argument("--approx", action="store_true", default=argparse.SUPPRESS,
                   help="add 12-digit decimal approximations")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for randomized checks")
    p.add_argument("--max-n", type=int, default=argparse.SUPPRESS, dest="max_n")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this path")
    p.add_argument("--verify", choices=("fast", "full"), default=argparse.SUPPRESS,
                   help="'fast' skips the exhaustive tube-algebra axiom check in fsexp")
    return p


_DEFAULTS = {"format": "table", "approx": False, "seed": 0, "max_n": 12, "out": None,
             "verify": "full"}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fuscat", parents=[common],
                                     description="Frobenius-Schur indicators and exponents, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(p):
        p.add_argument("--group", required=True, help="Z<N>, Z<N>xZ<M>, S3, D<N> or a JSON file")
        p.add_argument("--cocycle", default="trivial",
                       help="trivial | cyclic:N:t | basis:m:i | file:path")

    p = sub.add_parser("indicators", parents=[common], help="table of nu_n(V_g)")
    group_args(p)
    p.set_defaults(func=cmd_indicators)
    p = sub.add_parser("fsexp", parents=[common], help="Frobenius-Schur exponent by two routes")
    group_args(p)
    p.set_defaults(func=cmd_fsexp)

    p = sub.add_parser("tube", parents=[common], help="tube algebra checks")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("verify", parents=[common])
    group_args(q)
    q.set_defaults(func=cmd_tube_verify)

    p = sub.add_parser("cocycle", parents=[common], help="cohomology class computations")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("class-order", parents=[common])
    group_args(q)
    q.set_defaults(func=cmd_cocycle_class)
    q = csub.add_parser("basis", parents=[common])
    q.add_argument("--group", required=True)
    q.add_argument("--modulus", type=int, default=None, help="value modulus m (default |G|)")
    q.set_defaults(func=cmd_cocycle_basis)

    p = sub.add_parser("mtc", parents=[common], help="modular data")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--fixture", choices=mtc.FIXTURES)
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("indicators", parents=[common])
    q.set_defaults(func=cmd_mtc_indicators)
    q = msub.add_parser("diagnostics", parents=[common])
    q.set_defaults(func=cmd_mtc_diagnostics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        if args.max_n < 1:
            raise InputError("--max-n must be positive")
        text, code = args.func(args)
    except (InputError, GroupError, cc.CocycleError, mtc.ModularDataError) as exc:
        print(f"fuscat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
