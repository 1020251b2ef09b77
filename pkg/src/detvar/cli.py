"""Command-line front end: ``detvar verify | table | ideal``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from importlib import resources

from . import cohomology as coh
from .errors import DetvarError, ParseError, RetrySeed
from .field import FieldSpec
from .gallery import build
from .ideal import Ideal, dimension_degree, eliminate, saturate
from .polynomial import format_polynomial, parse_polynomial
from .report import VerificationReport
from .ring import MultigradedRing
from .verify import CHECKS, run_check

MAX_ATTEMPTS = 5
# checks that build the construction and so can hit the genericity guard
_CONSTRUCTIVE = {"3.1", "4.1", "4.2", "4.3", "4.4"}
_SLOW_GENERIC = ("3.1", "4.1")


class UsageError(Exception):
    pass


def load_schema() -> dict:
    text = resources.files("detvar").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def validate_reports(data) -> None:
    import jsonschema

    jsonschema.validate(data, load_schema())


# -- verify ----------------------------------------------------------------------------------

def _field(text):
    try:
        return FieldSpec.parse(text)
    except DetvarError as exc:
        raise UsageError(str(exc)) from None


def _seed(args) -> int:
    env = os.environ.get("DETVAR_SEED")
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DETVAR_SEED must be an integer, got {env!r}") from None


def _guard_report(b, field, seed, message) -> VerificationReport:
    rep = VerificationReport("guard", b, str(field), seed)
    rep.skip(message)
    return rep.finish()


def _context(b, field, mode, seed, out):
    """Build the construction, retrying on guard failures; returns None when all seeds fail."""
    for k in range(MAX_ATTEMPTS):
        s = seed + k
        try:
            return build(b, field, mode, s)
        except RetrySeed as exc:
            out.append(_guard_report(b, field, s, str(exc)))
    return None


def collect_reports(b, field, mode, seed, selector, slow=False) -> tuple:
    """(reports, ok) for the selected checks, in selector order."""
    checks = list(CHECKS) if selector == "all" else [selector]
    reports: list = []
    ctx = None
    if any(c in _CONSTRUCTIVE for c in checks):
        ctx = _context(b, field, mode, seed, reports)
        if ctx is None:
            return reports, False
    else:
        ctx = build(b, field, mode, seed, check=False)
    attempts = len(reports)
    for c in checks:
        reports.append(run_check(c, ctx))
    if slow and mode == "random":
        gen = build(b, FieldSpec.rationals(), "generic", ctx.seed, check=False)
        for c in checks:
            if c in _SLOW_GENERIC:
                rep = run_check(c, gen)
                rep.check = f"{c}-generic"
                reports.append(rep)
    ok = all(r.status == "pass" for r in reports[attempts:])
    return reports, ok


def _render_text(reports) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.check} b={r.b} field={r.field} seed={r.seed}: {r.status}")
        for name, w in r.witnesses.items():
            if isinstance(w, dict) and "ok" in w:
                mark = "ok" if w["ok"] else "FAIL"
                val = "" if w["value"] is None else " " + json.dumps(w["value"])
                lines.append(f"  {mark:4} {name}{val}")
            else:
                lines.append(f"  note {name} {json.dumps(w)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    field = _field(args.field)
    seed = _seed(args)
    if args.b < 1:
        raise UsageError("--b must be at least 1")
    reports, ok = collect_reports(args.b, field, args.mode, seed, args.prop, args.slow)
    if args.format == "json":
        data = [r.to_dict() for r in reports]
        validate_reports(data)
        text = json.dumps(data, indent=2) + "\n"
    else:
        text = _render_text(reports)
    _emit(text, args.out)
    return 0 if ok else 1


# -- table ------------------------------------------------------------------------------------

def _range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}, expected lo:hi")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def cmd_table(args) -> int:
    if args.b < 1:
        raise UsageError("--b must be at least 1")
    alpha, beta = _range(args.alpha), _range(args.beta)
    if args.which == "chi-X":
        cells = coh.chi_table(args.b, alpha, beta)
    else:
        cells = coh.cohomology_table_X1(args.b, alpha, beta)
    if args.format == "json":
        text = coh.table_json(args.which, args.b, cells, alpha, beta) + "\n"
    else:
        text = coh.render_table(cells, alpha, beta) + "\n"
    _emit(text, args.out)
    return 0


# -- ideal -------------------------------------------------------------------------------------

_HEADER = re.compile(r"\s*ring\s*:(.*)$")


def _parse_degrees(text, n, lineno):
    text = text.strip()
    try:
        if "(" in text:
            degs = [tuple(int(v) for v in g.split(",")) for g in re.findall(r"\(([^()]*)\)", text)]
        else:
            degs = [(int(v),) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError("bad degree list", lineno, 1) from None
    if len(degs) != n:
        raise ParseError(f"{len(degs)} degrees for {n} variables", lineno, 1)
    return degs


def parse_ideal_file(text: str) -> Ideal:
    """Header ``ring: vars=...; degrees=...; field=...`` then one generator per line."""
    lines = text.splitlines()
    ring = None
    gens = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ring is None:
            m = _HEADER.match(body)
            if not m:
                raise ParseError("expected a 'ring:' header line", lineno, 1)
            fields = {}
            for part in m.group(1).split(";"):
                if not part.strip():
                    continue
                if "=" not in part:
                    raise ParseError(f"expected key=value, got {part.strip()!r}", lineno, body.index(part) + 1)
                k, v = part.split("=", 1)
                fields[k.strip()] = v.strip()
            names = [v.strip() for v in fields.get("vars", "").split(",") if v.strip()]
            if not names:
                raise ParseError("header needs vars=...", lineno, 1)
            degs = _parse_degrees(fields["degrees"], len(names), lineno) if "degrees" in fields else None
            try:
                field = FieldSpec.parse(fields.get("field", "fp:1009"))
                ring = MultigradedRing(names, degs, field)
            except DetvarError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            continue
        for piece in _split_commas(body):
            start, chunk = piece
            if not chunk.strip():
                continue
            try:
                gens.append(parse_polynomial(ring, chunk, lineno))
            except ParseError as exc:
                raise ParseError(exc.message, lineno, exc.column + start) from None
    if ring is None:
        raise ParseError("empty input", 1, 1)
    return Ideal(ring, gens)


def _split_commas(line):
    out, start = [], 0
    for i, ch in enumerate(line):
        if ch == ",":
            out.append((start, line[start:i]))
            start = i + 1
    out.append((start, line[start:]))
    return out


def _names(text, ring):
    names = [v.strip() for v in text.split(",") if v.strip()]
    for n in names:
        if n not in ring.variables:
            raise UsageError(f"unknown variable {n!r}")
    return names


def cmd_ideal(args) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        I = parse_ideal_file(text)
    except ParseError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: parse error: {exc.message}", file=sys.stderr)
        return 2
    R = I.ring

    def show(gens):
        return "\n".join(format_polynomial(g) for g in gens) or "0"

    if args.op == "gb":
        out = show(I.gb().elements)
    elif args.op == "saturate":
        J = Ideal(R, [R.var(v) for v in _names(args.by, R)]) if args.by else None
        out = show(saturate(I, J).trim().gens)
    elif args.op == "eliminate":
        if not args.vars:
            raise UsageError("--op eliminate needs --vars")
        out = show(eliminate(I, _names(args.vars, R)).trim().gens)
    else:
        hd = dimension_degree(I)
        genus = "-" if hd.genus is None else hd.genus
        out = f"dim={hd.dimension} degree={hd.degree} genus={genus}"
    _emit(out + "\n", args.out)
    return 0


# -- plumbing ----------------------------------------------------------------------------------

def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="detvar", description="Checks and tables for the X_b family.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("--prop", default="all", choices=list(CHECKS) + ["all"])
    v.add_argument("--b", type=int, default=1)
    v.add_argument("--field", default="fp:1009")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--mode", default="random", choices=["random", "generic"])
    v.add_argument("--format", default="text", choices=["text", "json"])
    v.add_argument("--out")
    v.add_argument("--slow", action="store_true", help="also run symbolic-coefficient variants")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="print a cohomology or Euler characteristic table")
    t.add_argument("--which", required=True, choices=["chi-X", "cohomology-X1"])
    t.add_argument("--b", type=int, default=1)
    t.add_argument("--alpha", default="-3:3", help="lo:hi, write --alpha=-1:2 for negative bounds")
    t.add_argument("--beta", default="-7:7", help="lo:hi")
    t.add_argument("--format", default="text", choices=["text", "json"])
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    i = sub.add_parser("ideal", help="operate on an ideal read from a file")
    i.add_argument("file")
    i.add_argument("--op", required=True, choices=["gb", "saturate", "eliminate", "dim-degree"])
    i.add_argument("--by", help="comma separated variables to saturate by (default: all)")
    i.add_argument("--vars", help="comma separated variables to eliminate")
    i.add_argument("--out")
    i.set_defaults(func=cmd_ideal)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"detvar: error: {exc}", file=sys.stderr)
        return 2
    except DetvarError as exc:
        print(f"detvar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
