"""Command line front end.

Exit status: 0 on success, 1 when the input fails a check (a witness is
printed), 2 when the input cannot be read or is inconsistent.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cover as cov
from .complex import cell_name, parse_cell
from .cosheaf import Coefficients, check_gluing, costalk, evaluate
from .errors import ConstructibleError, ParseError
from .fixtures import FIXTURE_NAMES, materialize
from .ingest import build_map, pushforward_cosheaf
from .io import (
    complex_from_json,
    cosheaf_from_json,
    cosheaf_to_json,
    dump_json,
    load_json,
    stratified_from_json,
    write_files,
)
from .linalg import Field
from .zigzag import decompose, zigzag_extract


def _field(text: str | None) -> Field | None:
    if text is None:
        return None
    if text == "q":
        return Field()
    if text.startswith("p:"):
        try:
            return Field(int(text[2:]))
        except ValueError as exc:
            raise ParseError(f"--field: {exc}") from None
    raise ParseError(f"--field must be q or p:PRIME, got {text!r}")


def _cells(text: str):
    try:
        return [parse_cell(c.strip()) for c in text.split(",") if c.strip()]
    except ConstructibleError as exc:
        raise ParseError(f"bad cell list {text!r}: {exc}") from None


def _base(args, embedded=None):
    if args.complex:
        obj = load_json(args.complex)
    elif isinstance(embedded, dict) and "complex" in embedded:
        obj = embedded["complex"]
    else:
        raise ParseError("--complex is required")
    strata = load_json(args.strata) if getattr(args, "strata", None) else None
    if strata is None and isinstance(embedded, dict) and "strata" in embedded:
        strata = {"strata": embedded["strata"]}
    return stratified_from_json(obj, strata)


def _cosheaf(args):
    if not args.cosheaf:
        raise ParseError("--cosheaf is required")
    obj = load_json(args.cosheaf)
    base = _base(args, obj)
    return cosheaf_from_json(base, obj, field_override=_field(args.field))


def _map(args):
    if not args.map or not args.base:
        raise ParseError("--map and --base are required")
    mobj = load_json(args.map)
    bobj = load_json(args.base)
    base = stratified_from_json(bobj)
    if not isinstance(mobj, dict) or not isinstance(mobj.get("vertex_map"), dict):
        raise ParseError("map file: missing object 'vertex_map'")
    if "source" in mobj:
        src_obj = mobj["source"]
    elif args.complex:
        src_obj = load_json(args.complex)
    else:
        raise ParseError("map file has no 'source' complex and --complex was not given")
    source = complex_from_json(src_obj, "source")
    if isinstance(src_obj, dict) and "strata" in src_obj:
        source = stratified_from_json(src_obj)
    return build_map(source, base, mobj["vertex_map"])


def _open(args, cosheaf):
    k = cosheaf.complex
    if args.open:
        return k.upward_closure(k.check_cell(c) for c in _cells(args.open))
    return k.cells


def _show_value(v):
    return f"{{{', '.join(v)}}} ({len(v)} elements)" if isinstance(v, tuple) else f"dimension {v}"


def cmd_validate(args):
    lines, report = [], {}
    if args.cosheaf:
        f = _cosheaf(args)
        base = f.base
    else:
        base = _base(args)
        f = None
    k = base.complex
    lines.append(f"complex: OK ({len(k.cells)} cells, {len(k.removed)} removed, dimension {k.dimension})")
    lines.append(f"strata: OK ({len(base.strata)} strata, {len(base.order)} frontier relations)")
    report["cells"] = len(k.cells)
    report["strata"] = {s: [cell_name(c) for c in sorted(base.members[s])] for s in base.strata}
    report["order"] = sorted([a, b] for a, b in base.order)
    if f is not None:
        ch = f.checks
        lines.append(f"cosheaf: OK ({ch['incidences']} incidences, {ch['diamonds']} diamonds, "
                     f"{ch['invertibility']} invertibility checks)")
        report["cosheaf"] = dict(ch)
    return 0, lines, report


def cmd_eval(args):
    f = _cosheaf(args)
    u = _open(args, f)
    v = evaluate(f, u)
    names = ",".join(cell_name(c) for c in f.complex.ordered if c in u)
    return 0, [f"open: {names}", f"value: {_show_value(v)}"], {
        "open": [cell_name(c) for c in f.complex.ordered if c in u],
        "value": list(v) if isinstance(v, tuple) else v}


def cmd_costalk(args):
    f = _cosheaf(args)
    if not args.cell:
        raise ParseError("--cell is required")
    cells = _cells(args.cell)
    if len(cells) != 1:
        raise ParseError("--cell takes exactly one cell")
    x = f.complex.check_cell(cells[0])
    value, canon = costalk(f, x)
    if isinstance(canon, dict):
        shown = ", ".join(f"{a}->{b}" for a, b in canon.items())
        jmap = canon
    else:
        shown = str(canon)
        jmap = canon.to_json()
    return 0, [f"costalk {cell_name(x)}: {_show_value(value)}", f"canonical map: {shown}"], {
        "cell": cell_name(x), "value": list(value) if isinstance(value, tuple) else value, "canonical": jmap}


def cmd_gluing(args):
    f = _cosheaf(args)
    u = _open(args, f)
    k = f.complex
    members = [k.star(c) for c in k.ordered if c in u]
    rep = check_gluing(f, u, members)
    status = "OK" if rep.ok else "FAIL"
    lines = [f"gluing: {status} ({len(members)} stars; cover colimit {_show_value(rep.cover_value)}, "
             f"open value {_show_value(rep.open_value)})"]
    if rep.witness:
        lines.append(f"witness: {rep.witness}")
    return (0 if rep.ok else 1), lines, {"ok": rep.ok, "stars": len(members), "witness": rep.witness}


def cmd_decompose(args):
    f = _cosheaf(args)
    module = zigzag_extract(f, _field(args.field))
    bc = decompose(module)
    lines = bc.lines()
    return 0, lines, {"dims": list(module.dims), "bars": [
        {"lo": b.lo, "hi": b.hi, "multiplicity": b.multiplicity, "kind": b.kind, "cells": b.cells}
        for b in bc.bars]}


def _emit_cover(c, args, lines):
    if args.out:
        Path(args.out).write_text(dump_json(cov.cover_to_json(c)), encoding="utf-8")
        lines.append(f"wrote {args.out}")
    if args.dot:
        Path(args.dot).write_text(cov.cover_to_dot(c), encoding="utf-8")
        lines.append(f"wrote {args.dot}")


def cmd_cover(args):
    f = _cosheaf(args)
    c = cov.build_cover(f)
    rep = cov.validate_covering(c)
    comps = cov.components(c)
    lines = [f"cover: {len(c.cells)} cells, {len(comps)} components, {len(c.strata_members)} strata"]
    lines += rep.lines()
    _emit_cover(c, args, lines)
    report = {"cells": len(c.cells), "components": len(comps), "covering": rep.ok,
              "failures": rep.failures, "cover": cov.cover_to_json(c)}
    return (0 if rep.ok else 1), lines, report


def cmd_reeb(args):
    f = _map(args)
    c = cov.reeb_pipeline(f)
    g = cov.graph_summary(c)
    lines = [f"reeb: {g.line()}"]
    _emit_cover(c, args, lines)
    return 0, lines, {"vertices": g.vertices, "edges": g.edges, "b0": g.b0, "b1": g.b1,
                      "cover": cov.cover_to_json(c)}


def cmd_pushforward(args):
    f = _map(args)
    fld = _field(args.field)
    coeffs = Coefficients.sets() if fld is None else Coefficients("vect", fld)
    g = pushforward_cosheaf(f, coeffs)
    doc = cosheaf_to_json(g)
    lines = []
    if args.out:
        Path(args.out).write_text(dump_json(doc), encoding="utf-8")
        lines.append(f"wrote {args.out}")
    else:
        lines.extend(dump_json(doc).rstrip("\n").split("\n"))
    return 0, lines, doc


def cmd_fixture(args):
    try:
        files = materialize(args.name)
    except KeyError:
        raise ParseError(f"unknown fixture {args.name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    if not args.out:
        raise ParseError("--out is required")
    paths = write_files(args.out, files)
    return 0, [f"wrote {p}" for p in paths], {"files": [str(p) for p in paths]}


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "costalk": cmd_costalk,
    "gluing": cmd_gluing,
    "decompose": cmd_decompose,
    "cover": cmd_cover,
    "reeb": cmd_reeb,
    "pushforward": cmd_pushforward,
    "fixture": cmd_fixture,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="constructible",
                                     description="Constructible cosheaves on stratified simplicial complexes.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        p = sub.add_parser(verb)
        if verb == "fixture":
            p.add_argument("name", help="line1, punctured-disk, zn:N, circle-height, wiggly-circle, whitney-cusp")
        p.add_argument("--complex")
        p.add_argument("--strata")
        p.add_argument("--cosheaf")
        p.add_argument("--map")
        p.add_argument("--base")
        p.add_argument("--open", help="comma-separated cells, e.g. 'o|a,o|b'")
        p.add_argument("--cell")
        p.add_argument("--field", help="q or p:PRIME")
        p.add_argument("--dot")
        p.add_argument("--out")
        p.add_argument("--json", action="store_true")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        status, lines, report = COMMANDS[args.verb](args)
    except ConstructibleError as exc:
        name = type(exc).__name__
        if args.json:
            stdout.write(json.dumps({"ok": False, "error": name, "message": str(exc)}, sort_keys=True) + "\n")
        else:
            stdout.write(f"error: {name}: {exc}\n")
        return exc.exit_code
    if args.json:
        report = dict(report)
        report.setdefault("ok", status == 0)
        stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        stdout.write("".join(line + "\n" for line in lines))
    return status


def main():
    sys.exit(run())
