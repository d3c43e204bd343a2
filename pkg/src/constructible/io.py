"""JSON file formats.

Cells are written as sorted vertex arrays in complex and stratification files
and as ``"a|b|c"`` names inside cosheaf files (map keys are ``"TAU->SIGMA"``).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .complex import (
    OpenComplex,
    StratifiedComplex,
    build_complex,
    build_stratification,
    cell_name,
    parse_cell,
    sorted_cells,
)
from .cosheaf import Coefficients, Cosheaf, build_cosheaf
from .errors import ConstructibleError, ParseError
from .linalg import Field, Matrix


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}: {key!r} has the wrong type")
    return value


def _vertex_lists(items, where):
    if not isinstance(items, list) or not all(
            isinstance(s, list) and all(isinstance(v, str) for v in s) for s in items):
        raise ParseError(f"{where}: expected an array of arrays of strings")
    return items


def _maximal(cells) -> list[list[str]]:
    cells = set(cells)
    tops = [c for c in cells if not any(c != d and set(c) < set(d) for d in cells)]
    return [list(c) for c in sorted_cells(tops)]


# complexes and stratifications

def complex_to_json(k: OpenComplex) -> dict:
    return {"maximal_simplices": _maximal(k.ambient), "removed": _maximal(k.removed)}


def complex_from_json(obj, where="complex") -> OpenComplex:
    tops = _vertex_lists(_require(obj, "maximal_simplices", list, where), where)
    removed = _vertex_lists(obj.get("removed", []), where)
    return build_complex(tops, removed)


def strata_to_json(strat: StratifiedComplex) -> dict:
    return {"strata": {s: [list(c) for c in sorted_cells(cs)] for s, cs in sorted(strat.members.items())}}


def strata_from_json(k: OpenComplex, obj, where="strata") -> StratifiedComplex:
    table = _require(obj, "strata", dict, where)
    assignment = {}
    for sid, cells in table.items():
        for vs in _vertex_lists(cells, f"{where}: stratum {sid}"):
            c = tuple(sorted(vs))
            if c in assignment:
                raise ParseError(f"{where}: cell {cell_name(c)} listed in two strata")
            assignment[c] = sid
    return build_stratification(k, assignment)


def stratified_from_json(obj, strata_obj=None, where="complex") -> StratifiedComplex:
    """A complex object, stratified by ``strata_obj`` or its own ``"strata"`` key.

    Without either, every cell is its own stratum.
    """
    from .complex import trivial_stratification
    k = complex_from_json(obj, where)
    if strata_obj is None and isinstance(obj, dict) and "strata" in obj:
        strata_obj = obj
    if strata_obj is None:
        return trivial_stratification(k)
    return strata_from_json(k, strata_obj)


# cosheaves

def _encode_entry(x: Fraction | int, field_: Field):
    if field_.p is not None or Fraction(x).denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def coefficients_to_json(c: Coefficients):
    if c.is_set:
        return "set"
    return {"field": "q"} if c.field.p is None else {"field": {"p": c.field.p}}


def coefficients_from_json(obj, where="coefficients") -> Coefficients:
    if obj == "set":
        return Coefficients.sets()
    if isinstance(obj, dict) and "field" in obj:
        f = obj["field"]
        if f == "q":
            return Coefficients.vect()
        if isinstance(f, dict) and isinstance(f.get("p"), int):
            try:
                return Coefficients.vect(f["p"])
            except ValueError as exc:
                raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: expected \"set\", {{\"field\": \"q\"}} or {{\"field\": {{\"p\": P}}}}")


def cosheaf_to_json(f: Cosheaf, embed_base: bool = False) -> dict:
    """Cosheaf file contents; with ``embed_base`` the complex and strata ride along."""
    c = f.coefficients
    values = {}
    for x in f.complex.ordered:
        v = f.values[x]
        values[cell_name(x)] = list(v) if c.is_set else v
    maps = {}
    for (t, s), m in sorted(f.maps.items(), key=lambda kv: (cell_name(kv[0][0]), cell_name(kv[0][1]))):
        key = f"{cell_name(t)}->{cell_name(s)}"
        if c.is_set:
            maps[key] = {x: m[x] for x in f.values[t]}
        else:
            maps[key] = [[_encode_entry(x, c.field) for x in r] for r in m.rows]
    doc = {"coefficients": coefficients_to_json(c), "values": values, "maps": maps}
    if embed_base:
        doc["complex"] = complex_to_json(f.complex)
        doc["strata"] = strata_to_json(f.base)["strata"]
    return doc


def _parse_entry(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: matrix entries must be integers or \"a/b\" strings")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: bad matrix entry {x!r}") from None


def cosheaf_from_json(base: StratifiedComplex, obj, where="cosheaf", field_override: Field | None = None,
                      allow_empty: bool = True) -> Cosheaf:
    c = coefficients_from_json(_require(obj, "coefficients", (str, dict), where), f"{where}: coefficients")
    if field_override is not None and not c.is_set:
        c = Coefficients("vect", field_override)
    raw_values = _require(obj, "values", dict, where)
    raw_maps = obj.get("maps", {})
    if not isinstance(raw_maps, dict):
        raise ParseError(f"{where}: 'maps' must be an object")

    def cell(name, w):
        try:
            return parse_cell(name)
        except ConstructibleError as exc:
            raise ParseError(f"{w}: {exc}") from None

    values = {}
    for name, v in raw_values.items():
        x = cell(name, f"{where}: values")
        if c.is_set:
            if not isinstance(v, list) or not all(isinstance(e, str) for e in v):
                raise ParseError(f"{where}: value of {name} must be an array of names")
            values[x] = tuple(v)
        else:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"{where}: value of {name} must be a dimension")
            values[x] = v
    maps = {}
    for key, m in raw_maps.items():
        if "->" not in key:
            raise ParseError(f"{where}: map key {key!r} is not of the form TAU->SIGMA")
        ts, ss = key.split("->", 1)
        t, s = cell(ts, f"{where}: maps"), cell(ss, f"{where}: maps")
        if c.is_set:
            if not isinstance(m, dict) or not all(isinstance(y, str) for y in m.values()):
                raise ParseError(f"{where}: map {key} must be an object of names")
            maps[(t, s)] = dict(m)
        else:
            if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
                raise ParseError(f"{where}: map {key} must be an array of rows")
            ncols = values.get(t, len(m[0]) if m else 0)
            rows = [[_parse_entry(e, f"{where}: map {key}") for e in r] for r in m]
            try:
                maps[(t, s)] = Matrix.from_rows(rows, ncols, c.field)
            except ValueError as exc:
                raise ParseError(f"{where}: map {key}: {exc}") from None
    return build_cosheaf(base, c, values, maps, allow_empty=allow_empty)


def write_files(directory, files: dict[str, object]) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, obj in sorted(files.items()):
        p = directory / name
        p.write_text(obj if isinstance(obj, str) else dump_json(obj), encoding="utf-8")
        out.append(p)
    return out
