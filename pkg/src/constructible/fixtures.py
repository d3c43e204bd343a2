"""Named example spaces, maps and cosheaves.

:func:`materialize` returns the JSON documents the command line writes for
``fixture <name> --out DIR``.
"""
from __future__ import annotations

import random

from .complex import (
    OpenComplex,
    StratifiedComplex,
    build_complex,
    build_stratification,
    parse_cell,
    trivial_stratification,
)
from .cosheaf import Coefficients, Cosheaf, build_cosheaf
from .ingest import SimplicialMap, build_map, pushforward_cosheaf
from .io import complex_to_json, cosheaf_to_json, strata_to_json
from .linalg import Field, Matrix, QQ


def cells(*names: str):
    return [parse_cell(n) for n in names]


# the open line: p and r removed, so the space is (p, r) with a vertex at q

def line_complex() -> OpenComplex:
    return build_complex([["p", "q"], ["q", "r"]], [["p"], ["r"]])


def line_base() -> StratifiedComplex:
    k = line_complex()
    return build_stratification(k, {("q",): "S0", ("p", "q"): "E1", ("q", "r"): "E2"})


def line_constant() -> Cosheaf:
    base = line_base()
    one = ("*",)
    values = {c: one for c in base.complex.cells}
    maps = {inc: {"*": "*"} for inc in base.complex.incidences()}
    return build_cosheaf(base, Coefficients.sets(), values, maps)


def line_vect(dims=(1, 1, 2), maps=((1,),), field_: Field = QQ) -> Cosheaf:
    """Vector space cosheaf on the line with dims on ``(pq, q, qr)``.

    Defaults give ``[1]`` on ``pq -> q`` and ``[1 1]`` on ``qr -> q``.
    """
    base = line_base()
    pq, q, qr = ("p", "q"), ("q",), ("q", "r")
    d = dict(zip((pq, q, qr), dims))

    def ones(rows, cols):
        return Matrix.from_rows([[1] * cols for _ in range(rows)], cols, field_) if rows else \
            Matrix.zeros(0, cols, field_)

    return build_cosheaf(base, Coefficients("vect", field_), d,
                         {(pq, q): ones(d[q], d[pq]), (qr, q): ones(d[q], d[qr])})


def line_zero_middle() -> Cosheaf:
    """``k -> 0 <- k``."""
    base = line_base()
    pq, q, qr = ("p", "q"), ("q",), ("q", "r")
    return build_cosheaf(base, Coefficients.vect(), {pq: 1, q: 0, qr: 1},
                         {(pq, q): Matrix.zeros(0, 1), (qr, q): Matrix.zeros(0, 1)})


# the punctured-disk model of the plane: cone on a triangle, boundary removed

def punctured_disk_complex() -> OpenComplex:
    return build_complex([["o", "a", "b"], ["o", "b", "c"], ["o", "c", "a"]],
                         [["a", "b"], ["b", "c"], ["c", "a"]])


def punctured_disk_base() -> StratifiedComplex:
    k = punctured_disk_complex()
    return build_stratification(k, {c: ("origin" if c == ("o",) else "bulk") for c in k.cells})


def zn_cosheaf(n: int) -> Cosheaf:
    """The cosheaf of ``z -> z^n``: ``n`` sheets over the bulk, one point over the origin.

    Every map is the identity except ``oca -> oa``, which shifts the sheets
    cyclically; maps into the origin are constant.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = punctured_disk_base()
    k = base.complex
    sheets = tuple(str(i) for i in range(n))
    values = {c: (("*",) if c == ("o",) else sheets) for c in k.cells}
    maps = {}
    for t, s in k.incidences():
        if s == ("o",):
            maps[(t, s)] = {y: "*" for y in sheets}
        elif (t, s) == (("a", "c", "o"), ("a", "o")):
            maps[(t, s)] = {str(i): str((i + 1) % n) for i in range(n)}
        else:
            maps[(t, s)] = {y: y for y in sheets}
    return build_cosheaf(base, Coefficients.sets(), values, maps)


def zn_loop():
    """The loop around the origin starting and ending at ``oa``."""
    return cells("a|o", "a|b|o", "b|o", "b|c|o", "c|o", "a|c|o", "a|o")


# circle-height: a square N, E, S, W mapped by height onto the path u0 - u1 - u2

def path_base(names) -> StratifiedComplex:
    k = build_complex([[a, b] for a, b in zip(names, names[1:])])
    return trivial_stratification(k)


def circle_height_map() -> SimplicialMap:
    source = build_complex([["N", "E"], ["E", "S"], ["S", "W"], ["W", "N"]])
    return build_map(source, path_base(["u0", "u1", "u2"]),
                     {"S": "u0", "E": "u1", "W": "u1", "N": "u2"})


WIGGLY_HEIGHTS = (0, 1, 2, 1, 2, 3, 2, 1)


def wiggly_circle_map() -> SimplicialMap:
    """An 8-gon whose height has minima at 0 and 1 and maxima at 2 and 3."""
    n = len(WIGGLY_HEIGHTS)
    names = [f"c{i}" for i in range(n)]
    source = build_complex([[names[i], names[(i + 1) % n]] for i in range(n)])
    base = path_base([f"w{h}" for h in range(max(WIGGLY_HEIGHTS) + 1)])
    return build_map(source, base, {names[i]: f"w{h}" for i, h in enumerate(WIGGLY_HEIGHTS)})


# Whitney cusp: a pleated disk over an open hexagon around the cusp point c.
# Inner region: triangles c a1 a2, c a2 a3 and the edge c a2; folds: c a1, c a3.
# Over the inner region there are three sheets t, m, b.  The fold c a1 merges
# m with b, the fold c a3 merges t with m, and the single outer sheet joins b
# (at a3) around to t (at a1).

WHITNEY_SHEETS = {"A1t": "t", "A1mb": "mb", "A2t": "t", "A2m": "m", "A2b": "b",
                  "A3tm": "tm", "A3b": "b", "A4": "tmb", "A5": "tmb", "A6": "tmb", "C": "tmb"}


def whitney_base() -> StratifiedComplex:
    ring = [f"a{i}" for i in range(1, 7)]
    k = build_complex([["c", ring[i], ring[(i + 1) % 6]] for i in range(6)],
                      [[ring[i], ring[(i + 1) % 6]] for i in range(6)])
    inner = set(cells("a1|a2|c", "a2|c", "a2|a3|c"))
    assignment = {}
    for x in k.cells:
        if x == ("c",):
            assignment[x] = "cusp"
        elif x == ("a1", "c"):
            assignment[x] = "fold1"
        elif x == ("a3", "c"):
            assignment[x] = "fold2"
        elif x in inner:
            assignment[x] = "inner"
        else:
            assignment[x] = "outer"
    return build_stratification(k, assignment)


def whitney_map() -> SimplicialMap:
    triangles = [
        ["C", "A1t", "A2t"], ["C", "A1mb", "A2m"], ["C", "A1mb", "A2b"],
        ["C", "A2t", "A3tm"], ["C", "A2m", "A3tm"], ["C", "A2b", "A3b"],
        ["C", "A3b", "A4"], ["C", "A4", "A5"], ["C", "A5", "A6"], ["C", "A6", "A1t"],
    ]
    boundary = [[a, b] for _, a, b in triangles]
    source = build_complex(triangles, boundary)
    vmap = {"C": "c"}
    for v in WHITNEY_SHEETS:
        if v != "C":
            vmap[v] = "a" + v[1]
    return build_map(source, whitney_base(), vmap)


def whitney_cosheaf(field_: Field = QQ) -> Cosheaf:
    return pushforward_cosheaf(whitney_map(), Coefficients("vect", field_))


WHITNEY_CELLS = {"inner": ("a1", "a2", "c"), "fold1": ("a1", "c"), "fold2": ("a3", "c"),
                 "cusp": ("c",), "outer": ("a4", "c")}


# random stratified paths

def stratified_path(n_vertices: int, merged=()) -> StratifiedComplex:
    """Open path with ``n_vertices`` interior vertices ``v01..``; end vertices removed.

    Vertices listed in ``merged`` are absorbed, with both neighbouring edges,
    into one open-interval stratum; the others are singleton strata.
    """
    names = [f"v{i:02d}" for i in range(n_vertices + 2)]
    k = build_complex([[a, b] for a, b in zip(names, names[1:])], [[names[0]], [names[-1]]])
    assignment = {}
    label = 0
    for i in range(n_vertices + 1):
        edge = (names[i], names[i + 1])
        if i > 0 and names[i] in merged:
            assignment[edge] = assignment[(names[i],)]
        else:
            label += 1
            assignment[edge] = f"E{label}"
        v = (names[i + 1],)
        if i < n_vertices:
            assignment[v] = assignment[edge] if names[i + 1] in merged else f"V{i + 1}"
    return build_stratification(k, assignment)


def random_path_cosheaf(rng: random.Random, max_cells: int = 9, kind: str | None = None,
                        max_dim: int = 3) -> Cosheaf:
    """A random valid cosheaf on a random stratified open path with at most ``max_cells`` cells."""
    n = rng.randint(0, (max_cells - 1) // 2)
    names = [f"v{i:02d}" for i in range(1, n + 1)]
    merged = {v for v in names if rng.random() < 0.4}
    base = stratified_path(n, merged)
    k = base.complex
    kind = kind or rng.choice(["set", "vect"])
    size = {s: rng.randint(0, max_dim) for s in base.strata}
    values, maps = {}, {}
    if kind == "set":
        # a non-empty edge cannot map into an empty vertex value
        for x in k.ordered:
            if len(x) == 1:
                size[base.stratum_of[x]] = max(1, size[base.stratum_of[x]])
        for x in k.ordered:
            values[x] = tuple(f"e{i}" for i in range(size[base.stratum_of[x]]))
        for t, s in k.incidences():
            src, tgt = values[t], values[s]
            if base.same_stratum(t, s):
                perm = list(tgt)
                rng.shuffle(perm)
                maps[(t, s)] = dict(zip(src, perm))
            else:
                maps[(t, s)] = {y: rng.choice(tgt) for y in src}
        return build_cosheaf(base, Coefficients.sets(), values, maps)
    for x in k.ordered:
        values[x] = size[base.stratum_of[x]]
    for t, s in k.incidences():
        rows, cols = values[s], values[t]
        while True:
            m = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)], cols) \
                if rows else Matrix.zeros(0, cols)
            if not base.same_stratum(t, s) or m.is_invertible():
                break
        maps[(t, s)] = m
    return build_cosheaf(base, Coefficients.vect(), values, maps)


# files for the command line

def _base_files(base: StratifiedComplex) -> dict:
    return {"complex.json": complex_to_json(base.complex), "strata.json": strata_to_json(base)}


def _map_files(f: SimplicialMap) -> dict:
    base = dict(complex_to_json(f.target.complex))
    base.update(strata_to_json(f.target))
    return {
        "map.json": {"source": complex_to_json(f.source), "vertex_map": dict(sorted(f.vertex_map.items()))},
        "base.json": base,
    }


def materialize(name: str) -> dict:
    """JSON documents for the named fixture, keyed by file name."""
    if name == "line1":
        files = _base_files(line_base())
        files["cosheaf.json"] = cosheaf_to_json(line_constant())
        files["cosheaf-vect.json"] = cosheaf_to_json(line_vect())
        files["line-zero.json"] = cosheaf_to_json(line_zero_middle(), embed_base=True)
        return files
    if name == "punctured-disk":
        files = _base_files(punctured_disk_base())
        files["cosheaf.json"] = cosheaf_to_json(zn_cosheaf(1))
        return files
    if name.startswith("zn:"):
        try:
            n = int(name[3:])
        except ValueError:
            raise KeyError(name) from None
        files = _base_files(punctured_disk_base())
        files["cosheaf.json"] = cosheaf_to_json(zn_cosheaf(n))
        return files
    if name == "circle-height":
        return _map_files(circle_height_map())
    if name == "wiggly-circle":
        return _map_files(wiggly_circle_map())
    if name == "whitney-cusp":
        f = whitney_map()
        files = _map_files(f)
        files.update(_base_files(f.target))
        files["cosheaf.json"] = cosheaf_to_json(whitney_cosheaf())
        return files
    raise KeyError(name)


FIXTURE_NAMES = ("line1", "punctured-disk", "zn:N", "circle-height", "wiggly-circle", "whitney-cusp")
