"""Stratified coverings built from set-valued cosheaves.

The cover has one cell ``(sigma, y)`` for every element ``y`` of the value at
``sigma``; the face of ``(tau, y)`` over ``sigma`` is ``(sigma, F(tau -> sigma)(y))``.
Cells are glued along faces only, as in a Delta-complex, so two distinct cells
may share their whole boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .complex import Simplex, StratifiedComplex, cell_key, cell_name, dim
from .cosheaf import Cosheaf
from .errors import WrongCoefficients, WrongDimension
from .ingest import SimplicialMap, pushforward_cosheaf
from .unionfind import UnionFind

CoverCell = tuple  # (base cell, label)


def cover_key(c: CoverCell):
    return (cell_key(c[0]), c[1])


def cover_name(c: CoverCell) -> str:
    return f"{cell_name(c[0])}:{c[1]}"


def _components(cells, faces, keep=None) -> list[list]:
    keep = set(cells) if keep is None else set(keep)
    uf = UnionFind(cover_key(c) for c in keep)
    for c in keep:
        for f in faces[c]:
            if f in keep:
                uf.union(cover_key(c), cover_key(f))
    by_key = {cover_key(c): c for c in keep}
    return [[by_key[k] for k in cls] for cls in uf.classes()]


@dataclass(frozen=True, eq=False)
class CoverComplex:
    base: StratifiedComplex
    cells: tuple
    faces: Mapping[CoverCell, tuple]
    stratum_of: Mapping[CoverCell, str] = field(default_factory=dict)

    def projection(self, c: CoverCell) -> Simplex:
        return c[0]

    @cached_property
    def cofaces(self) -> dict:
        up = {c: [] for c in self.cells}
        for c in self.cells:
            for f in self.faces[c]:
                up[f].append(c)
        return up

    def fiber(self, sigma: Simplex) -> list:
        return [c for c in self.cells if c[0] == sigma]

    def star(self, c: CoverCell) -> frozenset:
        out, todo = {c}, [c]
        while todo:
            for d in self.cofaces[todo.pop()]:
                if d not in out:
                    out.add(d)
                    todo.append(d)
        return frozenset(out)

    def closure(self, c: CoverCell) -> frozenset:
        out, todo = {c}, [c]
        while todo:
            for d in self.faces[todo.pop()]:
                if d not in out:
                    out.add(d)
                    todo.append(d)
        return frozenset(out)

    @property
    def dimension(self) -> int:
        return max((dim(c[0]) for c in self.cells), default=-1)

    @cached_property
    def strata_members(self) -> dict[str, list]:
        out = {}
        for c in self.cells:
            out.setdefault(self.stratum_of[c], []).append(c)
        return out


def upstairs_strata(base: StratifiedComplex, cells, faces) -> dict:
    """Components of the preimage of each base stratum, labelled by their least cell."""
    out = {}
    for s in base.strata:
        over = [c for c in cells if base.stratum_of[c[0]] == s]
        for comp in _components(cells, faces, over):
            label = f"{s}/{cover_name(comp[0])}"
            for c in comp:
                out[c] = label
    return out


def build_cover(cosheaf: Cosheaf) -> CoverComplex:
    if not cosheaf.coefficients.is_set:
        raise WrongCoefficients("a cover needs set-valued coefficients")
    k = cosheaf.complex
    cells = tuple((x, y) for x in k.ordered for y in sorted(cosheaf.values[x]))
    faces = {}
    for t, y in cells:
        faces[(t, y)] = tuple((s, cosheaf.maps[(t, s)][y]) for s in k.facets_of(t))
    return CoverComplex(cosheaf.base, cells, faces, upstairs_strata(cosheaf.base, cells, faces))


def identity_cover(base: StratifiedComplex, label: str = "*") -> CoverComplex:
    k = base.complex
    cells = tuple((x, label) for x in k.ordered)
    faces = {(x, label): tuple((s, label) for s in k.facets_of(x)) for x in k.ordered}
    return CoverComplex(base, cells, faces, upstairs_strata(base, cells, faces))


@dataclass
class CoveringReport:
    ok: bool
    failures: list[str]
    checked: dict[str, int]

    def lines(self) -> list[str]:
        head = "covering: OK" if self.ok else f"covering: FAIL ({len(self.failures)} problems)"
        body = [f"  {k}: {v} checks" for k, v in sorted(self.checked.items())]
        return [head] + body + [f"  witness: {w}" for w in self.failures]


def validate_covering(cover: CoverComplex) -> CoveringReport:
    """Check that the projection is a stratified covering.

    Over each base stratum the projection must be a local homeomorphism with
    constant fiber size, every frontier relation downstairs must lift, and the
    preimage of every base star must be a disjoint union of upstairs stars.
    """
    base = cover.base
    k = base.complex
    fails: list[str] = []
    checked = {"faces": 0, "stratum-preserving": 0, "local-homeomorphism": 0,
               "fiber-constant": 0, "frontier-lifting": 0, "star-preimage": 0}
    cells = set(cover.cells)
    broken = False

    for c in cover.cells:
        checked["faces"] += 1
        if c[0] not in k.cells:
            fails.append(f"{cover_name(c)} lies over a non-cell")
            continue
        got = [f[0] for f in cover.faces[c]]
        want = set(k.facets_of(c[0]))
        if len(set(got)) != len(got) or not set(got) <= want or any(f not in cells for f in cover.faces[c]):
            fails.append(f"faces of {cover_name(c)} do not lie over the faces of {cell_name(c[0])}")
            broken = True
        elif set(got) != want:
            # an empty fiber below; the frontier-lifting check names the stratum
            missing = sorted(want - set(got), key=cell_key)
            fails.append(f"{cover_name(c)} has no face over {cell_name(missing[0])}")
    if broken:
        return CoveringReport(False, fails, checked)

    image_stratum = {}
    for t, members in sorted(cover.strata_members.items()):
        checked["stratum-preserving"] += 1
        hit = {base.stratum_of[c[0]] for c in members}
        if len(hit) != 1:
            fails.append(f"upstairs stratum {t} meets base strata {sorted(hit)}")
        image_stratum[t] = min(hit)

    for c in cover.cells:
        checked["local-homeomorphism"] += 1
        s = base.stratum_of[c[0]]
        up = [d for d in cover.star(c) if base.stratum_of[d[0]] == s]
        down = {x for x in k.star(c[0]) if base.stratum_of[x] == s}
        proj = [d[0] for d in up]
        if len(set(proj)) != len(proj) or set(proj) != down:
            fails.append(f"star of {cover_name(c)} does not map bijectively onto the star of "
                         f"{cell_name(c[0])} inside stratum {s}")

    size = {x: 0 for x in k.cells}
    for c in cover.cells:
        size[c[0]] += 1
    for t, s in k.incidences():
        if base.same_stratum(t, s):
            checked["fiber-constant"] += 1
            if size[t] != size[s]:
                fails.append(f"fiber sizes differ over {cell_name(t)} ({size[t]}) and {cell_name(s)} ({size[s]})")

    for t, members in sorted(cover.strata_members.items()):
        s = image_stratum[t]
        closure = set()
        for c in members:
            closure |= cover.closure(c)
        below = {base.stratum_of[d[0]] for d in closure}
        for lower in base.strata:
            if base.less(lower, s):
                checked["frontier-lifting"] += 1
                if lower not in below:
                    fails.append(f"upstairs stratum {t} over {s} has nothing over the lower stratum {lower}")

    for x in k.ordered:
        checked["star-preimage"] += 1
        st = k.star(x)
        pre = {c for c in cover.cells if c[0] in st}
        stars = [cover.star(c) for c in cover.fiber(x)]
        union = set().union(*stars) if stars else set()
        disjoint = sum(len(s) for s in stars) == len(union)
        if union != pre or not disjoint:
            fails.append(f"preimage of st {cell_name(x)} is not a disjoint union of upstairs stars")
    return CoveringReport(not fails, fails, checked)


def components(cover: CoverComplex, cells: Iterable[CoverCell] | None = None) -> list[frozenset]:
    """Connected components through face incidences (optionally of a subset of cells)."""
    return [frozenset(c) for c in _components(cover.cells, cover.faces, cells)]


def cells_over(cover: CoverComplex, base_cells) -> list:
    wanted = set(base_cells)
    return [c for c in cover.cells if c[0] in wanted]


@dataclass(frozen=True)
class GraphSummary:
    vertices: int
    edges: int
    b0: int
    b1: int

    def line(self) -> str:
        return f"V={self.vertices} E={self.edges} b0={self.b0} b1={self.b1}"


def graph_summary(cover: CoverComplex) -> GraphSummary:
    if cover.dimension > 1:
        raise WrongDimension("Betti numbers are reported for graphs only")
    v = sum(1 for c in cover.cells if dim(c[0]) == 0)
    e = sum(1 for c in cover.cells if dim(c[0]) == 1)
    b0 = len(components(cover))
    return GraphSummary(v, e, b0, e - v + b0)


def reeb_pipeline(f: SimplicialMap) -> CoverComplex:
    """Reeb graph of ``f`` over a stratified line: the cover of the pi0 pushforward."""
    if f.target.complex.dimension > 1:
        raise WrongDimension("the Reeb construction needs a 1-dimensional base")
    return build_cover(pushforward_cosheaf(f))


def cover_to_json(cover: CoverComplex) -> dict:
    return {"cells": [
        {"id": cover_name(c), "base": cell_name(c[0]), "label": c[1],
         "faces": [cover_name(f) for f in cover.faces[c]], "stratum": cover.stratum_of.get(c, "")}
        for c in cover.cells]}


def cover_to_dot(cover: CoverComplex, name: str = "cover") -> str:
    lines = ["graph " + _dot_id(name) + " {"]
    for c in cover.cells:
        if dim(c[0]) == 0:
            lines.append(f"  {_dot_id(cover_name(c))};")
    for c in cover.cells:
        if dim(c[0]) == 1:
            ends = [cover_name(f) for f in cover.faces[c]]
            if len(ends) == 2:
                lines.append(f"  {_dot_id(ends[0])} -- {_dot_id(ends[1])} [label={_dot_id(cover_name(c))}];")
            else:
                lines.append(f"  // {cover_name(c)} has an open end")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
