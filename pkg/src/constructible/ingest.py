"""Stratum-preserving simplicial maps and their pushforward cosheaves.

For a map ``f: Y -> X`` the pushforward sends the star of a target cell to the
path components of its preimage (``pi0``), or to the vector space they span
(``H0``).  The preimage of a star is every source cell whose image cell lies
in the star.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .complex import (
    OpenComplex,
    Simplex,
    StratifiedComplex,
    cell_name,
    sorted_cells,
)
from .cosheaf import Coefficients, Cosheaf, build_cosheaf
from .errors import NotSimplicial, NotStratumPreserving, UnknownCell
from .linalg import Matrix
from .unionfind import UnionFind


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: OpenComplex
    target: StratifiedComplex
    vertex_map: Mapping[str, str]
    source_strata: StratifiedComplex | None = None

    def image(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))

    @cached_property
    def images(self) -> dict[Simplex, Simplex]:
        return {s: self.image(s) for s in self.source.cells}

    def preimage(self, cells: Iterable[Simplex]) -> frozenset:
        wanted = set(cells)
        return frozenset(s for s, img in self.images.items() if img in wanted)


def build_map(source: OpenComplex | StratifiedComplex, target: StratifiedComplex,
              vertex_map: Mapping[str, str]) -> SimplicialMap:
    """Check that ``vertex_map`` is simplicial and stratum preserving."""
    strat = source if isinstance(source, StratifiedComplex) else None
    k = strat.complex if strat else source
    vertices = sorted({v for s in k.ambient for v in s})
    missing = [v for v in vertices if v not in vertex_map]
    if missing:
        raise NotSimplicial(f"vertex map is not defined on {', '.join(missing)}")
    f = SimplicialMap(k, target, dict(vertex_map), strat)
    tk = target.complex
    for s in sorted_cells(k.ambient):
        img = f.image(s)
        if img not in tk.ambient:
            raise NotSimplicial(f"{cell_name(s)} maps to {cell_name(img)}, which is not a simplex of the target")
    for s in k.ordered:
        img = f.images[s]
        if img not in tk.cells:
            raise NotSimplicial(f"{cell_name(s)} maps into the removed set at {cell_name(img)}")
    if strat is not None:
        hit = {}
        for s in k.ordered:
            t = strat.stratum_of[s]
            u = target.stratum_of[f.images[s]]
            if hit.setdefault(t, (u, s))[0] != u:
                other = hit[t][1]
                raise NotStratumPreserving(
                    f"source stratum {t} meets target strata {hit[t][0]} (at {cell_name(other)}) "
                    f"and {u} (at {cell_name(s)})")
    return f


@dataclass(frozen=True)
class Partition:
    """Classes of a finite label set, each named by its least member."""

    classes: tuple[tuple, ...]

    @cached_property
    def representative(self) -> dict:
        return {x: c[0] for c in self.classes for x in c}

    def __len__(self) -> int:
        return len(self.classes)


def pi0(complex: OpenComplex, cellset: Iterable[Simplex]) -> Partition:
    """Path components of ``cellset`` through codimension-one incidences inside it."""
    cells = set(cellset)
    for c in cells:
        if c not in complex.cells:
            raise UnknownCell(f"{cell_name(c)} is not a cell")
    uf = UnionFind(cell_name(c) for c in cells)
    for c in cells:
        for f in complex.facets_of(c):
            if f in cells:
                uf.union(cell_name(c), cell_name(f))
    return Partition(tuple(tuple(cls) for cls in uf.classes()))


def pushforward_cosheaf(f: SimplicialMap, coefficients: Coefficients | None = None) -> Cosheaf:
    """The cosheaf ``U -> pi0(f^-1 U)`` (or ``H0``) on the target, as cell data."""
    c = coefficients or Coefficients.sets()
    tk = f.target.complex
    parts = {x: pi0(f.source, f.preimage(tk.star(x))) for x in tk.ordered}
    names = {x: tuple(cls[0] for cls in parts[x].classes) for x in tk.ordered}
    maps = {}
    for t, s in tk.incidences():
        rep = parts[s].representative
        m = {y: rep[y] for y in names[t]}
        if c.is_set:
            maps[(t, s)] = m
        else:
            pos = {y: i for i, y in enumerate(names[s])}
            rows = [[0] * len(names[t]) for _ in names[s]]
            for j, y in enumerate(names[t]):
                rows[pos[m[y]]][j] = 1
            maps[(t, s)] = Matrix.from_rows(rows, len(names[t]), c.field)
    values = {x: (names[x] if c.is_set else len(names[x])) for x in tk.ordered}
    return build_cosheaf(f.target, c, values, maps)


def h0_basis(f: SimplicialMap, x: Simplex) -> tuple[str, ...]:
    """Names of the basis vectors of the ``H0`` pushforward at ``x``."""
    part = pi0(f.source, f.preimage(f.target.complex.star(x)))
    return tuple(cls[0] for cls in part.classes)
