"""Finite simplicial complexes with a removed closed subcomplex, and their
stratifications.

A simplex is a strictly sorted tuple of vertex names.  An :class:`OpenComplex`
is a pair ``(K, L)`` of face-closed simplex sets with ``L`` inside ``K``; its
cells are ``K - L``.  Closures and links are computed in ``K`` and then
intersected with the cells, so a removed face never changes the local picture
around a surviving cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    DuplicateVertexInSimplex,
    FrontierViolation,
    NotAPartition,
    RemovedNotSubcomplex,
    StratumDisconnected,
    UnknownCell,
)
from .unionfind import UnionFind

Simplex = tuple[str, ...]
CellSet = frozenset


def simplex(vertices: Iterable[str]) -> Simplex:
    vs = list(vertices)
    if not vs:
        raise DuplicateVertexInSimplex("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, str) or not v:
            raise DuplicateVertexInSimplex(f"vertex identifiers must be non-empty strings, got {v!r}")
        if "|" in v:
            raise DuplicateVertexInSimplex(f"vertex identifier {v!r} contains the separator '|'")
    if len(set(vs)) != len(vs):
        raise DuplicateVertexInSimplex(f"repeated vertex in {vs}")
    return tuple(sorted(vs))


def cell_name(s: Simplex) -> str:
    return "|".join(s)


def parse_cell(name: str) -> Simplex:
    return simplex(name.split("|"))


def cell_key(s: Simplex):
    """Canonical order on cells: by dimension, then lexicographically."""
    return (len(s), s)


def dim(s: Simplex) -> int:
    return len(s) - 1


def sorted_cells(cells: Iterable[Simplex]) -> list[Simplex]:
    return sorted(cells, key=cell_key)


def all_faces(s: Simplex) -> list[Simplex]:
    """Every non-empty face of ``s``, including ``s`` itself."""
    return [c for k in range(1, len(s) + 1) for c in combinations(s, k)]


def boundary_faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s``."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def is_face(sigma: Simplex, tau: Simplex) -> bool:
    return set(sigma) <= set(tau)


@dataclass(frozen=True)
class OpenComplex:
    ambient: frozenset
    removed: frozenset = frozenset()

    @cached_property
    def cells(self) -> frozenset:
        return self.ambient - self.removed

    @cached_property
    def ordered(self) -> list[Simplex]:
        return sorted_cells(self.cells)

    @cached_property
    def _cofacets(self) -> dict[Simplex, list[Simplex]]:
        up = {s: [] for s in self.ambient}
        for t in self.ambient:
            for s in boundary_faces(t):
                up[s].append(t)
        for s in up:
            up[s].sort(key=cell_key)
        return up

    @property
    def dimension(self) -> int:
        return max((dim(s) for s in self.cells), default=-1)

    def __contains__(self, s) -> bool:
        return s in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def check_cell(self, s: Simplex) -> Simplex:
        if s not in self.cells:
            raise UnknownCell(f"{cell_name(s) if isinstance(s, tuple) else s!r} is not a cell")
        return s

    def facets_of(self, s: Simplex) -> list[Simplex]:
        """Codimension-one faces of ``s`` that are cells."""
        return [f for f in boundary_faces(s) if f in self.cells]

    def cofacets_of(self, s: Simplex) -> list[Simplex]:
        """Codimension-one cofaces of ``s`` (always cells when ``s`` is)."""
        return [t for t in self._cofacets[s] if t in self.cells]

    def star(self, s: Simplex) -> frozenset:
        self.check_cell(s)
        out = {s}
        frontier = [s]
        while frontier:
            x = frontier.pop()
            for t in self._cofacets[x]:
                if t not in out:
                    out.add(t)
                    frontier.append(t)
        # removed cells are face-closed, so cofaces of a cell are cells
        return frozenset(out)

    def closure(self, s: Simplex) -> frozenset:
        self.check_cell(s)
        return frozenset(f for f in all_faces(s) if f in self.cells)

    def link(self, s: Simplex) -> frozenset:
        self.check_cell(s)
        st = set()
        frontier = [s]
        while frontier:
            x = frontier.pop()
            if x in st:
                continue
            st.add(x)
            frontier.extend(self._cofacets[x])
        cl_st = {f for t in st for f in all_faces(t)}
        faces = set(all_faces(s))
        st_cl = {t for t in cl_st if any(f in faces for f in all_faces(t))}
        return frozenset((cl_st - st_cl) & self.cells)

    def incidences(self) -> list[tuple[Simplex, Simplex]]:
        """All codimension-one pairs ``(tau, sigma)`` of cells, ``sigma`` a face of ``tau``."""
        return [(t, s) for t in self.ordered for s in self.facets_of(t)]

    def face_pairs(self) -> list[tuple[Simplex, Simplex]]:
        """All strict face relations ``(tau, sigma)`` between cells."""
        return [(t, s) for t in self.ordered for s in sorted_cells(all_faces(t))
                if s != t and s in self.cells]

    def upward_closure(self, cells: Iterable[Simplex]) -> frozenset:
        out = set()
        for s in cells:
            out |= self.star(s)
        return frozenset(out)


def build_complex(maximal_simplices, removed=()) -> OpenComplex:
    """Face-close ``maximal_simplices`` and remove the face closure of ``removed``.

    >>> k = build_complex([["a", "b"]])
    >>> sorted(cell_name(c) for c in k.cells)
    ['a', 'a|b', 'b']
    """
    ambient = set()
    for vs in maximal_simplices:
        ambient.update(all_faces(simplex(vs)))
    gone = set()
    for vs in removed:
        s = simplex(vs)
        if s not in ambient:
            raise RemovedNotSubcomplex(f"removed simplex {cell_name(s)} is not in the complex")
        gone.update(all_faces(s))
    return OpenComplex(frozenset(ambient), frozenset(gone))


def incidence(complex: OpenComplex, sigma: Simplex, kind: str) -> frozenset:
    if kind == "star":
        return complex.star(sigma)
    if kind == "closure":
        return complex.closure(sigma)
    if kind == "link":
        return complex.link(sigma)
    raise ValueError(f"unknown incidence kind {kind!r}")


@dataclass(frozen=True)
class StratifiedComplex:
    """An open complex whose cells are partitioned into strata.

    ``order`` holds the strict relations ``(lower, upper)``: ``lower`` lies in
    the closure of ``upper``.
    """

    complex: OpenComplex
    stratum_of: Mapping[Simplex, str]
    order: frozenset = field(default=frozenset())

    @cached_property
    def strata(self) -> list[str]:
        return sorted(set(self.stratum_of.values()))

    @cached_property
    def members(self) -> dict[str, frozenset]:
        groups = {}
        for c, s in self.stratum_of.items():
            groups.setdefault(s, set()).add(c)
        return {s: frozenset(cs) for s, cs in groups.items()}

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.order

    def same_stratum(self, a: Simplex, b: Simplex) -> bool:
        return self.stratum_of[a] == self.stratum_of[b]


def build_stratification(complex: OpenComplex, assignment: Mapping[Simplex, str]) -> StratifiedComplex:
    """Validate a cell-to-stratum assignment and derive the stratum order.

    Checks that the assignment is a partition of the cells, that each stratum
    is connected through codimension-one incidences inside it, and the frontier
    condition: a stratum meeting the closure of another lies entirely in it.
    """
    cells = complex.cells
    extra = [c for c in assignment if c not in cells]
    if extra:
        raise NotAPartition(f"assignment names non-cells: {', '.join(cell_name(c) for c in sorted_cells(extra))}")
    missing = [c for c in cells if c not in assignment]
    if missing:
        raise NotAPartition(f"cells without a stratum: {', '.join(cell_name(c) for c in sorted_cells(missing))}")

    stratum_of = {c: str(assignment[c]) for c in complex.ordered}
    members = {}
    for c, s in stratum_of.items():
        members.setdefault(s, set()).add(c)

    uf = UnionFind(complex.ordered)
    for t, s in complex.incidences():
        if stratum_of[t] == stratum_of[s]:
            uf.union(s, t)
    for s, cs in sorted(members.items()):
        roots = {uf.find(c) for c in cs}
        if len(roots) > 1:
            parts = sorted(roots, key=cell_key)
            raise StratumDisconnected(
                f"stratum {s} has {len(roots)} pieces (e.g. around {cell_name(parts[0])} and {cell_name(parts[1])})")

    order = set()
    for upper, cs in sorted(members.items()):
        closure = set()
        for c in cs:
            closure |= complex.closure(c)
        for lower, ds in sorted(members.items()):
            if lower == upper:
                continue
            meet = ds & closure
            if not meet:
                continue
            outside = ds - closure
            if outside:
                w = sorted_cells(meet)[0]
                x = sorted_cells(outside)[0]
                raise FrontierViolation(
                    f"stratum {lower} meets the closure of stratum {upper} at {cell_name(w)} "
                    f"but {cell_name(x)} is not in that closure")
            order.add((lower, upper))
    for a, b in order:
        if (b, a) in order:
            raise FrontierViolation(f"strata {a} and {b} each lie in the other's closure")
    return StratifiedComplex(complex, stratum_of, frozenset(order))


def trivial_stratification(complex: OpenComplex) -> StratifiedComplex:
    """Every cell is its own stratum, named by the cell."""
    return build_stratification(complex, {c: cell_name(c) for c in complex.cells})


def star_cover(strat: StratifiedComplex | OpenComplex) -> list[frozenset]:
    complex = strat.complex if isinstance(strat, StratifiedComplex) else strat
    seen = []
    for c in complex.ordered:
        st = complex.star(c)
        if st not in seen:
            seen.append(st)
    return seen
