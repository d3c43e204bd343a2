"""Zigzag modules over a stratified line and their interval decomposition.

Positions ``0..2n`` alternate edge (even) and vertex (odd) cells; every map
points from an edge position to a neighbouring vertex position.  Bars are
recovered from the generalized rank (the rank of the canonical map from the
limit to the colimit over ``[i, j]``) by inclusion-exclusion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complex import cell_key, cell_name, dim
from .cosheaf import Cosheaf, linearize
from .diagrams import vect_colimit, vect_limit
from .errors import IndexOutOfRange, NegativeMultiplicity, NotAPath, WrongDimension
from .linalg import QQ, Field, Matrix, hstack

OPEN = "open"
CLOSED = "closed"
LEFT_OPEN = "left-open"
RIGHT_OPEN = "right-open"


def default_labels(length: int) -> tuple[str, ...]:
    return tuple(f"y{i // 2}" if i % 2 == 0 else f"x{(i + 1) // 2}" for i in range(length))


@dataclass(frozen=True)
class ZigzagModule:
    """``dims[i]`` is the space at position ``i``; ``maps[i]`` joins ``i`` and ``i + 1``.

    ``maps[i]`` has source the even position and target the odd one.
    """

    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    labels: tuple[str, ...] = ()
    field: Field = QQ

    def __post_init__(self):
        n = len(self.dims)
        if n % 2 != 1:
            raise WrongDimension(f"a zigzag has an odd number of positions, got {n}")
        if len(self.maps) != n - 1:
            raise WrongDimension(f"expected {n - 1} maps, got {len(self.maps)}")
        for i, m in enumerate(self.maps):
            src, tgt = self.arrow(i)
            if m.shape != (self.dims[tgt], self.dims[src]):
                raise WrongDimension(
                    f"map {i} should be {self.dims[tgt]}x{self.dims[src]}, got {m.nrows}x{m.ncols}")
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(n))
        elif len(self.labels) != n:
            raise WrongDimension("one label per position is required")

    def __len__(self) -> int:
        return len(self.dims)

    @staticmethod
    def arrow(i: int) -> tuple[int, int]:
        """``(source, target)`` positions of map ``i``."""
        return (i, i + 1) if i % 2 == 0 else (i + 1, i)

    @classmethod
    def from_lists(cls, dims: Sequence[int], maps: Sequence[Sequence[Sequence]],
                   field: Field = QQ, labels: Sequence[str] = ()) -> "ZigzagModule":
        mats = []
        for i, rows in enumerate(maps):
            src, tgt = cls.arrow(i)
            try:
                mats.append(Matrix.from_rows(rows, dims[src], field) if dims[tgt] else
                            Matrix.zeros(0, dims[src], field))
            except ValueError as exc:
                raise WrongDimension(f"map {i}: {exc}") from None
        return cls(tuple(dims), tuple(mats), tuple(labels), field)


def _path_order(cosheaf: Cosheaf) -> list:
    k = cosheaf.complex
    if k.dimension > 1:
        raise WrongDimension(f"the base has dimension {k.dimension}; a stratified line is 1-dimensional")
    edges = [c for c in k.ordered if dim(c) == 1]
    if not edges:
        raise NotAPath("the base has no edge cells")
    for v in k.ordered:
        if dim(v) == 0 and len(k.cofacets_of(v)) != 2:
            raise NotAPath(f"vertex {cell_name(v)} does not have exactly two edges")
    ends = [e for e in edges if len(k.facets_of(e)) < 2]
    if len(edges) == 1:
        ends = edges
    if len(ends) != 2 and len(edges) > 1:
        raise NotAPath("the base is not a path with open ends")
    order = [min(ends, key=cell_key)]
    seen = {order[0]}
    while True:
        cur = order[-1]
        nxt = [c for c in (k.facets_of(cur) if dim(cur) == 1 else k.cofacets_of(cur)) if c not in seen]
        if not nxt:
            break
        order.append(nxt[0])
        seen.add(nxt[0])
    if len(order) != len(k.cells):
        raise NotAPath("the base is not connected")
    return order


def zigzag_extract(cosheaf: Cosheaf, field_: Field | None = None) -> ZigzagModule:
    """Read a zigzag module off a cosheaf over a stratified open path."""
    if cosheaf.coefficients.is_set:
        cosheaf = linearize(cosheaf, field_ or QQ)
    order = _path_order(cosheaf)
    dims = tuple(cosheaf.values[c] for c in order)
    maps = []
    for i in range(len(order) - 1):
        src, tgt = ZigzagModule.arrow(i)
        maps.append(cosheaf.maps[(order[src], order[tgt])])
    return ZigzagModule(dims, tuple(maps), tuple(cell_name(c) for c in order),
                        cosheaf.coefficients.field)


def _check_range(module: ZigzagModule, i: int, j: int):
    if not (0 <= i <= j < len(module)):
        raise IndexOutOfRange(f"[{i}, {j}] is not inside 0..{len(module) - 1}")


def generalized_rank(module: ZigzagModule, i: int, j: int) -> int:
    _check_range(module, i, j)
    objects = {p: module.dims[p] for p in range(i, j + 1)}
    arrows = []
    for a in range(i, j):
        src, tgt = module.arrow(a)
        arrows.append((src, tgt, module.maps[a]))
    _, cone = vect_limit(objects, arrows, module.field)
    _, cocone = vect_colimit(objects, arrows, module.field)
    # the diagram is connected, so any position gives the same map
    return (cocone[i] @ cone[i]).rank()


def _span(m: Matrix) -> Matrix:
    """Independent columns of ``m`` spanning its column space."""
    _, pivots = m.rref()
    return m.submatrix(range(m.nrows), pivots)


def _preimage(m: Matrix, sub: Matrix) -> Matrix:
    """Basis of the preimage under ``m`` of the column span of ``sub``."""
    if sub.ncols == 0:
        return m.kernel()
    k = hstack([m, -sub]).kernel()
    return _span(k.submatrix(range(m.ncols), range(k.ncols)))


def _ranks_ending_at(module: ZigzagModule, j: int) -> dict[int, int]:
    """``generalized_rank(module, i, j)`` for every ``i <= j``.

    Walking left from ``j`` keeps two subspaces of the current position:
    the vectors that extend to a compatible family over ``[i, j]`` (the image
    of the limit) and the vectors that die in the colimit.  The rank is the
    dimension of the first modulo its meet with the second.
    """
    f = module.field
    live = Matrix.identity(module.dims[j], f)
    dead = Matrix.zeros(module.dims[j], 0, f)
    out = {}
    for i in range(j, -1, -1):
        if i < j:
            m = module.maps[i]
            if module.arrow(i)[0] == i:
                live, dead = _preimage(m, live), _preimage(m, dead)
            else:
                live, dead = _span(m @ live), _span(m @ dead)
        meet = live.ncols + dead.ncols - hstack([live, dead]).rank()
        out[i] = live.ncols - meet
    return out


def rank_table(module: ZigzagModule) -> dict[tuple[int, int], int]:
    """Generalized ranks of every interval, computed one right end at a time."""
    table = {}
    for j in range(len(module)):
        for i, r in _ranks_ending_at(module, j).items():
            table[(i, j)] = r
    return dict(sorted(table.items()))


def interval_topology(lo: int, hi: int, labels: Sequence[str]) -> tuple[str, str]:
    """Topological type of the bar ``[lo, hi]`` and the cells it covers.

    Even positions are open edges and odd positions are vertices, so a bar is
    closed at an end exactly when that end is a vertex.
    """
    if not (0 <= lo <= hi < len(labels)):
        raise IndexOutOfRange(f"[{lo}, {hi}] is not inside 0..{len(labels) - 1}")
    left_closed, right_closed = lo % 2 == 1, hi % 2 == 1
    if left_closed and right_closed:
        kind = CLOSED
    elif not left_closed and not right_closed:
        kind = OPEN
    elif left_closed:
        kind = RIGHT_OPEN
    else:
        kind = LEFT_OPEN
    return kind, ",".join(labels[lo:hi + 1])


@dataclass(frozen=True)
class Bar:
    lo: int
    hi: int
    multiplicity: int
    kind: str = ""
    cells: str = ""

    def line(self) -> str:
        return f"bar {self.lo}..{self.hi} x{self.multiplicity} kind={self.kind} cells={self.cells}"


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]
    length: int
    labels: tuple[str, ...] = field(default=())

    def multiset(self) -> dict[tuple[int, int], int]:
        return {(b.lo, b.hi): b.multiplicity for b in self.bars}

    def lines(self) -> list[str]:
        return [b.line() for b in self.bars]


def make_barcode(intervals: dict[tuple[int, int], int], length: int,
                 labels: Sequence[str] = ()) -> Barcode:
    labels = tuple(labels) or default_labels(length)
    bars = []
    for (lo, hi), m in sorted(intervals.items()):
        if m:
            kind, cells = interval_topology(lo, hi, labels)
            bars.append(Bar(lo, hi, m, kind, cells))
    return Barcode(tuple(bars), length, labels)


def decompose(module: ZigzagModule) -> Barcode:
    """Interval decomposition by inclusion-exclusion over generalized ranks."""
    n = len(module)
    r = rank_table(module)

    def rk(i, j):
        return r.get((i, j), 0) if 0 <= i <= j < n else 0

    mult = {}
    for (i, j) in r:
        m = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1)
        if m < 0:
            raise NegativeMultiplicity(f"multiplicity of [{i}, {j}] is {m}")
        if m:
            mult[(i, j)] = m
    return make_barcode(mult, n, module.labels)


def recompose(barcode: Barcode, length: int | None = None, field_: Field = QQ) -> ZigzagModule:
    """Direct sum of interval modules: identity inside each bar, zero outside."""
    n = barcode.length if length is None else length
    summands = []
    for b in barcode.bars:
        if not (0 <= b.lo <= b.hi < n):
            raise IndexOutOfRange(f"bar [{b.lo}, {b.hi}] does not fit in length {n}")
        summands.extend([(b.lo, b.hi)] * b.multiplicity)
    # basis of position p: the summands alive at p, in order
    alive = [[k for k, (lo, hi) in enumerate(summands) if lo <= p <= hi] for p in range(n)]
    dims = tuple(len(a) for a in alive)
    maps = []
    for i in range(n - 1):
        src, tgt = ZigzagModule.arrow(i)
        rows = [[1 if s == t else 0 for s in alive[src]] for t in alive[tgt]]
        maps.append(Matrix.from_rows(rows, dims[src], field_))
    labels = barcode.labels if len(barcode.labels) == n else ()
    return ZigzagModule(dims, tuple(maps), tuple(labels), field_)
