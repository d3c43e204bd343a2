"""Cosheaves on a stratified complex, given as functors on its cells.

A :class:`Cosheaf` stores a value on every cell and a map ``F(tau) -> F(sigma)``
for every codimension-one face ``sigma`` of ``tau``.  Maps between cells in a
common stratum must be invertible; these are the arrows inverted in the
entrance path category.  Evaluating on an open set (a union of stars) is the
colimit over the cells it contains.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .complex import (
    OpenComplex,
    Simplex,
    StratifiedComplex,
    boundary_faces,
    cell_key,
    cell_name,
    sorted_cells,
)
from .diagrams import factor_through, set_colimit, vect_colimit, vect_limit
from .errors import (
    DiamondFailure,
    EmptyOpen,
    IllegalInverse,
    InvertibilityFailure,
    MissingMap,
    MissingValue,
    NonComposableWord,
    NotACover,
    ShapeMismatch,
    UnknownCell,
    WrongCoefficients,
)
from .linalg import QQ, Field, Matrix

SET = "set"
VECT = "vect"


@dataclass(frozen=True)
class Coefficients:
    """Finite sets, or finite-dimensional vector spaces over ``field``."""

    kind: str = SET
    field: Field | None = None

    def __post_init__(self):
        if self.kind not in (SET, VECT):
            raise WrongCoefficients(f"unknown coefficient kind {self.kind!r}")
        if self.kind == VECT and self.field is None:
            object.__setattr__(self, "field", QQ)
        if self.kind == SET and self.field is not None:
            raise WrongCoefficients("set coefficients take no field")

    @classmethod
    def sets(cls) -> "Coefficients":
        return cls(SET)

    @classmethod
    def vect(cls, p: int | None = None) -> "Coefficients":
        return cls(VECT, Field(p))

    @property
    def is_set(self) -> bool:
        return self.kind == SET

    def __str__(self):
        return "set" if self.is_set else f"vect/{self.field}"

    # value-level operations

    def size(self, value) -> int:
        return len(value) if self.is_set else value

    def check_value(self, value, where: str):
        if self.is_set:
            if isinstance(value, (str, bytes)) or not isinstance(value, Sequence):
                raise ShapeMismatch(f"{where}: a set value must be a list of names")
            if len(set(value)) != len(value):
                raise ShapeMismatch(f"{where}: repeated element names")
        elif not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ShapeMismatch(f"{where}: a vector space value must be a non-negative dimension")

    def check_map(self, m, source, target, where: str):
        if self.is_set:
            if not isinstance(m, Mapping) or set(m) != set(source):
                raise ShapeMismatch(f"{where}: map must be defined exactly on {list(source)}")
            bad = [y for y in m.values() if y not in target]
            if bad:
                raise ShapeMismatch(f"{where}: map hits {bad[0]!r}, not an element of {list(target)}")
        else:
            if not isinstance(m, Matrix) or m.shape != (target, source):
                got = m.shape if isinstance(m, Matrix) else type(m).__name__
                raise ShapeMismatch(f"{where}: expected a {target}x{source} matrix, got {got}")
            if m.field != self.field:
                raise ShapeMismatch(f"{where}: matrix over the wrong field")

    def identity(self, value):
        if self.is_set:
            return {x: x for x in value}
        return Matrix.identity(value, self.field)

    def compose(self, g, f):
        """``g`` after ``f``."""
        if self.is_set:
            return {x: g[y] for x, y in f.items()}
        return g @ f

    def is_iso(self, m, source, target) -> bool:
        if self.is_set:
            return len(source) == len(target) and set(m.values()) == set(target)
        return source == target and m.rank() == source

    def inverse(self, m):
        if self.is_set:
            return {y: x for x, y in m.items()}
        return m.inverse()

    def equal(self, f, g) -> bool:
        return f == g


@dataclass(frozen=True, eq=False)
class Cosheaf:
    base: StratifiedComplex
    coefficients: Coefficients
    values: Mapping[Simplex, object]
    maps: Mapping[tuple[Simplex, Simplex], object]
    checks: Mapping[str, int] = field(default_factory=dict)

    @property
    def complex(self) -> OpenComplex:
        return self.base.complex

    def value(self, sigma: Simplex):
        self.complex.check_cell(sigma)
        return self.values[sigma]

    def map(self, tau: Simplex, sigma: Simplex):
        """``F(tau -> sigma)`` for any face ``sigma`` of ``tau``, composed along a chain."""
        key = (tau, sigma)
        if key in self.maps:
            return self.maps[key]
        return self._derived(tau, sigma)

    def _derived(self, tau, sigma):
        c = self.coefficients
        self.complex.check_cell(tau)
        self.complex.check_cell(sigma)
        if not set(sigma) <= set(tau):
            raise UnknownCell(f"{cell_name(sigma)} is not a face of {cell_name(tau)}")
        cache = self._chain_cache
        if (tau, sigma) not in cache:
            out = c.identity(self.values[tau])
            cur = tau
            for v in tau:
                if v in sigma:
                    continue
                nxt = tuple(x for x in cur if x != v)
                out = c.compose(self.maps[(cur, nxt)], out)
                cur = nxt
            cache[(tau, sigma)] = out
        return cache[(tau, sigma)]

    @cached_property
    def _chain_cache(self) -> dict:
        return {}


def build_cosheaf(base: StratifiedComplex, coefficients: Coefficients,
                  values: Mapping[Simplex, object], maps: Mapping[tuple[Simplex, Simplex], object],
                  allow_empty: bool = True) -> Cosheaf:
    """Validate cell data and return the cosheaf it determines.

    Checks totality and shapes, that every square ``tau -> rho_i -> sigma``
    commutes, and that maps inside a stratum are invertible.
    """
    k = base.complex
    c = coefficients
    for cell in values:
        if cell not in k.cells:
            raise UnknownCell(f"value given for non-cell {cell_name(cell) if isinstance(cell, tuple) else cell!r}")
    vals = {}
    for cell in k.ordered:
        if cell not in values:
            raise MissingValue(f"no value on cell {cell_name(cell)}")
        v = values[cell]
        if c.is_set:
            c.check_value(v, cell_name(cell))
            v = tuple(v)
            if not v and not allow_empty:
                raise ShapeMismatch(f"empty value on {cell_name(cell)}")
        else:
            c.check_value(v, cell_name(cell))
        vals[cell] = v

    incidences = k.incidences()
    wanted = set(incidences)
    for key in maps:
        if key not in wanted:
            t, s = key
            raise UnknownCell(f"map {cell_name(t)}->{cell_name(s)} is not a codimension-one incidence")
    ms = {}
    for t, s in incidences:
        if (t, s) not in maps:
            raise MissingMap(f"no map on {cell_name(t)}->{cell_name(s)}")
        m = maps[(t, s)]
        if c.is_set:
            m = dict(m) if isinstance(m, Mapping) else m
        c.check_map(m, vals[t], vals[s], f"{cell_name(t)}->{cell_name(s)}")
        ms[(t, s)] = m

    inverted = 0
    for t, s in incidences:
        if base.same_stratum(t, s):
            inverted += 1
            if not c.is_iso(ms[(t, s)], vals[t], vals[s]):
                raise InvertibilityFailure(
                    f"{cell_name(t)}->{cell_name(s)} lies in stratum {base.stratum_of[t]} but is not invertible")

    chains = 0
    for t in k.ordered:
        for s in sorted_cells({f for r in k.facets_of(t) for f in k.facets_of(r)}):
            middles = [r for r in k.facets_of(t) if s in boundary_faces(r)]
            composites = [c.compose(ms[(r, s)], ms[(t, r)]) for r in middles]
            chains += len(middles)
            for r, comp in zip(middles[1:], composites[1:]):
                if not c.equal(comp, composites[0]):
                    raise DiamondFailure(
                        f"square {cell_name(t)} -> {{{cell_name(middles[0])}, {cell_name(r)}}} -> "
                        f"{cell_name(s)} does not commute")

    checks = {"incidences": len(k.face_pairs()), "diamonds": chains, "invertibility": inverted}
    return Cosheaf(base, c, vals, ms, checks)


def _as_complex(obj) -> OpenComplex:
    if isinstance(obj, Cosheaf):
        return obj.complex
    if isinstance(obj, StratifiedComplex):
        return obj.complex
    return obj


def open_from_generators(space, cells: Iterable[Simplex]) -> frozenset:
    """The open set spanned by the stars of ``cells``."""
    k = _as_complex(space)
    return k.upward_closure(cells)


def _check_open(cosheaf: Cosheaf, open_set) -> list[Simplex]:
    k = cosheaf.complex
    if not open_set:
        raise EmptyOpen("the open set is empty")
    for x in open_set:
        k.check_cell(x)
    cells = sorted_cells(open_set)
    if k.upward_closure(cells) != frozenset(cells):
        raise UnknownCell("the cell set is not open (not closed under cofaces)")
    return cells


class Colimit(NamedTuple):
    value: object
    cocone: dict


def colimit(cosheaf: Cosheaf, open_set) -> Colimit:
    """Colimit of the cell diagram over ``open_set``.

    Returns the value and the cocone: for every cell of the open set, the
    canonical map from its value into the colimit.
    """
    cells = _check_open(cosheaf, open_set)
    inside = set(cells)
    arrows = [(t, s, cosheaf.maps[(t, s)]) for t in cells
              for s in cosheaf.complex.facets_of(t) if s in inside]
    c = cosheaf.coefficients
    objects = {x: cosheaf.values[x] for x in cells}
    if c.is_set:
        names, cocone = set_colimit(objects, arrows, name=cell_name)
        return Colimit(names, cocone)
    d, cocone = vect_colimit(objects, arrows, c.field)
    return Colimit(d, cocone)


def evaluate(cosheaf: Cosheaf, open_set):
    return colimit(cosheaf, open_set).value


def limit_vect(cosheaf: Cosheaf, open_set):
    """Limit of the cell diagram over ``open_set`` (vector space coefficients only)."""
    if cosheaf.coefficients.is_set:
        raise WrongCoefficients("limit_vect needs vector space coefficients")
    cells = _check_open(cosheaf, open_set)
    inside = set(cells)
    arrows = [(t, s, cosheaf.maps[(t, s)]) for t in cells
              for s in cosheaf.complex.facets_of(t) if s in inside]
    return vect_limit({x: cosheaf.values[x] for x in cells}, arrows, cosheaf.coefficients.field)


def induced_map(cosheaf: Cosheaf, smaller, larger, small_colim: Colimit | None = None,
                large_colim: Colimit | None = None):
    """``F(V <= U)``: the map between colimits induced by an inclusion of opens."""
    if not set(smaller) <= set(larger):
        raise UnknownCell("the first open set is not contained in the second")
    small = small_colim or colimit(cosheaf, smaller)
    large = large_colim or colimit(cosheaf, larger)
    c = cosheaf.coefficients
    if c.is_set:
        out = {}
        for x in sorted_cells(smaller):
            for e, cls in small.cocone[x].items():
                out.setdefault(cls, large.cocone[x][e])
        return out
    legs = {x: large.cocone[x] for x in small.cocone}
    return factor_through(small.cocone, legs, large.value, c.field)


def costalk(cosheaf: Cosheaf, sigma: Simplex):
    """The value at ``sigma`` with its canonical map into the star evaluation."""
    k = cosheaf.complex
    k.check_cell(sigma)
    col = colimit(cosheaf, k.star(sigma))
    return cosheaf.values[sigma], col.cocone[sigma]


@dataclass(frozen=True)
class Step:
    """One letter of an entrance word: the incidence ``sigma < tau``.

    A forward step goes ``tau -> sigma`` (into the smaller stratum or along the
    face); an inverse step goes ``sigma -> tau`` and is allowed only inside a
    stratum.
    """

    tau: Simplex
    sigma: Simplex
    forward: bool = True

    @property
    def source(self) -> Simplex:
        return self.tau if self.forward else self.sigma

    @property
    def target(self) -> Simplex:
        return self.sigma if self.forward else self.tau


def word_from_path(cells: Sequence[Simplex]) -> list[Step]:
    """Turn a walk through adjacent cells into an entrance word."""
    steps = []
    for a, b in zip(cells, cells[1:]):
        if set(b) < set(a):
            steps.append(Step(a, b, True))
        elif set(a) < set(b):
            steps.append(Step(b, a, False))
        else:
            raise NonComposableWord(f"{cell_name(a)} and {cell_name(b)} are not incident")
    return steps


def transport(cosheaf: Cosheaf, word: Sequence[Step], start: Simplex | None = None):
    """Compose the step maps of ``word``, inverting the inverse steps."""
    k = cosheaf.complex
    c = cosheaf.coefficients
    if not word:
        if start is None:
            raise NonComposableWord("an empty word needs a start cell")
        return c.identity(cosheaf.value(start))
    cur = start if start is not None else word[0].source
    out = c.identity(cosheaf.value(cur))
    for i, st in enumerate(word):
        if (st.tau, st.sigma) not in cosheaf.maps:
            raise NonComposableWord(
                f"step {i}: {cell_name(st.tau)}->{cell_name(st.sigma)} is not a codimension-one incidence")
        if st.source != cur:
            raise NonComposableWord(f"step {i} starts at {cell_name(st.source)}, expected {cell_name(cur)}")
        m = cosheaf.maps[(st.tau, st.sigma)]
        if not st.forward:
            if not cosheaf.base.same_stratum(st.tau, st.sigma):
                raise IllegalInverse(
                    f"step {i}: {cell_name(st.sigma)}->{cell_name(st.tau)} crosses strata")
            m = c.inverse(m)
        out = c.compose(m, out)
        cur = st.target
    k.check_cell(cur)
    return out


@dataclass
class GluingReport:
    ok: bool
    cover_value: object
    open_value: object
    universal: object
    witness: str | None = None


def _star_generator(k: OpenComplex, member: frozenset) -> Simplex:
    lowest = min(len(x) for x in member)
    gens = [x for x in member if len(x) == lowest]
    if len(gens) != 1 or k.star(gens[0]) != member:
        raise NotACover("cover member is not the star of a cell")
    return gens[0]


def check_gluing(cosheaf: Cosheaf, open_set, cover: Sequence) -> GluingReport:
    """Compare the colimit over a basic cover by stars with the value on the union.

    Cover members must be stars whose union is ``open_set``, and every
    pairwise intersection must again be a union of members.
    """
    k = cosheaf.complex
    c = cosheaf.coefficients
    _check_open(cosheaf, open_set)
    members = []
    for m in cover:
        m = frozenset(m)
        g = _star_generator(k, m)
        if (g, m) not in members:
            members.append((g, m))
    members.sort(key=lambda gm: cell_key(gm[0]))
    union = frozenset().union(*(m for _, m in members)) if members else frozenset()
    if union != frozenset(open_set):
        raise NotACover("cover members do not union to the open set")
    for i, (_, a) in enumerate(members):
        for _, b in members[i + 1:]:
            meet = a & b
            if meet and frozenset().union(*(m for _, m in members if m <= meet)) != meet:
                raise NotACover("an intersection of cover members is not a union of members")

    whole = colimit(cosheaf, open_set)
    parts = {g: colimit(cosheaf, m) for g, m in members}
    arrows = []
    for g, a in members:
        for h, b in members:
            if g != h and a <= b:
                arrows.append((g, h, induced_map(cosheaf, a, b, parts[g], parts[h])))
    legs = {g: induced_map(cosheaf, m, open_set, parts[g], whole) for g, m in members}

    if c.is_set:
        names, cocone = set_colimit({g: parts[g].value for g, _ in members}, arrows, name=cell_name)
        universal = {}
        for g, _ in members:
            for e, cls in cocone[g].items():
                universal.setdefault(cls, legs[g][e])
        images = {}
        witness = None
        for cls in names:
            images.setdefault(universal[cls], []).append(cls)
        for y, pre in images.items():
            if len(pre) > 1:
                witness = f"{pre[0]} and {pre[1]} both map to {y}"
                break
        if witness is None:
            missing = [y for y in whole.value if y not in images]
            if missing:
                witness = f"{missing[0]} is not in the image"
        return GluingReport(witness is None, names, whole.value, universal, witness)

    d, cocone = vect_colimit({g: parts[g].value for g, _ in members}, arrows, c.field)
    universal = factor_through(cocone, legs, whole.value, c.field)
    witness = None
    if d != whole.value:
        witness = f"dimensions differ: {d} over the cover, {whole.value} on the union"
    elif universal.rank() != d:
        v = universal.kernel().column(0)
        witness = f"kernel vector {[str(x) for x in v]}"
    return GluingReport(witness is None, d, whole.value, universal, witness)


def linearize(cosheaf: Cosheaf, field_: Field = QQ) -> Cosheaf:
    """Free vector space on every value; basis in the order the elements are listed."""
    if not cosheaf.coefficients.is_set:
        return cosheaf
    values = {x: len(v) for x, v in cosheaf.values.items()}
    maps = {}
    for (t, s), m in cosheaf.maps.items():
        src, tgt = cosheaf.values[t], cosheaf.values[s]
        pos = {y: i for i, y in enumerate(tgt)}
        rows = [[0] * len(src) for _ in tgt]
        for j, x in enumerate(src):
            rows[pos[m[x]]][j] = 1
        maps[(t, s)] = Matrix.from_rows(rows, len(src), field_)
    return build_cosheaf(cosheaf.base, Coefficients(VECT, field_), values, maps)


def star_cosheaf(cosheaf: Cosheaf) -> Cosheaf:
    """Rebuild cell data from evaluations on stars.

    The value at ``sigma`` becomes ``F(st sigma)`` and the map for
    ``sigma < tau`` is the one induced by ``st tau <= st sigma``.
    """
    k = cosheaf.complex
    cols = {x: colimit(cosheaf, k.star(x)) for x in k.ordered}
    values = {x: cols[x].value for x in k.ordered}
    maps = {(t, s): induced_map(cosheaf, k.star(t), k.star(s), cols[t], cols[s])
            for t, s in k.incidences()}
    return build_cosheaf(cosheaf.base, cosheaf.coefficients, values, maps)


@dataclass
class RoundTripReport:
    ok: bool
    rebuilt: Cosheaf
    failures: list[str]


def round_trip(cosheaf: Cosheaf) -> RoundTripReport:
    """Check the rebuilt cosheaf against the original through the costalk maps.

    Every cocone map ``F(sigma) -> F(st sigma)`` must be an isomorphism and
    every incidence square between original and rebuilt maps must commute.
    """
    k = cosheaf.complex
    c = cosheaf.coefficients
    rebuilt = star_cosheaf(cosheaf)
    canon = {x: colimit(cosheaf, k.star(x)).cocone[x] for x in k.ordered}
    failures = []
    for x in k.ordered:
        if not c.is_iso(canon[x], cosheaf.values[x], rebuilt.values[x]):
            failures.append(f"{cell_name(x)}: costalk map is not an isomorphism")
    for t, s in k.incidences():
        lhs = c.compose(rebuilt.maps[(t, s)], canon[t])
        rhs = c.compose(canon[s], cosheaf.maps[(t, s)])
        if not c.equal(lhs, rhs):
            failures.append(f"{cell_name(t)}->{cell_name(s)}: square does not commute")
    return RoundTripReport(not failures, rebuilt, failures)
