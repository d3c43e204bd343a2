"""Colimits and limits of finite diagrams of finite sets or vector spaces.

A diagram is given by its objects (an ordered mapping from a key to a value)
and a list of arrows ``(source, target, map)``.  Only generating arrows are
needed: composites do not change a colimit or a limit.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .linalg import Field, Matrix, hstack
from .unionfind import UnionFind

Arrow = tuple[Hashable, Hashable, object]


def set_colimit(objects: Mapping[Hashable, Sequence[str]], arrows: Iterable[Arrow],
                name: Callable[[Hashable], str] = str):
    """Quotient of the disjoint union by ``x ~ f(x)`` for every arrow ``f``.

    Each class is named ``"<key>:<element>"`` after its least
    ``(name(key), element)`` pair.  Returns ``(names, cocone)`` where
    ``cocone[key]`` maps each element of that object to its class name.
    """
    uf = UnionFind()
    for k, elems in objects.items():
        for e in elems:
            uf.add((name(k), e))
    for src, tgt, f in arrows:
        ns, nt = name(src), name(tgt)
        for e in objects[src]:
            uf.union((ns, e), (nt, f[e]))
    label = {}
    for cls in uf.classes():
        n, e = cls[0]
        for member in cls:
            label[member] = f"{n}:{e}"
    names = tuple(f"{n}:{e}" for n, e in (c[0] for c in uf.classes()))
    cocone = {k: {e: label[(name(k), e)] for e in elems} for k, elems in objects.items()}
    return names, cocone


def _offsets(objects: Mapping[Hashable, int]) -> tuple[dict, int]:
    offsets, total = {}, 0
    for k, d in objects.items():
        offsets[k] = total
        total += d
    return offsets, total


def vect_colimit(objects: Mapping[Hashable, int], arrows: Iterable[Arrow], field: Field):
    """Cokernel presentation of the colimit.

    With ``D`` the map sending ``v`` in the source of an arrow ``f`` to
    ``f(v) - v`` in the direct sum of all objects, the colimit is
    ``coker D``.  The quotient map is realized by a basis of the left kernel
    of ``D``.  Returns ``(dimension, cocone)`` with ``cocone[key]`` of shape
    ``dimension x objects[key]``.
    """
    offsets, total = _offsets(objects)
    columns = []
    for src, tgt, f in arrows:
        for j in range(objects[src]):
            col = [field.zero] * total
            col[offsets[src] + j] = field.sub(col[offsets[src] + j], field.one)
            for i in range(objects[tgt]):
                col[offsets[tgt] + i] = field.add(col[offsets[tgt] + i], f.rows[i][j])
            columns.append(col)
    if columns:
        q = Matrix.from_columns(columns, total, field).left_kernel()
    else:
        q = Matrix.identity(total, field)
    cocone = {k: q.submatrix(range(q.nrows), range(offsets[k], offsets[k] + d))
              for k, d in objects.items()}
    return q.nrows, cocone


def vect_limit(objects: Mapping[Hashable, int], arrows: Iterable[Arrow], field: Field):
    """Kernel presentation: tuples ``(x_k)`` with ``f(x_src) = x_tgt`` for every arrow.

    Returns ``(dimension, cone)`` with ``cone[key]`` of shape
    ``objects[key] x dimension``.
    """
    offsets, total = _offsets(objects)
    rows = []
    for src, tgt, f in arrows:
        for i in range(objects[tgt]):
            row = [field.zero] * total
            for j in range(objects[src]):
                row[offsets[src] + j] = field.add(row[offsets[src] + j], f.rows[i][j])
            row[offsets[tgt] + i] = field.sub(row[offsets[tgt] + i], field.one)
            rows.append(row)
    if rows:
        k = Matrix.from_rows(rows, total, field).kernel()
    else:
        k = Matrix.identity(total, field)
    cone = {key: k.submatrix(range(offsets[key], offsets[key] + d), range(k.ncols))
            for key, d in objects.items()}
    return k.ncols, cone


def factor_through(cocone: Mapping[Hashable, Matrix], legs: Mapping[Hashable, Matrix],
                   target_dim: int, field: Field) -> Matrix:
    """The unique ``M`` with ``M @ cocone[k] == legs[k]`` for every ``k``.

    ``cocone`` must be a colimit cocone (jointly surjective); ``legs`` any
    cocone into a space of dimension ``target_dim``.  Raises ``ValueError``
    when ``legs`` is not compatible with the diagram.
    """
    keys = list(cocone)
    if not keys:
        return Matrix.zeros(target_dim, 0, field)
    q = hstack([cocone[k] for k in keys])
    if q.nrows == 0:
        if any(not legs[k].is_zero() for k in keys):
            raise ValueError("legs do not factor through the zero colimit")
        return Matrix.zeros(target_dim, 0, field)
    if q.ncols == 0:
        return Matrix.zeros(target_dim, q.nrows, field)
    return q.solve_left(hstack([legs[k] for k in keys]))
