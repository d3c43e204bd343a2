import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constructible.complex import build_complex, trivial_stratification
from constructible.cosheaf import Coefficients, build_cosheaf
from constructible.errors import IndexOutOfRange, NotAPath, WrongDimension
from constructible.fixtures import line_constant, line_vect, line_zero_middle, punctured_disk_base, zn_cosheaf
from constructible.linalg import Field, Matrix
from constructible.zigzag import (
    CLOSED,
    LEFT_OPEN,
    OPEN,
    RIGHT_OPEN,
    ZigzagModule,
    decompose,
    generalized_rank,
    interval_topology,
    make_barcode,
    rank_table,
    recompose,
    zigzag_extract,
)

from oracles import zigzag_rank


def random_module(rng, max_len=9, max_dim=4, field_=Field()):
    n = rng.randrange(1, max_len + 1, 2)
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    maps = []
    for i in range(n - 1):
        src, tgt = ZigzagModule.arrow(i)
        maps.append([[rng.randint(-1, 1) for _ in range(dims[src])] for _ in range(dims[tgt])])
    return ZigzagModule.from_lists(dims, maps, field_)


def as_lists(module):
    return [[list(r) for r in m.rows] for m in module.maps]


def test_extract_constant_line():
    m = zigzag_extract(line_constant())
    assert m.dims == (1, 1, 1)
    assert [x.rows for x in m.maps] == [((1,),), ((1,),)]
    assert m.labels == ("p|q", "q", "q|r")


def test_extract_line_vect():
    m = zigzag_extract(line_vect())
    assert m.dims == (1, 1, 2)
    assert m.maps[1].rows == ((1, 1),)


def test_extract_single_edge():
    k = build_complex([["a", "b"]], [["a"], ["b"]])
    base = trivial_stratification(k)
    f = build_cosheaf(base, Coefficients.vect(), {("a", "b"): 2}, {})
    m = zigzag_extract(f)
    assert m.dims == (2,) and m.maps == ()


def test_extract_rejects_non_paths():
    with pytest.raises(WrongDimension):
        zigzag_extract(zn_cosheaf(2))
    # a closed edge: the end vertices only have one edge each
    k = build_complex([["a", "b"]])
    f = build_cosheaf(trivial_stratification(k), Coefficients.vect(),
                      {x: 1 for x in k.cells}, {inc: Matrix.identity(1) for inc in k.incidences()})
    with pytest.raises(NotAPath):
        zigzag_extract(f)


def test_rank_examples():
    const = zigzag_extract(line_constant())
    assert generalized_rank(const, 0, 2) == 1
    zero = zigzag_extract(line_zero_middle())
    assert generalized_rank(zero, 0, 2) == 0
    assert generalized_rank(zero, 0, 0) == 1
    m = zigzag_extract(line_vect())
    assert generalized_rank(m, 0, 2) == 1
    assert generalized_rank(m, 2, 2) == 2
    with pytest.raises(IndexOutOfRange):
        generalized_rank(m, 1, 3)


def test_decompose_examples():
    assert decompose(zigzag_extract(line_constant())).multiset() == {(0, 2): 1}
    bc = decompose(zigzag_extract(line_zero_middle()))
    assert bc.multiset() == {(0, 0): 1, (2, 2): 1}
    assert [b.kind for b in bc.bars] == [OPEN, OPEN]
    assert decompose(zigzag_extract(line_vect())).multiset() == {(0, 2): 1, (2, 2): 1}


def test_bar_lines():
    bc = decompose(zigzag_extract(line_zero_middle()))
    assert bc.lines() == ["bar 0..0 x1 kind=open cells=p|q", "bar 2..2 x1 kind=open cells=q|r"]


def test_recompose_examples():
    assert recompose(make_barcode({(0, 2): 1}, 3)).dims == (1, 1, 1)
    m = recompose(make_barcode({(0, 0): 1, (2, 2): 1}, 3))
    assert m.dims == (1, 0, 1)
    fixture = zigzag_extract(line_vect())
    rebuilt = recompose(decompose(fixture))
    assert rebuilt.dims == (1, 1, 2)
    assert rank_table(rebuilt) == rank_table(fixture)
    # isomorphic, not equal
    assert rebuilt.maps[1] != fixture.maps[1]


def test_interval_topology_kinds():
    labels = ("y0", "x1", "y1", "x2", "y2")
    assert interval_topology(1, 1, labels)[0] == CLOSED
    assert interval_topology(0, 0, labels)[0] == OPEN
    assert interval_topology(1, 2, labels) == (RIGHT_OPEN, "x1,y1")
    assert interval_topology(0, 1, labels)[0] == LEFT_OPEN
    with pytest.raises(IndexOutOfRange):
        interval_topology(3, 5, labels)


def test_interval_module_rank_is_indicator():
    n = 7
    for a in range(n):
        for b in range(a, n):
            table = rank_table(recompose(make_barcode({(a, b): 1}, n)))
            for (i, j), r in table.items():
                assert r == (1 if a <= i and j <= b else 0)


def test_additivity_of_rank():
    m1 = recompose(make_barcode({(0, 3): 1, (2, 2): 2}, 5))
    m2 = recompose(make_barcode({(1, 4): 1}, 5))
    both = recompose(make_barcode({(0, 3): 1, (2, 2): 2, (1, 4): 1}, 5))
    t1, t2, t = rank_table(m1), rank_table(m2), rank_table(both)
    assert all(t[k] == t1[k] + t2[k] for k in t)


def test_prime_field_changes_the_barcode():
    # [1 1; 1 -1] is invertible over Q but rank one over F_2
    rows = [[1, 1], [1, -1]]
    over_q = ZigzagModule.from_lists([2, 2, 2], [rows, [[1, 0], [0, 1]]])
    over_2 = ZigzagModule.from_lists([2, 2, 2], [rows, [[1, 0], [0, 1]]], Field(2))
    assert decompose(over_q).multiset() == {(0, 2): 2}
    assert decompose(over_2).multiset() != {(0, 2): 2}


def test_module_shape_checks():
    with pytest.raises(WrongDimension):
        ZigzagModule((1, 1), ())
    with pytest.raises(WrongDimension):
        ZigzagModule.from_lists([1, 2, 1], [[[1]], [[1, 1]]])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_rank_matches_sympy_oracle(seed):
    m = random_module(random.Random(seed), max_len=7, max_dim=3)
    maps = as_lists(m)
    for (i, j), r in rank_table(m).items():
        assert r == zigzag_rank(list(m.dims), maps, i, j)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from([None, 2, 3]))
def test_rank_table_agrees_with_limit_colimit_rank(seed, p):
    m = random_module(random.Random(seed), field_=Field(p))
    for (i, j), r in rank_table(m).items():
        assert r == generalized_rank(m, i, j)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_decompose_recompose_round_trip(seed):
    m = random_module(random.Random(seed))
    bc = decompose(m)
    rebuilt = recompose(bc)
    assert rebuilt.dims == m.dims
    assert rank_table(rebuilt) == rank_table(m)
    assert decompose(rebuilt).multiset() == bc.multiset()
    for p in range(len(m)):
        assert sum(b.multiplicity for b in bc.bars if b.lo <= p <= b.hi) == m.dims[p]


def test_set_cosheaf_is_linearized():
    m = zigzag_extract(line_constant(), Field(5))
    assert m.field == Field(5)
    assert decompose(m).multiset() == {(0, 2): 1}


def test_unused_base_fixture_guard():
    # the punctured disk is 2-dimensional, so extraction refuses it
    with pytest.raises(WrongDimension):
        zigzag_extract(build_cosheaf(punctured_disk_base(), Coefficients.vect(),
                                     {x: 0 for x in punctured_disk_base().complex.cells},
                                     {inc: Matrix.zeros(0, 0)
                                      for inc in punctured_disk_base().complex.incidences()}))
