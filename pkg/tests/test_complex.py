import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constructible.complex import (
    build_complex,
    build_stratification,
    cell_name,
    incidence,
    parse_cell,
    simplex,
    star_cover,
    trivial_stratification,
)
from constructible.errors import (
    DuplicateVertexInSimplex,
    FrontierViolation,
    NotAPartition,
    RemovedNotSubcomplex,
    StratumDisconnected,
    UnknownCell,
)
from constructible.fixtures import cells, line_base, line_complex, punctured_disk_base, punctured_disk_complex


def names(cellset):
    return sorted(cell_name(c) for c in cellset)


def test_one_edge():
    k = build_complex([["a", "b"]])
    assert names(k.cells) == ["a", "a|b", "b"]


def test_punctured_disk_has_seven_cells():
    k = punctured_disk_complex()
    assert names(k.cells) == ["a|b|o", "a|c|o", "a|o", "b|c|o", "b|o", "c|o", "o"]


def test_line_fixture_cells():
    assert names(line_complex().cells) == ["p|q", "q", "q|r"]


def test_duplicate_vertex_rejected():
    with pytest.raises(DuplicateVertexInSimplex):
        build_complex([["a", "a"]])


def test_removed_must_be_in_ambient():
    with pytest.raises(RemovedNotSubcomplex):
        build_complex([["a", "b"]], [["c"]])


def test_simplex_is_sorted():
    assert simplex(["c", "a", "b"]) == ("a", "b", "c")
    assert parse_cell("c|a") == ("a", "c")


def test_line_star_and_closure():
    k = line_complex()
    assert names(incidence(k, ("q",), "star")) == ["p|q", "q", "q|r"]
    assert names(incidence(k, ("p", "q"), "closure")) == ["p|q", "q"]


def test_punctured_disk_star_of_oa_by_enumeration():
    k = punctured_disk_complex()
    oa = ("a", "o")
    brute = {c for c in k.cells if set(oa) <= set(c)}
    assert k.star(oa) == brute
    assert names(k.star(oa)) == ["a|b|o", "a|c|o", "a|o"]


def test_link_of_the_cone_point_is_empty_after_removal():
    # the link of o is the removed triangle boundary
    k = punctured_disk_complex()
    assert k.link(("o",)) == frozenset()
    full = build_complex([["o", "a", "b"], ["o", "b", "c"], ["o", "c", "a"]])
    assert names(full.link(("o",))) == ["a", "a|b", "a|c", "b", "b|c", "c"]


def test_unknown_cell():
    with pytest.raises(UnknownCell):
        line_complex().star(("p",))
    with pytest.raises(UnknownCell):
        incidence(line_complex(), ("z",), "closure")


def test_line_stratification_order():
    base = line_base()
    assert base.order == {("S0", "E1"), ("S0", "E2")}


def test_punctured_disk_order():
    assert punctured_disk_base().order == {("origin", "bulk")}


def test_frontier_violation_on_the_line():
    k = line_complex()
    with pytest.raises(FrontierViolation):
        build_stratification(k, {("q",): "A", ("p", "q"): "A", ("q", "r"): "B"})


def test_not_a_partition():
    k = line_complex()
    with pytest.raises(NotAPartition):
        build_stratification(k, {("q",): "A", ("p", "q"): "B"})
    with pytest.raises(NotAPartition):
        build_stratification(k, {("q",): "A", ("p", "q"): "B", ("q", "r"): "C", ("p",): "D"})


def test_disconnected_stratum():
    k = line_complex()
    with pytest.raises(StratumDisconnected):
        build_stratification(k, {("q",): "V", ("p", "q"): "E", ("q", "r"): "E"})


def test_star_cover_of_the_line():
    cover = star_cover(line_base())
    assert sorted(names(s) for s in cover) == [["p|q"], ["p|q", "q", "q|r"], ["q|r"]]


def test_star_cover_of_an_edge():
    k = build_complex([["a", "b"]])
    cover = {names(s)[0] if len(s) == 1 else tuple(names(s)) for s in star_cover(k)}
    assert len(cover) == 3
    assert k.star(("a",)) & k.star(("b",)) == k.star(("a", "b"))


def test_star_cover_intersections_brute_force():
    # every pairwise intersection is the star of the join or empty
    k = punctured_disk_complex()
    cover = star_cover(k)
    assert len(cover) == 7
    for a, b in itertools.combinations(k.ordered, 2):
        meet = k.star(a) & k.star(b)
        join = tuple(sorted(set(a) | set(b)))
        if join in k.cells:
            assert meet == k.star(join)
        else:
            assert meet == frozenset()


def test_whole_star_table_of_the_disk():
    k = punctured_disk_complex()
    table = {cell_name(x): len(k.star(x)) for x in k.ordered}
    assert table == {"o": 7, "a|o": 3, "b|o": 3, "c|o": 3, "a|b|o": 1, "a|c|o": 1, "b|c|o": 1}


@st.composite
def complexes(draw):
    verts = ["a", "b", "c", "d", "e"]
    tops = draw(st.lists(st.lists(st.sampled_from(verts), min_size=1, max_size=3, unique=True),
                         min_size=1, max_size=4))
    return build_complex(tops)


@settings(max_examples=50, deadline=None)
@given(complexes())
def test_incidence_properties(k):
    for s in k.ordered:
        st_, cl = k.star(s), k.closure(s)
        assert s in st_ and s in cl
        for t in st_:
            assert k.star(t) <= st_
        for f in cl:
            assert k.closure(f) <= cl
    for t, s in k.incidences():
        assert len(t) == len(s) + 1
        assert k.star(t) <= k.star(s)


@settings(max_examples=30, deadline=None)
@given(complexes())
def test_trivial_stratification_order_is_antisymmetric(k):
    strat = trivial_stratification(k)
    for a, b in strat.order:
        assert (b, a) not in strat.order
    # the order is exactly the strict face order
    expected = {(cell_name(s), cell_name(t)) for t, s in k.face_pairs()}
    assert set(strat.order) == expected


def test_cells_helper():
    assert cells("a|o", "o") == [("a", "o"), ("o",)]
