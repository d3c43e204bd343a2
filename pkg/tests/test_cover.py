import pytest

from constructible.complex import build_complex, cell_name, dim
from constructible.cosheaf import Coefficients, build_cosheaf, evaluate
from constructible.cover import (
    CoverComplex,
    build_cover,
    cells_over,
    components,
    cover_to_dot,
    cover_to_json,
    graph_summary,
    identity_cover,
    reeb_pipeline,
    upstairs_strata,
    validate_covering,
)
from constructible.errors import WrongCoefficients, WrongDimension
from constructible.fixtures import (
    circle_height_map,
    line_base,
    line_constant,
    line_vect,
    path_base,
    punctured_disk_base,
    whitney_base,
    wiggly_circle_map,
    zn_cosheaf,
)
from constructible.ingest import build_map, pushforward_cosheaf

from oracles import star_unions

PQ, Q, QR = ("p", "q"), ("q",), ("q", "r")


def tripod():
    base = line_base()
    values = {PQ: ["a", "b"], Q: ["*"], QR: ["c"]}
    maps = {(PQ, Q): {"a": "*", "b": "*"}, (QR, Q): {"c": "*"}}
    return build_cosheaf(base, Coefficients.sets(), values, maps)


def count_by_dim(cover):
    out = {}
    for c in cover.cells:
        out[dim(c[0])] = out.get(dim(c[0]), 0) + 1
    return out


def test_tripod():
    c = build_cover(tripod())
    assert count_by_dim(c) == {0: 1, 1: 3}
    assert len(components(c)) == 1
    assert validate_covering(c).ok


def test_z2_cover_shape():
    c = build_cover(zn_cosheaf(2))
    assert count_by_dim(c) == {0: 1, 1: 6, 2: 6}
    assert len(components(c)) == 1
    assert validate_covering(c).ok


def test_constant_cosheaf_cover_is_the_base():
    c = build_cover(line_constant())
    ident = identity_cover(line_base())
    assert len(c.cells) == len(ident.cells)
    assert {x for x, _ in c.cells} == {x for x, _ in ident.cells}
    assert validate_covering(ident).ok


def test_vector_space_cosheaf_rejected():
    with pytest.raises(WrongCoefficients):
        build_cover(line_vect())


def two_sheets(vertex_split):
    base = punctured_disk_base()
    k = base.complex
    sheets = ("0", "1")
    origin = sheets if vertex_split else ("*",)
    values = {x: (origin if x == ("o",) else sheets) for x in k.cells}
    maps = {}
    for t, s in k.incidences():
        if s == ("o",) and not vertex_split:
            maps[(t, s)] = {y: "*" for y in sheets}
        else:
            maps[(t, s)] = {y: y for y in sheets}
    return build_cosheaf(base, Coefficients.sets(), values, maps)


def test_trivial_monodromy_components():
    assert len(components(build_cover(two_sheets(False)))) == 1
    assert len(components(build_cover(two_sheets(True)))) == 2


def test_hand_built_frontier_violation():
    # one upstairs edge over pq and an empty fiber over q
    base = line_base()
    cells = ((PQ, "x"),)
    faces = {(PQ, "x"): ()}
    lonely = CoverComplex(base, cells, faces, upstairs_strata(base, cells, faces))
    rep = validate_covering(lonely)
    assert not rep.ok
    assert any("nothing over the lower stratum S0" in w for w in rep.failures)


def test_faces_over_non_faces_rejected():
    base = line_base()
    cells = ((PQ, "x"), (QR, "y"))
    faces = {(PQ, "x"): ((QR, "y"),), (QR, "y"): ()}
    bad = CoverComplex(base, cells, faces, upstairs_strata(base, cells, faces))
    rep = validate_covering(bad)
    assert not rep.ok
    assert "faces of p|q:x" in rep.failures[0]


def test_disjoint_half_lines_form_a_covering():
    # two points over q, each attached to one side only
    base = line_base()
    cells = ((Q, "w"), (Q, "z"), (PQ, "x"), (QR, "y"))
    faces = {(Q, "z"): (), (Q, "w"): (), (PQ, "x"): ((Q, "w"),), (QR, "y"): ((Q, "z"),)}
    split = CoverComplex(base, cells, faces, upstairs_strata(base, cells, faces))
    assert validate_covering(split).ok
    assert len(components(split)) == 2


def test_report_lines():
    rep = validate_covering(build_cover(zn_cosheaf(3)))
    lines = rep.lines()
    assert lines[0] == "covering: OK"
    assert any(l.strip().startswith("star-preimage") for l in lines)


def test_fibers_match_costalks():
    for f in (zn_cosheaf(3), tripod(), pushforward_cosheaf(circle_height_map())):
        c = build_cover(f)
        for x in f.complex.ordered:
            assert len(c.fiber(x)) == len(f.values[x])


def test_components_over_star_unions_match_evaluate():
    for f in (zn_cosheaf(2), zn_cosheaf(3), pushforward_cosheaf(circle_height_map())):
        c = build_cover(f)
        for u in star_unions(f.complex):
            assert len(components(c, cells_over(c, u))) == len(evaluate(f, u))


def test_upstairs_strata_labels():
    c = build_cover(zn_cosheaf(2))
    labels = set(c.stratum_of.values())
    # least cell in (dimension, name) order
    assert labels == {"bulk/a|o:0", "origin/o:*"}


def test_reeb_circle():
    g = graph_summary(reeb_pipeline(circle_height_map()))
    assert (g.vertices, g.edges, g.b0, g.b1) == (4, 4, 1, 1)
    assert g.line() == "V=4 E=4 b0=1 b1=1"


def test_reeb_single_edge():
    src = build_complex([["a", "b"]])
    f = build_map(src, path_base(["u0", "u1"]), {"a": "u0", "b": "u1"})
    g = graph_summary(reeb_pipeline(f))
    assert (g.vertices, g.edges, g.b1) == (2, 1, 0)


def test_reeb_wiggly_values():
    f = wiggly_circle_map()
    push = pushforward_cosheaf(f)
    got = {cell_name(x): len(v) for x, v in push.values.items()}
    assert got == {"w0": 1, "w0|w1": 2, "w1": 3, "w1|w2": 4, "w2": 3, "w2|w3": 2, "w3": 1}
    g = graph_summary(reeb_pipeline(f))
    assert (g.vertices, g.edges, g.b1) == (8, 8, 1)


def test_reeb_needs_a_graph_base():
    c = build_cover(zn_cosheaf(1))
    with pytest.raises(WrongDimension):
        graph_summary(c)


def test_exports():
    c = reeb_pipeline(circle_height_map())
    doc = cover_to_json(c)
    assert len(doc["cells"]) == 8
    first = doc["cells"][0]
    assert set(first) == {"id", "base", "label", "faces", "stratum"}
    dot = cover_to_dot(c)
    assert dot.startswith("graph ")
    assert dot.count(" -- ") == 4
    assert sum(1 for line in dot.splitlines() if line.strip().endswith(";") and "--" not in line) == 4


def test_whitney_base_identity_cover():
    assert validate_covering(identity_cover(whitney_base())).ok
