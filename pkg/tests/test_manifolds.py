import pytest

from morseshed.complexes import closure
from morseshed.fixtures import (
    branching_triangles,
    cyc6_host,
    tetrahedron_boundary,
    wedge,
)
from morseshed.manifolds import (
    generate_torus,
    link,
    links_are_pseudomanifolds,
    open_star,
    star,
    strictly_connected_oracle,
    validate,
)


def test_link_of_cycle_vertex():
    lk = link((1,), cyc6_host())
    assert lk.faces == {(0,), (2,)}


def test_link_of_wedge_apex_is_disconnected():
    lk = link((0,), wedge())
    # two disjoint 3-cycles on {1,2,3} and {4,5,6}
    assert lk.faces == closure([(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]).faces
    from morseshed.complexes import connected_components

    assert len(connected_components(lk)) == 2


def test_link_of_edge_in_tetrahedron_boundary():
    lk = link((0, 1), tetrahedron_boundary())
    assert lk.faces == {(2,), (3,)}


def test_star_variants():
    X = closure([(0, 1, 2)])
    assert star((0, 1), X) == {(0, 1), (0, 1, 2)}
    assert open_star((0, 1), X) == {(0, 1, 2)}


def test_validate_cyc6_is_normal():
    rep = validate(cyc6_host())
    assert rep.dim == 1
    assert rep.pure and rep.connected and rep.non_branching
    assert rep.strongly_connected and rep.strictly_connected
    assert rep.is_pseudomanifold and rep.is_normal


def test_validate_branching():
    rep = validate(branching_triangles())
    assert not rep.non_branching
    assert rep.witnesses["non_branching"] == (0, 1)
    assert not rep.is_pseudomanifold and not rep.is_normal


def test_validate_wedge():
    rep = validate(wedge())
    assert rep.pure and rep.connected and rep.non_branching
    assert not rep.strongly_connected
    assert not rep.link_condition
    assert rep.witnesses["link_condition"] == (0,)
    assert not rep.is_pseudomanifold and not rep.is_normal


def test_validate_tetrahedron_and_torus():
    for X in (tetrahedron_boundary(), generate_torus(3, 3)):
        rep = validate(X)
        assert rep.is_pseudomanifold and rep.is_normal


def test_validate_report_lines():
    lines = validate(cyc6_host()).as_lines()
    assert "is_normal=True" in lines
    assert any(line.startswith("dim=1") for line in lines)


def test_links_are_pseudomanifolds():
    ok, bad = links_are_pseudomanifolds(tetrahedron_boundary())
    assert ok and bad == []
    ok, bad = links_are_pseudomanifolds(generate_torus(3, 3))
    assert ok
    with pytest.raises(ValueError):
        links_are_pseudomanifolds(wedge())


def test_strictly_connected_oracle_on_4_cycle():
    X = closure([(0, 1), (1, 2), (2, 3), (0, 3)])
    assert strictly_connected_oracle(X)


def test_strictly_connected_oracle_guards_size():
    with pytest.raises(ValueError):
        strictly_connected_oracle(wedge())


def test_strictly_connected_oracle_pinched_triangles():
    # two triangles sharing one vertex: the open star around the pinch
    # vertex is connected but not strongly connected
    X = closure([(0, 1, 2), (2, 3, 4)])
    assert not strictly_connected_oracle(X)
    assert not validate(X).strictly_connected


def test_oracle_agrees_with_validate_on_small_fixtures():
    for X in (
        cyc6_host(),
        tetrahedron_boundary(),
        branching_triangles(),
        closure([(0, 1), (1, 2), (2, 3), (0, 3)]),
        closure([(0, 1, 2), (2, 3, 4)]),
    ):
        rep = validate(X)
        normal_by_def = (
            rep.is_pseudomanifold and rep.connected and strictly_connected_oracle(X)
        )
        assert normal_by_def == rep.is_normal


def test_generate_torus_counts():
    X = generate_torus(3, 3)
    assert len(X.faces_of_dim(0)) == 9
    assert len(X.faces_of_dim(1)) == 27
    assert len(X.faces_of_dim(2)) == 18
    assert X.euler_characteristic() == 0
    Y = generate_torus(4, 3)
    assert len(Y.faces_of_dim(0)) == 12
    assert len(Y.faces_of_dim(1)) == 36
    assert len(Y.faces_of_dim(2)) == 24
    assert Y.euler_characteristic() == 0


def test_generate_torus_guards():
    with pytest.raises(ValueError):
        generate_torus(2, 3)
    with pytest.raises(ValueError):
        generate_torus(3, 2)
