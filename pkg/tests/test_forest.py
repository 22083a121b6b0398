import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseshed.fixtures import cyc6_stack, tetrahedron_boundary
from morseshed.forest import (
    WeightedFacetGraph,
    build_facet_graph,
    enumerate_msfs,
    is_rooted_forest,
    msf_is_unique,
    msf_oracle,
    msf_weight,
    verify_msf_theorem,
    watershed_forest,
)
from morseshed.manifolds import generate_torus
from morseshed.morse import random_morse_stack
from morseshed.stacks import StackError, complete_from_facets, minima

FIX_WEIGHTS = {
    ((0, 1), (1, 2)): 1,
    ((1, 2), (2, 3)): 2,
    ((2, 3), (3, 4)): 3,
    ((3, 4), (4, 5)): 1,
    ((4, 5), (0, 5)): 3,
    ((0, 1), (0, 5)): 2,
}

FIX_FOREST_EDGES = {
    ((0, 1), (0, 5)),
    ((0, 1), (1, 2)),
    ((1, 2), (2, 3)),
    ((3, 4), (4, 5)),
}


def _norm(e):
    a, b = e
    return (a, b) if (len(a), a) <= (len(b), b) else (b, a)


def test_build_facet_graph_fixture():
    G = build_facet_graph(cyc6_stack())
    assert set(G.vertices) == set(FIX_WEIGHTS_VERTICES())
    assert {e: w for e, w in G.edges.items()} == {
        _norm(e): w for e, w in FIX_WEIGHTS.items()
    }
    # the shared face of a dual edge is the vertex between the two edges
    assert G.shared[_norm(((0, 1), (1, 2)))] == (1,)


def FIX_WEIGHTS_VERTICES():
    return [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]


def test_build_facet_graph_tetrahedron_is_complete():
    F = complete_from_facets(
        tetrahedron_boundary(), {x: 0 for x in tetrahedron_boundary().facets()}
    )
    G = build_facet_graph(F)
    assert len(G.vertices) == 4
    assert len(G.edges) == 6  # K4


def test_build_facet_graph_torus_counts():
    F = random_morse_stack(generate_torus(3, 3), seed=0)
    G = build_facet_graph(F)
    assert len(G.vertices) == 18
    assert len(G.edges) == 27
    assert all(G.degree(v) == 3 for v in G.vertices)


def test_is_rooted_forest():
    verts = set(FIX_WEIGHTS_VERTICES())
    roots = {(0, 1), (3, 4)}
    assert is_rooted_forest(roots, set(), roots)
    assert is_rooted_forest(verts, set(FIX_FOREST_EDGES), roots)
    # a cycle can never be peeled
    cycle = {_norm(e) for e in FIX_WEIGHTS}
    assert not is_rooted_forest(verts, cycle, roots)
    with pytest.raises(ValueError):
        is_rooted_forest(verts, set(), {(9, 9)})


def test_watershed_forest_fixture():
    F = cyc6_stack()
    Y = watershed_forest(F)
    assert Y.edges == {_norm(e) for e in FIX_FOREST_EDGES}
    assert Y.roots == {(0, 1), (3, 4)}
    G = build_facet_graph(F)
    assert Y.weight(G) == 6
    assert {frozenset(t) for t in Y.trees()} == {
        frozenset({(0, 1), (0, 5), (1, 2), (2, 3)}),
        frozenset({(3, 4), (4, 5)}),
    }


def test_watershed_forest_rejects_non_morse():
    F = complete_from_facets(
        tetrahedron_boundary(), {x: 0 for x in tetrahedron_boundary().facets()}
    )
    with pytest.raises(StackError):
        watershed_forest(F)


def test_watershed_forest_single_minimum_spans():
    for seed in range(10):
        F = random_morse_stack(tetrahedron_boundary(), seed=seed)
        if len(minima(F).minima) != 1:
            continue
        Y = watershed_forest(F)
        assert len(Y.edges) == 3  # spanning tree on 4 facets
        assert is_rooted_forest(set(Y.vertices), set(Y.edges), set(Y.roots))


def test_msf_oracle_fixture():
    F = cyc6_stack()
    G = build_facet_graph(F)
    roots = frozenset({(0, 1), (3, 4)})
    weight, forests = msf_oracle(G, roots)
    assert weight == 6
    assert forests == [watershed_forest(F).edges]
    assert msf_is_unique(G, roots)


def test_msf_oracle_roots_only():
    G = WeightedFacetGraph(((0, 1), (3, 4)), {}, {})
    weight, forests = msf_oracle(G, frozenset({(0, 1), (3, 4)}))
    assert weight == 0
    assert forests == [frozenset()]


def test_msf_multiple_on_tied_cycle():
    # 4-cycle a-b-c-d, all weights 1, roots {a, c}: b and d can attach
    # to either side, so 4 minimum forests exist
    a, b, c, d = (0,), (1,), (2,), (3,)
    edges = {(a, b): 1, (b, c): 1, (c, d): 1, (a, d): 1}
    G = WeightedFacetGraph((a, b, c, d), edges, {e: e[0] for e in edges})
    roots = frozenset({a, c})
    weight, forests = msf_oracle(G, roots)
    assert weight == 2
    assert len(forests) == 4
    assert not msf_is_unique(G, roots)


def test_msf_weight_guards():
    a, b = (0,), (1,)
    G = WeightedFacetGraph((a, b), {}, {})
    with pytest.raises(ValueError):
        msf_weight(G, frozenset())
    with pytest.raises(ValueError):
        msf_weight(G, frozenset({a}))  # b unreachable


def test_enumerate_msfs_size_guard():
    F = random_morse_stack(generate_torus(3, 3), seed=0)
    G = build_facet_graph(F)
    with pytest.raises(ValueError):
        enumerate_msfs(G, frozenset({G.vertices[0]}), max_vertices=12)


def test_verify_msf_theorem_fixture():
    checks = verify_msf_theorem(cyc6_stack())
    assert checks == {
        "rooted": True,
        "weight": True,
        "unique": True,
        "basins": True,
        "min_edge": True,
    }


@given(st.integers(0, 300))
@settings(max_examples=25, deadline=None)
def test_verify_msf_theorem_fuzz(seed):
    F = random_morse_stack(generate_torus(3, 3), seed=seed, n_minima=1 + seed % 4)
    assert all(verify_msf_theorem(F).values())


def test_forest_weight_and_trees_consistency():
    F = random_morse_stack(generate_torus(3, 3), seed=11)
    G = build_facet_graph(F)
    Y = watershed_forest(F)
    assert Y.weight(G) == msf_weight(G, Y.roots)
    assert sum(len(t) for t in Y.trees()) == len(Y.vertices)
