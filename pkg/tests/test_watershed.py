import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseshed.complexes import Complex, closure
from morseshed.fixtures import cyc6_stack, tetrahedron_boundary
from morseshed.manifolds import generate_torus, validate
from morseshed.morse import random_morse_stack
from morseshed.stacks import Stack, StackError, minima
from morseshed.watershed import (
    WATERSHED_LABEL,
    morse_watershed,
    morse_watershed_direct,
    verify_cut,
    verify_drop_of_water,
    watershed_collapse,
)

BASIN_E01 = frozenset({(0, 5), (0,), (0, 1), (1,), (1, 2), (2,), (2, 3)})
BASIN_E34 = frozenset({(3, 4), (4,), (4, 5)})


def constant_stack(X, value=0):
    return Stack(X, {x: value for x in X.faces})


def test_watershed_collapse_fixture_any_seed():
    F = cyc6_stack()
    for seed in range(20):
        r = watershed_collapse(F, seed=seed)
        assert r.watershed.faces == {(3,), (5,)}
        assert {fs for _, fs in r.basins} == {BASIN_E01, BASIN_E34}
        assert r.labels[(3,)] == WATERSHED_LABEL
        assert r.labels[(5,)] == WATERSHED_LABEL


def test_watershed_collapse_constant_stack():
    r = watershed_collapse(constant_stack(tetrahedron_boundary()))
    assert len(r.watershed.faces) == 0
    assert len(r.basins) == 1
    assert r.basins[0][1] == tetrahedron_boundary().faces


def test_morse_watershed_fixture():
    r = morse_watershed(cyc6_stack())
    assert r.watershed.faces == {(3,), (5,)}
    assert r.basin_sizes() == {1: 7, 2: 3}
    assert all(r.labels[x] == 1 for x in BASIN_E01)
    assert all(r.labels[x] == 2 for x in BASIN_E34)


def test_morse_watershed_single_minimum():
    for seed in range(5):
        F = random_morse_stack(tetrahedron_boundary(), seed=seed)
        if len(minima(F).minima) == 1:
            r = morse_watershed(F)
            assert len(r.watershed.faces) == 0
            assert len(r.basins) == 1


def test_morse_watershed_direct_fixture():
    assert morse_watershed_direct(cyc6_stack()).faces == {(3,), (5,)}


def test_morse_watershed_rejects_non_morse():
    with pytest.raises(StackError):
        morse_watershed(constant_stack(tetrahedron_boundary()))
    with pytest.raises(StackError):
        morse_watershed_direct(constant_stack(tetrahedron_boundary()))


def test_morse_watershed_rejects_branching_host():
    from morseshed.fixtures import branching_triangles

    X = branching_triangles()
    with pytest.raises(StackError):
        morse_watershed(random_morse_stack(X, seed=0))


def test_morse_watershed_empty_complex():
    r = morse_watershed(Stack(Complex(()), {}))
    assert r.labels == {} and r.basins == ()


@given(st.integers(0, 300))
@settings(max_examples=30, deadline=None)
def test_three_algorithms_agree(seed):
    F = random_morse_stack(generate_torus(3, 3), seed=seed, n_minima=1 + seed % 4)
    cut = morse_watershed_direct(F).faces
    assert morse_watershed(F).watershed.faces == cut
    for cseed in range(3):
        assert watershed_collapse(F, seed=cseed).watershed.faces == cut


def test_collapse_seed_independence_on_torus():
    F = random_morse_stack(generate_torus(3, 3), seed=7)
    cuts = {frozenset(watershed_collapse(F, seed=s).watershed.faces) for s in range(10)}
    assert len(cuts) == 1


def test_verify_cut_fixture():
    F = cyc6_stack()
    assert verify_cut(F, closure([(3,), (5,)]))
    assert not verify_cut(F, closure([(3,)]))
    assert not verify_cut(F, Complex(()))  # two minima, no cut


def test_verify_cut_rejects_foreign_subcomplex():
    F = cyc6_stack()
    with pytest.raises(ValueError):
        verify_cut(F, closure([(7, 8)]))


def test_verify_drop_of_water_fixture():
    F = cyc6_stack()
    assert verify_drop_of_water(F, closure([(3,), (5,)]))
    assert verify_drop_of_water(F, Complex(()))  # vacuous
    # vertex 1 descends only toward e01 on both sides: not a valid drop
    assert not verify_drop_of_water(F, closure([(1,)]))


@given(st.integers(0, 300))
@settings(max_examples=15, deadline=None)
def test_cut_is_pure_codimension_one(seed):
    F = random_morse_stack(generate_torus(3, 3), seed=seed)
    W = morse_watershed(F).watershed
    if W.faces:
        assert W.dim == F.host.dim - 1
        assert W.is_pure()
        rep = validate(F.host)
        assert rep.is_normal  # precondition of the purity statement


def test_labels_partition_the_host():
    F = random_morse_stack(generate_torus(4, 4), seed=3)
    r = morse_watershed(F)
    assert set(r.labels) == set(F.host.faces)
    basin_union = set()
    for _, fs in r.basins:
        assert not (fs & basin_union)
        basin_union |= fs
    assert basin_union | r.watershed.faces == set(F.host.faces)
