import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseshed.complexes import closure
from morseshed.fixtures import cyc6_host, cyc6_stack, tetrahedron_boundary
from morseshed.manifolds import generate_torus
from morseshed.morse import (
    AtMinimum,
    Blocked,
    Extended,
    GradientField,
    LambdaPath,
    biconnected_faces,
    classify,
    dmf_dual_check,
    extend_path,
    flat_pairs,
    gradient,
    is_morse,
    random_morse_stack,
    separating_faces,
    stack_from_gradient,
    trace_all,
    trace_to_minimum,
)
from morseshed.stacks import Stack, StackError, stack_free_pairs, validate_stack


def constant_stack(X, value=0):
    return Stack(X, {x: value for x in X.faces})


def strictly_decreasing_stack(X):
    return Stack(X, {x: -len(x) for x in X.faces})


FIX_FLAT_PAIRS = {
    ((0,), (0, 5)),
    ((1,), (1, 2)),
    ((2,), (2, 3)),
    ((4,), (4, 5)),
}


def test_flat_pairs_fixture():
    assert flat_pairs(cyc6_stack()) == FIX_FLAT_PAIRS


def test_is_morse():
    assert is_morse(cyc6_stack()) == (True, None)
    ok, witness = is_morse(constant_stack(tetrahedron_boundary()))
    assert not ok and witness is not None
    assert is_morse(strictly_decreasing_stack(cyc6_host())) == (True, None)


def test_gradient():
    assert gradient(cyc6_stack()).pairs == frozenset(FIX_FLAT_PAIRS)
    assert gradient(strictly_decreasing_stack(cyc6_host())).pairs == frozenset()
    with pytest.raises(StackError):
        gradient(constant_stack(tetrahedron_boundary()))


def test_classify_fixture():
    rep = classify(cyc6_stack())
    assert rep.critical == {(0, 1), (3, 4), (3,), (5,)}
    assert len(rep.regular) == 8
    assert rep.critical_of_dim(0) == [(3,), (5,)]
    assert rep.critical_of_dim(1) == [(0, 1), (3, 4)]


def test_classify_all_critical_when_no_flat_pair():
    F = strictly_decreasing_stack(cyc6_host())
    assert classify(F).critical == F.host.faces


def test_free_pairs_equal_flat_pairs_on_morse_stacks():
    F = cyc6_stack()
    assert stack_free_pairs(F) == flat_pairs(F)
    for seed in range(10):
        G = random_morse_stack(generate_torus(3, 3), seed=seed)
        assert stack_free_pairs(G) == flat_pairs(G)


def test_extend_path_reversed_walk_to_minimum():
    F = cyc6_stack()
    faces = [(2, 3)]
    expected = [(2,), (1, 2), (1,), (0, 1)]
    for want in expected:
        step = extend_path(F, LambdaPath(tuple(faces), p=1, reverse=True))
        assert step == Extended(want)
        faces.insert(0, want)
    assert isinstance(
        extend_path(F, LambdaPath(tuple(faces), p=1, reverse=True)), AtMinimum
    )


def test_extend_path_forward_blocked_at_separating_vertex():
    F = cyc6_stack()
    path = LambdaPath(((3, 4), (4,), (4, 5), (5,)), p=1)
    path.check(F)
    assert extend_path(F, path) == Blocked((5,))


def test_extend_path_reversed_at_minimum():
    F = cyc6_stack()
    assert isinstance(
        extend_path(F, LambdaPath(((0, 1),), p=1, reverse=True)), AtMinimum
    )


def test_lambda_path_check_rejects_bad_paths():
    F = cyc6_stack()
    with pytest.raises(ValueError):
        LambdaPath(((0, 1), (3,)), p=1).check(F)  # not a covering pair
    with pytest.raises(ValueError):
        LambdaPath(((2, 3), (2,), (1, 2)), p=1).check(F)  # descending order


def test_trace_to_minimum_fixture():
    F = cyc6_stack()
    m, path = trace_to_minimum(F, (2, 3))
    assert m == (0, 1)
    assert path.faces == ((0, 1), (1,), (1, 2), (2,), (2, 3))
    path.check(F)
    m, path = trace_to_minimum(F, (4, 5))
    assert m == (3, 4)
    assert path.faces == ((3, 4), (4,), (4, 5))
    m, path = trace_to_minimum(F, (0, 1))
    assert m == (0, 1) and path.faces == ((0, 1),)


def test_trace_all_fixture():
    mins = trace_all(cyc6_stack())
    assert mins[(2, 3)] == (0, 1)
    assert mins[(4, 5)] == (3, 4)
    assert set(mins.values()) == {(0, 1), (3, 4)}


def test_biconnected_and_separating_fixture():
    F = cyc6_stack()
    assert biconnected_faces(F) == {(3,), (5,)}
    assert separating_faces(F) == {(3,), (5,)}


def test_single_minimum_has_no_biconnected_faces():
    F = random_morse_stack(tetrahedron_boundary(), seed=0)
    from morseshed.stacks import minima

    if len(minima(F).minima) == 1:
        assert biconnected_faces(F) == set()


@given(st.integers(0, 500))
@settings(max_examples=50, deadline=None)
def test_random_morse_stack_is_morse(seed):
    for host in (closure([(0, 1, 2)]), cyc6_host(), tetrahedron_boundary()):
        F = random_morse_stack(host, seed=seed)
        assert validate_stack(F) == (True, None)
        assert is_morse(F) == (True, None)


def test_random_morse_stack_critical_counts():
    for seed in range(30):
        F = random_morse_stack(closure([(0, 1, 2)]), seed=seed)
        crit = classify(F).critical
        assert len(crit) == 1 and len(next(iter(crit))) == 1  # one vertex
        G = random_morse_stack(cyc6_host(), seed=seed)
        assert len(classify(G).critical) == 2


def test_random_morse_stack_minima_count():
    from morseshed.stacks import minima

    host = tetrahedron_boundary()
    for seed in range(10):
        # the default process leaves exactly one minimum on a closed host
        assert len(minima(random_morse_stack(host, seed=seed)).minima) == 1
        for k in (2, 3):
            F = random_morse_stack(host, seed=seed, n_minima=k)
            assert is_morse(F) == (True, None)
            assert len(minima(F).minima) == k
        # n_minima=1 coincides with the default
        assert dict(random_morse_stack(host, seed=seed, n_minima=1).altitude) == dict(
            random_morse_stack(host, seed=seed).altitude
        )


def test_random_morse_stack_empty_complex():
    F = random_morse_stack(closure([]), seed=0)
    assert dict(F.altitude) == {}


def test_stack_from_gradient_empty_matching_on_edge():
    X = closure([(0, 1)])
    F = stack_from_gradient(X, GradientField(frozenset()))
    assert F.altitude[(0, 1)] == 1
    assert F.altitude[(0,)] == 2 and F.altitude[(1,)] == 2
    assert classify(F).critical == X.faces


def test_stack_from_gradient_round_trip_fixture():
    F = cyc6_stack()
    V = gradient(F)
    G = stack_from_gradient(F.host, V)
    assert is_morse(G) == (True, None)
    assert gradient(G).pairs == V.pairs
    assert classify(G).critical == classify(F).critical


def test_stack_from_gradient_rejects_bad_matchings():
    X = closure([(0, 1, 2)])
    with pytest.raises(ValueError):
        stack_from_gradient(
            X,
            GradientField(frozenset({((0,), (0, 1)), ((0,), (0, 2))})),
        )
    with pytest.raises(ValueError):
        stack_from_gradient(X, GradientField(frozenset({((0,), (1, 2))})))


def test_stack_from_gradient_rejects_cycles():
    X = closure([(0, 1), (1, 2), (0, 2)])
    V = GradientField(
        frozenset({((0,), (0, 1)), ((1,), (1, 2)), ((2,), (0, 2))})
    )
    with pytest.raises(ValueError):
        stack_from_gradient(X, V)


def test_dmf_dual_check_examples():
    assert dmf_dual_check(cyc6_stack())
    assert dmf_dual_check(constant_stack(tetrahedron_boundary()))
    assert dmf_dual_check(strictly_decreasing_stack(cyc6_host()))


@given(st.integers(0, 300))
@settings(max_examples=40, deadline=None)
def test_dmf_dual_check_fuzz(seed):
    F = random_morse_stack(generate_torus(3, 3), seed=seed)
    assert dmf_dual_check(F)
