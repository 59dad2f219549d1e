import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import eulertrail as et
from eulertrail.trails import arcs_to_trail, closed_tour
from instances import complete, random_strong_semicomplete, three_cycle


def out_counts(arcs) -> dict[int, int]:
    counts: dict[int, int] = {}
    for u, _ in arcs:
        counts[u] = counts.get(u, 0) + 1
    return counts


def test_trail_accessors() -> None:
    t = et.Trail((0, 2, 0, 1))
    assert t.start == 0
    assert t.end == 1
    assert t.arcs() == [(0, 2), (2, 0), (0, 1)]


def test_validate_trail_flags_defects() -> None:
    d = complete(3)
    assert et.validate_trail(d, et.Trail((0, 2, 0, 1)), 0, 1) == []
    assert et.validate_trail(d, et.Trail((0, 2, 0, 1)), 0, 2) != []
    assert et.validate_trail(d, et.Trail((0, 1, 0, 1)), 0, 1) != []  # arc repeats
    assert et.validate_trail(d, et.Trail((0, 1)), 0, 1) != []  # misses vertex 2
    assert et.validate_trail(d, et.Trail((0, 1)), 0, 1, require_spanning=False) == []
    missing = et.validate_trail(three_cycle(), et.Trail((0, 2, 1)), 0, 1)
    assert any("not in the digraph" in issue for issue in missing)


def test_validate_eulerian_subdigraph_flags_defects() -> None:
    d = complete(3)
    triangle = et.EulerianSubdigraph(frozenset({(0, 1), (1, 2), (2, 0)}))
    assert et.validate_eulerian_subdigraph(d, triangle) == []
    assert triangle.vertices() == frozenset({0, 1, 2})
    unbalanced = et.EulerianSubdigraph(frozenset({(0, 1), (1, 2), (2, 0), (0, 2)}))
    assert et.validate_eulerian_subdigraph(d, unbalanced) != []
    not_spanning = et.EulerianSubdigraph(frozenset({(0, 1), (1, 0)}))
    assert et.validate_eulerian_subdigraph(d, not_spanning) != []
    foreign = et.EulerianSubdigraph(frozenset({(0, 1), (1, 0), (2, 2)}))
    assert et.validate_eulerian_subdigraph(d, foreign) != []
    # two disjoint 2-cycles balance but do not connect
    d4 = complete(4)
    split = et.EulerianSubdigraph(frozenset({(0, 1), (1, 0), (2, 3), (3, 2)}))
    assert any("connect" in i for i in et.validate_eulerian_subdigraph(d4, split))


def test_arcs_to_trail_reconstructs_a_walk() -> None:
    arcs = {(0, 1), (1, 2), (2, 1)}
    trail = arcs_to_trail(arcs, 0, 1)
    assert et.validate_trail(et.gen_d3(), trail, 0, 1) == []
    assert set(trail.arcs()) == arcs


def test_closed_tour_visits_every_arc_once() -> None:
    arcs = {(0, 1), (1, 2), (2, 0), (1, 0), (0, 2), (2, 1)}
    tour = closed_tour(arcs, 1)
    assert tour[0] == 1 and len(tour) == len(arcs)
    walked = list(zip(tour, tour[1:] + tour[:1]))  # the closing arc is implicit
    assert set(walked) == arcs
    with pytest.raises(et.ConstructionError):
        closed_tour({(0, 1), (1, 0), (2, 3), (3, 2)}, 0)  # two separate tours


def test_spanning_trail_basic() -> None:
    d = complete(3)
    trail = et.spanning_trail(d, 0, 1)
    assert et.validate_trail(d, trail, 0, 1) == []
    arcs = trail.arcs()
    assert (1, 0) not in arcs
    assert all(c <= 2 for c in out_counts(arcs).values())
    assert out_counts(arcs).get(1, 0) <= 1


def test_spanning_trail_preconditions() -> None:
    with pytest.raises(et.PreconditionError):
        et.spanning_trail(three_cycle(), 0, 1)  # only one (0,1)-path
    with pytest.raises(et.PreconditionError):
        et.spanning_trail(complete(3), 0, 0)
    with pytest.raises(et.PreconditionError):
        et.spanning_trail(et.Digraph(3, [(0, 1), (1, 2)]), 0, 2)
    with pytest.raises(et.PreconditionError):
        et.spanning_trail(et.Digraph(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (0, 2), (1, 3), (0, 3)]), 3, 0)


def test_spanning_trail_reports_the_separating_cut() -> None:
    try:
        et.spanning_trail(three_cycle(), 0, 1)
    except et.PreconditionError as exc:
        assert "(0, 1)" in str(exc)
    else:  # pragma: no cover
        raise AssertionError("expected a PreconditionError")


def test_spanning_trail_trace_names_a_route() -> None:
    trace: list[str] = []
    et.spanning_trail(complete(4), 0, 3, trace=trace)
    assert trace


@settings(max_examples=50)
@given(n=st.integers(min_value=4, max_value=7), seed=st.integers(0, 10**6))
def test_spanning_trail_for_every_linked_pair(n: int, seed: int) -> None:
    d = random_strong_semicomplete(n, seed)
    for x in d.vertices():
        for y in d.vertices():
            if x == y:
                continue
            if isinstance(et.arc_disjoint_paths(d, x, y, 2), et.CutCertificate):
                continue
            trail = et.spanning_trail(d, x, y)
            assert et.validate_trail(d, trail, x, y) == []
            arcs = trail.arcs()
            assert (y, x) not in arcs
            assert all(c <= 2 for c in out_counts(arcs).values())
            assert out_counts(arcs).get(y, 0) <= 1


def test_is_eulerian_connected_frozen_cases() -> None:
    assert et.is_eulerian_connected(complete(4)) == (True, None)
    assert et.is_eulerian_connected(three_cycle()) == (False, (0, 1))
    # in the small exceptional digraph only the pair (1, 2) lacks a trail
    assert et.is_eulerian_connected(et.gen_d3()) == (False, (1, 2))
