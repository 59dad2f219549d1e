import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import eulertrail as et
from eulertrail.factor import is_semicomplete_multipartite
from eulertrail.oracle import oracle_eulerian_factor, spanning_eulerian_exists
from instances import complete, random_strong_semicomplete, t4, three_cycle


def balanced_everywhere(d: et.Digraph, arcs) -> bool:
    outs = {v: 0 for v in d.vertices()}
    ins = {v: 0 for v in d.vertices()}
    for u, v in arcs:
        if not d.has_arc(u, v):
            return False
        outs[u] += 1
        ins[v] += 1
    return all(outs[v] == ins[v] >= 1 for v in d.vertices())


def test_eulerian_factor_on_complete() -> None:
    result = et.eulerian_factor(complete(4))
    assert isinstance(result, et.EulerianFactor)
    assert balanced_everywhere(complete(4), result.arcs)
    covered = set().union(*result.components) if result.components else set()
    assert covered == set(range(4))


def test_eulerian_factor_obstruction() -> None:
    result = et.eulerian_factor(three_cycle(), avoid={(0, 1)})
    assert isinstance(result, et.ObstructionPartition)
    assert result.check(three_cycle(), frozenset({(0, 1)})) == []


def test_eulerian_factor_works_on_non_semicomplete_digraphs() -> None:
    two_cycles = et.Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    result = et.eulerian_factor(two_cycles)
    assert isinstance(result, et.EulerianFactor)
    assert len(result.components) == 2
    assert frozenset({0, 1, 2}) in result.components


def test_obstruction_partition_check_is_strict() -> None:
    d = three_cycle()
    bogus = et.ObstructionPartition(frozenset({0}), frozenset({1}), frozenset({2}))
    assert bogus.check(d) != []
    partial = et.ObstructionPartition(frozenset({0}), frozenset(), frozenset({2}))
    assert "partition" in partial.check(d)[0]


@settings(max_examples=120)
@given(
    n=st.integers(min_value=3, max_value=6),
    prob=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(0, 10**6),
    picks=st.integers(min_value=0, max_value=4),
)
def test_eulerian_factor_matches_oracle(
    n: int, prob: float, seed: int, picks: int
) -> None:
    d = et.gen_random_semicomplete(n, prob, seed)
    rng = random.Random(seed)
    arcs = list(d.arcs())
    avoid = frozenset(rng.sample(arcs, min(picks, len(arcs))))
    result = et.eulerian_factor(d, avoid)
    if isinstance(result, et.EulerianFactor):
        assert oracle_eulerian_factor(d, avoid)
        assert balanced_everywhere(d, result.arcs)
        assert not (set(result.arcs) & avoid)
    else:
        assert not oracle_eulerian_factor(d, avoid)
        assert result.check(d, avoid) == []
        # the three defining conditions, spelled out
        allowed = [a for a in d.arcs() if a not in avoid]
        assert not any(u in result.y and v in result.y for u, v in allowed)
        assert not any(u in result.r2 and v in result.y for u, v in allowed)
        assert not any(u in result.y and v in result.r1 for u, v in allowed)
        crossing = sum(1 for u, v in allowed if u in result.r2 and v in result.r1)
        assert crossing < len(result.y)


def test_factor_exists_guarantee() -> None:
    assert et.factor_exists_guarantee(complete(5), 3)
    assert et.factor_exists_guarantee(t4(), 0)
    assert not et.factor_exists_guarantee(t4(), 1)


def test_is_star_set() -> None:
    assert et.is_star_set(frozenset())
    assert et.is_star_set({(0, 1)})
    assert et.is_star_set({(0, 1), (0, 2)})
    assert et.is_star_set({(0, 1), (2, 1)})
    assert et.is_star_set({(0, 1), (2, 3)})
    assert et.is_star_set({(0, 1), (1, 2)})  # both arcs touch vertex 1
    assert not et.is_star_set({(0, 1), (1, 2), (2, 3)})
    assert not et.is_star_set({(0, 1), (2, 3), (1, 2)})


def test_merge_all_joins_components() -> None:
    d = complete(6)
    factor = {(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)}
    merged = et.merge_all(d, factor)
    assert merged is not None
    assert et.validate_eulerian_subdigraph(d, et.EulerianSubdigraph(merged)) == []


def test_merge_all_respects_protected_arcs() -> None:
    d = complete(6)
    keep = frozenset({(0, 1), (1, 2), (2, 0)})
    factor = keep | {(3, 4), (4, 5), (5, 3)}
    merged = et.merge_all(d, factor, protected=keep)
    assert merged is not None and keep <= merged


def test_merge_all_respects_avoid() -> None:
    d = complete(6)
    factor = {(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)}
    avoid = frozenset({(0, 3), (3, 0)})
    merged = et.merge_all(d, factor, avoid=avoid)
    assert merged is not None
    assert not (merged & avoid)


def test_check_merge_obstructions_reports_options() -> None:
    d = complete(6)
    h1 = {(0, 1), (1, 2), (2, 0)}
    h2 = {(3, 4), (4, 5), (5, 3)}
    options = et.check_merge_obstructions(d, h1, h2)
    assert set(options) == {"a", "b", "c", "d", "e"}
    two_cycle = options["a"]
    assert two_cycle is not None
    u, v = next(iter(two_cycle.add_arcs))
    assert d.has_arc(u, v) and d.has_arc(v, u)


def test_is_semicomplete_multipartite() -> None:
    assert is_semicomplete_multipartite(complete(4))
    pair = complete(4).remove_arcs([(0, 1), (1, 0)])
    assert is_semicomplete_multipartite(pair)
    broken = complete(4).remove_arcs([(0, 1), (1, 0), (1, 2), (2, 1)])
    assert not is_semicomplete_multipartite(broken)


def test_spanning_eulerian_avoiding_certificate() -> None:
    d = complete(4)
    result = et.spanning_eulerian_avoiding(d, frozenset({(0, 1)}))
    assert isinstance(result, et.EulerianSubdigraph)
    assert (0, 1) not in result.arcs
    assert et.validate_eulerian_subdigraph(d, result) == []


def test_spanning_eulerian_avoiding_cut_obstruction() -> None:
    result = et.spanning_eulerian_avoiding(three_cycle(), frozenset({(0, 1)}))
    assert isinstance(result, et.NonStrongCut)
    cert = result.certificate
    assert cert.side_s | cert.side_t == {0, 1, 2}
    # inside the allowed arcs nothing crosses the cut
    assert all(a == (0, 1) for a in cert.crossing_arcs) or not cert.crossing_arcs


def test_spanning_eulerian_avoiding_partition_obstruction() -> None:
    d = et.gen_exceptional(False)
    result = et.spanning_eulerian_avoiding(d, frozenset({(0, 3)}))
    assert isinstance(result, et.ObstructionPartition)
    assert result.check(d, frozenset({(0, 3)})) == []
    assert result.r1 == frozenset({2})
    assert result.r2 == frozenset({1})
    assert result.y == frozenset({0, 3})


def test_spanning_eulerian_avoiding_rejects_foreign_arcs() -> None:
    with pytest.raises(et.PreconditionError):
        et.spanning_eulerian_avoiding(three_cycle(), frozenset({(1, 0)}))


def test_trace_direct_multipartite_route() -> None:
    trace: list[str] = []
    result = et.spanning_eulerian_avoiding(
        complete(5), frozenset({(0, 1), (1, 0)}), trace=trace
    )
    assert isinstance(result, et.EulerianSubdigraph)
    assert "multipartite-direct" in trace


def test_trace_multipartite_reduction_route() -> None:
    forbidden = frozenset({(0, 1), (1, 0), (1, 2), (2, 1)})
    trace: list[str] = []
    result = et.spanning_eulerian_avoiding(complete(9), forbidden, trace=trace)
    assert isinstance(result, et.EulerianSubdigraph)
    assert "multipartite-reduction" in trace
    assert not (result.arcs & forbidden)
    assert et.validate_eulerian_subdigraph(complete(9), result) == []


def test_star_sets_with_high_connectivity_always_succeed() -> None:
    d = complete(7)  # arc-connectivity 6
    star = frozenset({(0, 1), (0, 2), (0, 3), (4, 0), (0, 5)})
    result = et.spanning_eulerian_avoiding(d, star)
    assert isinstance(result, et.EulerianSubdigraph)
    assert not (result.arcs & star)


@settings(max_examples=60)
@given(n=st.integers(min_value=4, max_value=7), seed=st.integers(0, 10**6))
def test_single_avoided_arc_with_lambda_two(n: int, seed: int) -> None:
    d = random_strong_semicomplete(n, seed)
    if et.arc_connectivity(d) < 2:
        return
    for arc in d.arcs():
        result = et.spanning_eulerian_avoiding(d, frozenset({arc}))
        assert isinstance(result, et.EulerianSubdigraph)
        assert arc not in result.arcs


@settings(max_examples=80)
@given(
    n=st.integers(min_value=3, max_value=6),
    prob=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(0, 10**6),
    picks=st.integers(min_value=0, max_value=3),
)
def test_avoiding_pipeline_agrees_with_oracle(
    n: int, prob: float, seed: int, picks: int
) -> None:
    d = et.gen_random_semicomplete(n, prob, seed)
    if not et.is_strong(d):
        return
    rng = random.Random(seed + 1)
    arcs = list(d.arcs())
    avoid = frozenset(rng.sample(arcs, min(picks, len(arcs))))
    result = et.spanning_eulerian_avoiding(d, avoid)
    exists = spanning_eulerian_exists(d, must_avoid=avoid)
    if isinstance(result, et.EulerianSubdigraph):
        assert exists
        assert not (result.arcs & avoid)
        assert et.validate_eulerian_subdigraph(d, result) == []
    elif result is None:
        assert not exists  # inconclusive never hides an existing certificate
    else:
        assert not exists
