"""Spanning trails between prescribed endpoints in semicomplete digraphs.

The central routine, ``spanning_trail``, turns two arc-disjoint (x,y)-paths
into a spanning (x,y)-trail that avoids the arc yx and leaves every vertex
at most twice (the terminal y at most once).  The construction runs a case
ladder over how the digraph decomposes once the shorter path's arcs are
removed; each case output is validated, and a rejected candidate falls
through to the next strategy, ending with a completion via circulation and
finally a brute-force search on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connectivity import (
    CutCertificate,
    arc_connectivity,
    arc_disjoint_paths,
    is_strong,
    strong_components,
)
from .digraph import Arc, Digraph, is_semicomplete
from .errors import ConstructionError, PreconditionError
from .hamilton import SubDigraph, cycle_covering_complement, hamiltonian_cycle
from ._flow import feasible_circulation

_INF = float("inf")


@dataclass(frozen=True)
class Trail:
    """An open trail as a vertex sequence; consecutive arcs are distinct."""

    vertices: tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def arcs(self) -> list[Arc]:
        return [
            (self.vertices[i], self.vertices[i + 1])
            for i in range(len(self.vertices) - 1)
        ]


@dataclass(frozen=True)
class EulerianSubdigraph:
    """A set of arcs balanced at every vertex and weakly connected."""

    arcs: frozenset[Arc]

    def vertices(self) -> frozenset[int]:
        return frozenset(v for a in self.arcs for v in a)


def validate_trail(
    d: Digraph,
    trail: Trail,
    x: int,
    y: int,
    require_spanning: bool = True,
) -> list[str]:
    """Violation report for a claimed spanning (x,y)-trail; empty means valid."""
    issues: list[str] = []
    seq = trail.vertices
    if not seq or seq[0] != x or seq[-1] != y:
        issues.append("endpoints do not match")
    arcs = trail.arcs()
    for a in arcs:
        if not d.has_arc(*a):
            issues.append(f"arc {a} is not in the digraph")
    if len(set(arcs)) != len(arcs):
        issues.append("an arc repeats")
    if require_spanning and set(seq) != set(d.vertices()):
        issues.append("trail does not cover every vertex")
    return issues


def validate_eulerian_subdigraph(d: Digraph, sub: EulerianSubdigraph) -> list[str]:
    """Violation report for a claimed spanning eulerian subdigraph."""
    issues: list[str] = []
    outs = {v: 0 for v in d.vertices()}
    ins = {v: 0 for v in d.vertices()}
    for u, v in sub.arcs:
        if not d.has_arc(u, v):
            issues.append(f"arc ({u},{v}) is not in the digraph")
            return issues
        outs[u] += 1
        ins[v] += 1
    for v in d.vertices():
        if outs[v] != ins[v]:
            issues.append(f"vertex {v} is unbalanced")
        if outs[v] == 0:
            issues.append(f"vertex {v} is not covered")
    if issues:
        return issues
    if not _weakly_connected_covering(d.n, sub.arcs):
        issues.append("arc set is not connected")
    return issues


# ---- arc-set utilities ----


def _weakly_connected_covering(n: int, arcs) -> bool:
    if n <= 1:
        return True
    adj: dict[int, set[int]] = {}
    for u, v in arcs:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(adj) != n:
        return False
    seen = {0}
    stack = [0]
    while stack:
        for w in adj.get(stack.pop(), ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def arcs_to_trail(arcs, x: int, y: int) -> Trail:
    """Order an (x,y)-balanced arc set into one open trail (Hierholzer)."""
    succ: dict[int, list[int]] = {}
    for u, v in arcs:
        succ.setdefault(u, []).append(v)
    for heads in succ.values():
        heads.sort(reverse=True)  # pop() takes the smallest head
    stack = [x]
    walk: list[int] = []
    while stack:
        v = stack[-1]
        if succ.get(v):
            stack.append(succ[v].pop())
        else:
            walk.append(stack.pop())
    walk.reverse()
    if len(walk) != len(list(arcs)) + 1 or walk[0] != x or walk[-1] != y:
        raise ConstructionError("arc set does not form a single (x,y)-trail")
    return Trail(tuple(walk))


def closed_tour(arcs, start: int) -> list[int]:
    """Vertex sequence of a closed eulerian tour of a balanced arc set."""
    succ: dict[int, list[int]] = {}
    for u, v in arcs:
        succ.setdefault(u, []).append(v)
    for heads in succ.values():
        heads.sort(reverse=True)
    stack = [start]
    walk: list[int] = []
    while stack:
        v = stack[-1]
        if succ.get(v):
            stack.append(succ[v].pop())
        else:
            walk.append(stack.pop())
    walk.reverse()
    if len(walk) != len(list(arcs)) + 1 or walk[0] != start or walk[-1] != start:
        raise ConstructionError("arc set does not form a single closed tour")
    return walk[:-1]


def _path_arcs(path: list[int]) -> list[Arc]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


def _valid_trail_arcs(d: Digraph, arcs: frozenset[Arc] | set[Arc], x: int, y: int) -> bool:
    outs = [0] * d.n
    ins = [0] * d.n
    for u, v in arcs:
        if not d.has_arc(u, v):
            return False
        outs[u] += 1
        ins[v] += 1
    if (y, x) in arcs:
        return False
    for v in range(d.n):
        want = 1 if v == x else (-1 if v == y else 0)
        if outs[v] - ins[v] != want:
            return False
        if outs[v] + ins[v] == 0:
            return False
        if outs[v] > 2 or (v == y and outs[v] > 1):
            return False
    return _weakly_connected_covering(d.n, arcs)


# ---- minimal path pair ----


def _minimal_pair(d: Digraph, x: int, y: int) -> tuple[list[int], list[int]]:
    """Two arc-disjoint (x,y)-paths of minimum total length, shorter first.

    Successive shortest augmentation with unit arc costs; ties break on
    the fixed lexicographic arc order, so the result is deterministic.
    """
    flow: set[Arc] = set()
    arcs = list(d.arcs())
    for _ in range(2):
        dist: list[float] = [_INF] * d.n
        dist[x] = 0
        pred: list[tuple[int, Arc] | None] = [None] * d.n
        for sweep in range(d.n + 2):
            changed = False
            for u, v in arcs:
                if (u, v) in flow:
                    if dist[v] - 1 < dist[u]:
                        dist[u] = dist[v] - 1
                        pred[u] = (v, (u, v))
                        changed = True
                elif dist[u] + 1 < dist[v]:
                    dist[v] = dist[u] + 1
                    pred[v] = (u, (u, v))
                    changed = True
            if not changed:
                break
        else:
            raise ConstructionError("path search failed to settle")
        if dist[y] == _INF:
            raise ConstructionError("second disjoint path vanished during search")
        v = y
        while v != x:
            assert pred[v] is not None
            w, arc = pred[v]
            if arc in flow:
                flow.discard(arc)
            else:
                flow.add(arc)
            v = w
    heads: dict[int, list[int]] = {}
    for u, v in flow:
        heads.setdefault(u, []).append(v)
    for hs in heads.values():
        hs.sort(reverse=True)

    def walk() -> list[int]:
        seq = [x]
        while seq[-1] != y:
            seq.append(heads[seq[-1]].pop())
        return seq

    p1, p2 = walk(), walk()
    if (len(p2), p2) < (len(p1), p1):
        p1, p2 = p2, p1
    return p1, p2


# ---- the case ladder ----


def _note(trace: list[str] | None, tag: str) -> None:
    if trace is not None:
        trace.append(tag)


def _direct_arc_case(
    d: Digraph, x: int, y: int, trace: list[str] | None
) -> frozenset[Arc] | None:
    """Cases where xy is an arc: one covering cycle plus the arc itself."""
    d0 = d.remove_arcs([(y, x)]) if d.has_arc(y, x) else d
    h = d0.remove_arcs([(x, y)])
    if is_strong(h):
        _note(trace, "direct-arc-covering-cycle")
        f = SubDigraph(frozenset((x, y)), frozenset(((x, y),)))
        cyc = cycle_covering_complement(d0, f, x)
        arcs = set(_cycle_arcs(cyc))
        arcs.add((x, y))
        return frozenset(arcs)
    # removing xy keeps d strong (the second disjoint path reroutes), and
    # yx is a cut arc there, so every hamiltonian cycle must traverse it
    _note(trace, "direct-arc-ham-cycle")
    dstar = d.remove_arcs([(x, y)])
    cyc = hamiltonian_cycle(dstar)
    arcs = set(_cycle_arcs(cyc))
    if (y, x) not in arcs:
        return None
    arcs.discard((y, x))
    return frozenset(arcs)


def _cycle_arcs(cycle: list[int]) -> list[Arc]:
    return [
        (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    ]


def _split_case(
    d: Digraph,
    dprime: Digraph,
    x: int,
    y: int,
    p1: list[int],
    allow_mirror: bool,
    trace: list[str] | None,
) -> frozenset[Arc] | None:
    """Cases for xy absent and d minus yx strong, relative to one path."""
    p1_arcs = _path_arcs(p1)
    h = dprime.remove_arcs(p1_arcs)
    if is_strong(h):
        _note(trace, "path-plus-covering-cycle")
        f = SubDigraph(frozenset(p1), frozenset(p1_arcs))
        cyc = cycle_covering_complement(dprime, f, x)
        return frozenset(set(_cycle_arcs(cyc)) | set(p1_arcs))
    comps = strong_components(h)
    tail = comps[-1]
    head: set[int] = set()
    for c in comps[:-1]:
        head |= c
    if x in tail and y in tail:
        return _absorb_head_side(d, x, y, p1, tail, head, trace)
    if x in head and y in head and allow_mirror:
        _note(trace, "mirrored")
        rev = d.reverse()
        got = _trail_arcs(rev, y, x, allow_mirror=False, trace=trace)
        if got is None:
            return None
        return frozenset((b, a) for a, b in got)
    return None


def _absorb_head_side(
    d: Digraph,
    x: int,
    y: int,
    p1: list[int],
    tail: frozenset[int],
    head: set[int],
    trace: list[str] | None,
) -> frozenset[Arc] | None:
    """Both terminals sit in the sink side: recurse there, splice the rest.

    The path p1 crosses into the source side exactly once; that side is
    dominated by everything after the crossing's predecessor, so a
    hamiltonian path of it can replace one outgoing arc of the predecessor
    in the recursive trail.
    """
    crossings = [w for w in p1 if w in head]
    if len(crossings) != 1:
        return None
    x1 = crossings[0]
    i = p1.index(x1)
    w1 = p1[i - 1]
    head_sub, head_ids = d.induced(head)
    try:
        from .hamilton import hamiltonian_path_between

        q_local = hamiltonian_path_between(head_sub, head_ids.index(x1))
    except (PreconditionError, ConstructionError):
        return None
    q = [head_ids[v] for v in q_local]
    tq = q[-1]
    tail_sub, tail_ids = d.induced(tail)
    xl, yl = tail_ids.index(x), tail_ids.index(y)
    w1l = tail_ids.index(w1)
    artificial = not tail_sub.has_arc(w1l, yl)
    aug = tail_sub.add_arcs([(w1l, yl)]) if artificial else tail_sub
    if not is_strong(aug):
        return None
    if not isinstance(arc_disjoint_paths(aug, xl, yl, 2), list):
        return None
    _note(trace, "sink-side-recursion")
    inner = _trail_arcs(aug, xl, yl, allow_mirror=True, trace=trace)
    if inner is None:
        return None
    w_arcs = {(tail_ids[a], tail_ids[b]) for a, b in inner}
    if artificial and (w1, y) in w_arcs:
        u = y
        w_arcs.discard((w1, y))
    else:
        outs = sorted(b for a, b in w_arcs if a == w1)
        if not outs:
            return None
        u = outs[0]
        w_arcs.discard((w1, u))
    if not d.has_arc(tq, u) or not d.has_arc(w1, x1):
        return None
    w_arcs.add((w1, x1))
    w_arcs.update(_path_arcs(q))
    w_arcs.add((tq, u))
    return frozenset(w_arcs)


def _completion_case(
    d: Digraph,
    dprime: Digraph,
    x: int,
    y: int,
    base_path: list[int],
    trace: list[str] | None,
) -> frozenset[Arc] | None:
    """Cover the vertices missed by one path with cycles via circulation."""
    t0 = set(_path_arcs(base_path))
    covered = set(base_path)
    edges: list[tuple[int, int, int, int]] = []
    arc_slots: list[Arc] = []
    for u, v in dprime.arcs():
        if (u, v) in t0:
            continue
        edges.append((d.n + u, v, 0, 1))
        arc_slots.append((u, v))
    out_t0: dict[int, int] = {}
    for u, _ in t0:
        out_t0[u] = out_t0.get(u, 0) + 1
    for v in range(d.n):
        cap = (1 if v == y else 2) - out_t0.get(v, 0)
        lo = 0 if v in covered else 1
        if cap < lo:
            return None
        edges.append((v, d.n + v, lo, cap))
    flows = feasible_circulation(2 * d.n, edges)
    if flows is None:
        return None
    _note(trace, "circulation-completion")
    extra = {arc_slots[i] for i in range(len(arc_slots)) if flows[i] == 1}
    return frozenset(t0 | extra)


def _trail_arcs(
    d: Digraph,
    x: int,
    y: int,
    allow_mirror: bool,
    trace: list[str] | None,
) -> frozenset[Arc] | None:
    """Candidate generation ladder; every candidate is checked before use."""

    def attempt(thunk) -> frozenset[Arc] | None:
        try:
            got = thunk()
        except (PreconditionError, ConstructionError):
            return None
        if got is not None and _valid_trail_arcs(d, got, x, y):
            return got
        return None

    if d.has_arc(x, y):
        got = attempt(lambda: _direct_arc_case(d, x, y, trace))
        if got is not None:
            return got
    else:
        dprime = d.remove_arcs([(y, x)])
        if not is_strong(dprime):
            # yx is a cut arc, so it lies on every hamiltonian cycle of d
            def via_ham() -> frozenset[Arc]:
                _note(trace, "cut-arc-ham-cycle")
                arcs = set(_cycle_arcs(hamiltonian_cycle(d)))
                arcs.discard((y, x))
                return frozenset(arcs)

            got = attempt(via_ham)
            if got is not None:
                return got
        else:
            p1, p2 = _minimal_pair(d, x, y)
            for path in (p1, p2):
                got = attempt(
                    lambda p=path: _split_case(d, dprime, x, y, p, allow_mirror, trace)
                )
                if got is not None:
                    return got
            for path in (p1, p2):
                got = attempt(
                    lambda p=path: _completion_case(d, dprime, x, y, p, trace)
                )
                if got is not None:
                    return got
    # last resort on small inputs: exhaustive search
    from . import oracle

    try:
        caps = {v: 2 for v in range(d.n)}
        caps[y] = 1
        found = oracle.find_trail_oracle(d, x, y, must_avoid={(y, x)}, out_cap=caps)
    except PreconditionError:
        return None
    if found is not None and _valid_trail_arcs(d, found, x, y):
        _note(trace, "exhaustive")
        return found
    return None


def spanning_trail(
    d: Digraph, x: int, y: int, trace: list[str] | None = None
) -> Trail:
    """Spanning (x,y)-trail avoiding the arc yx, out-degree at most 2.

    Requires a strong semicomplete digraph with two arc-disjoint
    (x,y)-paths; their absence raises ``PreconditionError`` carrying the
    separating cut.  The returned trail never uses the arc from y to x,
    leaves each vertex at most twice, and leaves y at most once.
    """
    if not is_semicomplete(d):
        raise PreconditionError("spanning_trail requires a semicomplete digraph")
    if not (0 <= x < d.n and 0 <= y < d.n) or x == y:
        raise PreconditionError("x and y must be distinct vertices")
    if not is_strong(d):
        raise PreconditionError("spanning_trail requires a strong digraph")
    if arc_connectivity(d) < 2:
        probe = arc_disjoint_paths(d, x, y, 2)
        if isinstance(probe, CutCertificate):
            raise PreconditionError(
                f"need two arc-disjoint ({x},{y})-paths; "
                f"cut {sorted(probe.crossing_arcs)} separates them"
            )
    arcs = _trail_arcs(d, x, y, allow_mirror=True, trace=trace)
    if arcs is None:
        raise ConstructionError("no spanning trail construction succeeded")
    trail = arcs_to_trail(arcs, x, y)
    bad = validate_trail(d, trail, x, y)
    if bad:
        raise ConstructionError(f"constructed trail failed validation: {bad}")
    return trail


def is_eulerian_connected(d: Digraph) -> tuple[bool, tuple[int, int] | None]:
    """Whether every ordered vertex pair admits a spanning trail.

    Returns (True, None) or (False, (x, y)) for the first failing pair.
    Two-arc-strong digraphs qualify outright; otherwise each pair is
    settled constructively when two arc-disjoint paths exist and by
    exhaustive search when they do not (small inputs only).
    """
    if not is_semicomplete(d):
        raise PreconditionError("eulerian-connectedness requires a semicomplete digraph")
    if d.n <= 1:
        return True, None
    if arc_connectivity(d) >= 2:
        return True, None
    from . import oracle

    for x in range(d.n):
        for y in range(d.n):
            if x == y:
                continue
            if isinstance(arc_disjoint_paths(d, x, y, 2), list):
                continue
            if oracle.find_trail_oracle(d, x, y) is None:
                return False, (x, y)
    return True, None
