"""Strong connectivity, cut arcs, arc-connectivity, and Menger certificates.

The max-flow kernel is a plain BFS-augmenting unit-capacity flow over the
digraph's own arcs.  Residual traversal accounts for 2-cycles: pushing flow
on (u,v) while (v,u) carries flow cancels the reverse unit instead of
stacking, so per-arc values stay in {0,1}.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

from .digraph import Arc, Digraph, _mask_bits
from .errors import PreconditionError


@dataclass(frozen=True)
class CutCertificate:
    """Witness that fewer than the requested number of arc-disjoint paths exist.

    ``side_s`` contains the source side, ``side_t`` the rest; ``crossing_arcs``
    is exactly the set of arcs from S to T.
    """

    side_s: frozenset[int]
    side_t: frozenset[int]
    crossing_arcs: frozenset[Arc]


def _closure(rows: tuple[int, ...], start: int) -> int:
    """Mask of vertices reachable from ``start`` along ``rows`` adjacency."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _mask_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strong(d: Digraph) -> bool:
    """True iff every ordered pair is joined by a path (n <= 1 counts as strong)."""
    if d.n <= 1:
        return True
    full = (1 << d.n) - 1
    return (
        _closure(d._out, 0) == full  # noqa: SLF001 - package-internal
        and _closure(d._in, 0) == full  # noqa: SLF001
    )


def strong_components(d: Digraph) -> list[frozenset[int]]:
    """Strongly connected components in an acyclic order.

    No arc runs from a later component to an earlier one.  Ties between
    incomparable components are broken by smallest contained vertex id, so
    the output is deterministic.
    """
    n = d.n
    # Kosaraju: iterative DFS finish order, then reverse-digraph collection.
    order: list[int] = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        iters = {root: d.out_neighbors(root)}
        path = [root]
        while path:
            v = path[-1]
            for w in iters[v]:
                if not seen[w]:
                    seen[w] = True
                    iters[w] = d.out_neighbors(w)
                    path.append(w)
                    break
            else:
                order.append(path.pop())
    comp_of = [-1] * n
    comps: list[set[int]] = []
    for root in reversed(order):
        if comp_of[root] != -1:
            continue
        cid = len(comps)
        bucket = {root}
        comp_of[root] = cid
        frontier = [root]
        while frontier:
            v = frontier.pop()
            for w in d.in_neighbors(v):
                if comp_of[w] == -1:
                    comp_of[w] = cid
                    bucket.add(w)
                    frontier.append(w)
        comps.append(bucket)
    # Kahn's algorithm on the component DAG, min-vertex-id tie-break.
    k = len(comps)
    succ: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u, v in d.arcs():
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv and cv not in succ[cu]:
            succ[cu].add(cv)
            indeg[cv] += 1
    key = [min(c) for c in comps]
    heap = [(key[i], i) for i in range(k) if indeg[i] == 0]
    heapq.heapify(heap)
    result: list[frozenset[int]] = []
    while heap:
        _, i = heapq.heappop(heap)
        result.append(frozenset(comps[i]))
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (key[j], j))
    return result


@lru_cache(maxsize=1024)
def cut_arcs(d: Digraph) -> frozenset[Arc]:
    """Arcs whose single removal breaks strongness.  Requires a strong input.

    An arc (u,v) of a strong digraph is a cut arc iff v is unreachable from u
    once the arc itself is dropped: any other broken pair could reroute
    through a surviving u-to-v path.
    """
    if not is_strong(d):
        raise PreconditionError("cut_arcs requires a strong digraph")
    out = d._out  # noqa: SLF001
    result: set[Arc] = set()
    for u, v in d.arcs():
        seen = 1 << u
        frontier = seen
        while frontier and not seen >> v & 1:
            nxt = 0
            for w in _mask_bits(frontier):
                row = out[w]
                if w == u:
                    row &= ~(1 << v)
                nxt |= row
            frontier = nxt & ~seen
            seen |= frontier
        if not seen >> v & 1:
            result.add((u, v))
    return frozenset(result)


# ---- unit-capacity max flow ----


def _residual_step(d: Digraph, flow: dict[Arc, int], v: int, blocked: int) -> list[int]:
    """Vertices reachable from v in one residual step, skipping ``blocked`` mask."""
    found: list[int] = []
    for w in _mask_bits((d.out_mask(v) | d.in_mask(v)) & ~blocked):
        if (d.has_arc(v, w) and flow.get((v, w), 0) == 0) or flow.get((w, v), 0) == 1:
            found.append(w)
    return found


def _max_flow(
    d: Digraph, s: int, t: int, limit: int | None = None
) -> tuple[int, dict[Arc, int], int]:
    """BFS-augmenting unit-capacity flow from s to t.

    Returns (value, flow map, residual-reachable mask from s).  Stops once
    ``limit`` augmenting paths have been found; the mask is only a true
    min-cut side when the limit was not the stopping reason.
    """
    flow: dict[Arc, int] = {}
    value = 0
    while limit is None or value < limit:
        parent: dict[int, int] = {s: -1}
        reached = 1 << s
        frontier = [s]
        while frontier and not reached >> t & 1:
            nxt: list[int] = []
            for v in frontier:
                for w in _residual_step(d, flow, v, reached):
                    parent[w] = v
                    reached |= 1 << w
                    nxt.append(w)
            frontier = nxt
        if not reached >> t & 1:
            return value, flow, reached
        v = t
        while v != s:
            u = parent[v]
            if flow.get((v, u), 0) == 1:
                flow[(v, u)] = 0
            else:
                flow[(u, v)] = 1
            v = u
        value += 1
    reached = 1 << s
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            for w in _residual_step(d, flow, v, reached):
                reached |= 1 << w
                nxt.append(w)
        frontier = nxt
    return value, flow, reached


def _certificate_from_mask(d: Digraph, reached: int) -> CutCertificate:
    side_s = frozenset(_mask_bits(reached))
    side_t = frozenset(v for v in range(d.n) if not reached >> v & 1)
    crossing = frozenset(
        (u, v) for u in side_s for v in d.out_neighbors(u) if v in side_t
    )
    return CutCertificate(side_s, side_t, crossing)


@lru_cache(maxsize=1024)
def arc_connectivity(d: Digraph) -> int:
    """The largest k such that removing any k-1 arcs leaves d strong.

    0 for non-strong digraphs and, by documented convention, when n <= 1.
    """
    value, _ = arc_connectivity_certificate(d)
    return value


def arc_connectivity_certificate(d: Digraph) -> tuple[int, CutCertificate | None]:
    """Arc-connectivity together with a minimum cut certificate (None if n <= 1)."""
    if d.n <= 1:
        return 0, None
    best: int | None = None
    best_mask = 0
    for v in range(1, d.n):
        for s, t in ((0, v), (v, 0)):
            val, _, reached = _max_flow(d, s, t, limit=best)
            if best is None or val < best:
                best = val
                best_mask = reached
                if best == 0:
                    return 0, _certificate_from_mask(d, best_mask)
    assert best is not None
    return best, _certificate_from_mask(d, best_mask)


def arc_disjoint_paths(
    d: Digraph, x: int, y: int, k: int
) -> list[list[int]] | CutCertificate:
    """k pairwise arc-disjoint simple (x,y)-paths, or a cut with < k crossing arcs.

    Paths are vertex sequences.  ``k = 0`` returns an empty list.
    """
    if not (0 <= x < d.n and 0 <= y < d.n):
        raise PreconditionError("x and y must be vertices of d")
    if x == y:
        raise PreconditionError("arc_disjoint_paths requires x != y")
    if k < 0:
        raise PreconditionError("k must be non-negative")
    if k == 0:
        return []
    value, flow, reached = _max_flow(d, x, y, limit=k)
    if value < k:
        return _certificate_from_mask(d, reached)
    live = {a for a, f in flow.items() if f == 1}
    paths: list[list[int]] = []
    for _ in range(k):
        walk = [x]
        v = x
        while True:
            step = None
            for w in _mask_bits(d.out_mask(v)):
                if (v, w) in live:
                    step = w
                    break
            if step is None:
                break
            live.discard((v, step))
            walk.append(step)
            v = step
        if walk[-1] != y:
            raise AssertionError("flow walk did not terminate at the sink")
        # splice out revisited-vertex cycles to leave a simple path
        simple: list[int] = []
        pos: dict[int, int] = {}
        for w in walk:
            if w in pos:
                for gone in simple[pos[w] + 1 :]:
                    del pos[gone]
                simple = simple[: pos[w] + 1]
            else:
                pos[w] = len(simple)
                simple.append(w)
        paths.append(simple)
    return paths
