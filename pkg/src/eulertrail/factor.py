"""Eulerian factors, their obstructions, and component merging.

An eulerian factor is a spanning subdigraph with in-degree equal to
out-degree and both at least one at every vertex; unlike a spanning
eulerian subdigraph it may fall apart into several closed components.
Factors are decided by a lower-bounded circulation; when none exists the
failing cut is refined into a three-part vertex partition whose counting
inequality certifies the absence.  The merge engine then welds factor
components together into one, and ``spanning_eulerian_avoiding`` wires
the pieces into the full decision procedure for prescribed forbidden
arc sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ._flow import circulation_with_cut
from .connectivity import (
    CutCertificate,
    arc_connectivity,
    arc_connectivity_certificate,
    is_strong,
)
from .digraph import Arc, Digraph
from .errors import ConstructionError, PreconditionError
from .oracle import enumerate_spanning_eulerian
from .trails import EulerianSubdigraph, closed_tour

ArcSet = frozenset[Arc]


@dataclass(frozen=True)
class EulerianFactor:
    """A factor's arcs together with its closed components."""

    arcs: ArcSet
    components: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ObstructionPartition:
    """Vertex partition (r1, r2, y) certifying that no factor exists.

    Within the allowed arcs: y is independent, nothing runs from r2 into
    y or from y into r1, and fewer than |y| arcs run from r2 to r1, so
    the vertices of y cannot all reach their required degree.
    """

    r1: frozenset[int]
    r2: frozenset[int]
    y: frozenset[int]

    def check(self, d: Digraph, avoid: ArcSet = frozenset()) -> list[str]:
        """Violation report against a digraph; empty means the
        obstruction is genuine."""
        issues: list[str] = []
        parts = [self.r1, self.r2, self.y]
        if sum(len(p) for p in parts) != d.n or set().union(*parts) != set(
            d.vertices()
        ):
            issues.append("parts do not partition the vertex set")
            return issues
        if not self.y:
            issues.append("middle part is empty")

        def allowed(u: int, v: int) -> bool:
            return d.has_arc(u, v) and (u, v) not in avoid

        if any(allowed(u, v) for u in self.y for v in self.y if u != v):
            issues.append("middle part is not independent")
        if any(allowed(u, v) for u in self.r2 for v in self.y):
            issues.append("an arc runs from r2 into the middle part")
        if any(allowed(u, v) for u in self.y for v in self.r1):
            issues.append("an arc runs from the middle part into r1")
        crossing = sum(
            1 for u in self.r2 for v in self.r1 if allowed(u, v)
        )
        if crossing >= len(self.y):
            issues.append(
                f"{crossing} arcs run from r2 to r1, not fewer than |y|={len(self.y)}"
            )
        return issues


@dataclass(frozen=True)
class NonStrongCut:
    """The allowed arcs are not strongly connected; no spanning eulerian
    subdigraph can exist inside them."""

    certificate: CutCertificate


@dataclass(frozen=True)
class MergeOption:
    """One applicable merge move: arcs to add and arcs to drop."""

    rule: str
    add_arcs: ArcSet
    remove_arcs: ArcSet


# ---- eulerian factors ----


def _weak_components(n: int, arcs) -> list[frozenset[int]]:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in arcs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(groups[r]) for r in sorted(groups)]


def eulerian_factor(
    d: Digraph, avoid: ArcSet | set[Arc] = frozenset()
) -> EulerianFactor | ObstructionPartition:
    """An eulerian factor avoiding the given arcs, or the obstruction.

    Works on arbitrary digraphs.  The factor is found as a circulation
    with per-vertex lower bound one on a split-node network; when the
    circulation is infeasible the residual cut is refined into an
    ObstructionPartition and verified before being returned.
    """
    avoid = frozenset(avoid)
    for a in avoid:
        if not d.has_arc(*a):
            raise PreconditionError(f"avoided arc {a} is not in the digraph")
    n = d.n
    edges: list[tuple[int, int, int, int]] = []
    slots: list[Arc] = []
    for u, v in d.arcs():
        if (u, v) in avoid:
            continue
        edges.append((n + u, v, 0, 1))
        slots.append((u, v))
    for v in range(n):
        edges.append((v, n + v, 1, max(1, n)))
    flows, reached = circulation_with_cut(2 * n, edges)
    if flows is not None:
        arcs = frozenset(slots[i] for i in range(len(slots)) if flows[i] == 1)
        return EulerianFactor(arcs, tuple(_weak_components(n, arcs)))
    return _refine_obstruction(d, avoid, reached)


def _refine_obstruction(
    d: Digraph, avoid: ArcSet, reached: frozenset[int]
) -> ObstructionPartition:
    n = d.n
    y_side: set[int] = set()
    r2: set[int] = set()
    r1: set[int] = set()
    for v in range(n):
        in_r = v in reached
        out_r = (n + v) in reached
        if out_r and not in_r:
            y_side.add(v)
        elif not out_r and not in_r:
            r1.add(v)
        else:
            r2.add(v)

    def allowed(u: int, v: int) -> bool:
        return d.has_arc(u, v) and (u, v) not in avoid

    # shrink the middle part until its three defining conditions hold;
    # every move also removes at least one arc from the deficiency count,
    # so the strict inequality survives
    moved = True
    while moved:
        moved = False
        for y in sorted(y_side):
            if any(allowed(u, y) for u in r2) or any(
                allowed(u, y) for u in y_side if u != y
            ):
                y_side.discard(y)
                r2.add(y)
                moved = True
                break
    moved = True
    while moved:
        moved = False
        for y in sorted(y_side):
            if any(allowed(y, w) for w in r1):
                y_side.discard(y)
                r1.add(y)
                moved = True
                break
    result = ObstructionPartition(frozenset(r1), frozenset(r2), frozenset(y_side))
    bad = result.check(d, avoid)
    if bad:
        raise ConstructionError(f"obstruction refinement failed: {bad}")
    return result


def factor_exists_guarantee(d: Digraph, k: int) -> bool:
    """Whether connectivity alone already promises a factor avoiding any
    k arcs (a counting bound, no search involved)."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    return arc_connectivity(d) >= k + 1


def is_star_set(arcs: ArcSet | set[Arc]) -> bool:
    """Whether the arcs' underlying undirected edges form disjoint stars.

    Opposite arcs collapse onto one edge.  Every connected group of
    edges must share a single common endpoint.
    """
    edges = {frozenset((u, v)) for u, v in arcs}
    if not edges:
        return True
    adj: dict[int, set[frozenset]] = {}
    for e in edges:
        for v in e:
            adj.setdefault(v, set()).add(e)
    unvisited = set(edges)
    while unvisited:
        seed = unvisited.pop()
        group = {seed}
        frontier = [seed]
        while frontier:
            e = frontier.pop()
            for v in e:
                for other in adj[v]:
                    if other in unvisited:
                        unvisited.discard(other)
                        group.add(other)
                        frontier.append(other)
        common = set.intersection(*(set(e) for e in group))
        if not common:
            return False
    return True


# ---- merging factor components ----


def _allowed_add(d: Digraph, avoid: ArcSet, current: set[Arc], u: int, v: int) -> bool:
    return d.has_arc(u, v) and (u, v) not in avoid and (u, v) not in current


def _cross_cycle(
    d: Digraph, avoid: ArcSet, current: set[Arc], comp_of: dict[int, int]
) -> list[Arc] | None:
    """Shortest vertex cycle whose arcs all run between distinct
    components, found by breadth-first search from each vertex in turn."""
    succ: dict[int, list[int]] = {}
    for u, v in d.arcs():
        if (
            (u, v) not in avoid
            and (u, v) not in current
            and comp_of[u] != comp_of[v]
        ):
            succ.setdefault(u, []).append(v)
    for s in range(d.n):
        if s not in succ:
            continue
        parent: dict[int, int] = {s: -1}
        frontier = [s]
        while frontier:
            nxt: list[int] = []
            for v in frontier:
                for w in succ.get(v, ()):
                    if w == s:
                        seq = [v]
                        while seq[-1] != s:
                            seq.append(parent[seq[-1]])
                        seq.reverse()
                        return [
                            (seq[i], seq[(i + 1) % len(seq)])
                            for i in range(len(seq))
                        ]
                    if w not in parent:
                        parent[w] = v
                        nxt.append(w)
            frontier = nxt
    return None


def _components_after(n: int, current: set[Arc], option: MergeOption) -> int:
    trial = (current - option.remove_arcs) | option.add_arcs
    return len(_weak_components(n, trial))


def _group_arcs(
    current: set[Arc], comp_of: dict[int, int], count: int
) -> list[list[Arc]]:
    grouped: list[list[Arc]] = [[] for _ in range(count)]
    for a in sorted(current):
        grouped[comp_of[a[0]]].append(a)
    return grouped


def _next_move(
    d: Digraph,
    avoid: ArcSet,
    current: set[Arc],
    comps: list[frozenset[int]],
    comp_of: dict[int, int],
    protected: ArcSet,
) -> MergeOption | None:
    before = len(comps)

    def usable(option: MergeOption) -> MergeOption | None:
        if option.remove_arcs & protected:
            return None
        if _components_after(d.n, current, option) < before:
            return option
        return None

    cyc = _cross_cycle(d, avoid, current, comp_of)
    if cyc is not None:
        got = usable(MergeOption("cycle", frozenset(cyc), frozenset()))
        if got:
            return got
    grouped = _group_arcs(current, comp_of, before)
    for i in range(before):
        for j in range(before):
            if i == j:
                continue
            for u, v in grouped[i]:
                for w in sorted(comps[j]):
                    if _allowed_add(d, avoid, current, u, w) and _allowed_add(
                        d, avoid, current, w, v
                    ):
                        got = usable(
                            MergeOption(
                                "insert",
                                frozenset(((u, w), (w, v))),
                                frozenset(((u, v),)),
                            )
                        )
                        if got:
                            return got
    for i in range(before):
        for j in range(i + 1, before):
            for u, v in grouped[i]:
                for w, z in grouped[j]:
                    if _allowed_add(d, avoid, current, u, z) and _allowed_add(
                        d, avoid, current, w, v
                    ):
                        got = usable(
                            MergeOption(
                                "swap",
                                frozenset(((u, z), (w, v))),
                                frozenset(((u, v), (w, z))),
                            )
                        )
                        if got:
                            return got
    for j in range(before):
        tour = closed_tour(grouped[j], min(comps[j]))
        k = len(tour)
        visits: dict[int, int] = {}
        for v in tour:
            visits[v] = visits.get(v, 0) + 1
        for idx, y in enumerate(tour):
            if visits[y] < 2:
                continue
            p = tour[idx - 1]
            s = tour[(idx + 1) % k]
            for i in range(before):
                if i == j:
                    continue
                for x in sorted(comps[i]):
                    if (
                        _allowed_add(d, avoid, current, p, x)
                        and _allowed_add(d, avoid, current, x, s)
                    ):
                        got = usable(
                            MergeOption(
                                "reroute",
                                frozenset(((p, x), (x, s))),
                                frozenset(((p, y), (y, s))),
                            )
                        )
                        if got:
                            return got
    return None


def merge_all(
    d: Digraph,
    factor_arcs: ArcSet | set[Arc],
    avoid: ArcSet | set[Arc] = frozenset(),
    *,
    protected: ArcSet = frozenset(),
) -> ArcSet | None:
    """Weld a factor's components into one, or None when no move applies.

    Moves are tried in a fixed order (cross-component cycle, insertion
    through a foreign vertex, arc swap, revisit reroute); each applied
    move must strictly reduce the component count, and protected arcs are
    never removed.
    """
    avoid = frozenset(avoid)
    current = set(factor_arcs)
    for _ in range(d.n + 2):
        comps = _weak_components(d.n, current)
        if len(comps) <= 1:
            return frozenset(current)
        comp_of = {v: i for i, c in enumerate(comps) for v in c}
        move = _next_move(d, avoid, current, comps, comp_of, protected)
        if move is None:
            return None
        current -= move.remove_arcs
        current |= move.add_arcs
    return None


def check_merge_obstructions(
    d: Digraph,
    h1: ArcSet | set[Arc],
    h2: ArcSet | set[Arc],
    avoid: ArcSet | set[Arc] = frozenset(),
) -> dict[str, MergeOption | None]:
    """Which of the five pairwise merge patterns apply to two components.

    Keys "a" through "e": crossing 2-cycle, insertion through a foreign
    vertex, arc swap, universal mixed-vertex insertion, and revisit
    reroute.  A value of None means the pattern yields no move; all five
    None means the pair is stuck.
    """
    avoid = frozenset(avoid)
    h1, h2 = frozenset(h1), frozenset(h2)
    current = set(h1 | h2)
    v1 = sorted({v for a in h1 for v in a})
    v2 = sorted({v for a in h2 for v in a})
    out: dict[str, MergeOption | None] = dict.fromkeys("abcde")

    def allowed(u: int, v: int) -> bool:
        return _allowed_add(d, avoid, current, u, v)

    for u in v1:
        for v in v2:
            if allowed(u, v) and allowed(v, u):
                out["a"] = MergeOption(
                    "a", frozenset(((u, v), (v, u))), frozenset()
                )
                break
        if out["a"]:
            break
    for arcs, verts in ((h1, v2), (h2, v1)):
        for u, v in sorted(arcs):
            for w in verts:
                if allowed(u, w) and allowed(w, v):
                    out["b"] = out["b"] or MergeOption(
                        "b", frozenset(((u, w), (w, v))), frozenset(((u, v),))
                    )
    for u, v in sorted(h1):
        for w, z in sorted(h2):
            if allowed(u, z) and allowed(w, v):
                out["c"] = out["c"] or MergeOption(
                    "c", frozenset(((u, z), (w, v))), frozenset(((u, v), (w, z)))
                )

    def adjacent(u: int, v: int) -> bool:
        return (d.has_arc(u, v) and (u, v) not in avoid) or (
            d.has_arc(v, u) and (v, u) not in avoid
        )

    for arcs, verts, others in ((h1, v1, v2), (h2, v2, v1)):
        tour = closed_tour(arcs, min(verts))
        k = len(tour)
        for x in others:
            if not all(adjacent(x, v) for v in verts):
                continue
            for i in range(k):
                if allowed(tour[i], x) and allowed(x, tour[(i + 1) % k]):
                    out["d"] = out["d"] or MergeOption(
                        "d",
                        frozenset(((tour[i], x), (x, tour[(i + 1) % k]))),
                        frozenset(((tour[i], tour[(i + 1) % k]),)),
                    )
        visits: dict[int, int] = {}
        for v in tour:
            visits[v] = visits.get(v, 0) + 1
        for idx, y in enumerate(tour):
            if visits[y] < 2:
                continue
            p, s = tour[idx - 1], tour[(idx + 1) % k]
            for x in others:
                if allowed(p, x) and allowed(x, s):
                    out["e"] = out["e"] or MergeOption(
                        "e",
                        frozenset(((p, x), (x, s))),
                        frozenset(((p, y), (y, s))),
                    )
    return out


# ---- the avoiding pipeline ----


def is_semicomplete_multipartite(d: Digraph) -> bool:
    """Whether non-adjacent vertex pairs group into disjoint classes."""
    masks = []
    full = (1 << d.n) - 1
    for u in range(d.n):
        adj = d.out_mask(u) | d.in_mask(u) | (1 << u)
        masks.append(full & ~adj)
    for u in range(d.n):
        nu = masks[u] | (1 << u)
        m = masks[u]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if (masks[v] | (1 << v)) != nu:
                return False
    return True


def _perturbed_factor(
    d: Digraph, avoid: ArcSet, seed: int
) -> ArcSet | None:
    """A factor found with a shuffled arc order, for retry diversity."""
    n = d.n
    rng = random.Random(seed)
    pool = [a for a in d.arcs() if a not in avoid]
    rng.shuffle(pool)
    edges: list[tuple[int, int, int, int]] = []
    for u, v in pool:
        edges.append((n + u, v, 0, 1))
    for v in range(n):
        edges.append((v, n + v, 1, max(1, n)))
    flows, _ = circulation_with_cut(2 * n, edges)
    if flows is None:
        return None
    return frozenset(pool[i] for i in range(len(pool)) if flows[i] == 1)


def _factor_then_merge(
    base: Digraph, trace: list[str] | None
) -> EulerianSubdigraph | ObstructionPartition | None:
    """Decide a spanning eulerian subdigraph of ``base`` via factor + merge."""
    fac = eulerian_factor(base)
    if isinstance(fac, ObstructionPartition):
        return fac
    merged = merge_all(base, fac.arcs)
    if merged is not None:
        return EulerianSubdigraph(merged)
    for seed in range(1, 7):
        alt = _perturbed_factor(base, frozenset(), seed)
        if alt is None:
            continue
        merged = merge_all(base, alt)
        if merged is not None:
            if trace is not None:
                trace.append("merge-retry")
            return EulerianSubdigraph(merged)
    return None


def spanning_eulerian_avoiding(
    d: Digraph,
    forbidden: ArcSet | set[Arc] = frozenset(),
    trace: list[str] | None = None,
) -> EulerianSubdigraph | ObstructionPartition | NonStrongCut | None:
    """Spanning eulerian subdigraph of d avoiding the forbidden arcs.

    Returns a certificate, one of two obstruction kinds (a disconnecting
    cut of the allowed arcs, or a partition refuting any factor), or None
    when the search is inconclusive.  Semicomplete d is expected for the
    constructive routes; the factor machinery itself is general.

    Route selection: if the allowed arcs already form a semicomplete
    multipartite digraph the factor-plus-merge decision applies directly;
    with high arc-connectivity relative to the number of forbidden arcs,
    the arcs inside each forbidden cluster are discarded wholesale, which
    also lands in the multipartite case; otherwise factor plus merge runs
    on the full digraph, with perturbed retries and, on small inputs, an
    exhaustive search as the last word.
    """
    forbidden = frozenset(forbidden)
    for a in forbidden:
        if not d.has_arc(*a):
            raise PreconditionError(f"forbidden arc {a} is not in the digraph")
    if d.n <= 1:
        return EulerianSubdigraph(frozenset())
    rest = d.remove_arcs(forbidden)
    if not is_strong(rest):
        _, cert = arc_connectivity_certificate(rest)
        assert cert is not None
        if trace is not None:
            trace.append("non-strong")
        return NonStrongCut(cert)
    if is_semicomplete_multipartite(rest):
        if trace is not None:
            trace.append("multipartite-direct")
        got = _factor_then_merge(rest, trace)
        if got is not None:
            return got
    else:
        k = len(forbidden)
        bound = ((k + 1) ** 2 + 3) // 4 + 1
        if k and arc_connectivity(d) >= bound:
            clusters = [
                c
                for c in _weak_components(d.n, forbidden)
                if len(c) >= 2
            ]
            drop = [
                (u, v)
                for u, v in d.arcs()
                if any(u in c and v in c for c in clusters)
            ]
            dstar = d.remove_arcs(drop)
            if is_strong(dstar) and is_semicomplete_multipartite(dstar):
                if trace is not None:
                    trace.append("multipartite-reduction")
                got = _factor_then_merge(dstar, trace)
                if isinstance(got, EulerianSubdigraph):
                    return got
        if trace is not None:
            trace.append("factor-merge")
        fac = eulerian_factor(d, forbidden)
        if isinstance(fac, ObstructionPartition):
            return fac
        merged = merge_all(d, fac.arcs, forbidden)
        if merged is not None:
            return EulerianSubdigraph(merged)
        for seed in range(1, 7):
            alt = _perturbed_factor(d, forbidden, seed)
            if alt is None:
                break
            merged = merge_all(d, alt, forbidden)
            if merged is not None:
                if trace is not None:
                    trace.append("merge-retry")
                return EulerianSubdigraph(merged)
    try:
        found = enumerate_spanning_eulerian(d, must_avoid=forbidden, limit=1)
    except PreconditionError:
        return None
    if trace is not None:
        trace.append("exhaustive")
    if found:
        return EulerianSubdigraph(found[0])
    return None
