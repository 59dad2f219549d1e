"""Small generic network-flow kernels.

Plain Edmonds-Karp augmentation over explicit edge lists; the networks
built here stay tiny (node splits of digraphs with at most a few dozen
vertices), so simplicity wins over asymptotics.
"""

from __future__ import annotations


def max_flow(
    n: int, edges: list[tuple[int, int, int]], s: int, t: int
) -> tuple[int, list[int], frozenset[int]]:
    """Max flow on a small-capacity network.

    ``edges`` holds (tail, head, capacity).  Returns the flow value, a
    per-edge flow list in input order, and the set of nodes reachable
    from s in the final residual network (the source side of a min cut).
    """
    cap: list[int] = []
    to: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in edges:
        adj[u].append(len(cap))
        to.append(v)
        cap.append(c)
        adj[v].append(len(cap))
        to.append(u)
        cap.append(0)
    value = 0
    while True:
        prev_edge = [-1] * n
        prev_edge[s] = -2
        queue = [s]
        while queue and prev_edge[t] == -1:
            nxt: list[int] = []
            for v in queue:
                for e in adj[v]:
                    w = to[e]
                    if cap[e] > 0 and prev_edge[w] == -1:
                        prev_edge[w] = e
                        if w == t:
                            break
                        nxt.append(w)
                if prev_edge[t] != -1:
                    break
            queue = nxt
        if prev_edge[t] == -1:
            reached = frozenset(v for v in range(n) if prev_edge[v] != -1) | {s}
            return value, [cap[2 * i + 1] for i in range(len(edges))], reached
        bottleneck = None
        v = t
        while v != s:
            e = prev_edge[v]
            bottleneck = cap[e] if bottleneck is None else min(bottleneck, cap[e])
            v = to[e ^ 1]
        v = t
        while v != s:
            e = prev_edge[v]
            cap[e] -= bottleneck
            cap[e ^ 1] += bottleneck
            v = to[e ^ 1]
        value += bottleneck


def circulation_with_cut(
    n: int, edges: list[tuple[int, int, int, int]]
) -> tuple[list[int] | None, frozenset[int]]:
    """Circulation meeting per-edge [lower, upper] bounds.

    ``edges`` holds (tail, head, lower, upper).  On success returns the
    per-edge flows and an empty set; on failure returns None plus the
    nodes (among 0..n-1) on the source side of the certifying cut in the
    lower-bound reduction.
    """
    excess = [0] * n
    reduced: list[tuple[int, int, int]] = []
    for u, v, lo, hi in edges:
        if lo > hi:
            return None, frozenset(range(n))
        reduced.append((u, v, hi - lo))
        excess[v] += lo
        excess[u] -= lo
    s, t = n, n + 1
    need = 0
    for v in range(n):
        if excess[v] > 0:
            reduced.append((s, v, excess[v]))
            need += excess[v]
        elif excess[v] < 0:
            reduced.append((v, t, -excess[v]))
    value, flows, reached = max_flow(n + 2, reduced, s, t)
    if value != need:
        return None, frozenset(v for v in reached if v < n)
    return [flows[i] + edges[i][2] for i in range(len(edges))], frozenset()


def feasible_circulation(
    n: int, edges: list[tuple[int, int, int, int]]
) -> list[int] | None:
    """Circulation flows meeting the bounds, or None when infeasible."""
    flows, _ = circulation_with_cut(n, edges)
    return flows
