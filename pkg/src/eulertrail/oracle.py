"""Exhaustive ground-truth searches over small digraphs.

Everything here decides by brute force: a pruned depth-first search over
arc subsets for spanning eulerian subdigraphs, trails and factors, plus
generators sweeping every tournament or semicomplete digraph of a given
small order.  These routines are the independent check against which the
constructive modules are validated; they share no logic with them.

Size guards keep the searches honest: inputs beyond the guard raise
``PreconditionError`` instead of running forever.  The vertex guard can be
raised via the ``EULERTRAIL_ORACLE_LIMIT`` environment variable.
"""

from __future__ import annotations

import os
import random
from itertools import combinations

from .digraph import Arc, Digraph
from .errors import PreconditionError

ORACLE_MAX_ARCS = 24
ORACLE_MAX_VERTICES = 10
_ENV_LIMIT = "EULERTRAIL_ORACLE_LIMIT"


def _vertex_guard() -> int:
    raw = os.environ.get(_ENV_LIMIT)
    if raw is None:
        return ORACLE_MAX_VERTICES
    try:
        return int(raw)
    except ValueError as exc:
        raise PreconditionError(f"{_ENV_LIMIT} must be an integer, got {raw!r}") from exc


def _check_size(d: Digraph) -> None:
    if d.m <= ORACLE_MAX_ARCS:
        return
    if d.n <= _vertex_guard():
        return
    raise PreconditionError(
        f"oracle guard: {d.n} vertices / {d.m} arcs exceeds the search budget "
        f"(raise {_ENV_LIMIT} to override)"
    )


# ---- pruned subset search ----


def _connected_covering(n: int, arcs: list[Arc]) -> bool:
    """True iff the arcs touch every vertex and form one weak component."""
    if n <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        adj[u].append(v)
        adj[v].append(u)
    if any(not a for a in adj):
        return False
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        for w in adj[stack.pop()]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def _search(
    d: Digraph,
    must_contain: frozenset[Arc],
    must_avoid: frozenset[Arc],
    imbalance: dict[int, int],
    out_cap: dict[int, int] | None,
    limit: int | None,
    connected: bool,
) -> list[frozenset[Arc]]:
    """Depth-first search over arc subsets with degree-window pruning.

    A subset qualifies when every vertex v satisfies
    out(v) - in(v) == imbalance.get(v, 0), is touched by at least one arc,
    and (if ``connected``) the chosen arcs form a single weak component.
    """
    n = d.n
    arcs = list(d.arcs())
    if any(not d.has_arc(u, v) for u, v in must_contain):
        return []
    if n <= 1:
        return [frozenset()]
    rem_out = [d.out_degree(v) for v in range(n)]
    rem_in = [d.in_degree(v) for v in range(n)]
    out_used = [0] * n
    in_used = [0] * n
    imb = [imbalance.get(v, 0) for v in range(n)]
    cap = [out_cap.get(v, n) if out_cap else n for v in range(n)]
    chosen: list[Arc] = []
    results: list[frozenset[Arc]] = []

    def feasible(w: int) -> bool:
        lo, hi = out_used[w], out_used[w] + rem_out[w]
        hi = min(hi, cap[w])
        li, hiI = in_used[w] + imb[w], in_used[w] + rem_in[w] + imb[w]
        top = min(hi, hiI)
        if top < max(lo, li):
            return False
        # coverage: some achievable (out, in) pair must touch the vertex
        return max(top, top - imb[w]) >= 1

    def closed_too_early(w: int) -> bool:
        """w fully decided: prune if its weak component is sealed short of V."""
        if rem_out[w] or rem_in[w]:
            return False
        comp = {w}
        stack = [w]
        adj: dict[int, set[int]] = {}
        for a, b in chosen:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        while stack:
            v = stack.pop()
            if rem_out[v] or rem_in[v]:
                return False  # component still open
            for u in adj.get(v, ()):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        return len(comp) < n

    def rec(i: int) -> bool:
        if limit is not None and len(results) >= limit:
            return True
        if i == len(arcs):
            if all(
                out_used[v] == in_used[v] + imb[v] and out_used[v] + in_used[v] >= 1
                for v in range(n)
            ) and (not connected or _connected_covering(n, chosen)):
                results.append(frozenset(chosen))
                if limit is not None and len(results) >= limit:
                    return True
            return False
        u, v = arcs[i]
        rem_out[u] -= 1
        rem_in[v] -= 1
        arc = (u, v)
        branches: tuple[bool, ...]
        if arc in must_contain:
            branches = (True,)
        elif arc in must_avoid:
            branches = (False,)
        else:
            branches = (True, False)
        stop = False
        for take in branches:
            if take:
                if out_used[u] >= cap[u]:
                    continue
                out_used[u] += 1
                in_used[v] += 1
                chosen.append(arc)
            ok = feasible(u) and feasible(v)
            if ok and connected and (closed_too_early(u) or closed_too_early(v)):
                ok = False
            if ok and rec(i + 1):
                stop = True
            if take:
                chosen.pop()
                out_used[u] -= 1
                in_used[v] -= 1
            if stop:
                break
        rem_out[u] += 1
        rem_in[v] += 1
        return stop

    rec(0)
    return results


def enumerate_spanning_eulerian(
    d: Digraph,
    must_contain: frozenset[Arc] | set[Arc] = frozenset(),
    must_avoid: frozenset[Arc] | set[Arc] = frozenset(),
    limit: int | None = None,
) -> list[frozenset[Arc]]:
    """All spanning eulerian subdigraphs honoring the constraints (up to limit).

    A spanning eulerian subdigraph is a connected spanning subdigraph with
    in-degree equal to out-degree at every vertex.  Raises on inputs beyond
    the oracle size guard.
    """
    _check_size(d)
    return _search(
        d,
        frozenset(must_contain),
        frozenset(must_avoid),
        {},
        None,
        limit,
        connected=True,
    )


def spanning_eulerian_exists(
    d: Digraph,
    must_contain: frozenset[Arc] | set[Arc] = frozenset(),
    must_avoid: frozenset[Arc] | set[Arc] = frozenset(),
) -> bool:
    return bool(enumerate_spanning_eulerian(d, must_contain, must_avoid, limit=1))


def find_trail_oracle(
    d: Digraph,
    x: int,
    y: int,
    must_avoid: frozenset[Arc] | set[Arc] = frozenset(),
    out_cap: dict[int, int] | None = None,
) -> frozenset[Arc] | None:
    """First spanning (x,y)-trail found by brute force, as an arc set.

    The arc set is balanced except for one surplus departure at x and one
    surplus arrival at y, touches every vertex, and is weakly connected,
    which makes it traversable as a single open trail.
    """
    _check_size(d)
    if x == y or not (0 <= x < d.n and 0 <= y < d.n):
        raise PreconditionError("trail search needs distinct vertices x, y")
    found = _search(
        d,
        frozenset(),
        frozenset(must_avoid),
        {x: 1, y: -1},
        out_cap,
        1,
        connected=True,
    )
    return found[0] if found else None


def oracle_eulerian_factor(
    d: Digraph, avoid: frozenset[Arc] | set[Arc] = frozenset()
) -> bool:
    """Whether a spanning subdigraph with in = out >= 1 everywhere exists
    inside d minus the avoided arcs (connectivity not required)."""
    _check_size(d)
    return bool(
        _search(d, frozenset(), frozenset(avoid), {}, None, 1, connected=False)
    )


# ---- exhaustive enumeration with caching ----

_ALL_SES_CACHE: dict[tuple[int, tuple[Arc, ...]], tuple[frozenset[Arc], ...]] = {}


def all_spanning_eulerian(d: Digraph) -> tuple[frozenset[Arc], ...]:
    """Every spanning eulerian subdigraph of d, memoized per digraph.

    Small arc counts go through a straight bitmask sweep; anything larger
    falls back to the pruned search.
    """
    key = (d.n, tuple(d.arcs()))
    hit = _ALL_SES_CACHE.get(key)
    if hit is not None:
        return hit
    arcs = list(d.arcs())
    m = len(arcs)
    out = None
    if m <= 14:
        out_bits = [0] * d.n
        in_bits = [0] * d.n
        for i, (u, v) in enumerate(arcs):
            out_bits[u] |= 1 << i
            in_bits[v] |= 1 << i
        found = []
        for mask in range(1, 1 << m):
            ok = True
            for v in range(d.n):
                o = (mask & out_bits[v]).bit_count()
                if o != (mask & in_bits[v]).bit_count() or o == 0:
                    ok = False
                    break
            if ok:
                sub = [arcs[i] for i in range(m) if mask >> i & 1]
                if _connected_covering(d.n, sub):
                    found.append(frozenset(sub))
        out = tuple(found)
    else:
        out = tuple(enumerate_spanning_eulerian(d))
    _ALL_SES_CACHE[key] = out
    return out


def enumerate_all_tournaments(n: int):
    """Yield every tournament on n vertices (n <= 5), one per orientation."""
    if n > 5:
        raise PreconditionError("tournament sweep is limited to n <= 5")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        arcs = [
            (u, v) if mask >> i & 1 else (v, u) for i, (u, v) in enumerate(pairs)
        ]
        yield Digraph(n, arcs)


def enumerate_all_semicomplete(n: int, sample: int = 3000):
    """Yield semicomplete digraphs on n vertices.

    Full sweep for n <= 4 (three states per pair); n == 5 yields a fixed
    pseudorandom sample of the 3^10 possibilities.
    """
    if n > 5:
        raise PreconditionError("semicomplete sweep is limited to n <= 5")
    pairs = list(combinations(range(n), 2))
    total = 3 ** len(pairs)

    def build(code: int) -> Digraph:
        arcs: list[Arc] = []
        for u, v in pairs:
            code, state = divmod(code, 3)
            if state == 0:
                arcs.append((u, v))
            elif state == 1:
                arcs.append((v, u))
            else:
                arcs.extend(((u, v), (v, u)))
        return Digraph(n, arcs)

    if n <= 4:
        for code in range(total):
            yield build(code)
    else:
        rng = random.Random(0)
        for code in sorted(rng.sample(range(total), min(sample, total))):
            yield build(code)
