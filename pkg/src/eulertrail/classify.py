"""Per-arc classification: membership in some spanning eulerian
subdigraph, and membership in all of them.

The containment side labels an arc good or bad from the digraph's nice
decomposition and, for good arcs, constructs an explicit witness.  The
unavoidability side recognizes the arcs no spanning eulerian subdigraph
can skip, via the cut-arc test and a neighborhood comparison in the
digraph with the arc removed, and hands back either an obstruction
partition or a witness avoiding the arc.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .connectivity import (
    CutCertificate,
    arc_connectivity,
    arc_connectivity_certificate,
    arc_disjoint_paths,
    cut_arcs,
    is_strong,
    strong_components,
)
from .decomposition import (
    Decomposition,
    ignored_sets,
    natural_backward_ordering,
    nice_decomposition,
)
from .digraph import Arc, Digraph, is_semicomplete
from .errors import ConstructionError, PreconditionError
from .factor import ObstructionPartition, merge_all, spanning_eulerian_avoiding
from ._flow import feasible_circulation
from .hamilton import hamiltonian_path_between, path_within
from .trails import EulerianSubdigraph, spanning_trail, validate_eulerian_subdigraph


@dataclass(frozen=True)
class ArcContainment:
    """Whether an arc lies on some spanning eulerian subdigraph."""

    arc: Arc
    in_some: bool
    obstruction: str | None  # "regular" | "left" | "right" | "small-case"
    witness: EulerianSubdigraph | None


@dataclass(frozen=True)
class ArcUnavoidability:
    """Whether every spanning eulerian subdigraph must use an arc."""

    arc: Arc
    unavoidable: bool
    kind: str | None  # "cut" | "regular" | "left" | "right" | "exceptional"
    cut_certificate: CutCertificate | None
    partition: ObstructionPartition | None
    avoidance_witness: EulerianSubdigraph | None


def _require(d: Digraph, arc: Arc) -> None:
    if not is_semicomplete(d):
        raise PreconditionError("classification requires a semicomplete digraph")
    if not is_strong(d):
        raise PreconditionError("classification requires a strong digraph")
    if not d.has_arc(*arc):
        raise PreconditionError(f"arc {arc} is not in the digraph")


# ---- containment ----


def _tiny_witness(d: Digraph, arc: Arc) -> EulerianSubdigraph | None:
    """Definitional subset sweep for n <= 3 (no structural theory there)."""
    arcs = list(d.arcs())
    m = len(arcs)
    for mask in range(1, 1 << m):
        chosen = [arcs[i] for i in range(m) if mask >> i & 1]
        if arc not in chosen:
            continue
        sub = EulerianSubdigraph(frozenset(chosen))
        if not validate_eulerian_subdigraph(d, sub):
            return sub
    return None


def _bad_label(d: Digraph, dec: Decomposition, arc: Arc) -> str | None:
    u, v = arc
    tag = dec.arc_tag(arc)
    if tag == "forward":
        skipped = ignored_sets(dec, d)
        if any(
            i in skipped for i in range(dec.position(u) + 1, dec.position(v))
        ):
            return "regular"
    order = natural_backward_ordering(dec, d)
    if order:
        t_last = order[-1][1]
        if (
            dec.sets[1] == frozenset((u,))
            and dec.sets[0] == frozenset((t_last,))
            and t_last != v
            and not d.has_arc(t_last, u)
        ):
            return "left"
        s_first = order[0][0]
        p = dec.width
        if (
            dec.sets[p - 2] == frozenset((v,))
            and dec.sets[p - 1] == frozenset((s_first,))
            and s_first != u
            and not d.has_arc(v, s_first)
        ):
            return "right"
    return None


def _backward_witness(d: Digraph, dec: Decomposition) -> frozenset[Arc]:
    """Hamiltonian cycle through every backward arc.

    The backward arcs chain into a path across the decomposition via
    their interleaving; extending it through the first and last sets
    leaves a remainder whose ends dominate everything, so a hamiltonian
    path closes the cycle.
    """
    order = natural_backward_ordering(dec, d)
    seq = [order[0][0], order[0][1]]
    for j in range(len(order) - 1):
        t_j = order[j][1]
        s_next, t_next = order[j + 1]
        if t_j != s_next:
            if dec.position(t_j) == dec.position(s_next):
                seq.extend(_inner_path(d, dec.sets[dec.position(t_j)], t_j, s_next)[1:])
            else:
                seq.append(s_next)
        seq.append(t_next)
    first_piece = path_within(d, dec.sets[-1], end=seq[0])
    last_piece = path_within(d, dec.sets[0], start=seq[-1])
    q1 = first_piece + seq[1:-1] + last_piece
    q1_arcs = {(q1[i], q1[i + 1]) for i in range(len(q1) - 1)}
    internals = set(q1[1:-1])
    if internals:
        keep = [v for v in d.vertices() if v not in internals]
        sub, ids = d.induced(keep)
        q2_local = hamiltonian_path_between(sub, ids.index(q1[-1]), ids.index(q1[0]))
        q2 = [ids[w] for w in q2_local]
    else:
        # q1 is the lone backward arc between two singleton sets, so the
        # remainder keeps every vertex; dropping that arc may orphan the
        # pair, which the generic path builder refuses.  Its strong
        # components are the decomposition sets in order, and every arc
        # between different sets now points forward, so chaining a
        # hamiltonian path per set closes the cycle.
        rest = d.remove_arcs(sorted(q1_arcs))
        comps = strong_components(rest)
        pieces = [path_within(rest, comps[0], start=q1[-1])]
        pieces.extend(path_within(rest, c) for c in comps[1:-1])
        pieces.append(path_within(rest, comps[-1], end=q1[0]))
        q2 = []
        for piece in pieces:
            if q2 and not rest.has_arc(q2[-1], piece[0]):
                raise ConstructionError("missing bridge between remainder components")
            q2.extend(piece)
    arcs = set(q1_arcs)
    arcs |= {(q2[i], q2[i + 1]) for i in range(len(q2) - 1)}
    return frozenset(arcs)


def _inner_path(d: Digraph, within: frozenset[int], a: int, b: int) -> list[int]:
    """Shortest path from a to b inside one induced strong set."""
    sub, ids = d.induced(within)
    al, bl = ids.index(a), ids.index(b)
    parent = {al: -1}
    frontier = [al]
    while frontier and bl not in parent:
        nxt: list[int] = []
        for w in frontier:
            for z in sub.out_neighbors(w):
                if z not in parent:
                    parent[z] = w
                    nxt.append(z)
        frontier = nxt
    if bl not in parent:
        raise ConstructionError("no path inside a strong set")
    path = [bl]
    while path[-1] != al:
        path.append(parent[path[-1]])
    path.reverse()
    return [ids[w] for w in path]


def _trail_route_witness(d: Digraph, arc: Arc) -> frozenset[Arc]:
    u, v = arc
    trail = spanning_trail(d, v, u)
    return frozenset(trail.arcs()) | {arc}


def _forced_flow_witness(
    d: Digraph, dec: Decomposition, arc: Arc
) -> frozenset[Arc] | None:
    """Complete the forced arcs (all backward ones plus this arc) to a
    spanning eulerian subdigraph by a demand-balancing circulation."""
    forced = set(dec.backward_arcs(d))
    forced.add(arc)
    demand: dict[int, int] = {}
    for a, b in forced:
        demand[a] = demand.get(a, 0) - 1
        demand[b] = demand.get(b, 0) + 1
    touched = {w for a in forced for w in a}
    n = d.n
    edges: list[tuple[int, int, int, int]] = []
    slots: list[Arc] = []
    for a, b in d.arcs():
        if (a, b) in forced:
            continue
        edges.append((n + a, b, 0, 1))
        slots.append((a, b))
    for w in range(n):
        edges.append((w, n + w, 0 if w in touched else 1, n))
    src, snk = 2 * n, 2 * n + 1
    for w, delta in sorted(demand.items()):
        if delta > 0:
            edges.append((src, n + w, delta, delta))
        elif delta < 0:
            edges.append((w, snk, -delta, -delta))
    edges.append((snk, src, 0, 4 * n))
    flows = feasible_circulation(2 * n + 2, edges)
    if flows is None:
        return None
    extra = {slots[i] for i in range(len(slots)) if flows[i] == 1}
    candidate = frozenset(extra | forced)
    sub = EulerianSubdigraph(candidate)
    if not validate_eulerian_subdigraph(d, sub):
        return candidate
    merged = merge_all(d, candidate, protected=frozenset(forced))
    return merged


def classify_containment(d: Digraph, arc: Arc) -> ArcContainment:
    """Decide whether the arc lies on some spanning eulerian subdigraph.

    Good arcs come back with a validated witness; bad arcs carry the
    pattern that blocks them.  Digraphs on up to three vertices have no
    decomposition theory and are settled by direct enumeration.
    """
    _require(d, arc)
    if d.n <= 3:
        witness = _tiny_witness(d, arc)
        if witness is None:
            return ArcContainment(arc, False, "small-case", None)
        return ArcContainment(arc, True, None, witness)
    dec = nice_decomposition(d)
    label = _bad_label(d, dec, arc)
    if label is not None:
        return ArcContainment(arc, False, label, None)
    tag = dec.arc_tag(arc)
    u, v = arc
    witness_arcs: frozenset[Arc] | None
    if tag == "backward":
        witness_arcs = _backward_witness(d, dec)
    elif (
        tag == "flat"
        or arc_connectivity(d) >= 2
        or isinstance(arc_disjoint_paths(d, v, u, 2), list)
    ):
        witness_arcs = _trail_route_witness(d, arc)
    else:
        witness_arcs = _forced_flow_witness(d, dec, arc)
        if witness_arcs is None:
            witness_arcs = _oracle_witness(d, arc)
    if witness_arcs is None:
        raise ConstructionError(f"no witness construction succeeded for {arc}")
    sub = EulerianSubdigraph(witness_arcs)
    bad = validate_eulerian_subdigraph(d, sub)
    if bad or arc not in witness_arcs:
        raise ConstructionError(f"witness for {arc} failed validation: {bad}")
    return ArcContainment(arc, True, None, sub)


def _oracle_witness(d: Digraph, arc: Arc) -> frozenset[Arc] | None:
    from .oracle import enumerate_spanning_eulerian

    try:
        found = enumerate_spanning_eulerian(d, must_contain={arc}, limit=1)
    except PreconditionError:
        return None
    return found[0] if found else None


# ---- unavoidability ----


def taxonomy_labels(d: Digraph, arc: Arc) -> dict[str, bool]:
    """Which of the four structural patterns fit this non-cut arc.

    Keys "regular", "left", "right", "exceptional"; for an unavoidable
    non-cut arc on at least four vertices exactly one should hold.
    """
    u, v = arc
    out = {"regular": False, "left": False, "right": False, "exceptional": False}
    if d.n == 4:
        out["exceptional"] = _exceptional_match(d, arc)
    if d.n < 4:
        return out
    dec = nice_decomposition(d)
    p = dec.width
    pu, pv = dec.position(u), dec.position(v)
    skipped = ignored_sets(dec, d)
    if (
        pv == pu + 1
        and 1 <= pu
        and pv <= p - 2
        and dec.sets[pu] == frozenset((u,))
        and dec.sets[pv] == frozenset((v,))
        and pu in skipped
        and pv in skipped
    ):
        out["regular"] = True
    if p >= 3 and all(len(dec.sets[i]) == 1 for i in range(3)):
        v1, v2, v3 = (next(iter(dec.sets[i])) for i in range(3))
        if (
            arc == (v1, v3)
            and d.has_arc(v2, v1)
            and not d.has_arc(v1, v2)
            and not d.has_arc(v3, v2)
            and set(d.in_neighbors(v3)) == {v1, v2}
        ):
            out["left"] = True
    if p >= 3 and all(len(dec.sets[i]) == 1 for i in range(p - 3, p)):
        w1, w2, w3 = (next(iter(dec.sets[i])) for i in range(p - 3, p))
        if (
            arc == (w1, w3)
            and d.has_arc(w3, w2)
            and not d.has_arc(w2, w3)
            and not d.has_arc(w2, w1)
            and set(d.out_neighbors(w1)) == {w2, w3}
        ):
            out["right"] = True
    return out


def _exceptional_match(d: Digraph, arc: Arc) -> bool:
    """The one four-vertex pattern outside the three main families."""
    if d.n != 4:
        return False
    for a, b, c, e in permutations(range(4)):
        required = {(a, b), (b, c), (c, e), (a, e), (c, a), (e, b)}
        optional = {(c, b)}
        arcs = set(d.arcs())
        if required <= arcs and arcs <= required | optional and arc == (a, e):
            return True
    return False


def classify_unavoidable(d: Digraph, arc: Arc) -> ArcUnavoidability:
    """Decide whether every spanning eulerian subdigraph uses the arc.

    Cut arcs are unavoidable outright.  A non-cut arc is unavoidable
    exactly when, after removing it, its two ends have identical
    out-neighborhoods and identical in-neighborhoods, those sets are
    disjoint, and exactly one arc crosses from the out-side to the
    in-side; the crossing partition is returned as the obstruction.
    Avoidable arcs come back with a validated witness avoiding them.
    """
    _require(d, arc)
    u, v = arc
    if arc in cut_arcs(d):
        _, cert = arc_connectivity_certificate(d.remove_arcs([arc]))
        return ArcUnavoidability(arc, True, "cut", cert, None, None)
    rest = d.remove_arcs([arc])
    if d.n >= 4:
        n_out = rest.out_mask(u)
        n_in = rest.in_mask(u)
        if (
            n_out == rest.out_mask(v)
            and n_in == rest.in_mask(v)
            and not n_out & n_in
        ):
            outs = [w for w in range(d.n) if n_out >> w & 1]
            ins = [w for w in range(d.n) if n_in >> w & 1]
            crossing = sum(1 for a in outs for b in ins if rest.has_arc(a, b))
            if crossing == 1:
                partition = ObstructionPartition(
                    frozenset(ins), frozenset(outs), frozenset((u, v))
                )
                bad = partition.check(d, frozenset((arc,)))
                if bad:
                    raise ConstructionError(
                        f"unavoidability partition failed validation: {bad}"
                    )
                labels = taxonomy_labels(d, arc)
                kind = next((k for k, hit in labels.items() if hit), None)
                return ArcUnavoidability(arc, True, kind, None, partition, None)
    got = spanning_eulerian_avoiding(d, frozenset((arc,)))
    if not isinstance(got, EulerianSubdigraph):
        raise ConstructionError(
            f"arc {arc} passed the avoidability tests but no witness was found"
        )
    bad = validate_eulerian_subdigraph(d, got)
    if bad or arc in got.arcs:
        raise ConstructionError(f"avoidance witness for {arc} invalid: {bad}")
    return ArcUnavoidability(arc, False, None, None, None, got)


def unavoidable_arcs(d: Digraph) -> list[Arc]:
    """All arcs that every spanning eulerian subdigraph must use."""
    return [a for a in d.arcs() if classify_unavoidable(d, a).unavoidable]
