"""Command-line surface.

Subcommands expose the decision procedures with machine-readable
certificates: ``analyze`` (connectivity and decomposition report),
``classify`` (per-arc containment and unavoidability), ``trail``
(spanning trail between two vertices), ``avoid`` (spanning eulerian
subdigraph avoiding prescribed arcs), and ``conjecture-search`` (random
probe for avoidance counterexamples).  JSON goes to stdout, a short
human summary to stderr; exit codes are 0 for decided-with-certificate,
2 for decided-impossible-with-obstruction, 3 for unknown, 1 for input
errors.  Every certificate is re-validated before printing.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from functools import partial

from .classify import classify_containment, classify_unavoidable
from .connectivity import (
    CutCertificate,
    arc_connectivity,
    arc_disjoint_paths,
    cut_arcs,
    is_strong,
)
from .decomposition import (
    ignored_sets,
    natural_backward_ordering,
    nice_decomposition,
    one_decomposition,
)
from .digraph import Arc, Digraph, gen_random_semicomplete, is_semicomplete, parse_json, to_dot
from .errors import ConstructionError, EulertrailError, ParseError, PreconditionError
from .factor import NonStrongCut, ObstructionPartition, spanning_eulerian_avoiding
from .trails import (
    EulerianSubdigraph,
    spanning_trail,
    validate_eulerian_subdigraph,
    validate_trail,
)

EXIT_CERTIFICATE = 0
EXIT_INPUT = 1
EXIT_OBSTRUCTION = 2
EXIT_UNKNOWN = 3


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit with the input-error code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


# ---- serialization helpers ----


def _arc_rows(arcs) -> list[list[int]]:
    return [[u, v] for u, v in sorted(arcs)]


def _cut_json(cert: CutCertificate) -> dict:
    return {
        "side_s": sorted(cert.side_s),
        "side_t": sorted(cert.side_t),
        "crossing_arcs": _arc_rows(cert.crossing_arcs),
    }


def _partition_json(part: ObstructionPartition) -> dict:
    return {"r1": sorted(part.r1), "r2": sorted(part.r2), "y": sorted(part.y)}


def _digraph_json(d: Digraph) -> dict:
    return {"n": d.n, "arcs": _arc_rows(d.arcs())}


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _say(args: argparse.Namespace, text: str) -> None:
    if not args.quiet:
        print(text, file=sys.stderr)


# ---- certificate re-validation ----


def _check_cut(d: Digraph, cert: CutCertificate, ignore: frozenset[Arc]) -> None:
    """A cut certificate must list exactly the surviving arcs out of its side."""
    s = set(cert.side_s)
    t = set(cert.side_t)
    if s & t or s | t != set(d.vertices()) or not s or not t:
        raise ConstructionError("cut certificate sides do not partition the vertices")
    crossing = {
        (u, v)
        for u, v in d.arcs()
        if u in s and v in t and (u, v) not in ignore
    }
    if crossing != set(cert.crossing_arcs):
        raise ConstructionError("cut certificate arcs do not match the digraph")


def _check_witness(d: Digraph, sub: EulerianSubdigraph, forbidden: frozenset[Arc]) -> None:
    bad = validate_eulerian_subdigraph(d, sub)
    if bad:
        raise ConstructionError(f"witness failed validation: {bad}")
    if sub.arcs & forbidden:
        raise ConstructionError("witness uses a forbidden arc")


def _check_partition(d: Digraph, part: ObstructionPartition, avoid: frozenset[Arc]) -> None:
    bad = part.check(d, avoid)
    if bad:
        raise ConstructionError(f"obstruction partition failed validation: {bad}")


# ---- input handling ----


def _load_digraph(path: str) -> Digraph:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_json(text)


def _load_arc_file(path: str) -> frozenset[Arc]:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"arc file is not valid JSON: {exc}") from exc
    if not isinstance(rows, list):
        raise ParseError("arc file must hold a JSON list of [tail, head] pairs")
    out: set[Arc] = set()
    for row in rows:
        if (
            not isinstance(row, list)
            or len(row) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in row)
        ):
            raise ParseError(f"bad arc entry: {row!r}")
        out.add((row[0], row[1]))
    return frozenset(out)


# ---- analyze ----


def cmd_analyze(args: argparse.Namespace) -> int:
    d = _load_digraph(args.input)
    if args.format == "dot":
        print(to_dot(d), end="")
        _say(args, f"n={d.n} m={d.m} (dot)")
        return EXIT_CERTIFICATE
    strong = is_strong(d)
    lam = arc_connectivity(d)
    cuts = cut_arcs(d)
    payload: dict = {
        "n": d.n,
        "m": d.m,
        "strong": strong,
        "lambda": lam,
        "cut_arcs": _arc_rows(cuts),
        "decomposition": None,
        "backward_ordering": None,
        "ignored_sets": None,
    }
    if strong and is_semicomplete(d) and d.n >= 2:
        try:
            dec = nice_decomposition(d) if d.n >= 4 else one_decomposition(d)
        except (PreconditionError, ConstructionError):
            dec = one_decomposition(d)
        payload["decomposition"] = [sorted(s) for s in dec.sets]
        try:
            order = natural_backward_ordering(dec, d)
        except PreconditionError:
            order = None
        if order is not None:
            payload["backward_ordering"] = [[s, t] for s, t in order]
            payload["ignored_sets"] = sorted(ignored_sets(dec, d))
    _say(
        args,
        f"n={d.n} m={d.m} strong={strong} lambda={lam} cut_arcs={len(cuts)}",
    )
    _emit(payload)
    return EXIT_CERTIFICATE


# ---- classify ----


def _classify_one(d: Digraph, arc: Arc) -> dict:
    cont = classify_containment(d, arc)
    unav = classify_unavoidable(d, arc)
    if cont.witness is not None:
        _check_witness(d, cont.witness, frozenset())
        if arc not in cont.witness.arcs:
            raise ConstructionError("containment witness misses its own arc")
    if unav.cut_certificate is not None:
        _check_cut(d.remove_arcs([arc]), unav.cut_certificate, frozenset())
    if unav.partition is not None:
        _check_partition(d, unav.partition, frozenset((arc,)))
    if unav.avoidance_witness is not None:
        _check_witness(d, unav.avoidance_witness, frozenset((arc,)))
    return {
        "arc": [arc[0], arc[1]],
        "good": cont.in_some,
        "bad_pattern": cont.obstruction,
        "witness": _arc_rows(cont.witness.arcs) if cont.witness else None,
        "unavoidable": unav.kind if unav.unavoidable else False,
        "cut_certificate": _cut_json(unav.cut_certificate)
        if unav.cut_certificate
        else None,
        "partition": _partition_json(unav.partition) if unav.partition else None,
        "avoidance_witness": _arc_rows(unav.avoidance_witness.arcs)
        if unav.avoidance_witness
        else None,
    }


def cmd_classify(args: argparse.Namespace) -> int:
    d = _load_digraph(args.input)
    if args.arc is not None:
        arc = (args.arc[0], args.arc[1])
        row = _classify_one(d, arc)
        _say(
            args,
            f"arc {arc}: "
            + ("good" if row["good"] else f"bad ({row['bad_pattern']})")
            + ", "
            + (
                f"unavoidable ({row['unavoidable']})"
                if row["unavoidable"]
                else "avoidable"
            ),
        )
        _emit(row)
        return EXIT_CERTIFICATE
    rows = [_classify_one(d, a) for a in d.arcs()]
    good = sum(1 for r in rows if r["good"])
    heavy = sum(1 for r in rows if r["unavoidable"])
    _say(
        args,
        f"{len(rows)} arcs: {good} good, {len(rows) - good} bad; "
        f"{heavy} unavoidable",
    )
    _emit({"n": d.n, "arcs": rows})
    return EXIT_CERTIFICATE


# ---- trail ----


def cmd_trail(args: argparse.Namespace) -> int:
    d = _load_digraph(args.input)
    x, y = args.src, args.dst
    if not is_semicomplete(d):
        raise PreconditionError("trail construction requires a semicomplete digraph")
    if not is_strong(d):
        raise PreconditionError("trail construction requires a strong digraph")
    if not (0 <= x < d.n and 0 <= y < d.n) or x == y:
        raise PreconditionError("endpoints must be two distinct vertices")
    probe = arc_disjoint_paths(d, x, y, 2)
    if isinstance(probe, CutCertificate):
        _check_cut(d, probe, frozenset())
        if len(probe.crossing_arcs) >= 2:
            raise ConstructionError("cut certificate does not refute two paths")
        _say(args, f"no two arc-disjoint paths {x}->{y}: cut of size {len(probe.crossing_arcs)}")
        _emit({"trail": None, "cut": _cut_json(probe)})
        return EXIT_OBSTRUCTION
    trail = spanning_trail(d, x, y)
    bad = validate_trail(d, trail, x, y)
    if bad:
        raise ConstructionError(f"trail failed validation: {bad}")
    _say(args, f"spanning trail {x}->{y} with {len(trail.vertices) - 1} arcs")
    _emit({"trail": list(trail.vertices), "cut": None})
    return EXIT_CERTIFICATE


# ---- avoid ----


def cmd_avoid(args: argparse.Namespace) -> int:
    d = _load_digraph(args.input)
    forbidden = _load_arc_file(args.arcs) if args.arcs else frozenset()
    result = spanning_eulerian_avoiding(d, forbidden)
    if isinstance(result, EulerianSubdigraph):
        _check_witness(d, result, forbidden)
        _say(args, f"certificate with {len(result.arcs)} arcs")
        _emit({"certificate": _arc_rows(result.arcs), "obstruction": None})
        return EXIT_CERTIFICATE
    if isinstance(result, NonStrongCut):
        _check_cut(d, result.certificate, forbidden)
        _say(args, "obstruction: allowed arcs are not strongly connected")
        _emit(
            {
                "certificate": None,
                "obstruction": {"kind": "cut", "cut": _cut_json(result.certificate)},
            }
        )
        return EXIT_OBSTRUCTION
    if isinstance(result, ObstructionPartition):
        _check_partition(d, result, forbidden)
        _say(args, "obstruction: no eulerian factor avoids the set")
        _emit(
            {
                "certificate": None,
                "obstruction": {
                    "kind": "partition",
                    "partition": _partition_json(result),
                },
            }
        )
        return EXIT_OBSTRUCTION
    _say(args, "unknown: no certificate or obstruction found")
    _emit({"certificate": None, "obstruction": None})
    return EXIT_UNKNOWN


# ---- conjecture search ----


def _gen_hard_instance(
    rng: random.Random, k: int, n_max: int
) -> tuple[Digraph, frozenset[Arc]] | None:
    """One random instance with arc connectivity above k, or None."""
    n_min = max(4, k + 2)
    for _ in range(400):
        n = rng.randint(n_min, n_max)
        prob = rng.uniform(0.55, 1.0)
        d = gen_random_semicomplete(n, prob, rng.randrange(1 << 30))
        degs = [
            min(bin(d.out_mask(v)).count("1"), bin(d.in_mask(v)).count("1"))
            for v in d.vertices()
        ]
        if min(degs) < k + 1:
            continue
        if arc_connectivity(d) < k + 1:
            continue
        avoid = frozenset(rng.sample(list(d.arcs()), k))
        return d, avoid
    return None


def _run_trial(seed: int, k: int, n_max: int, index: int) -> dict:
    rng = random.Random(f"{seed}:{index}")
    inst = _gen_hard_instance(rng, k, n_max)
    if inst is None:
        return {"index": index, "status": "skipped"}
    d, avoid = inst
    result = spanning_eulerian_avoiding(d, avoid)
    if isinstance(result, EulerianSubdigraph):
        bad = validate_eulerian_subdigraph(d, result)
        if bad or result.arcs & avoid:
            raise ConstructionError(f"trial {index}: invalid certificate: {bad}")
        return {"index": index, "status": "certificate"}
    from .oracle import enumerate_spanning_eulerian

    found = enumerate_spanning_eulerian(d, must_avoid=avoid, limit=1)
    if found:
        if isinstance(result, (ObstructionPartition, NonStrongCut)):
            raise ConstructionError(
                f"trial {index}: obstruction contradicted by an exhaustive witness"
            )
        return {"index": index, "status": "pipeline-miss"}
    return {
        "index": index,
        "status": "candidate",
        "digraph": _digraph_json(d),
        "avoid": _arc_rows(avoid),
    }


def run_conjecture_search(
    k: int, n_max: int, trials: int, seed: int, jobs: int = 1
) -> dict:
    """Probe random high-connectivity instances for avoidance failures.

    Each trial is deterministic given (seed, index), so results are
    reproducible and mergeable regardless of worker count.
    """
    worker = partial(_run_trial, seed, k, n_max)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(worker, range(trials), chunksize=max(1, trials // (jobs * 8)))
            )
    else:
        results = [worker(i) for i in range(trials)]
    counts = {"certificate": 0, "skipped": 0, "pipeline-miss": 0, "candidate": 0}
    candidates = []
    for row in results:
        counts[row["status"]] += 1
        if row["status"] == "candidate":
            candidates.append(row)
    return {
        "k": k,
        "n_max": n_max,
        "trials": trials,
        "seed": seed,
        "certificates": counts["certificate"],
        "skipped": counts["skipped"],
        "pipeline_misses": counts["pipeline-miss"],
        "candidates": candidates,
    }


def cmd_conjecture_search(args: argparse.Namespace) -> int:
    if args.k < 1 or args.n < 4 or args.trials < 1 or args.jobs < 1:
        raise PreconditionError("k, n, trials, and jobs must be positive (n at least 4)")
    if args.n < args.k + 2:
        raise PreconditionError(
            f"connectivity {args.k + 1} needs at least {args.k + 2} vertices"
        )
    report = run_conjecture_search(args.k, args.n, args.trials, args.seed, args.jobs)
    _say(
        args,
        f"trials={report['trials']} certificates={report['certificates']} "
        f"skipped={report['skipped']} misses={report['pipeline_misses']} "
        f"candidates={len(report['candidates'])}",
    )
    _emit(report)
    return EXIT_UNKNOWN if report["candidates"] else EXIT_CERTIFICATE


# ---- entry point ----


def _build_parser() -> _Parser:
    parser = _Parser(prog="eulertrail", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress the stderr summary")

    p = sub.add_parser("analyze", parents=[common], help="connectivity and decomposition report")
    p.add_argument("input", help="digraph JSON file, or - for stdin")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="per-arc containment and unavoidability")
    p.add_argument("input", help="digraph JSON file, or - for stdin")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--arc", nargs=2, type=int, metavar=("U", "V"))
    group.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("trail", parents=[common], help="spanning trail between two vertices")
    p.add_argument("input", help="digraph JSON file, or - for stdin")
    p.add_argument("--from", dest="src", type=int, required=True, metavar="X")
    p.add_argument("--to", dest="dst", type=int, required=True, metavar="Y")
    p.set_defaults(func=cmd_trail)

    p = sub.add_parser("avoid", parents=[common], help="spanning eulerian subdigraph avoiding arcs")
    p.add_argument("input", help="digraph JSON file, or - for stdin")
    p.add_argument("--arcs", help="JSON file with a list of [tail, head] pairs")
    p.set_defaults(func=cmd_avoid)

    p = sub.add_parser(
        "conjecture-search", parents=[common], help="random probe for avoidance counterexamples"
    )
    p.add_argument("--k", type=int, required=True, help="forbidden arcs per instance")
    p.add_argument("--n", type=int, required=True, help="largest vertex count")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_conjecture_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, PreconditionError, OSError) as exc:
        print(f"eulertrail: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EulertrailError as exc:
        print(f"eulertrail: internal error: {exc}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
