"""Campaign driver: exhaustive lemma sweeps and the 4-path-pairability check.

Every lemma's quantified domain is enumerated in a fixed order, each
instance is handed to its lemma operation, and every returned certificate
is re-checked with the independent routing verifier.  Reports aggregate in
enumeration order regardless of worker count, so a report is a pure
function of (lemma id, strategy, seed); wall-clock time lives in the
``elapsed`` field, which consumers must exclude from comparisons.

Campaigns run in the upper-left quadrant (its local and global coordinate
systems coincide); the grid's symmetries carry every result to the other
three corners.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product
from multiprocessing import Pool
from random import Random
from typing import Callable, Iterable, Iterator, Optional

from .flow import escape_flow
from .grid import (
    Corner,
    Vertex,
    adjusted_quadrant,
    landmarks,
    make_grid,
    quadrant,
    vertex,
)
from .lemmas import (
    LemmaDefect,
    LemmaReport,
    NoMatch,
    build_frame,
    clamp_matching,
    crowded_escape,
    escape_three_distinct,
    escape_three_shared,
    frame_c0_mate_c1,
    frame_c1_mate_corner,
    frame_two_mate_third,
    link_and_escape,
    link_pair_escort_singletons,
    project_with_b_link,
)
from .routing import (
    Demand,
    Infeasible,
    Instance,
    PathSystem,
    is_weakly_2_linked,
    solve,
    verify,
)

_GRID = make_grid(6, 6)
_UL = quadrant(_GRID, Corner.UL)
_LM = landmarks(_UL)
_LOCAL = tuple(sorted(_UL.vertices))
_FULL = tuple(sorted(_GRID.present_vertices))
_Q0 = adjusted_quadrant("Q0")
_ADJUSTED = {kind: adjusted_quadrant(kind) for kind in ("Q1", "Q2", "Q3", "Q4")}

_A_SET = frozenset(_LM.A)
_B_SET = frozenset(_LM.B)
_B_OFF_A = _B_SET - _A_SET
_LINE_SET = {"A": _A_SET, "B": _B_SET}
_PSI_MAPS = (("A", "A"), ("A", "B"), ("B", "A"), ("B", "B"))
_C1_IN_Q = frozenset(
    e for e in _LM.C1 if e[0] in _UL.vertices and e[1] in _UL.vertices
)

LEMMA_IDS = (
    "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "P1-matching",
)
STRATEGIES = ("exhaustive", "reduced", "random")

# Lemma 9's two exceptional terminal sets and their admissible linked
# terminals, in quadrant-local coordinates (frozen by the exhaustive run).
T1 = frozenset({Vertex(1, 1), Vertex(2, 1), Vertex(3, 1)})
T2 = frozenset({Vertex(1, 1), Vertex(1, 2), Vertex(1, 3), Vertex(2, 3)})
T1_ADMISSIBLE = frozenset({Vertex(1, 1), Vertex(2, 1)})
T2_ADMISSIBLE = frozenset({Vertex(1, 3), Vertex(2, 3)})


@dataclass(frozen=True)
class Campaign:
    """A verification run: which lemma, which slice of its domain, how wide."""

    lemma_id: str
    strategy: str = "exhaustive"
    samples: Optional[int] = None
    seed: Optional[int] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.lemma_id not in LEMMA_IDS and self.lemma_id != "pairability":
            raise ValueError(f"unknown lemma id {self.lemma_id!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "random":
            if self.seed is None:
                raise ValueError("the random strategy requires an explicit seed")
            if self.samples is None or self.samples < 1:
                raise ValueError("the random strategy requires samples >= 1")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")


@dataclass(frozen=True)
class PairabilityInstance:
    """Eight distinct vertices of the 6x6 grid split into four pairs."""

    pairs: tuple[tuple[Vertex, Vertex], ...]

    def __post_init__(self) -> None:
        pairs = tuple((vertex(s), vertex(t)) for s, t in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) != 4:
            raise ValueError(f"exactly four pairs required, got {len(pairs)}")
        flat = [v for p in pairs for v in p]
        if len(set(flat)) != 8:
            raise ValueError("the eight terminals must be pairwise distinct")
        for v in flat:
            if v not in _GRID.present_vertices:
                raise ValueError(f"{v} is not a vertex of the 6x6 grid")


# ----------------------------------------------------------- degenerate laws

def _local_degree(v: Vertex) -> int:
    return 2 + (1 < v.row < 3) + (1 < v.col < 3)


def degenerate_reason(s1, t1, s2, s3, psi) -> Optional[str]:
    """Name the law making this placement infeasible, or None.

    Two local obstructions cover every infeasible instance of the
    link-plus-escorts domain (checked exhaustively): a vertex asked to
    emit more positive-length paths than it has edges, and the pair path
    pinned across a full boundary-distant line with both escorts starting
    at its midpoint.  Every placement outside both laws is feasible.
    """
    s1, t1, s2, s3 = vertex(s1), vertex(t1), vertex(s2), vertex(s3)
    line2, line3 = psi
    for v in {s1, t1, s2, s3}:
        ends = int((s1 == v) != (t1 == v))
        ends += int(s2 == v and v not in _LINE_SET[line2])
        ends += int(s3 == v and v not in _LINE_SET[line3])
        if ends > _local_degree(v):
            return f"degree overload at {tuple(v)}"
    if s2 == s3:
        if {s1, t1} == {Vertex(1, 1), Vertex(1, 3)} and s2 == (1, 2) and line2 == line3 == "A":
            return "line cut across the far row"
        if {s1, t1} == {Vertex(1, 1), Vertex(3, 1)} and s2 == (2, 1) and line2 == line3 == "B":
            return "line cut down the far column"
    return None


# ------------------------------------------------------------- enumerations

def _matchings(seq):
    if not seq:
        yield ()
        return
    first, rest = seq[0], list(seq[1:])
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, other),) + tail


def _iter_l1() -> Iterator:
    for chosen in combinations(_LOCAL, 8):
        for pairs in _matchings(list(chosen)):
            yield (pairs, ())
    for chosen in combinations(_LOCAL, 7):
        for single in chosen:
            rest = [v for v in chosen if v != single]
            for pairs in _matchings(rest):
                yield (pairs, (single,))


def _iter_l2() -> Iterator:
    for chosen in combinations(_LOCAL, 6):
        for pairs in _matchings(list(chosen)):
            yield (pairs, ())
        for singles in combinations(chosen, 2):
            rest = [v for v in chosen if v not in singles]
            for pairs in _matchings(rest):
                yield (pairs, singles)


def _iter_l3() -> Iterator:
    for pair in combinations(_LOCAL, 2):
        others = [v for v in _LOCAL if v not in pair]
        for singles in combinations(others, 3):
            yield ((pair,), singles)


def _iter_l4() -> Iterator:
    for k in range(3, 7):
        yield ("strip", k)
    for k in range(3, 7):
        yield ("lshape", k)


def _iter_l5() -> Iterator:
    for s1, s2 in product(_LOCAL, repeat=2):
        for alpha in (0, 1):
            yield (s1, s2, alpha)


def _iter_l6() -> Iterator:
    for a, b, c in combinations(_LOCAL, 3):
        yield (a, b, c)
        yield (a, c, b)
        yield (b, c, a)


def _iter_l7() -> Iterator:
    for triple in combinations(_LOCAL, 3):
        yield ("i",) + triple
    for triple in combinations(_LOCAL, 3):
        for z in (_LM.x0, _LM.y0):
            yield ("ii",) + triple + (z,)


def _iter_l8() -> Iterator:
    for kind in ("Q1", "Q2", "Q3", "Q4"):
        for triple in combinations(sorted(_ADJUSTED[kind].graph.present_vertices), 3):
            yield ("i", kind) + triple
    for s1, t1, s2 in product(_LOCAL, repeat=3):
        yield ("ii", s1, t1, s2)
    for triple in combinations(_LOCAL, 3):
        yield ("iii",) + triple
    for doubled in _LOCAL:
        if doubled in _A_SET:
            continue
        for third in _LOCAL:
            if third != doubled:
                yield ("iii", doubled, doubled, third)


def _iter_l9() -> Iterator:
    for k in (1, 2, 3, 4):
        for T in combinations(_LOCAL, k):
            for s in T:
                yield (T, s)


def _iter_l10() -> Iterator:
    for s1, t1, s2, s3 in product(_LOCAL, repeat=4):
        for psi in _PSI_MAPS:
            yield (s1, t1, s2, s3, psi)


def _iter_p1_matching() -> Iterator:
    """Clamp configurations actually assembled during a full L10 sweep."""
    for inst in _iter_l10():
        s1, t1, s2, s3, psi = inst
        collect: list = []
        try:
            link_pair_escort_singletons(_UL, s1, t1, s2, s3, psi, collect)
        except LemmaDefect:
            continue
        if collect:
            yield (inst, collect[-1])


_ITERATORS: dict[str, Callable[[], Iterator]] = {
    "L1": _iter_l1,
    "L2": _iter_l2,
    "L3": _iter_l3,
    "L4": _iter_l4,
    "L5": _iter_l5,
    "L6": _iter_l6,
    "L7": _iter_l7,
    "L8": _iter_l8,
    "L9": _iter_l9,
    "L10": _iter_l10,
    "P1-matching": _iter_p1_matching,
}


# ------------------------------------------------------- symmetry reduction

def _t(v: Vertex) -> Vertex:
    return Vertex(v.col, v.row)


_SWAP_LINE = {"A": "B", "B": "A"}


def _canon_crowded(inst):
    pairs, singles = inst
    return (
        tuple(sorted(tuple(sorted(p)) for p in pairs)),
        tuple(sorted(singles)),
    )


def transpose_instance(lemma_id: str, inst):
    """Image of an instance under the quadrant transpose, or None when the
    lemma's domain is not closed under it (b, y0, the B-side condition and
    the Fig. 4 graphs all break the symmetry)."""
    if lemma_id == "L1":
        pairs, singles = inst
        return (
            tuple((_t(s), _t(t)) for s, t in pairs),
            tuple(_t(v) for v in singles),
        )
    if lemma_id == "L5":
        s1, s2, alpha = inst
        return (_t(s1), _t(s2), alpha)
    if lemma_id == "L6":
        a, b, c = (_t(v) for v in inst)
        return (min(a, b), max(a, b), c)
    if lemma_id == "L7" and inst[0] == "i":
        return ("i",) + tuple(sorted(_t(v) for v in inst[1:]))
    if lemma_id == "L10":
        s1, t1, s2, s3, (p2, p3) = inst
        return (_t(s1), _t(t1), _t(s2), _t(s3), (_SWAP_LINE[p2], _SWAP_LINE[p3]))
    return None


def _is_representative(lemma_id: str, inst) -> bool:
    image = transpose_instance(lemma_id, inst)
    if image is None:
        return True
    if lemma_id == "L1":
        return _canon_crowded(inst) <= _canon_crowded(image)
    return inst <= image


def enumerate_instances(
    lemma_id: str,
    strategy: str = "exhaustive",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Iterator:
    """Stream the lemma's instances: all of them, transpose-orbit
    representatives, or seeded uniform draws (with replacement)."""
    if lemma_id not in _ITERATORS:
        raise ValueError(f"unknown lemma id {lemma_id!r}")
    base = _ITERATORS[lemma_id]
    if strategy == "exhaustive":
        yield from base()
    elif strategy == "reduced":
        for inst in base():
            if _is_representative(lemma_id, inst):
                yield inst
    elif strategy == "random":
        if seed is None:
            raise ValueError("the random strategy requires an explicit seed")
        if samples is None or samples < 1:
            raise ValueError("the random strategy requires samples >= 1")
        pool = list(base())
        rng = Random(seed)
        for _ in range(samples):
            yield pool[rng.randrange(len(pool))]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")


# ------------------------------------------------------------------ runners
#
# Each runner takes one instance and returns None when the lemma's claim is
# witnessed and independently re-verified, or a (tag, instance, detail)
# record otherwise.  "defect" contradicts the lemma; "refusal" (L9) and
# "degenerate" (L10) are the documented exceptional outcomes.

def _bad(tag, inst, detail):
    return (tag, inst, detail)


def _run_crowded(inst, variant):
    pairs, singles = inst
    try:
        res = crowded_escape(_UL, pairs, singles, variant)
    except LemmaDefect as exc:
        return _bad("defect", inst, str(exc))
    if not verify(Instance(_UL.graph, res.demands), res.paths):
        return _bad("defect", inst, "certificate failed the independent check")
    if len(res.linked) < (2 if variant == 1 else 1):
        return _bad("defect", inst, "too few pairs linked")
    if variant in (2, 3):
        off = [
            p[-1]
            for p, d in zip(res.paths.paths, res.demands)
            if d.kind == "escape" and p[-1] in _B_OFF_A
        ]
        if len(off) > 1:
            return _bad("defect", inst, "more than one exit off A")
    return None


def _run_l1(inst):
    return _run_crowded(inst, 1)


def _run_l2(inst):
    return _run_crowded(inst, 2)


def _run_l3(inst):
    return _run_crowded(inst, 3)


def _l4_graph(kind: str, k: int):
    if kind == "strip":
        return make_grid(3, k)
    g = make_grid(k, k)
    return g.without_vertices([v for v in g.present_vertices if v.row > 2 and v.col > 2])


def _run_l4(inst):
    kind, k = inst
    if is_weakly_2_linked(_l4_graph(kind, k)):
        return None
    return _bad("defect", inst, "graph is not weakly 2-linked")


def _check_frame(inst_demands, paths, record_inst):
    chk = Instance(_UL.graph, inst_demands, _C1_IN_Q)
    if not verify(chk, paths):
        return _bad("defect", record_inst, "certificate failed the independent check")
    return None


def _run_l5(inst):
    s1, s2, alpha = inst
    try:
        f = build_frame(_UL, s1, s2, alpha)
    except LemmaDefect as exc:
        return _bad("defect", inst, str(exc))
    demands = (Demand.pair(s1, f.anchor), Demand.pair(s2, f.anchor))
    return _check_frame(demands, PathSystem(f.mating_paths), inst)


def _ring_vertices(alpha: int) -> tuple[Vertex, ...]:
    ring = _LM.C0 if alpha == 0 else _LM.C1
    return tuple(sorted({v for e in ring for v in e if v in _UL.vertices}))


def _check_framing(res, inst, third_targets):
    a, b = res.framed_pair
    demands = (
        Demand.pair(a, res.frame.anchor),
        Demand.pair(b, res.frame.anchor),
        Demand.escape(res.third, third_targets),
    )
    paths = PathSystem(res.frame.mating_paths + (res.mating_path,))
    return _check_frame(demands, paths, inst)


def _run_l6(inst):
    try:
        res = frame_two_mate_third(_UL, *inst)
    except LemmaDefect as exc:
        return _bad("defect", inst, str(exc))
    return _check_framing(res, inst, _ring_vertices(1 - res.alpha))


def _run_l7(inst):
    if inst[0] == "i":
        try:
            res = frame_c0_mate_c1(_UL, *inst[1:])
        except LemmaDefect as exc:
            return _bad("defect", inst, str(exc))
        if res.alpha != 0:
            return _bad("defect", inst, "frame is not on C0")
        return _check_framing(res, inst, _ring_vertices(1))
    sp, sq, sr, z = inst[1:]
    try:
        res = frame_c1_mate_corner(_UL, sp, sq, sr, z)
    except LemmaDefect as exc:
        return _bad("defect", inst, str(exc))
    if res.alpha != 1:
        return _bad("defect", inst, "frame is not on C1")
    return _check_framing(res, inst, (z,))


def _run_l8(inst):
    tag = inst[0]
    if tag == "i":
        kind, t1, t2, t3 = inst[1:]
        adj = _ADJUSTED[kind]
        try:
            got = escape_three_shared(adj, t1, t2, t3)
        except LemmaDefect as exc:
            return _bad("defect", inst, str(exc))
        chk = Instance(adj.graph, tuple(Demand.escape(t, adj.A) for t in (t1, t2, t3)))
    elif tag == "ii":
        s1, t1, s2 = inst[1:]
        try:
            got = link_and_escape(_Q0, s1, t1, s2)
        except LemmaDefect as exc:
            return _bad("defect", inst, str(exc))
        chk = Instance(
            _Q0.graph, (Demand.pair(s1, t1), Demand.escape(s2, _Q0.A))
        )
    else:
        t1, t2, t3 = inst[1:]
        try:
            got = escape_three_distinct(_Q0, t1, t2, t3)
        except LemmaDefect as exc:
            return _bad("defect", inst, str(exc))
        chk = Instance(
            _Q0.graph,
            tuple(Demand.escape(t, _Q0.A, distinct_group=0) for t in (t1, t2, t3)),
        )
    if not verify(chk, got):
        return _bad("defect", inst, "certificate failed the independent check")
    return None


def _run_l9(inst):
    T, s = inst
    got = project_with_b_link(_Q0, T, s)
    if not got:
        return _bad("refusal", inst, "no projection with this linked terminal")
    demands = (Demand.pair(s, Vertex(2, 3)),) + tuple(
        Demand.escape(t, _Q0.A) for t in sorted(set(T) - {s})
    )
    if not verify(Instance(_Q0.graph, demands), got):
        return _bad("defect", inst, "certificate failed the independent check")
    return None


def _run_l10(inst):
    s1, t1, s2, s3, psi = inst
    reason = degenerate_reason(s1, t1, s2, s3, psi)
    try:
        got = link_pair_escort_singletons(_UL, s1, t1, s2, s3, psi)
    except LemmaDefect:
        got = None
    if got is None:
        if reason:
            return _bad("degenerate", inst, reason)
        return _bad("defect", inst, "infeasible with no certifying law")
    if reason:
        return _bad("defect", inst, f"feasible although a law predicts otherwise: {reason}")
    demands = (
        Demand.pair(s1, t1),
        Demand.escape(s2, _LINE_SET[psi[0]], distinct_group=0),
        Demand.escape(s3, _LINE_SET[psi[1]], distinct_group=0),
    )
    if not verify(Instance(_UL.graph, demands), got):
        return _bad("defect", inst, "certificate failed the independent check")
    return None


def _run_p1_matching(item):
    inst, (name, p1, y2, y3, pi0) = item
    try:
        got = clamp_matching(list(p1), y2, y3, pi0)
    except ValueError as exc:
        return _bad("defect", inst, f"catalog clamps violate the matching precondition: {exc}")
    valid = [
        (first, second)
        for first, second in ((y2, y3), (y3, y2))
        if pi0[0] in first.vertices and pi0[1] in second.vertices
    ]
    if got is NoMatch:
        if valid:
            return _bad("defect", inst, f"{name}: NoMatch although an assignment exists")
        return None
    if got not in valid:
        return _bad("defect", inst, f"{name}: assignment misses a singleton")
    return None


_RUNNERS: dict[str, Callable] = {
    "L1": _run_l1,
    "L2": _run_l2,
    "L3": _run_l3,
    "L4": _run_l4,
    "L5": _run_l5,
    "L6": _run_l6,
    "L7": _run_l7,
    "L8": _run_l8,
    "L9": _run_l9,
    "L10": _run_l10,
    "P1-matching": _run_p1_matching,
}


# ----------------------------------------------------------------- campaign

def _map_instances(runner, instances, workers: int):
    if workers == 1:
        return [runner(inst) for inst in instances]
    chunk = max(1, len(instances) // (workers * 8))
    with Pool(workers) as pool:
        return list(pool.imap(runner, instances, chunksize=chunk))


def run_campaign(campaign: Campaign) -> LemmaReport:
    if campaign.lemma_id == "pairability":
        if campaign.strategy == "reduced":
            return pairability_check(
                workers=campaign.workers, exhaustive_reduced=True
            )
        return pairability_check(
            samples=campaign.samples if campaign.samples is not None else 100000,
            seed=campaign.seed,
            workers=campaign.workers,
        )
    instances = list(
        enumerate_instances(
            campaign.lemma_id, campaign.strategy, campaign.samples, campaign.seed
        )
    )
    start = time.perf_counter()
    results = _map_instances(_RUNNERS[campaign.lemma_id], instances, campaign.workers)
    elapsed = time.perf_counter() - start
    exceptional = tuple(r for r in results if r is not None)
    return LemmaReport(
        lemma_id=campaign.lemma_id,
        instances_checked=len(instances),
        feasible=len(instances) - len(exceptional),
        exceptional=exceptional,
        elapsed=elapsed,
        strategy=campaign.strategy,
        seed=campaign.seed,
    )


def verify_lemma(
    lemma_id: str,
    strategy: str = "exhaustive",
    workers: int = 1,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> LemmaReport:
    """Run one lemma's campaign and aggregate its report."""
    return run_campaign(Campaign(lemma_id, strategy, samples, seed, workers))


# ------------------------------------------------------------- L9 families

def exceptional_families(report: LemmaReport):
    """Terminal sets whose working linked-terminal count drops below the
    guaranteed min(3, |T|), with their working sets, from an L9 report."""
    if report.lemma_id != "L9":
        raise ValueError(f"expected an L9 report, got {report.lemma_id!r}")
    refused = defaultdict(set)
    for tag, (T, s), _ in report.exceptional:
        if tag == "refusal":
            refused[frozenset(T)].add(s)
    families = []
    for T, bad in refused.items():
        working = frozenset(T) - bad
        if len(working) < min(3, len(T)):
            families.append((T, working))
    return tuple(sorted(families, key=lambda fam: sorted(fam[0])))


def report_conforms(report: LemmaReport) -> bool:
    """Does the report match the lemma's documented truth?

    For most lemmas that means no exceptional entries at all.  L9 must
    yield exactly the two known families (with their admissible linked
    terminals, and no refusal on sets avoiding A and the far corner); L10
    must classify every infeasible placement under a degeneracy law.
    """
    if report.lemma_id == "L9":
        if any(tag != "refusal" for tag, _, _ in report.exceptional):
            return False
        blocked = set(_A_SET) | {Vertex(1, 1)}
        for _, (T, _s), _ in report.exceptional:
            if not set(T) & blocked:
                return False
        families = dict(exceptional_families(report))
        return families == {T1: T1_ADMISSIBLE, T2: T2_ADMISSIBLE}
    if report.lemma_id == "L10":
        return all(tag == "degenerate" for tag, _, _ in report.exceptional)
    return not report.exceptional


# ------------------------------------------------------------- pairability

def sample_pairability(rng: Random) -> PairabilityInstance:
    """Draw eight distinct vertices (partial Fisher-Yates over the grid)
    and pair them consecutively."""
    pool = list(_FULL)
    for i in range(8):
        j = rng.randrange(i, len(pool))
        pool[i], pool[j] = pool[j], pool[i]
    eight = pool[:8]
    return PairabilityInstance(tuple((eight[k], eight[k + 1]) for k in range(0, 8, 2)))


def _d4_maps():
    n = 7  # 1-based 6x6: r + r' = 7 under a flip
    funcs = [
        lambda v: (v[0], v[1]),
        lambda v: (v[1], n - v[0]),
        lambda v: (n - v[0], n - v[1]),
        lambda v: (n - v[1], v[0]),
        lambda v: (v[1], v[0]),
        lambda v: (n - v[0], v[1]),
        lambda v: (n - v[1], n - v[0]),
        lambda v: (v[0], n - v[1]),
    ]
    return funcs


_D4 = _d4_maps()


def iter_pairability_reduced() -> Iterator[PairabilityInstance]:
    """All four-pair placements whose vertex set is minimal in its orbit
    under the grid's eight symmetries.  This stream has on the order of
    4 x 10^8 members; it exists for the opt-in exhaustive run only."""
    for combo in combinations(_FULL, 8):
        key = tuple(combo)
        if any(tuple(sorted(Vertex(*t(v)) for v in combo)) < key for t in _D4[1:]):
            continue
        for m in _matchings(list(combo)):
            yield PairabilityInstance(m)


def _run_pairability(instance: PairabilityInstance):
    demands = tuple(Demand.pair(s, t) for s, t in instance.pairs)
    inst = Instance(_GRID, demands)
    sol = solve(inst)
    if sol is Infeasible:
        return _bad("counterexample", instance.pairs, "no 4-pair linkage")
    if not verify(inst, sol):
        return _bad("defect", instance.pairs, "certificate failed the independent check")
    return None


def pairability_check(
    samples: int = 100000,
    seed: Optional[int] = None,
    workers: int = 1,
    exhaustive_reduced: bool = False,
) -> LemmaReport:
    """Solve 4-pair instances on the full grid; report counterexamples.

    The default strategy draws ``samples`` seeded placements; the reduced
    exhaustive sweep is available behind ``exhaustive_reduced`` and takes
    days of CPU time.
    """
    if exhaustive_reduced:
        instances: Iterable[PairabilityInstance] = iter_pairability_reduced()
        strategy = "reduced"
        start = time.perf_counter()
        exceptional = []
        checked = 0
        if workers == 1:
            for instance in instances:
                checked += 1
                rec = _run_pairability(instance)
                if rec is not None:
                    exceptional.append(rec)
        else:
            with Pool(workers) as pool:
                for rec in pool.imap(_run_pairability, instances, chunksize=64):
                    checked += 1
                    if rec is not None:
                        exceptional.append(rec)
        elapsed = time.perf_counter() - start
        return LemmaReport(
            lemma_id="pairability",
            instances_checked=checked,
            feasible=checked - len(exceptional),
            exceptional=tuple(exceptional),
            elapsed=elapsed,
            strategy=strategy,
            seed=None,
        )
    if seed is None:
        raise ValueError("pairability sampling requires an explicit seed")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    rng = Random(seed)
    drawn = [sample_pairability(rng) for _ in range(samples)]
    start = time.perf_counter()
    results = _map_instances(_run_pairability, drawn, workers)
    elapsed = time.perf_counter() - start
    exceptional = tuple(r for r in results if r is not None)
    return LemmaReport(
        lemma_id="pairability",
        instances_checked=len(drawn),
        feasible=len(drawn) - len(exceptional),
        exceptional=exceptional,
        elapsed=elapsed,
        strategy="random",
        seed=seed,
    )


# ------------------------------------------------- solver/flow cross-check

def _iter_escape_family() -> Iterator:
    """All-escape instances implied by the L8 and L9 domains: the Fig. 4
    shared-escape triples, the distinct-exit multisets, and every escape
    remainder T - {s} from the projection lemma."""
    for inst in _iter_l8():
        if inst[0] == "i":
            yield (inst[1], inst[2:], False)
        elif inst[0] == "iii":
            yield ("Q0", inst[1:], True)
    seen = set()
    for T, s in _iter_l9():
        rest = tuple(sorted(set(T) - {s}))
        if rest and rest not in seen:
            seen.add(rest)
            yield ("Q0", rest, False)


def _run_escape_agreement(item):
    kind, terms, distinct = item
    adj = _Q0 if kind == "Q0" else _ADJUSTED[kind]
    group = 0 if distinct else None
    inst = Instance(
        adj.graph,
        tuple(Demand.escape(t, adj.A, distinct_group=group) for t in terms),
    )
    by_search = solve(inst)
    by_flow = escape_flow(adj.graph, terms, adj.A, distinct)
    if (by_search is Infeasible) != (by_flow is Infeasible):
        return _bad("defect", item, "solver and flow oracle disagree")
    if by_search is not Infeasible:
        if not verify(inst, by_search) or not verify(inst, by_flow):
            return _bad("defect", item, "certificate failed the independent check")
    return None


def escape_agreement_check(workers: int = 1) -> LemmaReport:
    """Cross-check the backtracking solver against the flow oracle on the
    all-escape family; any disagreement is a defect."""
    instances = list(_iter_escape_family())
    start = time.perf_counter()
    results = _map_instances(_run_escape_agreement, instances, workers)
    elapsed = time.perf_counter() - start
    exceptional = tuple(r for r in results if r is not None)
    return LemmaReport(
        lemma_id="escape-agreement",
        instances_checked=len(instances),
        feasible=len(instances) - len(exceptional),
        exceptional=exceptional,
        elapsed=elapsed,
    )
