"""Linking a pair while escorting two singletons to the boundary lines.

The main operation routes a path between s1 and t1 inside a quadrant and
escorts two further terminals s2, s3 to distinct vertices of their
prescribed lines (A = bottom row, B = right column, in local coordinates).
The workhorse is a catalog of *clamps*: connected edge-disjoint subgraphs,
each with an anchor on A and/or B, that are edge-disjoint from a reserved
linking path.  A singleton lying on a clamp walks inside it to the anchor
on its line; assigning the two singletons to the two clamps is the small
matching problem solved by :func:`clamp_matching`.

Every catalog candidate is certified with the routing verifier; instances
the catalog does not cover (and the rare misses) go to the exact solver.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from ..grid import Edge, Path, Quadrant, Vertex, edge, landmarks, make_grid, path_edges
from ..routing import Demand, Instance, PathSystem, solve, verify
from .report import LemmaDefect

_X0 = Vertex(3, 3)
_LINES = {
    "A": frozenset({Vertex(3, 1), Vertex(3, 2), Vertex(3, 3)}),
    "B": frozenset({Vertex(1, 3), Vertex(2, 3), Vertex(3, 3)}),
}
_SWAP = {"A": "B", "B": "A"}
_LOCAL_GRID = make_grid(3, 3)


@dataclass(frozen=True)
class Clamp:
    """A connected subgraph with anchors on the boundary lines.

    ``edges`` may be empty, in which case the clamp is the single anchor
    vertex (used for terminals already sitting on x0).
    """

    edges: frozenset[Edge]
    anchors: frozenset[Vertex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "anchors", frozenset(self.anchors))
        if not self.edges:
            if len(self.anchors) != 1:
                raise ValueError("an edge-free clamp must be a single anchor")
            return
        targets = {v for e in self.edges for v in e}
        if not self.anchors <= targets:
            raise ValueError("anchors must lie on the clamp's edges")
        seen = {next(iter(sorted(targets)))}
        frontier = deque(seen)
        adj = _adjacency(self.edges)
        while frontier:
            for w in adj[frontier.popleft()]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if seen != targets:
            raise ValueError("clamp edges must form a connected subgraph")

    @property
    def vertices(self) -> frozenset[Vertex]:
        return self.anchors | {v for e in self.edges for v in e}


class _NoMatchType:
    """Singleton: the singletons cannot be assigned to the two clamps."""

    _instance: Optional["_NoMatchType"] = None

    def __new__(cls) -> "_NoMatchType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NoMatch"

    def __reduce__(self):
        return (_NoMatchType, ())


NoMatch = _NoMatchType()


def _adjacency(edges: Iterable[Edge]) -> dict[Vertex, list[Vertex]]:
    adj: dict[Vertex, list[Vertex]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for vs in adj.values():
        vs.sort()
    return adj


def _bfs_in(edges: Iterable[Edge], s: Vertex, t: Vertex) -> Optional[Path]:
    """Shortest s-t path using only the given edges; None if unreachable."""
    if s == t:
        return (s,)
    adj = _adjacency(edges)
    if s not in adj or t not in adj:
        return None
    prev: dict[Vertex, Vertex] = {s: s}
    frontier = deque([s])
    while frontier:
        u = frontier.popleft()
        for w in adj[u]:
            if w not in prev:
                prev[w] = u
                if w == t:
                    out = [t]
                    while out[-1] != s:
                        out.append(prev[out[-1]])
                    return tuple(reversed(out))
                frontier.append(w)
    return None


def clamp_matching(
    p1: Sequence[Vertex], y2: Clamp, y3: Clamp, pi0: tuple[Vertex, Vertex]
):
    """Assign the singleton pair pi0 to the clamps (Y2, Y3), one each.

    Returns the pair of clamps aligned with the input order of ``pi0``, or
    :data:`NoMatch` when no assignment puts each singleton on its clamp.
    Each singleton must lie on exactly the clamp it is assigned to walk in,
    so an assignment exists iff both singletons lie on the union and at
    most one of them lies strictly in Y2 and at most one strictly in Y3.
    When both lie on the intersection the assignment is free; the smaller
    singleton takes Y2.

    Raises ValueError when the clamps overlap each other, the linking path,
    or each other's anchors - those are hypothesis violations, not a failed
    match.
    """
    p1_edges = frozenset(path_edges(tuple(p1)))
    if y2.edges & y3.edges:
        raise ValueError("clamps must be edge-disjoint from each other")
    if (y2.edges | y3.edges) & p1_edges:
        raise ValueError("clamps must be edge-disjoint from the linking path")
    if y2.anchors & y3.anchors:
        raise ValueError("clamp anchor sets must be disjoint")
    u, v = pi0
    v2, v3 = y2.vertices, y3.vertices
    if u not in v2 | v3 or v not in v2 | v3:
        return NoMatch
    only2 = sum(1 for w in (u, v) if w in v2 and w not in v3)
    only3 = sum(1 for w in (u, v) if w in v3 and w not in v2)
    if only2 > 1 or only3 > 1:
        return NoMatch
    if u in v2 and u not in v3:
        return (y2, y3)
    if u in v3 and u not in v2:
        return (y3, y2)
    if v in v2 and v not in v3:
        return (y3, y2)
    if v in v3 and v not in v2:
        return (y2, y3)
    return (y2, y3) if min(u, v) == u else (y3, y2)


# --- the clamp catalog, in local (row, col) coordinates --------------------

def _es(*pairs) -> frozenset[Edge]:
    return frozenset(edge(Vertex(*a), Vertex(*b)) for a, b in pairs)


def _vs(*points) -> frozenset[Vertex]:
    return frozenset(Vertex(*p) for p in points)


_L_PATH = Clamp(_es(((1, 3), (1, 2)), ((1, 2), (1, 1)), ((1, 1), (2, 1)), ((2, 1), (3, 1))), _vs((3, 1), (1, 3)))
_Z_STAR = Clamp(_es(((2, 1), (2, 2)), ((2, 2), (2, 3)), ((1, 2), (2, 2)), ((2, 2), (3, 2))), _vs((3, 2), (2, 3)))
_A_PATH = Clamp(_es(((3, 1), (3, 2)), ((3, 2), (3, 3))), _vs((3, 3)))
_HOOK = Clamp(_es(((1, 3), (1, 2)), ((1, 2), (2, 2)), ((2, 2), (3, 2))), _vs((1, 3), (3, 2)))
_COMB = Clamp(_es(((3, 1), (2, 1)), ((2, 1), (1, 1)), ((1, 1), (1, 2)), ((1, 2), (1, 3))), _vs((3, 1), (1, 3)))
_RIM = Clamp(
    _es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3)), ((3, 2), (2, 2)), ((2, 2), (2, 3))),
    _vs((3, 3)),
)

_LINE4 = _vs((3, 1), (3, 2), (2, 3), (1, 3))
_LINE_EDGES = _es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3)))


class _Entry(NamedTuple):
    name: str
    match: Callable[[frozenset[Vertex], frozenset[Vertex]], bool]
    region: frozenset[Edge]
    y2: Clamp
    y3: Clamp


def _exact(*points) -> Callable[[frozenset[Vertex], frozenset[Vertex]], bool]:
    want = _vs(*points)
    return lambda pi1, pi0: pi1 == want


_CATALOG: tuple[_Entry, ...] = (
    _Entry("E0", lambda pi1, pi0: len(pi1) == 1, _es(), _L_PATH, _Z_STAR),
    _Entry(
        "E1",
        _exact((1, 1), (1, 2)),
        _es(((1, 1), (1, 2))),
        Clamp(_es(((3, 1), (2, 1)), ((2, 1), (2, 2)), ((2, 2), (1, 2)), ((1, 2), (1, 3))), _vs((3, 1), (1, 3))),
        _RIM,
    ),
    _Entry("E2", _exact((1, 2), (2, 2)), _es(((1, 2), (2, 2))), _COMB, _RIM),
    _Entry("E3", _exact((1, 2), (2, 1)), _es(((1, 2), (2, 2)), ((2, 2), (2, 1))), _COMB, _RIM),
    _Entry(
        "E4",
        _exact((1, 1), (2, 2)),
        _es(((1, 1), (2, 1)), ((2, 1), (2, 2))),
        _HOOK,
        Clamp(
            _es(((2, 1), (3, 1)), ((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3)), ((2, 2), (2, 3))),
            _vs((3, 3)),
        ),
    ),
    _Entry("E5", lambda pi1, pi0: len(pi1) == 2 and pi1 <= _LINE4, _LINE_EDGES, _L_PATH, _Z_STAR),
    _Entry(
        "E6",
        _exact((1, 1), (3, 1)),
        _es(((1, 1), (2, 1)), ((2, 1), (3, 1))),
        _HOOK,
        Clamp(
            _es(((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3)), ((2, 1), (2, 2)), ((2, 2), (2, 3))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E7",
        _exact((2, 1), (3, 1)),
        _es(((2, 1), (3, 1))),
        Clamp(_es(((1, 1), (1, 2)), ((1, 2), (1, 3)), ((1, 3), (2, 3)), ((2, 3), (3, 3))), _vs((3, 3))),
        Clamp(
            _es(((1, 1), (2, 1)), ((2, 1), (2, 2)), ((2, 2), (2, 3)), ((1, 2), (2, 2)), ((2, 2), (3, 2))),
            _vs((3, 2), (2, 3)),
        ),
    ),
    _Entry(
        "E8",
        _exact((1, 2), (3, 2)),
        _es(((1, 2), (2, 2)), ((2, 2), (3, 2))),
        _L_PATH,
        Clamp(
            _es(((2, 1), (2, 2)), ((2, 2), (2, 3)), ((1, 3), (2, 3)), ((2, 3), (3, 3)), ((3, 1), (3, 2)), ((3, 2), (3, 3))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E9",
        _exact((1, 2), (2, 3)),
        _es(((1, 2), (2, 2)), ((2, 2), (2, 3))),
        _COMB,
        Clamp(
            _es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3)), ((3, 2), (2, 2)), ((2, 2), (2, 1))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E10",
        _exact((2, 2), (1, 3)),
        _es(((2, 2), (2, 3)), ((2, 3), (1, 3))),
        _COMB,
        Clamp(
            _es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((1, 2), (2, 2)), ((2, 2), (3, 2)), ((2, 1), (2, 2))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E11",
        _exact((2, 1), (1, 3)),
        _es(((2, 1), (2, 2)), ((2, 2), (2, 3)), ((2, 3), (1, 3))),
        _COMB,
        Clamp(
            _es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((1, 2), (2, 2)), ((2, 2), (3, 2))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E12",
        lambda pi1, pi0: pi1 == _vs((1, 1), (2, 3)) and Vertex(1, 3) in pi0,
        _es(((1, 1), (2, 1)), ((2, 1), (2, 2)), ((2, 2), (2, 3))),
        _HOOK,
        Clamp(
            _es(((2, 1), (3, 1)), ((3, 1), (3, 2)), ((3, 2), (3, 3)), ((3, 3), (2, 3)), ((2, 3), (1, 3))),
            _vs((3, 3)),
        ),
    ),
    _Entry(
        "E13",
        lambda pi1, pi0: pi1 == _vs((1, 1), (2, 3)) and Vertex(1, 3) not in pi0,
        _es(((1, 1), (1, 2)), ((1, 2), (1, 3)), ((1, 3), (2, 3))),
        Clamp(_es(((3, 1), (2, 1)), ((2, 1), (2, 2)), ((2, 2), (2, 3))), _vs((3, 1), (2, 3))),
        Clamp(_es(((3, 1), (3, 2)), ((3, 2), (3, 3)), ((1, 2), (2, 2)), ((2, 2), (3, 2))), _vs((3, 3))),
    ),
    _Entry(
        "E14",
        lambda pi1, pi0: _X0 in pi1,
        _es(((1, 2), (2, 2)), ((2, 1), (2, 2)), ((2, 2), (2, 3)), ((2, 2), (3, 2)), ((1, 3), (2, 3)), ((2, 3), (3, 3))),
        _L_PATH,
        _A_PATH,
    ),
    _Entry(
        "E15",
        lambda pi1, pi0: _X0 in pi1,
        _es(
            ((1, 1), (1, 2)), ((1, 1), (2, 1)), ((2, 1), (2, 2)), ((2, 2), (2, 3)), ((2, 1), (3, 1)),
            ((1, 3), (2, 3)), ((2, 3), (3, 3)),
        ),
        _HOOK,
        _A_PATH,
    ),
)


def _escort(clamp: Clamp, s: Vertex, line: str) -> Optional[Path]:
    """Walk a singleton inside its clamp to the anchor on its line."""
    for a in sorted(clamp.anchors):
        if a not in _LINES[line]:
            continue
        if not clamp.edges:
            return (s,) if s == a else None
        p = _bfs_in(clamp.edges, s, a)
        if p is not None:
            return p
    return None


def _transpose(v: Vertex) -> Vertex:
    return Vertex(v.col, v.row)


def _catalog_candidates(ls1, lt1, ls2, ls3, line2, line3, collect):
    """Yield local path triples from catalog entries matching the instance."""
    pi1 = frozenset({ls1, lt1})
    pi0 = frozenset({ls2, ls3})
    for entry in _CATALOG:
        if not entry.match(pi1, pi0):
            continue
        p1 = _bfs_in(entry.region, ls1, lt1)
        if p1 is None:
            continue
        try:
            assigned = clamp_matching(p1, entry.y2, entry.y3, (ls2, ls3))
        except ValueError:
            continue
        if assigned is NoMatch:
            continue
        e2 = _escort(assigned[0], ls2, line2)
        e3 = _escort(assigned[1], ls3, line3)
        if e2 is None or e3 is None:
            continue
        if collect is not None:
            collect.append((entry.name, p1, entry.y2, entry.y3, (ls2, ls3)))
        yield p1, e2, e3


def _shortcut_candidates(ls1, lt1, ls2, ls3, line2, line3):
    """Route one singleton through x0 and solve the rest in Q - x0.

    Applies when a singleton sits on x0 or one of its in-quadrant line
    neighbours; the quadrant minus x0 is still weakly 2-linked, so the
    remaining pair-plus-escape instance is small and almost always easy.
    """
    specials = (_X0, Vertex(3, 2), Vertex(2, 3))
    pi1 = {ls1, lt1}
    sub = _LOCAL_GRID.without_vertices([_X0])
    slots = ((ls2, line2, 0), (ls3, line3, 1))
    for (sj, _lj, j), (sk, lk, _k) in (slots, slots[::-1]):
        if sj not in specials or sk == _X0:
            continue
        escort_j = (sj,) if sj == _X0 else (sj, _X0)
        exits_k = tuple(sorted(_LINES[lk] - {_X0}))
        if _X0 not in pi1:
            sol = solve(Instance(sub, (Demand.pair(ls1, lt1), Demand.escape(sk, exits_k))))
            if not sol:
                continue
            p1, pk = sol[0], sol[1]
        elif ls1 == lt1 == _X0:
            sol = solve(Instance(sub, (Demand.escape(sk, exits_k),)))
            if not sol:
                continue
            p1, pk = (_X0,), sol[0]
        else:
            y0p = next(v for v in (Vertex(3, 2), Vertex(2, 3)) if v != sj)
            other = lt1 if ls1 == _X0 else ls1
            sol = solve(Instance(sub, (Demand.pair(other, y0p), Demand.escape(sk, exits_k))))
            if not sol:
                continue
            stem = sol[0]
            p1 = (_X0,) + stem[::-1] if ls1 == _X0 else stem + (_X0,)
            pk = sol[1]
        yield (p1, escort_j, pk) if j == 0 else (p1, pk, escort_j)


def _normalize_psi(psi, s2: Vertex, s3: Vertex) -> tuple[str, str]:
    if isinstance(psi, dict):
        try:
            pair = (psi[s2], psi[s3])
        except KeyError as exc:
            raise ValueError("psi must assign a line to both singletons") from exc
    else:
        pair = tuple(psi)
        if len(pair) != 2:
            raise ValueError(f"psi must give two line choices, got {psi!r}")
    for line in pair:
        if line not in ("A", "B"):
            raise ValueError(f"lines must be 'A' or 'B', got {line!r}")
    return pair  # type: ignore[return-value]


def link_pair_escort_singletons(
    q: Quadrant,
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    s3: Vertex,
    psi,
    collect: Optional[list] = None,
) -> PathSystem:
    """Link s1-t1 and escort s2, s3 to distinct vertices of their lines.

    ``psi`` prescribes a line ("A" or "B") for each singleton, either as a
    pair ordered like (s2, s3) or as a dict keyed by the singletons.  When
    the certificate comes from the clamp catalog, the configuration used
    is appended to ``collect`` (local coordinates) for later cross-checks.
    """
    for v in (s1, t1, s2, s3):
        if v not in q.vertices:
            raise ValueError(f"terminal {v} is not in quadrant {q.corner.name}")
    line2, line3 = _normalize_psi(psi, s2, s3)
    lm = landmarks(q)
    lines_global = {"A": lm.A, "B": lm.B}
    inst = Instance(
        q.graph,
        (
            Demand.pair(s1, t1),
            Demand.escape(s2, lines_global[line2], distinct_group=0),
            Demand.escape(s3, lines_global[line3], distinct_group=0),
        ),
    )

    ls1, lt1, ls2, ls3 = (q.to_local(v) for v in (s1, t1, s2, s3))

    def globalize(local_paths):
        return PathSystem(tuple(tuple(q.to_global(v) for v in p) for p in local_paths))

    for cand in _shortcut_candidates(ls1, lt1, ls2, ls3, line2, line3):
        sys = globalize(cand)
        if verify(inst, sys):
            return sys
    for cand in _catalog_candidates(ls1, lt1, ls2, ls3, line2, line3, collect):
        sys = globalize(cand)
        if verify(inst, sys):
            return sys
        if collect is not None:
            collect.pop()
    tr = [_transpose(v) for v in (ls1, lt1, ls2, ls3)]
    for cand in _catalog_candidates(tr[0], tr[1], tr[2], tr[3], _SWAP[line2], _SWAP[line3], None):
        sys = globalize(tuple(tuple(_transpose(v) for v in p) for p in cand))
        if verify(inst, sys):
            return sys
    sol = solve(inst)
    if sol:
        return sol
    raise LemmaDefect(f"no linkage with escorts for {(s1, t1, s2, s3)} and psi {(line2, line3)}")
