"""Escape feasibility by maximum flow, independent of the backtracking solver.

All-escape instances are a unit-capacity flow problem: a super-source feeds
each source vertex its multiplicity, every grid edge becomes two opposite
arcs of capacity one, and exits drain into a super-sink (capacity one per
exit when endpoints must be distinct, effectively unbounded otherwise).
The instance is feasible iff the max flow equals the number of sources;
the flow is then decomposed into one path per source occurrence.

This module deliberately shares no search code with ``routing.solve`` --
the two are cross-checked against each other by the test campaigns.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Optional

from .grid import Edge, GridGraph, Vertex, edge, vertex
from .routing import Infeasible, PathSystem, SolveResult


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        i = len(self.to)
        self.head[u].append(i)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(i + 1)
        self.to.append(u)
        self.cap.append(0)
        return i

    def _levels(self, s: int, t: int) -> Optional[list[int]]:
        level = [-1] * self.n
        level[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for i in self.head[u]:
                    v = self.to[i]
                    if self.cap[i] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        return level if level[t] >= 0 else None

    def _push(self, u: int, t: int, f: int, level, it) -> int:
        if u == t:
            return f
        while it[u] < len(self.head[u]):
            i = self.head[u][it[u]]
            v = self.to[i]
            if self.cap[i] > 0 and level[v] == level[u] + 1:
                got = self._push(v, t, min(f, self.cap[i]), level, it)
                if got:
                    self.cap[i] -= got
                    self.cap[i ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                f = self._push(s, t, 1 << 30, level, it)
                if not f:
                    break
                total += f


def escape_flow(
    graph: GridGraph,
    sources: Iterable[Iterable[int]],
    exits: Iterable[Iterable[int]],
    distinct: bool,
    forbidden: Iterable[Edge] = (),
) -> SolveResult:
    """Route every source occurrence to an exit, edge-disjointly, via max flow."""
    src_list = [vertex(s) for s in sources]
    exit_set = {vertex(x) for x in exits}
    if not src_list:
        raise ValueError("escape_flow needs at least one source")
    if not exit_set:
        raise ValueError("escape_flow needs a non-empty exit set")
    present = graph.present_vertices
    for v in src_list:
        if v not in present:
            raise ValueError(f"source {v} not in graph")
    for v in sorted(exit_set):
        if v not in present:
            raise ValueError(f"exit {v} not in graph")
    forb = {edge(*e) for e in forbidden}
    if forb - graph.present_edges:
        raise ValueError(f"forbidden edges not in graph: {sorted(forb - graph.present_edges)}")

    verts = sorted(present)
    vidx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    S, T = n, n + 1
    net = _Dinic(n + 2)

    edges = sorted(graph.present_edges - forb)
    fwd_arcs: list[tuple[int, int, int]] = []  # (arc id, u index, v index)
    for u, v in edges:
        ui, vi = vidx[u], vidx[v]
        fwd_arcs.append((net.add(ui, vi, 1), ui, vi))
        fwd_arcs.append((net.add(vi, ui, 1), vi, ui))

    need = len(src_list)
    supply = Counter(src_list)
    for v, mult in sorted(supply.items()):
        net.add(S, vidx[v], mult)
    drain_cap = 1 if distinct else need
    drain_arcs = [(net.add(vidx[v], T, drain_cap), vidx[v]) for v in sorted(exit_set)]

    if net.max_flow(S, T) < need:
        return Infeasible

    # Integral support of the flow, with opposite edge arcs netted out so no
    # undirected edge carries more than one unit.
    sent: Counter = Counter()
    for arc, ui, vi in fwd_arcs:
        if net.cap[arc] == 0:
            sent[(ui, vi)] += 1
    out: dict[int, Counter] = {}
    for (ui, vi), units in sent.items():
        units -= sent.get((vi, ui), 0)
        if units > 0:
            out.setdefault(ui, Counter())[vi] = units
    for v, mult in supply.items():
        out.setdefault(S, Counter())[vidx[v]] = mult
    for arc, ei in drain_arcs:
        drained = drain_cap - net.cap[arc]
        if drained > 0:
            out.setdefault(ei, Counter())[T] = drained

    # Peel off one source-to-exit walk per unit.  Every vertex except S and T
    # conserves flow, so a walk from S can only terminate at T; taking the
    # smallest-index arc each step keeps the decomposition deterministic.
    def take(u: int) -> int:
        arcs = out[u]
        w = min(w for w, k in arcs.items() if k > 0)
        arcs[w] -= 1
        return w

    by_start: dict[Vertex, list[tuple[Vertex, ...]]] = {}
    for _ in range(need):
        walk = [take(S)]
        while True:
            w = take(walk[-1])
            if w == T:
                break
            walk.append(w)
        path = tuple(verts[i] for i in walk)
        by_start.setdefault(path[0], []).append(path)

    ordered = [by_start[s].pop(0) for s in src_list]
    return PathSystem(tuple(ordered))
