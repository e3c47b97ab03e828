"""Oriented graphs, orbital graphs, and OG(m) certification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .perm import OG4Error, PermGroup, orbits, transitivity_profile


class ConstructionRefuted(OG4Error):
    """A construction hypothesis or certification clause failed.

    ``clause`` is a machine tag naming the violated condition.
    """

    def __init__(self, clause: str, detail: str = ""):
        super().__init__(f"refuted [{clause}]" + (f": {detail}" if detail else ""))
        self.clause = clause
        self.detail = detail


class OrientedGraph:
    """Vertices 0..n-1 with an antisymmetry-free set of ordered arcs.

    Arcs are stored sorted lexicographically; no loops, no duplicates.
    The arc set is *not* required to be disjoint from its reverse (the
    arc-transitive quotients keep both directions).
    """

    def __init__(self, n_vertices: int, arcs):
        if n_vertices < 1:
            raise OG4Error("graph needs at least one vertex")
        arr = np.asarray(sorted({(int(x), int(y)) for x, y in arcs}), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n_vertices):
            raise OG4Error("arc endpoint out of range")
        if arr.size and (arr[:, 0] == arr[:, 1]).any():
            raise OG4Error("diagonal arc (x, x) is not allowed")
        if len(arr) != len({(x, y) for x, y in arcs}):
            raise OG4Error("duplicate arcs")
        arr.setflags(write=False)
        self.n_vertices = n_vertices
        self.arcs = arr

    @property
    def n_arcs(self) -> int:
        return self.arcs.shape[0]

    def encoded_arcs(self) -> np.ndarray:
        return self.arcs[:, 0] * np.int64(self.n_vertices) + self.arcs[:, 1]

    def out_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for x, y in self.arcs:
            out[int(x)].append(int(y))
        return out

    def in_neighbors(self) -> list[list[int]]:
        inn: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for x, y in self.arcs:
            inn[int(y)].append(int(x))
        return inn

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 0], minlength=self.n_vertices)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 1], minlength=self.n_vertices)

    def undirected_edges(self) -> set[tuple[int, int]]:
        return {(min(x, y), max(x, y)) for x, y in self.arcs.tolist()}

    def has_arc(self, x: int, y: int) -> bool:
        enc = self.encoded_arcs()
        target = x * self.n_vertices + y
        pos = np.searchsorted(enc, target)
        return pos < enc.size and enc[pos] == target

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedGraph)
            and self.n_vertices == other.n_vertices
            and np.array_equal(self.arcs, other.arcs)
        )

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n_vertices}, arcs={self.n_arcs})"


def reverse_arcs(graph: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(graph.n_vertices, [(int(y), int(x)) for x, y in graph.arcs])


def orbital_graph(
    group: PermGroup, seed: Optional[tuple[int, int]] = None
) -> OrientedGraph:
    """Graph whose arc set is the group orbit of the seed pair.

    With no seed, the lexicographically least non-diagonal pair whose orbital
    is not self-paired is used, making the construction deterministic.
    """
    if not transitivity_profile(group).transitive:
        raise OG4Error("orbital graphs are built for transitive groups")
    if seed is None:
        seed = _canonical_seed(group)
    x, y = seed
    if x == y:
        raise OG4Error("diagonal seed pair")
    arcs = _pair_orbit(group, x, y)
    return OrientedGraph(group.degree, arcs)


def _pair_orbit(group: PermGroup, x: int, y: int) -> list[tuple[int, int]]:
    gen_rows = group.gen_rows()
    seen = {(x, y)}
    stack = [(x, y)]
    while stack:
        a, b = stack.pop()
        for g in gen_rows:
            p = (int(g[a]), int(g[b]))
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return sorted(seen)


def _canonical_seed(group: PermGroup) -> tuple[int, int]:
    n = group.degree
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            orbit = set(_pair_orbit(group, x, y))
            if (y, x) not in orbit:
                return (x, y)
    raise OG4Error("every orbital of this group is self-paired")


def orientation_status(graph: OrientedGraph, group: PermGroup) -> str:
    """"g_oriented", "arc_transitive", or "not_invariant"."""
    if group.degree != graph.n_vertices:
        raise OG4Error("group degree does not match the vertex count")
    arcs = {(int(x), int(y)) for x, y in graph.arcs}
    for g in group.generators:
        img = {(int(g.images[x]), int(g.images[y])) for x, y in arcs}
        if img != arcs:
            return "not_invariant"
    reversed_arcs = {(y, x) for x, y in arcs}
    if not (arcs & reversed_arcs):
        return "g_oriented"
    if arcs == reversed_arcs and arc_orbit_count(graph, group) == 1:
        return "arc_transitive"
    return "not_invariant"


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    strongly_connected: bool


def connectivity(graph: OrientedGraph) -> Connectivity:
    n = graph.n_vertices
    out = graph.out_neighbors()
    inn = graph.in_neighbors()

    def reach(start: int, forward: bool, backward: bool) -> int:
        seen = np.zeros(n, dtype=bool)
        seen[start] = True
        stack = [start]
        count = 1
        while stack:
            v = stack.pop()
            nbrs = (out[v] if forward else []) + (inn[v] if backward else [])
            for w in nbrs:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count

    connected = reach(0, True, True) == n
    strong = connected and reach(0, True, False) == n and reach(0, False, True) == n
    return Connectivity(connected=connected, strongly_connected=strong)


def arc_orbit_count(graph: OrientedGraph, group: PermGroup) -> int:
    """Orbits of the group on arcs plus reversed arcs."""
    n = graph.n_vertices
    both = {(int(x), int(y)) for x, y in graph.arcs}
    both |= {(y, x) for x, y in both}
    enc = np.asarray(sorted(x * n + y for x, y in both), dtype=np.int64)
    labels = _kernels.arc_orbit_labels(group.gen_rows(), enc, n)
    labels = np.asarray(labels)
    if labels.size == 0 and enc.size:
        raise OG4Error("group does not preserve the arc set union its reverse")
    return int(labels.max()) + 1 if labels.size else 0


# ---------------------------------------------------------------------------
# OG(m) certification


@dataclass(frozen=True)
class Certificate:
    vertex_transitive: bool
    edge_transitive: bool
    orientation_preserved: bool
    connected: bool
    valency: int
    stabilizer_order: int


@dataclass(frozen=True)
class VerifyOutcome:
    ok: bool
    certificate: Optional[Certificate]
    failed_clause: Optional[str] = None
    detail: str = ""


@dataclass(frozen=True)
class OGPair:
    graph: OrientedGraph
    group: PermGroup
    certificate: Certificate
    labels: tuple[str, ...]

    @property
    def valency(self) -> int:
        return self.certificate.valency


def verify_og(graph: OrientedGraph, group: PermGroup, m: int) -> VerifyOutcome:
    """Certify membership of (graph, group) in OG(m), or name the first
    failed clause."""
    if m < 2 or m % 2 != 0:
        return VerifyOutcome(False, None, "og:valency_even", f"m={m} must be even, >= 2")
    if group.degree != graph.n_vertices:
        return VerifyOutcome(False, None, "og:degree_match", "group degree != vertex count")
    if graph.n_vertices < 2:
        return VerifyOutcome(False, None, "og:nontrivial", "need at least two vertices")

    arcs = {(int(x), int(y)) for x, y in graph.arcs}
    for g in group.generators:
        img = {(int(g.images[x]), int(g.images[y])) for x, y in arcs}
        if img != arcs:
            return VerifyOutcome(False, None, "og:orientation_invariant",
                                 "orientation not G-invariant")
    if arcs & {(y, x) for x, y in arcs}:
        return VerifyOutcome(False, None, "og:antisymmetric",
                             "some arc appears in both directions")

    if not transitivity_profile(group).transitive:
        return VerifyOutcome(False, None, "og:vertex_transitive", "group not vertex-transitive")

    if graph.n_arcs == 0:
        return VerifyOutcome(False, None, "og:connected", "no arcs")
    seed = (int(graph.arcs[0, 0]), int(graph.arcs[0, 1]))
    orbit = set(_pair_orbit(group, *seed))
    if orbit != arcs:
        return VerifyOutcome(False, None, "og:edge_transitive", "group not transitive on arcs")

    conn = connectivity(graph)
    if not conn.connected:
        return VerifyOutcome(False, None, "og:connected", "underlying graph disconnected")

    outd, ind = graph.out_degrees(), graph.in_degrees()
    if not ((outd == m // 2).all() and (ind == m // 2).all()):
        return VerifyOutcome(False, None, "og:valency",
                             f"out/in valency not constant {m // 2}")

    stab = group.order // graph.n_vertices
    cert = Certificate(
        vertex_transitive=True,
        edge_transitive=True,
        orientation_preserved=True,
        connected=True,
        valency=m,
        stabilizer_order=stab,
    )
    return VerifyOutcome(True, cert)


def certify_og(
    graph: OrientedGraph,
    group: PermGroup,
    m: int,
    labels: Optional[Sequence[str]] = None,
) -> OGPair:
    """verify_og, raising ConstructionRefuted on failure."""
    outcome = verify_og(graph, group, m)
    if not outcome.ok:
        raise ConstructionRefuted(outcome.failed_clause or "og:unknown", outcome.detail)
    if labels is None:
        labels = [str(v) for v in range(graph.n_vertices)]
    if len(labels) != graph.n_vertices:
        raise OG4Error("label count does not match the vertex count")
    return OGPair(graph, group, outcome.certificate, tuple(labels))


def reverify(pair: OGPair) -> VerifyOutcome:
    return verify_og(pair.graph, pair.group, pair.certificate.valency)


# ---------------------------------------------------------------------------
# DOT export


def export_dot(graph: OrientedGraph, labels: Optional[Sequence[str]] = None) -> str:
    """Deterministic DOT rendering: one directed edge per arc."""
    if labels is None:
        labels = [str(v) for v in range(graph.n_vertices)]
    lines = ["digraph oriented_graph {"]
    for v in range(graph.n_vertices):
        lines.append(f'  v{v} [label="{labels[v]}"];')
    for x, y in graph.arcs.tolist():
        lines.append(f"  v{x} -> v{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
