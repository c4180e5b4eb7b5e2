"""Local exploration of the marking graph.

Nodes are markings identified by their canonical keys; edges carry a kind,
twist or flip.  Neighbor computation takes both twist directions at every
index and all validated flips; breadth-first search is deterministic (keys
sorted at every frontier expansion), so repeated runs produce identical
graphs and identical exports.

standard_marking_connectivity builds the finite subgraph of markings with
standard base and bounded projections, checks that the all-standard markings
form a single connected cluster inside it, and reports the largest pairwise
distance together with the instantiated bound of the flip-path recursion
k(2) = 1, k(n) = max(2k(n-1) + 13, n + k(n-1) + 7).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import ArtinMarkError, UnknownFormat
from .garside import ArtinElement, GarsideContext
from .marking import (
    Marking,
    conjugate_marking,
    enumerate_flip_moves,
    is_flip_edge,
    is_twist_edge,
    standardize_marking,
    twist_move,
    validate_marking,
)
from .parabolic import ParabolicSubgroup
from .simplex import enumerate_maximal_standard, standard_adjacent


def neighbors(marking: Marking) -> list[tuple[Marking, str]]:
    """All twist and flip neighbors, deduplicated by key, sorted."""
    out: dict[tuple[str, str], Marking] = {}
    for j in range(len(marking)):
        for direction in (1, -1):
            twisted = twist_move(marking, j, direction)
            out.setdefault((twisted.key(), "twist"), twisted)
        for flipped in enumerate_flip_moves(marking, j):
            out.setdefault((flipped.key(), "flip"), flipped)
    return [(out[k], k[1]) for k in sorted(out)]


@dataclass
class ExploredGraph:
    """A BFS ball of the marking graph, with stable node and edge order."""

    nodes: dict[str, Marking] = field(default_factory=dict)
    edges: set[tuple[str, str, str]] = field(default_factory=set)
    radius: dict[str, int] = field(default_factory=dict)

    def add_edge(self, a: str, b: str, kind: str):
        if a != b:
            lo, hi = sorted((a, b))
            self.edges.add((lo, hi, kind))

    def degree(self, key: str) -> int:
        return sum(1 for a, b, _ in self.edges if key in (a, b))


def bfs(seed: Marking, radius: int) -> ExploredGraph:
    """All markings within the radius of the seed."""
    validate_marking(seed)
    graph = ExploredGraph()
    graph.nodes[seed.key()] = seed
    graph.radius[seed.key()] = 0
    frontier = [seed]
    for depth in range(1, radius + 1):
        nxt = []
        for node in frontier:
            for other, kind in neighbors(node):
                key = other.key()
                if key not in graph.nodes:
                    graph.nodes[key] = other
                    graph.radius[key] = depth
                    nxt.append(other)
                graph.add_edge(node.key(), key, kind)
        frontier = sorted(nxt, key=Marking.key)
    # close edges among boundary nodes
    for node in frontier:
        for other, kind in neighbors(node):
            if other.key() in graph.nodes:
                graph.add_edge(node.key(), other.key(), kind)
    return graph


def verify_action_isometry(
    edge: tuple[Marking, Marking, str], x: ArtinElement
) -> bool:
    """Conjugated endpoints of an edge remain related by the same move kind."""
    a, b, kind = edge
    ax, bx = conjugate_marking(a, x), conjugate_marking(b, x)
    if kind == "twist":
        return is_twist_edge(ax, bx)
    if kind == "flip":
        return is_flip_edge(ax, bx)
    raise UnknownFormat(f"unknown edge kind {kind!r}")


def export_graph(graph: ExploredGraph, fmt: str) -> bytes:
    """DOT or JSON serialization, byte-deterministic."""
    if fmt == "json":
        payload = {
            "nodes": [
                {"key": key, "marking": graph.nodes[key].to_json()}
                for key in sorted(graph.nodes)
            ],
            "edges": [list(e) for e in sorted(graph.edges)],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "dot":
        color = {"twist": "blue", "flip": "red"}
        lines = ["graph markings {"]
        for key in sorted(graph.nodes):
            lines.append(f'  "{key}";')
        for a, b, kind in sorted(graph.edges):
            lines.append(f'  "{a}" -- "{b}" [color={color[kind]}];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise UnknownFormat(f"unknown export format {fmt!r}")


def flip_path_bound(n_vertices: int) -> int:
    """The instantiated recursion bound for connecting all-standard markings."""
    k = 1
    for n in range(3, n_vertices + 1):
        k = max(2 * k + 13, n + k + 7)
    return k


def all_standard_markings(ctx: GarsideContext) -> list[Marking]:
    """Every marking whose base and transverse elements are all standard."""
    out = []
    for simplex in enumerate_maximal_standard(ctx):
        subsets = [v.gens for v in simplex.vertices]
        candidates_per_index = []
        for i, x in enumerate(subsets):
            cands = []
            for y in ctx.connected_proper_subsets():
                pattern_ok = all(
                    standard_adjacent(ctx.graph, y, subsets[k]) == (k != i)
                    for k in range(len(subsets))
                )
                if pattern_ok:
                    cands.append(ParabolicSubgroup.standard(ctx, y))
            candidates_per_index.append(cands)
        for combo in itertools.product(*candidates_per_index):
            marking = Marking(ctx, list(zip(simplex.vertices, combo)))
            try:
                marking.certificate()
            except ArtinMarkError:
                continue
            out.append(marking)
    out.sort(key=Marking.key)
    return out


@dataclass
class ConnectivityReport:
    type_name: str
    standard_count: int
    node_count: int
    connected: bool
    diameter: int
    bound: int
    distances: dict[tuple[str, str], int]


def standard_marking_connectivity(
    ctx: GarsideContext, projection_bound: int = 2, node_cap: int = 20000
) -> ConnectivityReport:
    """Distances among all-standard markings within the bounded subgraph.

    The subgraph keeps markings whose base elements are standard subgroups
    and whose projections lie in [-bound, bound]; twist variants of the
    standard markings are reached inside it.
    """
    standard = all_standard_markings(ctx)

    def in_universe(m: Marking) -> bool:
        try:
            if any(
                not p.canonical()[0].is_identity for p, _ in m.pairs
            ):
                return False
            return all(
                abs(v) <= projection_bound for v in m.projections()
            )
        except ArtinMarkError:
            return False

    nodes: dict[str, Marking] = {m.key(): m for m in standard}
    adjacency: dict[str, set[str]] = {k: set() for k in nodes}
    frontier = sorted(nodes, key=str)
    while frontier:
        nxt = []
        for key in frontier:
            for other, _kind in neighbors(nodes[key]):
                if not in_universe(other):
                    continue
                okey = other.key()
                if okey not in nodes:
                    if len(nodes) >= node_cap:
                        raise ArtinMarkError("node cap exceeded")
                    nodes[okey] = other
                    adjacency[okey] = set()
                    nxt.append(okey)
                adjacency[key].add(okey)
                adjacency[okey].add(key)
        frontier = sorted(nxt)
    # pairwise distances among the standard markings
    keys = [m.key() for m in standard]
    distances: dict[tuple[str, str], int] = {}
    diameter = 0
    connected = True
    for source in keys:
        dist = {source: 0}
        queue = [source]
        while queue:
            new_queue = []
            for cur in queue:
                for other in adjacency[cur]:
                    if other not in dist:
                        dist[other] = dist[cur] + 1
                        new_queue.append(other)
            queue = new_queue
        for target in keys:
            if target not in dist:
                connected = False
            else:
                distances[(source, target)] = dist[target]
                diameter = max(diameter, dist[target])
    return ConnectivityReport(
        type_name=str(ctx.graph.type),
        standard_count=len(standard),
        node_count=len(nodes),
        connected=connected,
        diameter=diameter,
        bound=flip_path_bound(ctx.rank),
        distances=distances,
    )


def orbit_representatives(
    ctx: GarsideContext, seed: Marking, radius: int
) -> dict[str, str]:
    """Map each BFS node to the key of its standardized representative."""
    ball = bfs(seed, radius)
    out = {}
    for key in sorted(ball.nodes):
        _c, std = standardize_marking(ball.nodes[key])
        out[key] = std.key()
    return out
