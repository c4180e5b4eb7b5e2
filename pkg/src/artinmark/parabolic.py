"""Parabolic subgroups as first-class values.

A parabolic subgroup is stored as a pair (conj, gens) representing
conj * A_gens * conj^-1.  Equality and hashing go through the canonical
form: the unique minimal positive standardizer c and target subset Y with
P = c A_Y c^-1, found by a breadth-first search over the prefix lattice of
a positive standardizer seed.  The standardness test for a candidate c is
cheap: c^-1 z_P c must be positive, its support names the only possible
target subset, and two-sided generator membership certifies the equality
of subgroups.

The Paris conjugacy graph for standard parabolic subgroups is built from
the defining graph alone: edges (Y, t, t') exist when some connected
component of Y has non-central Garside element (equivalently its center is
generated by Delta^2) and its conjugation permutation moves t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import DefiningGraph
from .errors import (
    Disconnected,
    EmptySubset,
    MixedContext,
    SearchBudgetExceeded,
)
from .garside import ArtinElement, GarsideContext, member_of_standard, parse_element

Subset = frozenset[int]


def irreducible_components(graph: DefiningGraph, subset: Subset) -> list[Subset]:
    return graph.components(frozenset(subset))


def garside_delta(ctx: GarsideContext, subset: Subset) -> ArtinElement:
    """Delta_X; for reducible X the product of the component elements."""
    return ctx.delta_of(frozenset(subset))


def central_generator_z(ctx: GarsideContext, subset: Subset) -> ArtinElement:
    """z_X: the minimal central power of Delta_X, per irreducible component."""
    subset = frozenset(subset)
    if not subset:
        raise EmptySubset("z is undefined for the empty subset")
    out = ctx.identity
    for comp in ctx.graph.components(subset):
        out = out * ctx.delta_of(comp) ** ctx.graph.z_exponent(comp)
    return out


def z_of_parabolic(p: ParabolicSubgroup) -> ArtinElement:
    """z_P = conj * z_X * conj^-1; independent of the representation."""
    return p.z_element()


def delta_permutation(ctx: GarsideContext, subset: Subset) -> dict[int, int]:
    """The permutation s -> Delta_X s Delta_X^-1 of a connected subset."""
    subset = frozenset(subset)
    if not ctx.graph.is_connected(subset) or not subset:
        raise Disconnected(f"subset {sorted(subset)} must be connected and nonempty")
    w0x = ctx.w0_of(subset)
    out = {}
    for s in subset:
        image = ctx.system.generator_of(w0x * ctx.system.generators[s] * w0x.inverse())
        assert image is not None and image in subset
        out[s] = image
    return out


class ParabolicSubgroup:
    """A subgroup conj * A_gens * conj^-1 with a cached canonical form."""

    __slots__ = ("ctx", "conj", "gens", "_canonical", "_z", "_key")

    def __init__(self, ctx: GarsideContext, conj: ArtinElement, gens: Subset):
        if conj.ctx is not ctx:
            raise MixedContext("conjugator from a different group")
        self.ctx = ctx
        self.conj = conj
        self.gens = frozenset(gens)
        self._canonical: tuple[ArtinElement, Subset] | None = None
        self._z: ArtinElement | None = None
        self._key: str | None = None

    @staticmethod
    def standard(ctx: GarsideContext, gens: Subset) -> ParabolicSubgroup:
        return ParabolicSubgroup(ctx, ctx.identity, frozenset(gens))

    @property
    def irreducible(self) -> bool:
        return bool(self.gens) and self.ctx.graph.is_connected(self.gens)

    @property
    def proper(self) -> bool:
        return self.gens != frozenset(self.ctx.graph.vertices)

    @property
    def is_standard_rep(self) -> bool:
        return self.conj.is_identity

    def z_element(self) -> ArtinElement:
        """z_P, independent of the representation."""
        if self._z is None:
            cache = self.ctx.scratch.setdefault("parab_z", {})
            key = (self.conj, self.gens)
            z = cache.get(key)
            if z is None:
                zx = central_generator_z(self.ctx, self.gens)
                z = self.conj * zx * self.conj.inverse()
                cache[key] = z
            self._z = z
        return self._z

    def conjugated_by(self, x: ArtinElement) -> ParabolicSubgroup:
        return ParabolicSubgroup(self.ctx, x * self.conj, self.gens)

    def contains_element(self, g: ArtinElement) -> bool:
        return member_of_standard(
            self.conj.inverse() * g * self.conj, self.gens
        )

    def contains(self, other: ParabolicSubgroup) -> bool:
        """Subgroup containment, by membership of the other's generators."""
        h = other.conj
        return all(
            self.contains_element(h * self.ctx.atoms[x] * h.inverse())
            for x in other.gens
        )

    def canonical(self) -> tuple[ArtinElement, Subset]:
        """(minimal positive standardizer c, subset Y) with P = c A_Y c^-1."""
        if self._canonical is None:
            cache = self.ctx.scratch.setdefault("parab_canonical", {})
            key = (self.conj, self.gens)
            value = cache.get(key)
            if value is None:
                value = minimal_standardizer(self)
                cache[key] = value
            self._canonical = value
        return self._canonical

    def key(self) -> str:
        if self._key is None:
            c, gens = self.canonical()
            names = ",".join(self.ctx.graph.name(i) for i in sorted(gens))
            self._key = f"{c.to_text()}|{names}"
        return self._key

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, ParabolicSubgroup) or self.ctx is not other.ctx:
            return False
        if self.conj == other.conj and self.gens == other.gens:
            return True
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        names = ",".join(self.ctx.graph.name(i) for i in sorted(self.gens))
        if self.is_standard_rep:
            return f"<A_{{{names}}}>"
        return f"<{self.conj.to_text()} . A_{{{names}}}>"

    def to_json(self) -> dict:
        return {
            "conj": self.conj.to_text(),
            "gens": [self.ctx.graph.name(i) for i in sorted(self.gens)],
        }

    @staticmethod
    def from_json(ctx: GarsideContext, data: dict) -> ParabolicSubgroup:
        conj = parse_element(ctx, data.get("conj", "DELTA^0 |"))
        gens = frozenset(ctx.graph.index(n) for n in data["gens"])
        return ParabolicSubgroup(ctx, conj, gens)


def _standard_target(
    ctx: GarsideContext,
    candidate: ArtinElement,
    z_p: ArtinElement,
    conj: ArtinElement,
    gens: Subset,
) -> Subset | None:
    """Subset Y with candidate^-1 P candidate = A_Y, or None."""
    c_inv = candidate.inverse()
    w = c_inv * z_p * candidate
    if not w.is_positive:
        return None
    target = w.support()
    if len(target) != len(gens):
        return None
    h = c_inv * conj
    h_inv = h.inverse()
    for x in gens:
        if not member_of_standard(h * ctx.atoms[x] * h_inv, target):
            return None
    for y in target:
        if not member_of_standard(h_inv * ctx.atoms[y] * h, gens):
            return None
    return target


def minimal_standardizer(p: ParabolicSubgroup) -> tuple[ArtinElement, Subset]:
    """Minimal positive c with c^-1 P c standard, plus the target subset.

    The minimal standardizer is a prefix of every positive standardizer, in
    particular of the seed Delta^(2N) conj (Delta^2 is central, so the seed
    standardizes whatever conj does).  A breadth-first search by atom length
    over prefixes of the seed therefore meets the minimal standardizer first.
    """
    ctx = p.ctx
    z_p = p.z_element()
    shift = max(0, -((p.conj.inf) // 2) if p.conj.inf < 0 else 0)
    seed = ctx.delta ** (2 * shift) * p.conj
    assert seed.is_positive
    budget = seed.atom_length()
    frontier = [ctx.identity]
    seen = {ctx.identity}
    for _ in range(budget + 1):
        for cand in frontier:
            target = _standard_target(ctx, cand, z_p, p.conj, p.gens)
            if target is not None:
                return cand, target
        nxt = []
        for cand in frontier:
            for atom in ctx.atoms:
                ext = cand * atom
                if ext not in seen and ext.is_prefix_of(seed):
                    seen.add(ext)
                    nxt.append(ext)
        frontier = sorted(nxt, key=ArtinElement.sort_key)
    raise SearchBudgetExceeded(budget, "no standardizer among prefixes of the seed")


def simultaneous_standardizer(
    ctx: GarsideContext,
    parabolics: list[ParabolicSubgroup],
    budget: int = 24,
    seed: ArtinElement | None = None,
    support_limit: Subset | None = None,
) -> tuple[ArtinElement, list[Subset]]:
    """Shortest positive c with every c^-1 P_i c standard (lexicographic
    tie-break among equals; standardizer sets are closed under left gcd, so
    the minimum is unique and the first hit is it).

    When a known simultaneous standardizer is passed as seed, the search is
    a prefix BFS over divisors of Delta^2N * seed (the minimum divides every
    positive simultaneous standardizer).  Otherwise the search walks the
    positive monoid by atom length, optionally restricted to atoms in
    support_limit when the minimum is known to lie in that standard
    parabolic.
    """
    z_list = [p.z_element() for p in parabolics]

    def targets_of(cand: ArtinElement) -> list[Subset] | None:
        targets = []
        for p, z_p in zip(parabolics, z_list):
            t = _standard_target(ctx, cand, z_p, p.conj, p.gens)
            if t is None:
                return None
            targets.append(t)
        return targets

    seed_elt = None
    if seed is not None:
        shift = (-seed.inf + 1) // 2 if seed.inf < 0 else 0
        seed_elt = ctx.delta ** (2 * shift) * seed
        assert seed_elt.is_positive
        budget = seed_elt.atom_length()
    atoms = (
        ctx.atoms
        if support_limit is None
        else [ctx.atoms[i] for i in sorted(support_limit)]
    )
    frontier = [ctx.identity]
    seen = {ctx.identity}
    for _ in range(budget + 1):
        for cand in frontier:
            targets = targets_of(cand)
            if targets is not None:
                return cand, targets
        nxt: dict[ArtinElement, None] = {}
        for cand in frontier:
            for atom in atoms:
                ext = cand * atom
                if ext in seen:
                    continue
                seen.add(ext)
                if seed_elt is None or ext.is_prefix_of(seed_elt):
                    nxt.setdefault(ext, None)
        frontier = sorted(nxt, key=ArtinElement.sort_key)
        if not frontier:
            break
    raise SearchBudgetExceeded(budget)


# -- Paris conjugacy graph of standard parabolic subgroups -------------------


@dataclass
class ConjugacyGraph:
    """Vertices: all generator subsets; edges: the triples (Y, t, t')."""

    graph: DefiningGraph
    edges: list[tuple[Subset, int, int]] = field(default_factory=list)
    adjacency: dict[Subset, set[Subset]] = field(default_factory=dict)

    def component_of(self, subset: Subset) -> frozenset[Subset]:
        subset = frozenset(subset)
        out = {subset}
        frontier = [subset]
        while frontier:
            x = frontier.pop()
            for y in self.adjacency.get(x, ()):
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def connected(self, a: Subset, b: Subset) -> bool:
        return frozenset(b) in self.component_of(a)

    def shortest_path(self, a: Subset, b: Subset, via: Subset | None = None) -> list[Subset] | None:
        """BFS path from a to b, optionally forced through the vertex via."""
        if via is not None:
            first = self.shortest_path(a, via)
            second = self.shortest_path(via, b)
            if first is None or second is None:
                return None
            return first + second[1:]
        a, b = frozenset(a), frozenset(b)
        prev: dict[Subset, Subset | None] = {a: None}
        queue = [a]
        while queue:
            nxt = []
            for x in queue:
                if x == b:
                    path = [x]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])  # type: ignore[arg-type]
                    return path[::-1]
                for y in sorted(self.adjacency.get(x, ()), key=sorted):
                    if y not in prev:
                        prev[y] = x
                        nxt.append(y)
            queue = nxt
        return None


def build_conjugacy_graph(ctx: GarsideContext) -> ConjugacyGraph:
    graph = ctx.graph
    n = graph.rank
    out = ConjugacyGraph(graph)
    vertices = [
        frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    ]
    out.adjacency = {v: set() for v in vertices}
    for y in vertices:
        for comp in graph.components(y):
            if graph.z_exponent(comp) != 2:
                continue  # Delta central on this component: no moving edges
            delta0 = delta_permutation(ctx, comp)
            for t, t2 in delta0.items():
                if t2 != t:
                    out.edges.append((y, t, t2))
                    out.adjacency[y - {t}].add(y - {t2})
                    out.adjacency[y - {t2}].add(y - {t})
    return out


def standard_conjugate(ctx: GarsideContext, x: Subset, x2: Subset) -> bool:
    """Whether A_X and A_X' are conjugate, by connectivity in the graph."""
    cache = ctx.scratch.setdefault("conjugacy_graph", {})
    if "graph" not in cache:
        cache["graph"] = build_conjugacy_graph(ctx)
    g: ConjugacyGraph = cache["graph"]
    if len(x) != len(x2):
        return False
    return g.connected(frozenset(x), frozenset(x2))
