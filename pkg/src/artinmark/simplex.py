"""Simplices of the complex of irreducible parabolic subgroups.

A simplex is a set of pairwise adjacent vertices, adjacency meaning the
central elements z_P commute.  The level of a vertex is one plus the number
of vertices properly containing it; level 1 is the set of maximal elements.
A maximal simplex of standard subgroups is characterized combinatorially:
the union of the subsets misses exactly one generator t, and inside every
vertex the union of the properly contained vertices misses exactly one
generator t_i.  Enumeration of maximal standard simplices applies that
characterization recursively, component by component.

The canonical positive standardizer of a simplex conjugates it to standard
subgroups level by level: the (unique minimal) simultaneous standardizer of
the current level is found, applied, and the search moves one level down.
Relative to the canonical standardizer, every other standardizer of a
maximal simplex differs by an ascending product of powers of Delta_{X_i}
and Delta_Gamma, whose exponent tuple is extracted by peeling factors from
the right: at each step the unique exponent is the one that drops the
residue into the parabolic generated by the still-unpeeled subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ExponentBoundExceeded,
    NotASimplex,
    NotAStabilizer,
    NotAStandardizer,
    NotConjugate,
    NotIrreducible,
    NotMaximal,
    NotProper,
    NotStandard,
)
from .garside import ArtinElement, GarsideContext, member_of_standard
from .parabolic import (
    ParabolicSubgroup,
    central_generator_z,
    simultaneous_standardizer,
)

Subset = frozenset[int]


def adjacent(p: ParabolicSubgroup, q: ParabolicSubgroup) -> bool:
    """Whether two irreducible proper parabolics span an edge (z's commute)."""
    for x in (p, q):
        if not x.irreducible:
            raise NotIrreducible(f"{x} is not irreducible")
        if not x.proper:
            raise NotProper(f"{x} is the whole group")
    return p.z_element().commutes_with(q.z_element())


def standard_adjacent(graph, x: Subset, y: Subset) -> bool:
    """Edge test for standard irreducible subgroups, combinatorially."""
    if x <= y or y <= x:
        return True
    return not (x & y) and not any(graph.adjacent(a, b) for a in x for b in y)


@dataclass(frozen=True)
class LevelDecomposition:
    """Partition of the vertex indices into levels, plus the nesting chains."""

    levels: tuple[tuple[int, ...], ...]
    chains: tuple[tuple[int, ...], ...]

    def level_of(self, index: int) -> int:
        for k, layer in enumerate(self.levels):
            if index in layer:
                return k + 1
        raise IndexError(index)


class CparabSimplex:
    """A set of pairwise adjacent vertices, in canonical order.

    Vertices are sorted by (level, canonical key), so the index of a vertex
    is deterministic; levels and nesting chains are computed once.
    """

    def __init__(self, ctx: GarsideContext, vertices):
        vertices = list(vertices)
        by_key = {}
        for v in vertices:
            if not v.irreducible:
                raise NotIrreducible(f"{v} is not irreducible")
            if not v.proper:
                raise NotProper(f"{v} is the whole group")
            by_key.setdefault(v.key(), v)
        if len(by_key) != len(vertices):
            raise NotASimplex("repeated vertices")
        vertices = [by_key[k] for k in sorted(by_key)]
        for p, q in itertools.combinations(vertices, 2):
            if not p.z_element().commutes_with(q.z_element()):
                raise NotASimplex(f"{p} and {q} are not adjacent")
        above = {
            i: frozenset(
                j
                for j, q in enumerate(vertices)
                if j != i and q.contains(vertices[i])
            )
            for i in range(len(vertices))
        }
        level = {i: 1 + len(above[i]) for i in above}
        order = sorted(range(len(vertices)), key=lambda i: (level[i], vertices[i].key()))
        self.ctx = ctx
        self.vertices: tuple[ParabolicSubgroup, ...] = tuple(vertices[i] for i in order)
        old_to_new = {old: new for new, old in enumerate(order)}
        self._above = {
            old_to_new[i]: frozenset(old_to_new[j] for j in js)
            for i, js in above.items()
        }
        self._levels = self._build_levels()
        self._canonical: tuple[ArtinElement, StandardizedSimplex] | None = None
        self._hint: ArtinElement | None = None
        self._key: str | None = None

    def _build_levels(self) -> LevelDecomposition:
        n = len(self.vertices)
        depth = {i: 1 + len(self._above[i]) for i in range(n)}
        top = max(depth.values(), default=0)
        levels = tuple(
            tuple(i for i in range(n) if depth[i] == k) for k in range(1, top + 1)
        )
        # maximal chains of the strict containment order, largest first
        below = {
            i: [j for j in range(n) if i in self._above[j]] for i in range(n)
        }
        chains: list[tuple[int, ...]] = []

        def grow(chain: list[int]):
            nxt = [j for j in below[chain[-1]] if depth[j] == depth[chain[-1]] + 1]
            if not nxt:
                chains.append(tuple(chain))
                return
            for j in sorted(nxt):
                grow(chain + [j])

        for i in levels[0] if levels else ():
            grow([i])
        return LevelDecomposition(levels, tuple(chains))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def levels(self) -> LevelDecomposition:
        return self._levels

    def key(self) -> str:
        if self._key is None:
            self._key = ";".join(v.key() for v in self.vertices)
        return self._key

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CparabSimplex)
            and self.ctx is other.ctx
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Simplex[{', '.join(map(repr, self.vertices))}]"

    def all_standard(self) -> bool:
        return all(v.is_standard_rep for v in self.vertices)

    def conjugated_by(self, x: ArtinElement) -> CparabSimplex:
        moved = CparabSimplex(self.ctx, [v.conjugated_by(x) for v in self.vertices])
        if self._canonical is not None:
            moved.suggest_standardizer(x * self._canonical[0])
        return moved

    def suggest_standardizer(self, x: ArtinElement):
        """Record a known simultaneous standardizer to seed the canonical
        search; the result does not depend on the hint."""
        self._hint = x

    def canonical_data(self) -> tuple[ArtinElement, StandardizedSimplex]:
        """(canonical positive standardizer ghat, standardized simplex)."""
        if self._canonical is None:
            cache = self.ctx.scratch.setdefault("simplex_canonical", {})
            value = cache.get(self.key())
            if value is None:
                value = canonical_positive_standardizer(self, hint=self._hint)
                cache[self.key()] = value
            self._canonical = value
        return self._canonical

    def to_json(self) -> dict:
        return {"vertices": [v.to_json() for v in self.vertices]}

    @staticmethod
    def from_json(ctx: GarsideContext, data: dict) -> CparabSimplex:
        return CparabSimplex(
            ctx, [ParabolicSubgroup.from_json(ctx, v) for v in data["vertices"]]
        )


def decompose_levels(simplex: CparabSimplex) -> LevelDecomposition:
    return simplex.levels


@dataclass(frozen=True)
class StandardizedSimplex:
    """Subsets of a standard simplex with level data and maximality witnesses.

    subsets follow the owning simplex's vertex order.  For maximal simplices,
    missing is the generator t outside the union and t_map[i] the generator
    t_i of the per-vertex condition; both are None otherwise.
    """

    subsets: tuple[Subset, ...]
    levels: tuple[tuple[int, ...], ...]
    missing: int | None
    t_map: tuple[int | None, ...]

    def level_of(self, index: int) -> int:
        for k, layer in enumerate(self.levels):
            if index in layer:
                return k + 1
        raise IndexError(index)

    @property
    def is_maximal(self) -> bool:
        return self.missing is not None

    def peel_order(self) -> tuple[int, ...]:
        """Vertex indices by ascending level (extraction order)."""
        return tuple(i for layer in self.levels for i in layer)


def build_standardized(ctx: GarsideContext, subsets) -> StandardizedSimplex:
    """Level data and maximality witnesses for a family of standard subsets."""
    subsets = tuple(frozenset(s) for s in subsets)
    graph = ctx.graph
    n = len(subsets)
    if len(set(subsets)) != n:
        raise NotASimplex("repeated subsets")
    for x, y in itertools.combinations(subsets, 2):
        if not standard_adjacent(graph, x, y):
            raise NotASimplex(f"{sorted(x)} and {sorted(y)} are not adjacent")
    above = {
        i: [j for j in range(n) if j != i and subsets[i] < subsets[j]]
        for i in range(n)
    }
    depth = {i: 1 + len(above[i]) for i in range(n)}
    top = max(depth.values(), default=0)
    levels = tuple(
        tuple(i for i in range(n) if depth[i] == k) for k in range(1, top + 1)
    )
    missing, t_map = _maximality_witnesses(graph, subsets)
    return StandardizedSimplex(subsets, levels, missing, t_map)


def _maximality_witnesses(graph, subsets) -> tuple[int | None, tuple[int | None, ...]]:
    everything = frozenset(graph.vertices)
    union = frozenset().union(*subsets) if subsets else frozenset()
    rest = everything - union
    if len(rest) != 1:
        return None, (None,) * len(subsets)
    t_map: list[int | None] = []
    for x in subsets:
        inside = frozenset().union(frozenset(), *[y for y in subsets if y < x])
        gap = x - inside
        if len(gap) != 1:
            return None, (None,) * len(subsets)
        t_map.append(next(iter(gap)))
    (t,) = rest
    return t, tuple(t_map)


def is_maximal_standard(
    simplex_or_subsets, ctx: GarsideContext | None = None
) -> tuple[bool, int | None, dict[Subset, int]]:
    """Maximality test for a standard simplex, with witnesses (t, {t_i}).

    Accepts a CparabSimplex with standard vertices or a list of subsets.
    """
    if isinstance(simplex_or_subsets, CparabSimplex):
        simplex = simplex_or_subsets
        if not simplex.all_standard():
            raise NotStandard("all vertices must be standard")
        graph = simplex.ctx.graph
        subsets = tuple(v.gens for v in simplex.vertices)
    else:
        assert ctx is not None
        graph = ctx.graph
        subsets = tuple(frozenset(s) for s in simplex_or_subsets)
    t, t_map = _maximality_witnesses(graph, subsets)
    if t is None:
        return False, None, {}
    return True, t, {x: ti for x, ti in zip(subsets, t_map)}


def _maximal_families(graph, scope: Subset) -> list[tuple[Subset, ...]]:
    if not scope:
        return [()]
    out: list[tuple[Subset, ...]] = []
    for t in sorted(scope):
        comps = graph.components(scope - {t})
        per_comp = []
        for comp in comps:
            per_comp.append(
                [(comp,) + fam for fam in _maximal_families(graph, comp)]
            )
        for combo in itertools.product(*per_comp):
            out.append(tuple(itertools.chain.from_iterable(combo)))
    return out


def enumerate_maximal_standard(ctx: GarsideContext) -> list[CparabSimplex]:
    """All maximal simplices with standard vertices, by the characterization."""
    scope = frozenset(ctx.graph.vertices)
    simplices = []
    for family in _maximal_families(ctx.graph, scope):
        simplices.append(
            CparabSimplex(
                ctx, [ParabolicSubgroup.standard(ctx, x) for x in family]
            )
        )
    simplices.sort(key=CparabSimplex.key)
    return simplices


def canonical_positive_standardizer(
    simplex: CparabSimplex, hint: ArtinElement | None = None
) -> tuple[ArtinElement, StandardizedSimplex]:
    """Level-by-level construction of the canonical positive standardizer.

    The vertices of each level form the irreducible components of one
    reducible parabolic subgroup, whose minimal standardizer is the minimal
    simultaneous standardizer of the level; standardizers of deeper levels
    automatically stay inside the already standardized part.  A hint (any
    known simultaneous standardizer of the whole simplex) only seeds the
    per-level searches and never changes the result.
    """
    ctx = simplex.ctx
    ghat = ctx.identity
    current = list(simplex.vertices)
    remaining_hint = hint
    standardized_upper: set[int] = set()
    for level, layer in enumerate(simplex.levels.levels):
        coll = [current[i] for i in layer]
        limit = frozenset(standardized_upper) if level > 0 else None
        g_level, _targets = simultaneous_standardizer(
            ctx, coll, seed=remaining_hint, support_limit=limit
        )
        if standardized_upper:
            assert g_level.is_identity or g_level.support() <= frozenset(
                standardized_upper
            ), "level standardizer must live in the standardized upper levels"
        ghat = ghat * g_level
        inv = g_level.inverse()
        current = [p.conjugated_by(inv) for p in current]
        if remaining_hint is not None:
            remaining_hint = inv * remaining_hint
        for i in layer:
            c, target = current[i].canonical()
            assert c.is_identity
            standardized_upper |= target
    subsets = []
    for p in current:
        c, target = p.canonical()
        assert c.is_identity, "vertex failed to standardize"
        subsets.append(target)
    std = build_standardized(ctx, subsets)
    assert std.levels == simplex.levels.levels
    return ghat, std


def standardization_change(
    ctx: GarsideContext, first, second
) -> ArtinElement:
    """Positive r = Delta_{Y_k}^() ... Delta_{Y_1}^() Delta_Gamma^() carrying
    the first standard family onto the second, exponents in {0, 1}."""
    std1 = build_standardized(ctx, first)
    std2 = build_standardized(ctx, second)
    if sorted(map(sorted, std1.subsets)) == sorted(map(sorted, std2.subsets)):
        return ctx.identity
    order = list(std2.peel_order())[::-1]  # deepest level leftmost
    factors = [ctx.delta_of(std2.subsets[i]) for i in order] + [ctx.delta]
    z_of = [central_generator_z(ctx, x) for x in std1.subsets]
    want = set(std2.subsets)
    for bits in itertools.product((0, 1), repeat=len(factors)):
        r = ctx.identity
        for bit, f in zip(bits, factors):
            if bit:
                r = r * f
        if r.is_identity:
            continue
        r_inv = r.inverse()
        images = set()
        ok = True
        for x, z_x in zip(std1.subsets, z_of):
            w = r * z_x * r_inv
            if not w.is_positive:
                ok = False
                break
            img = w.support()
            if img not in want or not all(
                member_of_standard(r * ctx.atoms[s] * r_inv, img) for s in x
            ):
                ok = False
                break
            images.add(img)
        if ok and images == want:
            return r
    raise NotConjugate("no factor assignment conjugates the first family to the second")


@dataclass(frozen=True)
class AscendingProduct:
    """Exponent data of an ascending product over a standardized simplex.

    exponents is aligned with std.subsets; the word has nested factors to
    the left of their containers and all Delta_Gamma factors rightmost.
    """

    std: StandardizedSimplex
    exponents: tuple[int, ...]
    gamma: int

    def to_element(self, ctx: GarsideContext) -> ArtinElement:
        out = ctx.identity
        for i in reversed(self.std.peel_order()):
            out = out * ctx.delta_of(self.std.subsets[i]) ** self.exponents[i]
        return out * ctx.delta**self.gamma

    def exponent_of(self, subset: Subset) -> int:
        return self.exponents[self.std.subsets.index(frozenset(subset))]

    def key(self) -> tuple:
        """Within-level order is immaterial; subsets are already canonical."""
        return (self.exponents, self.gamma)

    def to_json(self, ctx: GarsideContext) -> dict:
        return {
            "exponents": {
                ",".join(ctx.graph.name(i) for i in sorted(x)): e
                for x, e in zip(self.std.subsets, self.exponents)
            },
            "gamma": self.gamma,
        }


def _scan_exponent(
    ctx: GarsideContext,
    residue: ArtinElement,
    delta_x: ArtinElement,
    scope: Subset,
) -> tuple[int, ArtinElement]:
    bound = abs(residue.inf) + residue.canonical_length + 1
    for n in range(0, bound + 1):
        for signed in ((n,) if n == 0 else (n, -n)):
            candidate = residue * delta_x ** (-signed)
            if member_of_standard(candidate, scope):
                return signed, candidate
    raise ExponentBoundExceeded(bound)


def extract_ascending_product(
    h: ArtinElement,
    ghat: ArtinElement,
    std: StandardizedSimplex,
    verify: bool = True,
) -> AscendingProduct:
    """Exponents of the unique ascending product p with ghat * p = h.

    Peels Delta_Gamma first (the unique power dropping the residue into the
    union of the subsets), then walks the levels from the top: the unique
    power of Delta_{X_i} drops the residue into the parabolic generated by
    the still-unpeeled subsets.
    """
    ctx = h.ctx
    if not std.is_maximal:
        raise NotMaximal("ascending products are extracted over maximal simplices")
    residue = ghat.inverse() * h
    if verify:
        from .parabolic import _standard_target

        for x in std.subsets:
            z_x = central_generator_z(ctx, x)
            if _standard_target(ctx, residue, z_x, ctx.identity, x) is None:
                raise NotAStandardizer(f"{h} does not standardize the simplex")
    union = frozenset().union(*std.subsets)
    gamma, residue = _scan_exponent(ctx, residue, ctx.delta, union)
    exponents = [0] * len(std.subsets)
    order = list(std.peel_order())
    remaining = set(order)
    for i in order:
        remaining.discard(i)
        scope = (
            frozenset().union(*(std.subsets[j] for j in remaining))
            if remaining
            else frozenset()
        )
        exponents[i], residue = _scan_exponent(
            ctx, residue, ctx.delta_of(std.subsets[i]), scope
        )
    assert residue.is_identity
    return AscendingProduct(std, tuple(exponents), gamma)


def stabilizes_simplex(
    g: ArtinElement, simplex: CparabSimplex
) -> tuple[dict[int, int], AscendingProduct]:
    """Vertex permutation and ascending-product decomposition of a stabilizer.

    Raises NotAStabilizer when conjugation by g does not permute the vertex
    set.  The returned decomposition is of ghat^-1 g ghat, i.e. the exponent
    word relating the standardizers ghat and g * ghat.
    """
    ghat, std = simplex.canonical_data()
    if not std.is_maximal:
        raise NotMaximal("stabilizer decomposition needs a maximal simplex")
    keys = {v.key(): i for i, v in enumerate(simplex.vertices)}
    perm = {}
    for i, v in enumerate(simplex.vertices):
        image = v.conjugated_by(g)
        j = keys.get(image.key())
        if j is None:
            raise NotAStabilizer(f"conjugation by {g} moves {v} out of the simplex")
        perm[i] = j
    for layer in simplex.levels.levels:
        assert {perm[i] for i in layer} == set(layer), "levels must be preserved"
    product = extract_ascending_product(g * ghat, ghat, std)
    return perm, product
