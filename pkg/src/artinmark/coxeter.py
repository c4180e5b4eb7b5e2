"""Defining graphs of finite-type Artin groups and exact Coxeter arithmetic.

A finite Coxeter group is realized on its root system: an element is the
permutation it induces on the (finite) set of roots of the standard geometric
representation, with coordinates in the exact ring Z[2cos(pi/m)] where m is
the largest edge label.  The length of an element is the number of positive
roots it sends negative, descent sets are read off the images of simple
roots, and the longest element of any standard parabolic is built greedily.
These permutations are the simple elements of the Garside structure.

Vertex numbering of the defining graphs:

    A_n   s1 - s2 - ... - sn
    B_n   s1 =4= s2 - s3 - ... - sn
    D_n   s1 - ... - s(n-2), with s(n-1) and sn both joined to s(n-2)
    E_n   s1 - s2 - s3 - s5 - s6 - ... - sn, with s4 joined to s3
    F_4   s1 - s2 =4= s3 - s4
    H_n   s1 =5= s2 - s3 (- s4)
    I2(m) s1 =m= s2

In particular every prefix {s1, ..., si} induces a connected subgraph and s1
has valence 1, which the nested-chain examples rely on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import Disconnected, MixedContext, UnsupportedType
from .rings import Coeffs, CosRing

FAMILIES = ("A", "B", "D", "E", "F", "H", "I2")

# number of roots per type, used as a closure sanity check
def _root_count(family: str, rank: int, m: int | None) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family == "B":
        return 2 * rank * rank
    if family == "D":
        return 2 * rank * (rank - 1)
    if family == "E":
        return {6: 72, 7: 126, 8: 240}[rank]
    if family == "F":
        return 48
    if family == "H":
        return {3: 30, 4: 120}[rank]
    return 2 * (m or 0)


@dataclass(frozen=True)
class ArtinType:
    """A finite type: family letter, rank, and the dihedral label for I2."""

    family: str
    rank: int
    i2_label: int | None = None

    def __post_init__(self):
        f, n, m = self.family, self.rank, self.i2_label
        ok = (
            (f == "A" and n >= 1)
            or (f == "B" and n >= 2)
            or (f == "D" and n >= 4)
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "H" and n in (3, 4))
            or (f == "I2" and n == 2 and m is not None and m >= 3)
        )
        if not ok or (f != "I2" and m is not None):
            raise UnsupportedType(f"no finite type {f}{n}" + (f"({m})" if m else ""))

    @staticmethod
    def parse(text: str) -> ArtinType:
        text = text.strip()
        match = re.fullmatch(r"I2\((\d+)\)", text)
        if match:
            return ArtinType("I2", 2, int(match.group(1)))
        match = re.fullmatch(r"([ABDEFH])(\d+)", text)
        if not match:
            raise UnsupportedType(f"cannot parse type spec {text!r}")
        return ArtinType(match.group(1), int(match.group(2)))

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.i2_label})"
        return f"{self.family}{self.rank}"

    @property
    def root_count(self) -> int:
        return _root_count(self.family, self.rank, self.i2_label)


def _edges(t: ArtinType) -> dict[tuple[int, int], int]:
    n = t.rank
    f = t.family
    if f == "I2":
        return {(0, 1): t.i2_label}  # type: ignore[dict-item]
    edges: dict[tuple[int, int], int] = {}
    if f == "A":
        edges = {(i, i + 1): 3 for i in range(n - 1)}
    elif f == "B":
        edges = {(i, i + 1): 3 for i in range(1, n - 1)}
        edges[(0, 1)] = 4
    elif f == "D":
        edges = {(i, i + 1): 3 for i in range(n - 3)}
        edges[(n - 3, n - 2)] = 3
        edges[(n - 3, n - 1)] = 3
    elif f == "E":
        chain = [0, 1, 2] + list(range(4, n))
        edges = {(a, b): 3 for a, b in zip(chain, chain[1:])}
        edges[(2, 3)] = 3
    elif f == "F":
        edges = {(0, 1): 3, (1, 2): 4, (2, 3): 3}
    elif f == "H":
        edges = {(i, i + 1): 3 for i in range(1, n - 1)}
        edges[(0, 1)] = 5
    return edges


class DefiningGraph:
    """Labeled defining graph; vertices are generator indices 0..n-1."""

    def __init__(self, artin_type: ArtinType):
        self.type = artin_type
        self.rank = artin_type.rank
        self.vertices = tuple(range(self.rank))
        self.names = tuple(f"s{i + 1}" for i in range(self.rank))
        self._edges = _edges(artin_type)
        self.max_label = max(self._edges.values(), default=3)
        self._adj: dict[int, frozenset[int]] = {
            i: frozenset(
                j for j in self.vertices if i != j and self.label(i, j) >= 3
            )
            for i in self.vertices
        }

    def label(self, i: int, j: int) -> int:
        """m_ij; 2 encodes a non-edge."""
        if i == j:
            raise ValueError("m_ii is undefined")
        return self._edges.get((min(i, j), max(i, j)), 2)

    def adjacent(self, i: int, j: int) -> bool:
        return self.label(i, j) >= 3

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adj[i]

    def name(self, i: int) -> str:
        return self.names[i]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnsupportedType(f"unknown generator {name!r}") from None

    def components(self, subset: frozenset[int]) -> list[frozenset[int]]:
        """Connected components of the induced subgraph, sorted."""
        left = set(subset)
        comps = []
        while left:
            seed = min(left)
            comp = {seed}
            frontier = [seed]
            while frontier:
                v = frontier.pop()
                for w in self._adj[v] & left:
                    if w not in comp:
                        comp.add(w)
                        frontier.append(w)
            left -= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=sorted)

    def is_connected(self, subset: frozenset[int]) -> bool:
        return len(self.components(subset)) <= 1

    def boundary(self, subset: frozenset[int]) -> frozenset[int]:
        """Vertices outside the subset adjacent to it."""
        out = set()
        for v in subset:
            out |= self._adj[v]
        return frozenset(out - subset)

    def classify(self, subset: frozenset[int]) -> ArtinType:
        """Type of the induced subgraph; the subset must be connected."""
        if not self.is_connected(subset) or not subset:
            raise Disconnected(f"subset {sorted(subset)} is not connected and nonempty")
        k = len(subset)
        if k == 1:
            return ArtinType("A", 1)
        if k == 2:
            a, b = sorted(subset)
            m = self.label(a, b)
            if m == 3:
                return ArtinType("A", 2)
            if m == 4:
                return ArtinType("B", 2)
            return ArtinType("I2", 2, m)
        degrees = {v: len(self._adj[v] & subset) for v in subset}
        branch = [v for v in subset if degrees[v] == 3]
        if branch:
            b = branch[0]
            lengths = sorted(
                len(c) for c in self.components(subset - {b})
            )
            if lengths[:2] == [1, 1]:
                return ArtinType("D", k)
            return ArtinType("E", k)
        # a path; order it and look at the labels
        ends = [v for v in subset if degrees[v] == 1]
        path = [min(ends)]
        while len(path) < k:
            nxt = (self._adj[path[-1]] & subset) - set(path)
            path.append(min(nxt))
        labels = [self.label(a, b) for a, b in zip(path, path[1:])]
        special = [(i, m) for i, m in enumerate(labels) if m != 3]
        if not special:
            return ArtinType("A", k)
        (pos, m), = special
        if m == 4 and pos in (0, len(labels) - 1):
            return ArtinType("B", k)
        if m == 4:
            return ArtinType("F", 4)
        if m == 5 and pos in (0, len(labels) - 1):
            return ArtinType("H", k)
        raise UnsupportedType(f"induced subgraph on {sorted(subset)} is not finite type")

    def z_exponent(self, subset: frozenset[int]) -> int:
        """2 if the center of the (connected) type is generated by Delta^2, else 1."""
        t = self.classify(subset)
        f, n = t.family, t.rank
        if f == "A" and n >= 2:
            return 2
        if f == "D" and n >= 5 and n % 2 == 1:
            return 2
        if f == "E" and n == 6:
            return 2
        if f == "I2" and t.i2_label and t.i2_label >= 5 and t.i2_label % 2 == 1:
            return 2
        return 1


@lru_cache(maxsize=None)
def build_defining_graph(spec: str) -> DefiningGraph:
    """Graph for a type spec string like 'A5', 'B3', 'E8', 'H4', 'I2(7)'."""
    return DefiningGraph(ArtinType.parse(spec))


class RootSystem:
    """The finite root system of a defining graph, with reflection tables.

    Roots are tuples of ring elements in the simple-root basis.  The table
    stores, for every generator, the permutation its reflection induces on
    root indices, plus per-root positivity flags.  The reflection formula
    only touches one coordinate: s_i sends v_i to -v_i + sum over neighbors
    of 2cos(pi/m_ij) * v_j.
    """

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        self.ring = CosRing(graph.max_label)
        ring = self.ring
        n = graph.rank
        cos_row = {
            i: {j: ring.cos2(graph.label(i, j)) for j in graph.neighbors(i)}
            for i in graph.vertices
        }

        def reflect(i: int, root: tuple[Coeffs, ...]) -> tuple[Coeffs, ...]:
            new_i = ring.neg(root[i])
            for j, cij in cos_row[i].items():
                new_i = ring.add(new_i, ring.mul(cij, root[j]))
            return root[:i] + (new_i,) + root[i + 1 :]

        simple = [
            tuple(ring.one if j == i else ring.zero for j in range(n))
            for i in range(n)
        ]
        index: dict[tuple[Coeffs, ...], int] = {}
        roots: list[tuple[Coeffs, ...]] = []
        for r in simple:
            index[r] = len(roots)
            roots.append(r)
        frontier = list(simple)
        while frontier:
            root = frontier.pop()
            for i in range(n):
                img = reflect(i, root)
                if img not in index:
                    index[img] = len(roots)
                    roots.append(img)
                    frontier.append(img)
        expect = graph.type.root_count
        assert len(roots) == expect, f"{graph.type}: {len(roots)} roots, expected {expect}"

        self.roots = tuple(roots)
        self.index = index
        self.simple_index = tuple(index[r] for r in simple)
        self.gen_perm = tuple(
            tuple(index[reflect(i, r)] for r in roots) for i in range(n)
        )

        def first_sign(root: tuple[Coeffs, ...]) -> int:
            for c in root:
                s = ring.sign(c)
                if s:
                    return s
            raise AssertionError("zero root")

        self.is_positive_root = tuple(first_sign(r) > 0 for r in roots)
        self.positive_indices = tuple(
            i for i, p in enumerate(self.is_positive_root) if p
        )
        assert 2 * len(self.positive_indices) == len(roots)

        self._elements: dict[tuple[int, ...], CoxeterElement] = {}
        self._next_uid = 0
        self.identity = self.element(tuple(range(len(roots))))
        self.generators = tuple(self.element(p) for p in self.gen_perm)
        self._gen_of_perm = {g.perm: i for i, g in enumerate(self.generators)}

    def element(self, perm: tuple[int, ...]) -> CoxeterElement:
        el = self._elements.get(perm)
        if el is None:
            el = CoxeterElement(self, perm, self._next_uid)
            self._next_uid += 1
            self._elements[perm] = el
        return el

    def generator_of(self, w: CoxeterElement) -> int | None:
        """Index i if w is the reflection of generator i, else None."""
        return self._gen_of_perm.get(w.perm)


@lru_cache(maxsize=None)
def root_reflection_table(spec: str) -> RootSystem:
    return RootSystem(build_defining_graph(spec))


class CoxeterElement:
    """An element of the finite Coxeter group, as a permutation of roots.

    Instances are interned per root system, so equality is identity and the
    length / descent data computed once is shared.
    """

    __slots__ = ("system", "perm", "uid", "_hash", "_length", "_inverse", "_supp")

    def __init__(self, system: RootSystem, perm: tuple[int, ...], uid: int):
        self.system = system
        self.perm = perm
        self.uid = uid
        self._hash = hash(perm)
        self._length: int | None = None
        self._inverse: CoxeterElement | None = None
        self._supp: frozenset[int] | None = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, CoxeterElement) and self.perm == other.perm

    def __repr__(self) -> str:
        word = " ".join(self.system.graph.name(i) for i in self.reduced_word())
        return f"<W {word or 'e'}>"

    @property
    def length(self) -> int:
        if self._length is None:
            pos = self.system.is_positive_root
            perm = self.perm
            self._length = sum(
                1 for i in self.system.positive_indices if not pos[perm[i]]
            )
        return self._length

    @property
    def is_identity(self) -> bool:
        return self.length == 0

    def __mul__(self, other: CoxeterElement) -> CoxeterElement:
        if self.system is not other.system:
            raise MixedContext("elements from different root systems")
        op, sp = other.perm, self.perm
        return self.system.element(tuple(sp[i] for i in op))

    def inverse(self) -> CoxeterElement:
        if self._inverse is None:
            inv = [0] * len(self.perm)
            for i, j in enumerate(self.perm):
                inv[j] = i
            self._inverse = self.system.element(tuple(inv))
            self._inverse._inverse = self
        return self._inverse

    def right_descents(self) -> frozenset[int]:
        sys = self.system
        return frozenset(
            s
            for s, idx in enumerate(sys.simple_index)
            if not sys.is_positive_root[self.perm[idx]]
        )

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    def support(self) -> frozenset[int]:
        """Generators appearing in any reduced word (greedy factorization)."""
        if self._supp is None:
            supp = set()
            w = self
            while not w.is_identity:
                s = min(w.left_descents())
                supp.add(s)
                w = self.system.generators[s] * w
            self._supp = frozenset(supp)
        return self._supp

    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (greedy left descents)."""
        word = []
        w = self
        while not w.is_identity:
            s = min(w.left_descents())
            word.append(s)
            w = self.system.generators[s] * w
        return tuple(word)


def cox_multiply(a: CoxeterElement, b: CoxeterElement) -> CoxeterElement:
    return a * b


def descents(w: CoxeterElement, side: str = "left") -> frozenset[int]:
    if side == "left":
        return w.left_descents()
    if side == "right":
        return w.right_descents()
    raise ValueError("side must be 'left' or 'right'")


def longest_element(system: RootSystem, subset: frozenset[int]) -> CoxeterElement:
    """Longest element of the standard parabolic W_X, built greedily."""
    w = system.identity
    while True:
        free = subset - w.right_descents()
        if not free:
            return w
        w = w * system.generators[min(free)]


def cox_support(w: CoxeterElement) -> frozenset[int]:
    return w.support()
