"""Exact arithmetic in a finite-type Artin group via its Garside structure.

An element is stored in left-greedy normal form Delta^p x_1 ... x_l where the
x_i are simples, i.e. elements of the finite Coxeter group W (every element
of W divides the longest element w0, the image of Delta).  A pair (u, v) of
adjacent factors is normal when the left descent set of v is contained in
the right descent set of u; the normalizer repeatedly slides the maximal
absorbable prefix of v into u until every pair is normal, then pulls leading
w0 factors into the Delta exponent.

Lattice operations on simples are descent-greedy: the prefix-order meet
peels common left descents, and the join is obtained from the meet through
the complement anti-automorphisms x -> x^-1 w0 and x -> w0 x^-1.  No table
of W is ever materialized, so the same code serves I2(3) and E8.

Signed generator words enter through the usual rewrite s^-1 = Delta^-1 *
(Delta s^-1), after which Delta powers are commuted to the front with the
conjugation automorphism tau(x) = w0 x w0.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .coxeter import (
    CoxeterElement,
    DefiningGraph,
    RootSystem,
    build_defining_graph,
    longest_element,
    root_reflection_table,
)
from .errors import MixedContext, NotPositive, ParseError

Word = tuple[tuple[int, int], ...]  # (generator index, +1 or -1)


class GarsideContext:
    """Shared tables and caches for one Artin group."""

    def __init__(self, graph: DefiningGraph, system: RootSystem):
        self.graph = graph
        self.system = system
        self.rank = graph.rank
        self.delta_w = longest_element(system, frozenset(graph.vertices))
        self.delta_len = self.delta_w.length
        self._meet: dict[tuple[int, int], CoxeterElement] = {}
        self._slide: dict[tuple[int, int], tuple[CoxeterElement, CoxeterElement] | None] = {}
        self._rcomp: dict[int, CoxeterElement] = {}
        self._tau: dict[int, CoxeterElement] = {}
        self._delta_of: dict[frozenset[int], ArtinElement] = {}
        self._w0_of: dict[frozenset[int], CoxeterElement] = {}
        self.identity = ArtinElement(self, 0, ())
        self.delta = ArtinElement(self, 1, ())
        self.atoms = tuple(
            ArtinElement(self, 0, (g,)) for g in system.generators
        )
        # caches owned by higher layers (parabolics, simplices, markings)
        self.scratch: dict[str, dict] = {}

    def __repr__(self) -> str:
        return f"GarsideContext({self.graph.type})"

    # -- simple (W-level) operations ------------------------------------

    def tau(self, x: CoxeterElement, power: int = 1) -> CoxeterElement:
        """Delta^power x Delta^-power; only the parity matters."""
        if power % 2 == 0:
            return x
        el = self._tau.get(x.uid)
        if el is None:
            el = self.delta_w * x * self.delta_w
            self._tau[x.uid] = el
        return el

    def right_complement(self, x: CoxeterElement) -> CoxeterElement:
        """The simple r with x * r = Delta, lengths adding."""
        el = self._rcomp.get(x.uid)
        if el is None:
            el = x.inverse() * self.delta_w
            self._rcomp[x.uid] = el
        return el

    def left_complement(self, x: CoxeterElement) -> CoxeterElement:
        """The simple l with l * x = Delta, lengths adding."""
        return self.delta_w * x.inverse()

    def is_prefix_w(self, a: CoxeterElement, b: CoxeterElement) -> bool:
        """a divides b in the prefix order on simples."""
        return a.length + (a.inverse() * b).length == b.length

    def gcd_simples(self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement:
        """Meet of two simples in the prefix order (greedy descent peeling)."""
        if a.system is not b.system or a.system is not self.system:
            raise MixedContext("simples from different root systems")
        key = (a.uid, b.uid) if a.uid <= b.uid else (b.uid, a.uid)
        cached = self._meet.get(key)
        if cached is not None:
            return cached
        gens = self.system.generators
        d = self.system.identity
        x, y = a, b
        while True:
            common = x.left_descents() & y.left_descents()
            if not common:
                break
            s = gens[min(common)]
            d = d * s
            x = s * x
            y = s * y
        self._meet[key] = d
        return d

    def lcm_simples(self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement:
        """Join of two simples in the prefix order, via complement duality."""
        # suffix-order meet of the right complements, peeling right descents
        x, y = self.right_complement(a), self.right_complement(b)
        gens = self.system.generators
        d = self.system.identity
        while True:
            common = x.right_descents() & y.right_descents()
            if not common:
                break
            s = gens[min(common)]
            d = s * d
            x = x * s
            y = y * s
        return self.delta_w * d.inverse()

    def w0_of(self, subset: frozenset[int]) -> CoxeterElement:
        el = self._w0_of.get(subset)
        if el is None:
            el = longest_element(self.system, subset)
            self._w0_of[subset] = el
        return el

    def _slide_pair(
        self, u: CoxeterElement, v: CoxeterElement
    ) -> tuple[CoxeterElement, CoxeterElement] | None:
        """Left-greedy a pair: move the maximal head of v into u, or None."""
        key = (u.uid, v.uid)
        if key in self._slide:
            return self._slide[key]
        alpha = self.gcd_simples(self.right_complement(u), v)
        if alpha.is_identity:
            result = None
        else:
            result = (u * alpha, alpha.inverse() * v)
        self._slide[key] = result
        return result

    def normalize_factors(
        self, factors: Iterable[CoxeterElement]
    ) -> tuple[int, tuple[CoxeterElement, ...]]:
        """Normal form of a product of simples: (Delta gain, body)."""
        body = [x for x in factors if not x.is_identity]
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(body) - 1:
                slid = self._slide_pair(body[i], body[i + 1])
                if slid is not None:
                    changed = True
                    body[i] = slid[0]
                    if slid[1].is_identity:
                        del body[i + 1]
                    else:
                        body[i + 1] = slid[1]
                i += 1
        gain = 0
        while body and body[0] is self.delta_w:
            gain += 1
            body.pop(0)
        return gain, tuple(body)

    # -- element constructors --------------------------------------------

    def element(self, inf: int, factors: Iterable[CoxeterElement]) -> ArtinElement:
        gain, body = self.normalize_factors(factors)
        return ArtinElement(self, inf + gain, body)

    def from_word(self, word: Word) -> ArtinElement:
        """Normal form of a signed word in the Artin generators."""
        factors: list[CoxeterElement] = []
        dpows: list[int] = []
        gens = self.system.generators
        for i, sign in word:
            if sign > 0:
                factors.append(gens[i])
                dpows.append(0)
            else:
                factors.append(self.left_complement(gens[i]))
                dpows.append(-1)
        total = 0
        for k in range(len(factors) - 1, -1, -1):
            factors[k] = self.tau(factors[k], total)
            total += dpows[k]
        return self.element(total, factors)

    def delta_of(self, subset: frozenset[int]) -> ArtinElement:
        """The Garside element Delta_X of a standard parabolic subgroup."""
        subset = frozenset(subset)
        el = self._delta_of.get(subset)
        if el is None:
            w = self.w0_of(subset)
            el = self.element(0, (w,))
            self._delta_of[subset] = el
        return el

    def delta_power_of(self, subset: frozenset[int], power: int) -> ArtinElement:
        return self.delta_of(subset) ** power

    def connected_proper_subsets(self) -> tuple[frozenset[int], ...]:
        """All generator subsets inducing connected proper subgraphs."""
        if "connected_proper" not in self.scratch:
            n = self.rank
            subs = [
                frozenset(i for i in range(n) if mask >> i & 1)
                for mask in range(1, (1 << n) - 1)
            ]
            self.scratch["connected_proper"] = tuple(
                s for s in sorted(subs, key=sorted) if self.graph.is_connected(s)
            )
        return self.scratch["connected_proper"]

    def positive_elements(self, max_length: int) -> Iterator[ArtinElement]:
        """All monoid elements of atom length <= max_length, by length."""
        layer = [self.identity]
        yield self.identity
        for _ in range(max_length):
            nxt: dict[ArtinElement, None] = {}
            for g in layer:
                for a in self.atoms:
                    nxt.setdefault(g * a, None)
            layer = sorted(nxt, key=ArtinElement.sort_key)
            yield from layer


@lru_cache(maxsize=None)
def context(spec: str) -> GarsideContext:
    graph = build_defining_graph(spec)
    return GarsideContext(graph, root_reflection_table(spec))


class ArtinElement:
    """Group element in left-greedy normal form Delta^inf x_1 ... x_l.

    Instances compare by (inf, body), which is canonical.  The body never
    contains the identity and never starts with w0.
    """

    __slots__ = ("ctx", "inf", "body", "_hash")

    def __init__(self, ctx: GarsideContext, inf: int, body: tuple[CoxeterElement, ...]):
        assert all(not x.is_identity for x in body)
        assert not body or body[0] is not ctx.delta_w
        self.ctx = ctx
        self.inf = inf
        self.body = body
        self._hash = hash((inf,) + tuple(x.uid for x in body))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, ArtinElement)
            and self.ctx is other.ctx
            and self.inf == other.inf
            and self.body == other.body
        )

    def __repr__(self) -> str:
        return f"<{self.to_text()}>"

    # -- structure ---------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.inf == 0 and not self.body

    @property
    def is_positive(self) -> bool:
        return self.inf >= 0

    @property
    def canonical_length(self) -> int:
        return len(self.body)

    def atom_length(self) -> int:
        """Common length of all positive words (the additive norm)."""
        if not self.is_positive:
            raise NotPositive(f"{self} is not in the monoid")
        return self.inf * self.ctx.delta_len + sum(x.length for x in self.body)

    def support(self) -> frozenset[int]:
        """Generators appearing in any positive word for a positive element."""
        if not self.is_positive:
            raise NotPositive(f"{self} is not in the monoid")
        supp = set()
        if self.inf > 0:
            supp |= self.ctx.delta_w.support()
        for x in self.body:
            supp |= x.support()
        return frozenset(supp)

    # -- group operations ----------------------------------------------------

    def __mul__(self, other: ArtinElement) -> ArtinElement:
        if self.ctx is not other.ctx:
            raise MixedContext("elements from different groups")
        ctx = self.ctx
        moved = tuple(ctx.tau(x, other.inf) for x in self.body)
        return ctx.element(self.inf + other.inf, moved + other.body)

    def inverse(self) -> ArtinElement:
        ctx = self.ctx
        p, body = self.inf, self.body
        factors = []
        for k, x in enumerate(reversed(body)):
            # position k from the left; tau power p + len(body) - 1 - k
            factors.append(ctx.tau(ctx.left_complement(x), p + len(body) - 1 - k))
        return ctx.element(-p - len(body), factors)

    def __pow__(self, exp: int) -> ArtinElement:
        base = self if exp >= 0 else self.inverse()
        out = self.ctx.identity
        for _ in range(abs(exp)):
            out = out * base
        return out

    def conjugated_by(self, h: ArtinElement) -> ArtinElement:
        """h * self * h^-1."""
        return h * self * h.inverse()

    def is_prefix_of(self, other: ArtinElement) -> bool:
        return (self.inverse() * other).is_positive

    def commutes_with(self, other: ArtinElement) -> bool:
        return self * other == other * self

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        graph = self.ctx.graph
        words = [
            " ".join(graph.name(i) for i in x.reduced_word()) for x in self.body
        ]
        out = f"DELTA^{self.inf} |"
        if words:
            out += " " + " . ".join(words)
        return out

    def sort_key(self) -> tuple:
        return (self.inf, len(self.body), tuple(x.perm for x in self.body))


# -- module-level operation names ------------------------------------------


def normalize(ctx: GarsideContext, text_or_word: str | Word) -> ArtinElement:
    if isinstance(text_or_word, str):
        return ctx.from_word(parse_word(ctx.graph, text_or_word))
    return ctx.from_word(text_or_word)


def multiply(a: ArtinElement, b: ArtinElement) -> ArtinElement:
    return a * b


def invert(a: ArtinElement) -> ArtinElement:
    return a.inverse()


def conjugate(g: ArtinElement, h: ArtinElement) -> ArtinElement:
    """h g h^-1, in normal form."""
    return h * g * h.inverse()


def is_positive(g: ArtinElement) -> bool:
    return g.is_positive


def atom_length(g: ArtinElement) -> int:
    return g.atom_length()


def support(g: ArtinElement) -> frozenset[int]:
    return g.support()


def is_prefix(a: ArtinElement, b: ArtinElement) -> bool:
    return a.is_prefix_of(b)


def member_of_standard(g: ArtinElement, subset: frozenset[int]) -> bool:
    """Whether g lies in the standard parabolic subgroup on the subset.

    Scans k >= 0 until Delta_X^k g is positive; by support additivity the
    first positive multiple already decides membership, and the scan budget
    bounds how far the infimum can be repaired.
    """
    ctx = g.ctx
    subset = frozenset(subset)
    if not subset:
        return g.is_identity
    if g.is_positive:
        return g.support() <= subset
    d_x = ctx.delta_of(subset)
    budget = (
        max(g.inf, 0) * ctx.delta_len
        + sum(x.length for x in g.body)
        + abs(g.inf) * ctx.delta_len
    )
    h = g
    for _ in range(budget):
        h = d_x * h
        if h.is_positive:
            return h.support() <= subset
    return False


def parse_word(graph: DefiningGraph, text: str) -> Word:
    """Parse whitespace-separated tokens s<i> and s<i>^-1."""
    word = []
    offset = 0
    for token in text.split():
        position = text.index(token, offset)
        offset = position + len(token)
        name, inverse = token, False
        if token.endswith("^-1"):
            name, inverse = token[:-3], True
        if not (name.startswith("s") and name[1:].isdigit()):
            raise ParseError(f"bad generator token {token!r}", position)
        idx = int(name[1:]) - 1
        if not 0 <= idx < graph.rank:
            raise ParseError(f"generator {name!r} out of range", position)
        word.append((idx, -1 if inverse else 1))
    return tuple(word)


def word_to_text(graph: DefiningGraph, word: Word) -> str:
    return " ".join(
        graph.name(i) + ("^-1" if sign < 0 else "") for i, sign in word
    )


def parse_element(ctx: GarsideContext, text: str) -> ArtinElement:
    """Parse the 'DELTA^p | w1 . w2' serialization (round-trips to_text)."""
    head, sep, tail = text.partition("|")
    if not sep:
        # plain generator word
        return normalize(ctx, text)
    head = head.strip()
    if not head.startswith("DELTA^"):
        raise ParseError(f"expected DELTA^<p> before '|' in {text!r}")
    try:
        inf = int(head[len("DELTA^"):])
    except ValueError:
        raise ParseError(f"bad Delta exponent in {text!r}") from None
    out = ctx.delta ** inf
    for piece in tail.split("."):
        piece = piece.strip()
        if piece:
            out = out * normalize(ctx, piece)
    return out
