"""Markings: transverse decorations of maximal simplices, and their moves.

A marking is an ordered list of pairs (P_i, Q_i) of irreducible proper
parabolic subgroups: the bases P_i span a maximal simplex, z_{Q_i} commutes
with z_{P_j} exactly when i != j, and each Q_j is simultaneously
standardizable with the whole base.  That last condition is certified
constructively: relative to any standardizer g of the base there is a unique
twist k and standard subset Y with Q_j = g Delta_{X_j}^k A_Y Delta_{X_j}^-k
g^-1, found by a bounded scan over k.  The projection of Q_j onto P_j is the
Delta_{X_j}-exponent of the ascending product relating g Delta_{X_j}^k to
the canonical standardizer; for the canonical standardizer it equals k.

Twist moves conjugate one transversal by the z-element of its base.  Flip
moves swap one pair and rechoose every other transversal within twist
distance one of the old one, measured against a standardizer shared by both
bases; by the uniqueness of transversal decompositions, ranging the twist
over that window and the standard subset over all admissible connected
subsets enumerates every possible replacement, so the flip neighbors listed
here are complete.

Markings compare equal as unordered pair sets (canonical keys), while the
stored pair order is preserved by every move.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ArtinMarkError,
    BaseNotMaximal,
    NotIrreducible,
    NotProper,
    NotStandard,
    NotSimultaneouslyStandardizable,
    PreconditionViolated,
    ScanExhausted,
    TransversalityPatternBroken,
)
from .garside import ArtinElement, GarsideContext
from .parabolic import ParabolicSubgroup, _standard_target
from .simplex import (
    CparabSimplex,
    LevelDecomposition,
    extract_ascending_product,
)

Subset = frozenset[int]
Pair = tuple[ParabolicSubgroup, ParabolicSubgroup]


@dataclass(frozen=True)
class TransversalData:
    """Unique decomposition Q_j = g Delta_{X_j}^twist A_subset Delta^-twist g^-1."""

    index: int
    twist: int
    subset: Subset


@dataclass(frozen=True)
class MarkingCertificate:
    levels: LevelDecomposition
    transversals: tuple[TransversalData, ...]


class Marking:
    """Ordered pairs (base, transverse); equality ignores the order."""

    __slots__ = (
        "ctx", "pairs", "_key", "_base", "_base_hint", "_pair_vertex", "_cert", "_proj",
    )

    def __init__(self, ctx: GarsideContext, pairs):
        self.ctx = ctx
        self.pairs: tuple[Pair, ...] = tuple((p, q) for p, q in pairs)
        self._key: str | None = None
        self._base: CparabSimplex | None = None
        self._base_hint: ArtinElement | None = None
        self._pair_vertex: tuple[int, ...] | None = None
        self._cert: MarkingCertificate | None = None
        self._proj: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.pairs)

    def key(self) -> str:
        if self._key is None:
            self._key = "||".join(
                sorted(f"{p.key()}>{q.key()}" for p, q in self.pairs)
            )
        return self._key

    def ordered_key(self) -> tuple[tuple[str, str], ...]:
        """Pair-order-sensitive key, for caches indexed by pair position."""
        return tuple((p.key(), q.key()) for p, q in self.pairs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Marking)
            and self.ctx is other.ctx
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Marking[{', '.join(f'({p!r},{q!r})' for p, q in self.pairs)}]"

    def base_simplex(self) -> CparabSimplex:
        if self._base is None:
            self._base = CparabSimplex(self.ctx, [p for p, _ in self.pairs])
            if self._base_hint is not None:
                self._base.suggest_standardizer(self._base_hint)
            keys = {v.key(): i for i, v in enumerate(self._base.vertices)}
            self._pair_vertex = tuple(keys[p.key()] for p, _ in self.pairs)
        return self._base

    def vertex_of_pair(self, j: int) -> int:
        self.base_simplex()
        assert self._pair_vertex is not None
        return self._pair_vertex[j]

    def conjugated_by(self, x: ArtinElement) -> Marking:
        moved = Marking(
            self.ctx,
            [(p.conjugated_by(x), q.conjugated_by(x)) for p, q in self.pairs],
        )
        if self._base is not None and self._base._canonical is not None:
            moved._base_hint = x * self._base._canonical[0]
        elif self._base_hint is not None:
            moved._base_hint = x * self._base_hint
        return moved

    def all_standard(self) -> bool:
        return all(
            p.is_standard_rep and q.is_standard_rep for p, q in self.pairs
        )

    def certificate(self) -> MarkingCertificate:
        if self._cert is None:
            cache = self.ctx.scratch.setdefault("marking_cert", {})
            value = cache.get(self.ordered_key())
            if value is None:
                try:
                    value = validate_marking(self)
                except ArtinMarkError as err:
                    cache[self.ordered_key()] = err
                    raise
                cache[self.ordered_key()] = value
            if isinstance(value, ArtinMarkError):
                raise value
            self._cert = value
        return self._cert

    def projections(self) -> tuple[int, ...]:
        return tuple(projection(self, j) for j in range(len(self.pairs)))

    def to_json(self) -> dict:
        return {
            "pairs": [
                {"base": p.to_json(), "transverse": q.to_json()}
                for p, q in self.pairs
            ]
        }

    @staticmethod
    def from_json(ctx: GarsideContext, data: dict) -> Marking:
        return Marking(
            ctx,
            [
                (
                    ParabolicSubgroup.from_json(ctx, pair["base"]),
                    ParabolicSubgroup.from_json(ctx, pair["transverse"]),
                )
                for pair in data["pairs"]
            ],
        )


def conjugate_marking(marking: Marking, x: ArtinElement) -> Marking:
    return marking.conjugated_by(x)


# -- the standard transversal recipe -----------------------------------------


def _recipe_transversals(graph, subsets: tuple[Subset, ...], scope: Subset) -> dict[Subset, Subset]:
    """Transversal subset per base subset, for a maximal family inside scope.

    For a maximal component X with missing vertex v of the family, the
    transversal is scope - X, augmented by the unique next-level component
    of X adjacent to v whenever there is one; then recurse inside X.
    """
    if not subsets:
        return {}
    union = frozenset().union(*subsets)
    (v,) = scope - union
    out: dict[Subset, Subset] = {}
    for x in graph.components(scope - {v}):
        rest = scope - x
        (u,) = graph.neighbors(v) & x
        subs = tuple(z for z in subsets if z < x)
        inside = frozenset().union(frozenset(), *subs)
        gap = x - inside
        assert len(gap) == 1, "family must be maximal inside each component"
        (t_x,) = gap
        if u != t_x:
            x1 = next(c for c in graph.components(x - {t_x}) if u in c)
            out[x] = rest | x1
        else:
            out[x] = rest
        out.update(_recipe_transversals(graph, subs, x))
    return out


def standard_transversals(simplex: CparabSimplex) -> Marking:
    """The simultaneously standardizable marking on a maximal standard base."""
    from .simplex import is_maximal_standard

    ctx = simplex.ctx
    ok, _t, _w = is_maximal_standard(simplex)
    if not ok:
        raise BaseNotMaximal("base simplex is not maximal")
    subsets = tuple(v.gens for v in simplex.vertices)
    recipe = _recipe_transversals(ctx.graph, subsets, frozenset(ctx.graph.vertices))
    return Marking(
        ctx,
        [
            (v, ParabolicSubgroup.standard(ctx, recipe[v.gens]))
            for v in simplex.vertices
        ],
    )


# -- validation ----------------------------------------------------------------


def decompose_transversal(
    q: ParabolicSubgroup, base: ParabolicSubgroup, g: ArtinElement, index: int = -1
) -> TransversalData:
    """The unique (k, Y) with q = g Delta_X^k A_Y Delta_X^-k g^-1, where
    A_X = g^-1 (base) g must be standard.

    The scan over k is symmetric and bounded by the Garside complexity of
    g^-1 * conj(q).
    """
    ctx = q.ctx
    cache = ctx.scratch.setdefault("transversal_decomp", {})
    cache_key = (q.conj, q.gens, base.conj, base.gens, g)
    hit = cache.get(cache_key)
    if hit is not None:
        if isinstance(hit, ArtinMarkError):
            raise hit
        return TransversalData(index, hit[0], hit[1])
    g_inv = g.inverse()
    c, x = base.conjugated_by(g_inv).canonical()
    if not c.is_identity:
        raise ArtinMarkError(f"{g} does not standardize the base {base}")
    z_q = q.z_element()
    c0 = g_inv * q.conj
    bound = ctx.delta_len * (abs(c0.inf) + 2) + sum(w.length for w in c0.body)
    d_x = ctx.delta_of(x)
    for k in range(bound + 1):
        for signed in (k,) if k == 0 else (k, -k):
            cand = g * d_x**signed
            target = _standard_target(ctx, cand, z_q, q.conj, q.gens)
            if target is not None:
                cache[cache_key] = (signed, target)
                return TransversalData(index, signed, target)
    error = ScanExhausted(bound)
    cache[cache_key] = error
    raise error


def transversal_decomposition(
    marking: Marking, j: int, g: ArtinElement
) -> TransversalData:
    """Decomposition of the j-th transversal relative to a base standardizer g."""
    p_j, q_j = marking.pairs[j]
    return decompose_transversal(q_j, p_j, g, j)


def validate_marking(marking: Marking) -> MarkingCertificate:
    """Check the three marking conditions; return levels and per-pair data."""
    ctx = marking.ctx
    pairs = marking.pairs
    for _, q in pairs:
        if not q.irreducible:
            raise NotIrreducible(f"transversal {q} is not irreducible")
        if not q.proper:
            raise NotProper(f"transversal {q} is the whole group")
    simplex = marking.base_simplex()
    ghat, std = simplex.canonical_data()
    if not std.is_maximal:
        raise BaseNotMaximal("base does not span a maximal simplex")
    z_p = [p.z_element() for p, _ in pairs]
    z_q = [q.z_element() for _, q in pairs]
    for i, j in itertools.product(range(len(pairs)), repeat=2):
        if z_q[i].commutes_with(z_p[j]) != (i != j):
            raise TransversalityPatternBroken(i, j)
    data = []
    for j in range(len(pairs)):
        try:
            data.append(transversal_decomposition(marking, j, ghat))
        except ScanExhausted as err:
            raise NotSimultaneouslyStandardizable(j, str(err)) from err
    # structural sanity: maximal transversals contain the other maximal bases,
    # and nested bases nest into the higher transversals
    top = simplex.levels.levels[0]
    if len(top) >= 2:
        for vi in top:
            j = marking._pair_vertex.index(vi)  # type: ignore[union-attr]
            for vk in top:
                if vk != vi:
                    assert pairs[j][1].contains(simplex.vertices[vk])
    for j, (p_j, q_j) in enumerate(pairs):
        for k, (p_k, q_k) in enumerate(pairs):
            if j != k and p_k.contains(p_j):
                assert p_k.contains(q_j)
                assert q_k.contains(p_j) or q_k.z_element().commutes_with(
                    p_j.z_element()
                )
    return MarkingCertificate(simplex.levels, tuple(data))


def projection(marking: Marking, j: int, g: ArtinElement | None = None) -> int:
    """The integer twist coordinate pi_{P_j}(Q_j).

    Computed from the twist of the transversal decomposition relative to g
    (default: the canonical standardizer) and the ascending product relating
    g Delta_{X_j}^k to the canonical standardizer; the result is independent
    of g.
    """
    if g is None and j in marking._proj:
        return marking._proj[j]
    ctx = marking.ctx
    cache = ctx.scratch.setdefault("marking_proj", {})
    cache_key = (marking.ordered_key(), j, g)
    if cache_key in cache:
        value = cache[cache_key]
        if g is None:
            marking._proj[j] = value
        return value
    simplex = marking.base_simplex()
    ghat, std = simplex.canonical_data()
    use_g = ghat if g is None else g
    data = transversal_decomposition(marking, j, use_g)
    # the subset conjugated to the pair's base by use_g
    base_conj = marking.pairs[j][0].conjugated_by(use_g.inverse())
    _, x_j = base_conj.canonical()
    h = use_g * ctx.delta_of(x_j) ** data.twist
    product = extract_ascending_product(h, ghat, std)
    value = product.exponents[marking.vertex_of_pair(j)]
    cache[cache_key] = value
    if g is None:
        marking._proj[j] = value
    return value


# -- moves ---------------------------------------------------------------------


def twist_move(marking: Marking, j: int, direction: int = 1) -> Marking:
    """Replace Q_j by z_{P_j}^direction Q_j z_{P_j}^-direction."""
    p_j, q_j = marking.pairs[j]
    z = p_j.z_element() ** (1 if direction >= 0 else -1)
    pairs = list(marking.pairs)
    pairs[j] = (p_j, q_j.conjugated_by(z))
    return Marking(marking.ctx, pairs)


def shared_flip_standardizer(marking: Marking, j: int) -> ArtinElement:
    """ghat * Delta_{X_j}^{k_j}: standardizes the base, the j-th transversal,
    and therefore the base obtained by flipping across j.

    Twist differences measured against a shared standardizer of two bases do
    not depend on which shared standardizer is used (any two differ by an
    ascending product, which shifts both twists equally), and they are
    preserved verbatim under conjugation; the flip condition is stated in
    these terms.
    """
    ctx = marking.ctx
    ghat, std = marking.base_simplex().canonical_data()
    k_j = transversal_decomposition(marking, j, ghat).twist
    x_j = std.subsets[marking.vertex_of_pair(j)]
    return ghat * ctx.delta_of(x_j) ** k_j


def _flip_candidate_table(
    marking: Marking, j: int, anchor_width: int = 1
) -> tuple[ArtinElement, dict[int, int], dict[int, list[tuple[int, ParabolicSubgroup]]]]:
    """Shared standardizer h, twists of the old transversals relative to h,
    and per-index candidate transversals tagged with their h-twists.

    By the unique transversal decomposition, the candidate with twist t and
    standard subset Y at index i is exactly (h Delta_X^t) A_Y (h Delta_X^t)^-1
    with A_X the h-standardization of P_i, so ranging t over the window and Y
    over all pattern-admissible connected subsets enumerates every possible
    transversal; candidates failing the commutation pattern are dropped here,
    the rest are certified when the assembled marking is validated.
    """
    ctx = marking.ctx
    pairs = marking.pairs
    p_j, q_j = pairs[j]
    h = shared_flip_standardizer(marking, j)
    h_inv = h.inverse()
    new_base = [q_j if i == j else pairs[i][0] for i in range(len(pairs))]
    new_simplex = CparabSimplex(ctx, new_base)
    new_simplex.suggest_standardizer(h)
    _ghat2, std2 = new_simplex.canonical_data()
    if not std2.is_maximal:
        raise BaseNotMaximal("flipped base is not maximal")
    z_base = [q.z_element() if i == j else p.z_element()
              for i, (p, q) in enumerate(pairs)]
    anchors: dict[int, int] = {}
    table: dict[int, list[tuple[int, ParabolicSubgroup]]] = {}
    for i in range(len(pairs)):
        if i == j:
            continue
        anchors[i] = transversal_decomposition(marking, i, h).twist
        c, x_h = pairs[i][0].conjugated_by(h_inv).canonical()
        assert c.is_identity
        d_x = ctx.delta_of(x_h)
        tagged = []
        for t in range(anchors[i] - anchor_width, anchors[i] + anchor_width + 1):
            conj_t = h * d_x**t
            for y in ctx.connected_proper_subsets():
                cand = ParabolicSubgroup(ctx, conj_t, y)
                z_cand = cand.z_element()
                if all(
                    z_cand.commutes_with(z_base[m]) == (m != i)
                    for m in range(len(pairs))
                ):
                    tagged.append((t, cand))
        table[i] = tagged
    return h, anchors, table


def enumerate_flip_moves(marking: Marking, j: int) -> list[Marking]:
    """All validated flips across index j.

    The new pair j is the swap (Q_j, P_j); each other transversal is replaced
    by a candidate whose twist relative to the shared standardizer differs
    from the old one by at most one.
    """
    ctx = marking.ctx
    marking.certificate()
    pairs = marking.pairs
    p_j, q_j = pairs[j]
    _h, anchors, table = _flip_candidate_table(marking, j, anchor_width=1)
    indices = sorted(anchors)
    per_index = [
        [cand for twist, cand in table[i] if abs(twist - anchors[i]) <= 1]
        for i in indices
    ]
    out = []
    seen = set()
    for combo in itertools.product(*per_index):
        new_pairs = list(pairs)
        new_pairs[j] = (q_j, p_j)
        for i, q in zip(indices, combo):
            new_pairs[i] = (pairs[i][0], q)
        candidate = Marking(ctx, new_pairs)
        if candidate.key() in seen:
            continue
        try:
            candidate.certificate()
        except ArtinMarkError:
            continue
        seen.add(candidate.key())
        out.append(candidate)
    out.sort(key=Marking.key)
    assert out, "a flip move always exists"
    return out


def is_flip_edge(a: Marking, b: Marking) -> bool:
    """Whether b is a flip of a: one pair swapped, every other transversal
    within twist distance one relative to a shared standardizer."""
    if len(a) != len(b) or a == b:
        return False
    order = _align(a, b)
    if order is None:
        return False
    swapped = []
    for i, bi in enumerate(order):
        pa, qa = a.pairs[i]
        pb, qb = b.pairs[bi]
        if pa.key() == pb.key():
            continue
        if pa.key() == qb.key() and qa.key() == pb.key():
            swapped.append((i, bi))
        else:
            return False
    if len(swapped) != 1:
        return False
    j = swapped[0][0]
    try:
        h = shared_flip_standardizer(a, j)
        for i, bi in enumerate(order):
            if i == j:
                continue
            k_i = transversal_decomposition(a, i, h).twist
            l_i = transversal_decomposition(b, bi, h).twist
            if abs(k_i - l_i) > 1:
                return False
    except ArtinMarkError:
        return False
    return True


def is_twist_edge(a: Marking, b: Marking) -> bool:
    """Whether b is a single twist of a."""
    if len(a) != len(b) or a == b:
        return False
    order = _align(a, b)
    if order is None:
        return False
    moved = []
    for i, bi in enumerate(order):
        pa, qa = a.pairs[i]
        pb, qb = b.pairs[bi]
        if pa.key() != pb.key():
            return False
        if qa.key() != qb.key():
            moved.append((i, bi))
    if len(moved) != 1:
        return False
    i, bi = moved[0]
    z = a.pairs[i][0].z_element()
    qa = a.pairs[i][1]
    qb = b.pairs[bi][1]
    return qb == qa.conjugated_by(z) or qb == qa.conjugated_by(z.inverse())


def _align(a: Marking, b: Marking) -> list[int] | None:
    """Map pair index of a to pair index of b, matching pairs by vertex sets.

    Pairs are matched by the unordered pair of parabolic keys, so a swapped
    pair still aligns with its source.
    """
    unused = dict(enumerate(b.pairs))
    order = []
    for p, q in a.pairs:
        label = frozenset((p.key(), q.key()))
        hit = None
        for i, (pb, qb) in unused.items():
            if frozenset((pb.key(), qb.key())) == label:
                hit = i
                break
        if hit is None:
            # fall back to matching by base only (twist edges)
            for i, (pb, _qb) in unused.items():
                if pb.key() == p.key():
                    hit = i
                    break
        if hit is None:
            return None
        del unused[hit]
        order.append(hit)
    return order


# -- standardization and stabilizers -----------------------------------------


def standardize_marking(marking: Marking) -> tuple[ArtinElement, Marking]:
    """(c, M0) with marking = c M0 c^-1 and M0 entirely standard.

    Conjugates the base to standard via the canonical standardizer, then
    walks the levels bottom-up, absorbing each transversal twist by a power
    of the corresponding Delta_{X_j}.
    """
    ctx = marking.ctx
    marking.certificate()
    simplex = marking.base_simplex()
    ghat, _std = simplex.canonical_data()
    # depth per pair index; conjugation preserves levels
    depth = {
        j: simplex.levels.level_of(marking.vertex_of_pair(j))
        for j in range(len(marking.pairs))
    }
    conj = ghat
    cur = marking.conjugated_by(ghat.inverse())
    for level in sorted(set(depth.values()), reverse=True):
        for j in sorted(i for i, d in depth.items() if d == level):
            data = transversal_decomposition(cur, j, ctx.identity)
            if data.twist:
                base_gens = cur.pairs[j][0].canonical()[1]
                step = ctx.delta_of(base_gens) ** data.twist
                cur = cur.conjugated_by(step.inverse())
                conj = conj * step
    # normal-form representations: swap every pair for its standard form
    std_pairs = []
    for p, q in cur.pairs:
        cp, xp = p.canonical()
        cq, xq = q.canonical()
        assert cp.is_identity and cq.is_identity
        std_pairs.append(
            (ParabolicSubgroup.standard(ctx, xp), ParabolicSubgroup.standard(ctx, xq))
        )
    return conj, Marking(ctx, std_pairs)


def marking_stabilizer_probe(
    marking: Marking, length_bound: int, shift_bound: int | None = None
) -> list[ArtinElement]:
    """All stabilizing elements Delta^e w, |e| <= shift, atom length of the
    positive part w at most the length bound.  Requires a standard marking."""
    if not marking.all_standard():
        raise NotStandard("stabilizer probe expects an all-standard marking")
    ctx = marking.ctx
    if shift_bound is None:
        shift_bound = length_bound
    seen: set[ArtinElement] = set()
    hits = []
    for w in ctx.positive_elements(length_bound):
        for e in range(-shift_bound, shift_bound + 1):
            g = ctx.delta**e * w
            if g in seen:
                continue
            seen.add(g)
            if marking.conjugated_by(g) == marking:
                hits.append(g)
    hits.sort(key=ArtinElement.sort_key)
    return hits


# -- bounded transversal swapping ---------------------------------------------


def _flip_toward(marking: Marking, j: int, target: Marking) -> Marking:
    """One flip across j choosing, per other index, a candidate transversal
    whose shared-standardizer twist is within one of both the old transversal
    and the target's transversal (the target shares the base of marking)."""
    ctx = marking.ctx
    pairs = marking.pairs
    h, anchors, table = _flip_candidate_table(marking, j, anchor_width=2)
    new_pairs = list(pairs)
    new_pairs[j] = (pairs[j][1], pairs[j][0])
    for i in sorted(anchors):
        goal = decompose_transversal(target.pairs[i][1], pairs[i][0], h).twist
        pick = None
        for twist, cand in table[i]:
            if abs(twist - anchors[i]) <= 1 and abs(twist - goal) <= 1:
                pick = cand
                break
        if pick is None:
            raise PreconditionViolated(
                f"no candidate transversal between twists {anchors[i]} and {goal}"
            )
        new_pairs[i] = (pairs[i][0], pick)
    out = Marking(ctx, new_pairs)
    out.certificate()
    return out


def transversal_swap_path(m1: Marking, m2: Marking) -> list[Marking]:
    """A path of at most 4 moves between same-base markings whose projections
    differ by at most one at every index.  Returns the vertex list, endpoints
    included; every consecutive pair is a flip edge (a twist edge in the
    one-pair case)."""
    if len(m1) != len(m2):
        raise PreconditionViolated("markings have different sizes")
    order = _align(m1, m2)
    if order is None or any(
        m1.pairs[i][0].key() != m2.pairs[bi][0].key() for i, bi in enumerate(order)
    ):
        raise PreconditionViolated("markings must share their base")
    m2 = Marking(m1.ctx, [m2.pairs[bi] for bi in order])
    if m1 == m2:
        return [m1]
    pi1 = [projection(m1, i) for i in range(len(m1))]
    pi2 = [projection(m2, i) for i in range(len(m2))]
    if any(abs(a - b) > 1 for a, b in zip(pi1, pi2)):
        raise PreconditionViolated("projections differ by more than one")
    if len(m1) == 1:
        step = m1.ctx.graph.z_exponent(m1.pairs[0][0].canonical()[1])
        delta = pi2[0] - pi1[0]
        if delta and abs(delta) % step == 0:
            candidate = twist_move(m1, 0, 1 if delta > 0 else -1)
            if candidate == m2:
                return [m1, m2]
        raise PreconditionViolated("one-pair markings differ by more than a twist")
    j, k = 0, 1
    m_prime = _flip_toward(m1, j, m2)
    assert is_flip_edge(m1, m_prime)
    # flip back across j, installing m2's transversals away from j
    second = list(m_prime.pairs)
    second[j] = (m1.pairs[j][0], m1.pairs[j][1])
    for i in range(len(m1)):
        if i != j:
            second[i] = (m2.pairs[i][0], m2.pairs[i][1])
    m_second = Marking(m1.ctx, second)
    m_second.certificate()
    assert is_flip_edge(m_prime, m_second)
    if m_second == m2:
        return [m1, m_prime, m_second]
    # two flips across k to replace the remaining transversal at j
    m_third = _flip_toward(m_second, k, m2)
    assert is_flip_edge(m_second, m_third)
    m2.certificate()
    assert is_flip_edge(m_third, m2)
    return [m1, m_prime, m_second, m_third, m2]
