import itertools
import random

import pytest

from artinmark.errors import (
    BaseNotMaximal,
    PreconditionViolated,
    TransversalityPatternBroken,
)
from artinmark.garside import context, normalize
from artinmark.marking import (
    Marking,
    conjugate_marking,
    decompose_transversal,
    enumerate_flip_moves,
    is_flip_edge,
    is_twist_edge,
    marking_stabilizer_probe,
    projection,
    shared_flip_standardizer,
    standard_transversals,
    standardize_marking,
    transversal_decomposition,
    transversal_swap_path,
    twist_move,
    validate_marking,
)
from artinmark.parabolic import ParabolicSubgroup
from artinmark.simplex import CparabSimplex, enumerate_maximal_standard


def gens(ctx, *names):
    return frozenset(ctx.graph.index(n) for n in names)


def std(ctx, *names):
    return ParabolicSubgroup.standard(ctx, gens(ctx, *names))


def simplex_of(ctx, *families):
    return CparabSimplex(ctx, [std(ctx, *fam) for fam in families])


def marking_a3():
    a3 = context("A3")
    return a3, standard_transversals(simplex_of(a3, ("s1",), ("s3",)))


def test_standard_transversals_a3():
    _a3, marking = marking_a3()
    table = {
        tuple(sorted(p.gens)): tuple(sorted(q.gens)) for p, q in marking.pairs
    }
    assert table == {(0,): (1, 2), (2,): (0, 1)}
    validate_marking(marking)


def test_standard_transversals_a2():
    a2 = context("A2")
    marking = standard_transversals(simplex_of(a2, ("s1",)))
    assert [(sorted(p.gens), sorted(q.gens)) for p, q in marking.pairs] == [
        ([0], [1])
    ]


def test_standard_transversals_b_n_chain():
    for spec in ["B3", "B4", "B5"]:
        ctx = context(spec)
        n = ctx.rank
        families = [tuple(f"s{i+1}" for i in range(k)) for k in range(1, n)]
        marking = standard_transversals(simplex_of(ctx, *families))
        for p, q in marking.pairs:
            assert max(p.gens) + 1 in q.gens
        validate_marking(marking)


def test_standard_transversals_requires_maximal():
    a3 = context("A3")
    with pytest.raises(BaseNotMaximal):
        standard_transversals(simplex_of(a3, ("s1",)))


def test_validate_output_of_recipe_everywhere():
    for spec in ["A2", "A3", "B3", "I2(5)"]:
        ctx = context(spec)
        for simplex in enumerate_maximal_standard(ctx):
            marking = standard_transversals(simplex)
            cert = validate_marking(marking)
            assert len(cert.transversals) == len(marking.pairs)
            assert all(t.twist == 0 for t in cert.transversals)
            assert marking.projections() == (0,) * len(marking.pairs)


def test_broken_pattern_detected():
    a3, marking = marking_a3()
    pairs = list(marking.pairs)
    # replace the transversal of <s1> with a subgroup commuting with it
    pairs[0] = (pairs[0][0], std(a3, "s3"))
    with pytest.raises(TransversalityPatternBroken):
        validate_marking(Marking(a3, pairs))


def test_validation_preserved_under_conjugation():
    random.seed(31)
    a3, marking = marking_a3()
    for _ in range(5):
        word = tuple(
            (random.randrange(3), random.choice([1, -1]))
            for _ in range(random.randrange(0, 4))
        )
        moved = conjugate_marking(marking, a3.from_word(word))
        validate_marking(moved)


def test_transversal_decomposition_standard_and_twisted():
    a3, marking = marking_a3()
    ghat, _ = marking.base_simplex().canonical_data()
    assert ghat.is_identity
    data = transversal_decomposition(marking, 0, a3.identity)
    assert data.twist == 0 and data.subset == gens(a3, "s2", "s3")
    # replace Q_0 by its conjugate under Delta_{X_0}^2: twist becomes 2
    d = a3.delta_of(gens(a3, "s1")) ** 2
    pairs = list(marking.pairs)
    pairs[0] = (pairs[0][0], pairs[0][1].conjugated_by(d))
    twisted = Marking(a3, pairs)
    data2 = transversal_decomposition(twisted, 0, a3.identity)
    assert data2.twist == 2 and data2.subset == gens(a3, "s2", "s3")


def test_transversal_decomposition_unique_by_scan():
    # exhaustive scan confirms a single hit in a window
    a3, marking = marking_a3()
    p, q = marking.pairs[0]
    x = gens(a3, "s1")
    z_q = q.z_element()
    hits = []
    for k in range(-4, 5):
        cand = a3.delta_of(x) ** k
        conj = cand.inverse() * q.conj
        moved = q.conjugated_by(cand.inverse())
        c, y = moved.canonical()
        if c.is_identity:
            hits.append((k, y))
    assert hits == [(0, gens(a3, "s2", "s3"))]


def test_projection_shift_by_central_power():
    a3, marking = marking_a3()
    d = a3.delta_of(gens(a3, "s1"))
    for k in (-2, -1, 1, 3):
        pairs = list(marking.pairs)
        pairs[0] = (pairs[0][0], pairs[0][1].conjugated_by(d**k))
        shifted = Marking(a3, pairs)
        assert projection(shifted, 0) == k
        assert projection(shifted, 1) == 0


def test_projection_independent_of_standardizer():
    a3, marking = marking_a3()
    twisted = twist_move(marking, 0)
    for g in [a3.identity, a3.delta, a3.delta_of(gens(a3, "s1")) ** 2]:
        assert projection(twisted, 0, g) == 1


def test_twist_inverse_roundtrip_and_distinctness():
    _a3, marking = marking_a3()
    up = twist_move(marking, 0, 1)
    assert up != marking
    assert twist_move(up, 0, -1) == marking
    assert projection(up, 1) == projection(marking, 1)


def test_twist_shift_is_two_on_a2_type_vertex():
    a3 = context("A3")
    marking = standard_transversals(simplex_of(a3, ("s1",), ("s1", "s2")))
    j = next(
        i for i, (p, _q) in enumerate(marking.pairs) if p.gens == gens(a3, "s1", "s2")
    )
    up = twist_move(marking, j)
    assert projection(up, j) == 2
    j1 = next(
        i for i, (p, _q) in enumerate(marking.pairs) if p.gens == gens(a3, "s1")
    )
    assert projection(up, j1) == 0


def test_distinct_twists_lemma():
    # Delta_{X_j}^k Q Delta^-k = Q only for k = 0
    for spec in ["A2", "A3", "B3"]:
        ctx = context(spec)
        for simplex in enumerate_maximal_standard(ctx):
            marking = standard_transversals(simplex)
            for j, (p, q) in enumerate(marking.pairs):
                d = ctx.delta_of(p.gens)
                for k in range(-3, 4):
                    same = q.conjugated_by(d**k) == q
                    assert same == (k == 0)


def test_projection_not_absolutely_conjugation_invariant():
    # conjugating by z of the base IS the twist move, which shifts the
    # projection; only differences of projections are invariant
    a2 = context("A2")
    marking = standard_transversals(simplex_of(a2, ("s1",)))
    moved = conjugate_marking(marking, a2.atoms[0])
    assert moved == twist_move(marking, 0)
    assert projection(marking, 0) == 0
    assert projection(moved, 0) == 1


def test_projection_differences_conjugation_invariant():
    random.seed(41)
    a3, marking = marking_a3()
    other = twist_move(twist_move(marking, 0), 1, -1)
    base_diffs = [
        projection(other, i) - projection(marking, i) for i in range(2)
    ]
    for _ in range(5):
        word = tuple(
            (random.randrange(3), random.choice([1, -1]))
            for _ in range(random.randrange(0, 4))
        )
        x = a3.from_word(word)
        m1, m2 = conjugate_marking(marking, x), conjugate_marking(other, x)
        diffs = [projection(m2, i) - projection(m1, i) for i in range(2)]
        assert diffs == base_diffs


def test_enumerate_flip_moves_a3():
    a3, marking = marking_a3()
    flips = enumerate_flip_moves(marking, 0)
    assert flips
    for flip in flips:
        assert is_flip_edge(marking, flip) and is_flip_edge(flip, marking)
        swapped = flip.pairs[0]
        assert swapped[0] == marking.pairs[0][1]
        assert swapped[1] == marking.pairs[0][0]
    # flipping again across the same index restores the original base
    back = enumerate_flip_moves(flips[0], 0)
    base_key = marking.base_simplex().key()
    assert any(b.base_simplex().key() == base_key for b in back)


def test_flip_new_base_is_maximal():
    a3, marking = marking_a3()
    for flip in enumerate_flip_moves(marking, 1):
        from artinmark.simplex import is_maximal_standard

        ghat, data = flip.base_simplex().canonical_data()
        ok, _, _ = is_maximal_standard(data.subsets, a3)
        assert ok


def test_flip_count_bounds():
    for spec in ["A2", "A3", "B3"]:
        ctx = context(spec)
        n_parabs = len(
            [
                s
                for size in range(1, ctx.rank)
                for s in itertools.combinations(range(ctx.rank), size)
                if ctx.graph.is_connected(frozenset(s))
            ]
        )
        for simplex in enumerate_maximal_standard(ctx)[:2]:
            marking = standard_transversals(simplex)
            d = len(marking.pairs)
            for j in range(d):
                count = len(enumerate_flip_moves(marking, j))
                assert 1 <= count <= n_parabs ** max(d - 1, 1)


def exhaustive_flip_search(marking, j, twist_range=3):
    """Independent flip enumeration: every (exponent, subset) conjugate of a
    standard subgroup in the new base's canonical frame, filtered by the
    z-commutation pattern, the twist condition, and full validation."""
    ctx = marking.ctx
    pairs = marking.pairs
    p_j, q_j = pairs[j]
    h = shared_flip_standardizer(marking, j)
    new_base = [q_j if i == j else pairs[i][0] for i in range(len(pairs))]
    new_simplex = CparabSimplex(ctx, new_base)
    ghat2, std2 = new_simplex.canonical_data()
    keys2 = {v.key(): i for i, v in enumerate(new_simplex.vertices)}
    z_base = [b.z_element() for b in new_base]
    connected = [
        frozenset(s)
        for size in range(1, ctx.rank)
        for s in itertools.combinations(range(ctx.rank), size)
        if ctx.graph.is_connected(frozenset(s))
    ]
    options = {}
    for i in range(len(pairs)):
        if i == j:
            continue
        anchor = transversal_decomposition(marking, i, h).twist
        vertex = keys2[pairs[i][0].key()]
        x2 = std2.subsets[vertex]
        found = []
        for y in connected:
            for n in range(-twist_range, twist_range + 1):
                cand = ParabolicSubgroup(ctx, ghat2 * ctx.delta_of(x2) ** n, y)
                z_cand = cand.z_element()
                if not all(
                    z_cand.commutes_with(z_base[m]) == (m != i)
                    for m in range(len(pairs))
                ):
                    continue
                try:
                    twist = decompose_transversal(cand, pairs[i][0], h).twist
                except Exception:
                    continue
                if abs(twist - anchor) <= 1:
                    found.append(cand)
        options[i] = found
    results = set()
    indices = sorted(options)
    for combo in itertools.product(*(options[i] for i in indices)):
        new_pairs = list(pairs)
        new_pairs[j] = (q_j, p_j)
        for i, q in zip(indices, combo):
            new_pairs[i] = (pairs[i][0], q)
        candidate = Marking(ctx, new_pairs)
        try:
            candidate.certificate()
        except Exception:
            continue
        results.add(candidate.key())
    return results


@pytest.mark.parametrize("spec", ["A2", "A3", "B3", "D4"])
def test_flip_candidates_match_exhaustive_search(spec):
    ctx = context(spec)
    for simplex in enumerate_maximal_standard(ctx)[:3]:
        marking = standard_transversals(simplex)
        for j in range(len(marking.pairs)):
            ours = {m.key() for m in enumerate_flip_moves(marking, j)}
            exhaustive = exhaustive_flip_search(marking, j)
            assert ours == exhaustive, (spec, j)


def test_transversals_at_fixed_projection_bounded():
    # at most N transversals at any given projection value (bounded search)
    a3, marking = marking_a3()
    h = a3.identity
    connected = [
        frozenset(s)
        for size in range(1, 3)
        for s in itertools.combinations(range(3), size)
        if a3.graph.is_connected(frozenset(s))
    ]
    n_parabs = len(connected)
    p0 = marking.pairs[0][0]
    x0 = gens(a3, "s1")
    for value in range(-2, 3):
        found = set()
        for y in connected:
            cand = ParabolicSubgroup(a3, a3.delta_of(x0) ** value, y)
            pairs = list(marking.pairs)
            pairs[0] = (p0, cand)
            try:
                candidate = Marking(a3, pairs)
                candidate.certificate()
            except Exception:
                continue
            if projection(candidate, 0) == value:
                found.add(cand.key())
        assert len(found) <= n_parabs


def test_standardize_marking_trivial():
    _a3, marking = marking_a3()
    conj, standard = standardize_marking(marking)
    assert conj.is_identity and standard == marking


def test_standardize_marking_roundtrip_random():
    random.seed(53)
    for spec in ["A3", "B3"]:
        ctx = context(spec)
        simplex = enumerate_maximal_standard(ctx)[0]
        marking = standard_transversals(simplex)
        for _ in range(4):
            word = tuple(
                (random.randrange(ctx.rank), random.choice([1, -1]))
                for _ in range(random.randrange(0, 4))
            )
            x = ctx.from_word(word)
            moved = conjugate_marking(twist_move(marking, 0), x)
            conj, standard = standardize_marking(moved)
            assert standard.all_standard()
            assert conjugate_marking(standard, conj) == moved
            assert standard.projections() == (0,) * len(standard.pairs)


def test_stabilizer_probe_a2():
    a2 = context("A2")
    marking = standard_transversals(
        CparabSimplex(a2, [ParabolicSubgroup.standard(a2, frozenset({0}))])
    )
    hits = marking_stabilizer_probe(marking, 4, 2)
    assert hits
    for hit in hits:
        assert hit.canonical_length == 0  # a power of Delta
    assert a2.delta**2 in hits
    assert a2.atoms[0] not in hits
    # s1 does not stabilize: s1 <s2> s1^-1 != <s2>
    assert conjugate_marking(marking, a2.atoms[0]) != marking


def test_twist_edges_conjugate_to_twist_edges():
    random.seed(61)
    for spec in ["A2", "A3", "B3"]:
        ctx = context(spec)
        marking = standard_transversals(enumerate_maximal_standard(ctx)[0])
        twisted = twist_move(marking, 0)
        assert is_twist_edge(marking, twisted)
        for _ in range(5):
            word = tuple(
                (random.randrange(ctx.rank), random.choice([1, -1]))
                for _ in range(random.randrange(0, 4))
            )
            x = ctx.from_word(word)
            assert is_twist_edge(
                conjugate_marking(marking, x), conjugate_marking(twisted, x)
            )


def test_flip_edges_conjugate_to_flip_edges():
    random.seed(67)
    a3, marking = marking_a3()
    flip = enumerate_flip_moves(marking, 0)[0]
    for _ in range(5):
        word = tuple(
            (random.randrange(3), random.choice([1, -1]))
            for _ in range(random.randrange(0, 4))
        )
        x = a3.from_word(word)
        assert is_flip_edge(conjugate_marking(marking, x), conjugate_marking(flip, x))


def test_transversal_swap_path_trivial():
    _a3, marking = marking_a3()
    assert transversal_swap_path(marking, marking) == [marking]


def test_transversal_swap_path_twisted_target():
    _a3, marking = marking_a3()
    target = twist_move(marking, 0)
    path = transversal_swap_path(marking, target)
    assert path[0] == marking and path[-1] == target
    assert len(path) <= 5
    for a, b in zip(path, path[1:]):
        assert is_flip_edge(a, b) or is_twist_edge(a, b)


def test_transversal_swap_path_double_twist():
    _a3, marking = marking_a3()
    target = twist_move(twist_move(marking, 0), 1, -1)
    path = transversal_swap_path(marking, target)
    assert path[0] == marking and path[-1] == target and len(path) <= 5
    for a, b in zip(path, path[1:]):
        assert is_flip_edge(a, b) or is_twist_edge(a, b)


def test_transversal_swap_path_preconditions():
    a3, marking = marking_a3()
    d = a3.delta_of(gens(a3, "s1")) ** 2
    pairs = list(marking.pairs)
    pairs[0] = (pairs[0][0], pairs[0][1].conjugated_by(d))
    far = Marking(a3, pairs)
    with pytest.raises(PreconditionViolated):
        transversal_swap_path(marking, far)


def test_single_pair_swap_path_is_twist():
    a2 = context("A2")
    marking = standard_transversals(
        CparabSimplex(a2, [ParabolicSubgroup.standard(a2, frozenset({0}))])
    )
    target = twist_move(marking, 0)
    path = transversal_swap_path(marking, target)
    assert len(path) == 2 and is_twist_edge(path[0], path[1])


def test_marking_json_roundtrip():
    a3, marking = marking_a3()
    moved = conjugate_marking(marking, normalize(a3, "s2 s1^-1"))
    assert Marking.from_json(a3, moved.to_json()) == moved


def test_marking_equality_ignores_pair_order():
    a3, marking = marking_a3()
    reversed_pairs = Marking(a3, list(marking.pairs)[::-1])
    assert reversed_pairs == marking


def test_flip_example_base_and_pair_content():
    # flipping across the <s1> pair yields a marking based on {<s2,s3>, <s3>}
    # whose flipped pair is (<s2,s3>, <s1>)
    a3, marking = marking_a3()
    j = next(
        i for i, (p, _q) in enumerate(marking.pairs) if p.gens == gens(a3, "s1")
    )
    flips = enumerate_flip_moves(marking, j)
    for flip in flips:
        bases = {tuple(sorted(p.canonical()[1])) for p, _ in flip.pairs}
        assert bases == {(1, 2), (2,)}
        assert flip.pairs[j][0].gens == gens(a3, "s2", "s3")
        assert flip.pairs[j][1].gens == gens(a3, "s1")


def test_flip_and_swap_soak_on_moved_markings():
    # flips and bounded swap paths on twisted and conjugated markings
    random.seed(137)
    for spec in ["A3", "B3"]:
        ctx = context(spec)
        base_markings = [
            standard_transversals(s) for s in enumerate_maximal_standard(ctx)
        ]
        for _ in range(12):
            marking = random.choice(base_markings)
            for _ in range(random.randrange(0, 3)):
                marking = twist_move(
                    marking, random.randrange(len(marking)), random.choice([1, -1])
                )
            word = tuple(
                (random.randrange(ctx.rank), random.choice([1, -1]))
                for _ in range(random.randrange(0, 3))
            )
            marking = conjugate_marking(marking, ctx.from_word(word))
            marking.certificate()
            j = random.randrange(len(marking))
            flips = enumerate_flip_moves(marking, j)
            assert flips
            for flip in flips[:2]:
                assert is_flip_edge(marking, flip) and is_flip_edge(flip, marking)
    a3, seed = marking_a3()
    for _ in range(10):
        m1 = seed
        for _ in range(random.randrange(0, 3)):
            m1 = twist_move(m1, random.randrange(2), random.choice([1, -1]))
        m2 = m1
        for j in range(2):
            step = random.choice([-1, 0, 1])
            if step:
                m2 = twist_move(m2, j, step)
        x = a3.from_word(
            tuple(
                (random.randrange(3), random.choice([1, -1]))
                for _ in range(random.randrange(0, 3))
            )
        )
        m1c, m2c = conjugate_marking(m1, x), conjugate_marking(m2, x)
        path = transversal_swap_path(m1c, m2c)
        assert path[0] == m1c and path[-1] == m2c and len(path) <= 5
        for a, b in zip(path, path[1:]):
            assert is_flip_edge(a, b) or is_twist_edge(a, b)


def test_d4_three_maximal_components():
    # three singleton maximal bases; each transversal contains the other two
    d4 = context("D4")
    tri = next(
        s
        for s in enumerate_maximal_standard(d4)
        if len(s) == 3 and all(len(v.gens) == 1 for v in s.vertices)
    )
    marking = standard_transversals(tri)
    marking.certificate()
    assert marking.projections() == (0, 0, 0)
    for j, (p, q) in enumerate(marking.pairs):
        for k, (pk, _qk) in enumerate(marking.pairs):
            if k != j:
                assert q.contains(pk)
    flips = enumerate_flip_moves(marking, 0)
    assert flips and all(is_flip_edge(marking, f) for f in flips)
    path = transversal_swap_path(marking, twist_move(marking, 1))
    assert len(path) <= 5


def test_h3_and_e6_recipe_markings():
    h3 = context("H3")
    for simplex in enumerate_maximal_standard(h3):
        marking = standard_transversals(simplex)
        marking.certificate()
        assert marking.projections() == (0,) * len(marking.pairs)
    e6 = context("E6")
    pi = CparabSimplex(
        e6,
        [
            ParabolicSubgroup.standard(e6, frozenset(s))
            for s in [{0}, {0, 1}, {3}, {4, 5}, {5}]
        ],
    )
    marking = standard_transversals(pi)
    marking.certificate()
    j = next(i for i, (p, _q) in enumerate(marking.pairs) if p.gens == frozenset({3}))
    flips = enumerate_flip_moves(marking, j)
    assert flips and all(is_flip_edge(marking, f) for f in flips)
