import itertools

import pytest

from artinmark.coxeter import (
    ArtinType,
    build_defining_graph,
    cox_support,
    descents,
    longest_element,
    root_reflection_table,
)
from artinmark.errors import Disconnected, UnsupportedType

from oracles import all_w


def test_type_parsing_roundtrip():
    for spec in ["A1", "A5", "B3", "D4", "E8", "F4", "H4", "I2(7)"]:
        assert str(ArtinType.parse(spec)) == spec


@pytest.mark.parametrize("bad", ["A0", "B1", "D3", "E9", "F5", "H5", "I2(2)", "C3", "foo"])
def test_unsupported_types(bad):
    with pytest.raises(UnsupportedType):
        ArtinType.parse(bad)


def test_a2_graph_is_braid_path():
    g = build_defining_graph("A2")
    assert g.label(0, 1) == 3


def test_b3_graph_labels():
    g = build_defining_graph("B3")
    assert g.label(0, 1) == 4
    assert g.label(1, 2) == 3
    assert g.label(0, 2) == 2


def test_i2_4_label():
    g = build_defining_graph("I2(4)")
    assert g.label(0, 1) == 4


@pytest.mark.parametrize(
    "spec,count",
    [
        ("A1", 2),
        ("A2", 6),
        ("A3", 12),
        ("A4", 20),
        ("B2", 8),
        ("B3", 18),
        ("D4", 24),
        ("E6", 72),
        ("E7", 126),
        ("E8", 240),
        ("F4", 48),
        ("H3", 30),
        ("H4", 120),
        ("I2(5)", 10),
        ("I2(6)", 12),
        ("I2(7)", 14),
        ("I2(8)", 16),
    ],
)
def test_root_counts(spec, count):
    assert len(root_reflection_table(spec).roots) == count


def test_a1_roots_are_plus_minus_alpha():
    rs = root_reflection_table("A1")
    assert len(rs.roots) == 2
    assert sorted(rs.is_positive_root) == [False, True]


def test_reflections_are_involutions():
    for spec in ["A3", "B3", "H3", "I2(7)"]:
        rs = root_reflection_table(spec)
        for g in rs.generators:
            assert g * g == rs.identity
            assert g.length == 1


def test_each_generator_negates_one_positive_root():
    rs = root_reflection_table("B3")
    for i, g in enumerate(rs.generators):
        flipped = [
            j
            for j in rs.positive_indices
            if not rs.is_positive_root[g.perm[j]]
        ]
        assert flipped == [rs.simple_index[i]]


@pytest.mark.parametrize(
    "spec,order",
    [
        ("A1", 2),
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("B2", 8),
        ("B3", 48),
        ("D4", 192),
        ("H3", 120),
        ("I2(5)", 10),
        ("I2(6)", 12),
        ("I2(7)", 14),
        ("I2(8)", 16),
    ],
)
def test_group_orders_by_orbit_enumeration(spec, order):
    assert len(all_w(spec)) == order


@pytest.mark.parametrize("spec", ["A2", "A3", "B3", "I2(5)"])
def test_length_subadditive(spec):
    elements = all_w(spec)
    for a, b in itertools.product(elements, repeat=2):
        prod = a * b
        assert prod.length <= a.length + b.length
        assert (prod.length - a.length - b.length) % 2 == 0
        # a shared descent across the junction forces strict inequality
        if a.right_descents() & b.left_descents():
            assert prod.length < a.length + b.length
        # reduced products concatenate reduced words
        if prod.length == a.length + b.length:
            assert prod == a * b and len(a.reduced_word() + b.reduced_word()) == prod.length


def test_length_inverse_invariant():
    for w in all_w("B3"):
        assert w.length == w.inverse().length


def test_descents_examples():
    rs = root_reflection_table("A2")
    s1, s2 = rs.generators
    assert descents(rs.identity, "left") == frozenset()
    w0 = longest_element(rs, frozenset({0, 1}))
    assert descents(w0, "left") == descents(w0, "right") == frozenset({0, 1})
    w = s1 * s2
    assert descents(w, "left") == frozenset({0})
    assert descents(w, "right") == frozenset({1})


def test_longest_element_examples():
    rs = root_reflection_table("A2")
    w0 = longest_element(rs, frozenset({0, 1}))
    assert w0.length == 3
    assert w0 == rs.generators[0] * rs.generators[1] * rs.generators[0]
    rs3 = root_reflection_table("A3")
    w13 = longest_element(rs3, frozenset({0, 2}))
    assert w13.length == 2
    assert w13 == rs3.generators[0] * rs3.generators[2]
    assert longest_element(rs3, frozenset()) == rs3.identity
    # idempotent under repetition
    assert longest_element(rs3, frozenset({0, 2})) is w13


@pytest.mark.parametrize("spec", ["A4", "B4", "D4", "F4", "H3", "I2(6)"])
def test_longest_element_conjugation_permutes_subset(spec):
    rs = root_reflection_table(spec)
    n = rs.graph.rank
    for size in range(1, n + 1):
        for subset in map(frozenset, itertools.combinations(range(n), size)):
            w0x = longest_element(rs, subset)
            for s in subset:
                image = rs.generator_of(w0x * rs.generators[s] * w0x.inverse())
                assert image is not None and image in subset


def test_cox_support():
    rs = root_reflection_table("A3")
    assert cox_support(rs.identity) == frozenset()
    w0 = longest_element(rs, frozenset({0, 1, 2}))
    assert cox_support(w0) == frozenset({0, 1, 2})
    assert cox_support(rs.generators[0] * rs.generators[2]) == frozenset({0, 2})


def test_classify_induced_subgraphs():
    g = build_defining_graph("E8")
    assert str(g.classify(frozenset(range(6)))) == "E6"
    assert str(g.classify(frozenset(range(7)))) == "E7"
    assert str(g.classify(frozenset({0, 1, 2, 3, 4}))) == "D5"
    assert str(g.classify(frozenset({2, 3, 4, 5, 6, 7}))) == "A6"
    assert str(g.classify(frozenset({0, 1, 2, 4, 5, 6, 7}))) == "A7"
    b4 = build_defining_graph("B4")
    assert str(b4.classify(frozenset({0, 1}))) == "B2"
    assert str(b4.classify(frozenset({1, 2, 3}))) == "A3"
    f4 = build_defining_graph("F4")
    assert str(f4.classify(frozenset({0, 1, 2, 3}))) == "F4"
    assert str(f4.classify(frozenset({1, 2}))) == "B2"
    h4 = build_defining_graph("H4")
    assert str(h4.classify(frozenset({0, 1, 2}))) == "H3"
    with pytest.raises(Disconnected):
        build_defining_graph("A3").classify(frozenset({0, 2}))


def test_components():
    g = build_defining_graph("E6")
    comps = g.components(frozenset({0, 1, 3}))
    assert sorted(map(sorted, comps)) == [[0, 1], [3]]
    assert g.components(frozenset()) == []
