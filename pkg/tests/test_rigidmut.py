from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, strategies as st

from clusterfold.repcore import CATALOG_MINORS, catalog_rep, decompose, ext1_dim
from clusterfold.rigidmut import (
    T0,
    RigidObject,
    enumerate_maximal_rigid,
    exchange_graph,
    graph_json,
    is_basic_maximal_rigid,
    is_left_approximation,
    is_minimal,
    is_right_approximation,
    is_rigid,
    left_approximation,
    mutate,
)

P = ("P1", "P2", "P3")

# The 14 clusters of minors of C[N] in type A3, coefficients D[1][4], D[12][34],
# D[123][234] omitted; each catalog module corresponds to one minor.
KNOWN_CLUSTERS = {
    frozenset(c) for c in [
        ("D[12][24]", "D[2][4]", "D[3][4]"),
        ("D[12][24]", "D[2][4]", "D[12][23]"), ("D[12][24]", "D[1][2]", "D[3][4]"),
        ("D[23][34]", "D[2][4]", "D[3][4]"),
        ("D[13][34]", "D[1][2]", "D[3][4]"), ("D[13][34]", "D[23][34]", "D[3][4]"),
        ("D[23][34]", "D[2][4]", "D[2][3]"), ("D[12][23]", "D[2][4]", "D[2][3]"),
        ("D[12][24]", "D[1][2]", "D[12][23]"),
        ("D[13][34]", "D[1][2]", "D[1][3]"), ("D[13][34]", "D[23][34]", "D[1][3]"),
        ("D[23][34]", "D[2][3]", "D[1][3]"), ("D[12][23]", "D[2][3]", "D[1][3]"),
        ("D[12][23]", "D[1][2]", "D[1][3]"),
    ]
}


def test_rigidity_examples():
    assert is_basic_maximal_rigid(["SOC2", "U32", "U12", *P])
    assert is_basic_maximal_rigid(["S1", "S3", "TOP2", *P])
    # U12 and U21 do not extend each other: {D[12][23], D[2][3], D[1][3]} is a cluster
    assert is_basic_maximal_rigid(["U12", "U21", "S2", *P])
    assert ext1_dim(catalog_rep("U12"), catalog_rep("U21")) == 0
    assert not is_basic_maximal_rigid(["U12", "U23", "S2", *P])
    assert not is_basic_maximal_rigid(["SOC2", "U32", *P])
    assert is_rigid(catalog_rep("S1"))


def test_rigid_object_parse():
    assert RigidObject.parse("SOC2, U32, U12") == T0
    assert RigidObject.parse("SOC2+U32+U12+P1+P2+P3") == T0
    assert T0.label() == "SOC2 + U12 + U32"
    with pytest.raises(ValueError):
        RigidObject.parse("S1,S2,S3")


def test_left_approximation_examples():
    rest = T0.without("U32")
    a = left_approximation(catalog_rep("U32"), rest)
    assert a.summands == ("SOC2",)
    assert a.map.is_injective()
    z = left_approximation(catalog_rep("S2"), ["S1"])
    assert z.summands == () and z.map.target.total_dim == 0
    s = left_approximation(catalog_rep("S1"), ["S1"])
    assert s.summands == ("S1",) and s.map.is_invertible()


def test_right_approximation_examples():
    a = right_approximation_of("U32", T0.without("U32"))
    assert a.summands == ("P3",) and a.map.is_surjective()
    from clusterfold.rigidmut import right_approximation

    z = right_approximation(catalog_rep("S1"), ["S2"])
    assert z.summands == () and z.map.is_zero()
    mu2 = mutate(T0, "U32").result
    b = right_approximation(catalog_rep("SOC2"), mu2.without("SOC2"))
    assert sorted(b.summands) == ["P3", "U12"]


def right_approximation_of(cid, rest):
    from clusterfold.rigidmut import right_approximation

    return right_approximation(catalog_rep(cid), rest)


def test_mutation_example():
    m1 = mutate(T0, "U32")
    assert m1.result == RigidObject.of(["SOC2", "S1", "U12", *P])
    assert m1.forward.middle == ("SOC2",)
    assert m1.backward.middle == ("P3",)
    assert m1.forward.is_exact() and m1.backward.is_exact()
    assert not m1.forward.splits() and not m1.backward.splits()
    m2 = mutate(m1.result, "SOC2")
    assert m2.result == RigidObject.of(["U21", "S1", "U12", *P])
    assert decompose(m2.forward.left.target) == ("S1", "P2")
    assert decompose(m2.backward.left.target) == ("U12", "P3")
    assert mutate(m1.result, "S1").result == T0


def test_mutate_rejects_projective_slot():
    with pytest.raises(ValueError):
        mutate(T0, "P2")
    with pytest.raises(ValueError):
        mutate(T0, "S1")


def test_exchange_graph_matches_known_clusters():
    g = exchange_graph(T0)
    assert len(g.vertices) == 14
    assert len(g.edges) == 21
    assert T0 in g.vertices
    assert all(g.degree(v) == 3 for v in g.vertices)
    clusters = {frozenset(CATALOG_MINORS[c] for c in v.nonprojective) for v in g.vertices}
    assert clusters == KNOWN_CLUSTERS


def test_edges_differ_in_one_summand():
    g = exchange_graph(T0)
    for e in g.edges:
        assert len(set(e.a.summands) ^ set(e.b.summands)) == 2
    # the edge set is forced: two clusters are adjacent iff they share two non-projective summands
    pairs = {frozenset((a, b)) for a, b in itertools.combinations(g.vertices, 2)
             if len(set(a.nonprojective) & set(b.nonprojective)) == 2}
    assert pairs == {frozenset((e.a, e.b)) for e in g.edges}


def test_brute_force_enumeration():
    objs = enumerate_maximal_rigid()
    assert len(objs) == 14
    assert objs == set(exchange_graph(T0).vertices)
    assert all(is_basic_maximal_rigid(o.summands) for o in objs)


def test_involutive_everywhere_and_middle_terms_disjoint():
    g = exchange_graph(T0)
    count = 0
    for v in g.vertices:
        for s in v.nonprojective:
            mu = mutate(v, s)
            assert mutate(mu.result, mu.added).result == v
            assert not set(mu.forward.middle) & set(mu.backward.middle)
            count += 1
    assert count == 42


def test_approximation_certificates_on_all_edges():
    for e in exchange_graph(T0).edges:
        mu = e.mutation
        rest = mu.source.without(mu.removed)
        x = catalog_rep(mu.removed)
        left = left_approximation(x, rest)
        assert is_left_approximation(left.map, rest)
        assert is_minimal(left, rest, left=True)
        assert is_right_approximation(mu.forward.right, rest)


def test_graph_json_is_sorted_and_stable():
    text = graph_json(exchange_graph(T0))
    assert text == graph_json(exchange_graph(T0))
    data = json.loads(text)
    assert len(data["vertices"]) == 14 and len(data["edges"]) == 21
    assert list(data["edges"][0]) == sorted(data["edges"][0])


def test_dot_labels_use_nonprojective_ids():
    dot = exchange_graph(T0).to_dot()
    assert "P1" not in dot
    assert dot.count("--") == 21


@given(st.sampled_from(sorted(enumerate_maximal_rigid())), st.integers(0, 2))
def test_mutation_keeps_maximal_rigidity(obj, k):
    mu = mutate(obj, obj.nonprojective[k])
    assert is_basic_maximal_rigid(mu.result.summands)
    assert ext1_dim(catalog_rep(mu.removed), catalog_rep(mu.added)) == 1
