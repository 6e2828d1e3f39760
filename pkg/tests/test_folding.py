from __future__ import annotations

import pytest

from clusterfold.coordring import D, generic_matrix, minor
from clusterfold.exactalg import MultiPoly
from clusterfold.folding import (
    G,
    PSI,
    FoldingError,
    check_pi_projection,
    folded_mutate,
    g_act,
    g_on_catalog,
    g_on_matrix,
    hexagon_cluster_polys,
    hexagon_clusters,
    hexagon_dot,
    is_stable,
    pi_project,
    projected_character,
    projected_minor,
    slots,
    stable_exchange_graph,
)
from clusterfold.repcore import CATALOG_IDS, catalog_rep, decompose, is_iso, relation_values, validate
from clusterfold.rigidmut import T0, RigidObject, exchange_graph, mutate

a = {n: MultiPoly.var(n) for n in ("a12", "a13", "a14", "a23", "a24", "a34")}


def test_group_action_constants():
    assert G.vertex(1) == 3 and G.vertex(2) == 2
    assert G.arrow("alpha*") == "beta*"
    assert PSI == ((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0))


def test_g_act_examples():
    assert decompose(g_act(catalog_rep("S1"))) == ("S3",)
    assert is_iso(g_act(catalog_rep("S2")), catalog_rep("S2"))
    assert is_iso(g_act(catalog_rep("U12")), catalog_rep("U32"))


def test_g_permutes_relations():
    # the vertex-2 relation is fixed, the other two are swapped
    for cid in CATALOG_IDS:
        x = catalog_rep(cid)
        r, s = relation_values(x), relation_values(g_act(x))
        assert r[0] == s[2] and r[2] == s[0] and r[1] == s[1]


def test_g_is_an_involution_up_to_iso():
    for cid in CATALOG_IDS:
        x = catalog_rep(cid)
        assert validate(g_act(x))
        assert is_iso(g_act(g_act(x)), x)
        assert g_on_catalog(g_on_catalog(cid)) == cid
    assert [g_on_catalog(c) for c in ("P1", "P2", "P3", "TOP2", "SOC2")] == ["P3", "P2", "P1", "TOP2", "SOC2"]


def test_is_stable_examples():
    assert is_stable(T0)
    assert is_stable(RigidObject.parse("TOP2,S1,S3"))
    assert not is_stable(mutate(T0, "U32").result)


def test_folded_mutation():
    fixed, pair = slots(T0)
    assert fixed == "SOC2" and set(pair) == {"U12", "U32"}
    once = folded_mutate(T0, 1)
    assert is_stable(once)
    assert folded_mutate(once, 1) == T0
    assert folded_mutate(folded_mutate(T0, 2), 2) == T0
    with pytest.raises(FoldingError):
        folded_mutate(mutate(T0, "U32").result, 1)
    with pytest.raises(ValueError):
        folded_mutate(T0, 3)


def test_stable_graph():
    g = stable_exchange_graph()
    assert len(g.vertices) == 6
    assert all(g.degree(v) == 2 for v in g.vertices)
    assert g.is_single_cycle()
    assert set(g.vertices) == {v for v in exchange_graph().vertices if is_stable(v)}
    for v in g.vertices:
        for k in (1, 2):
            assert folded_mutate(folded_mutate(v, k), k) == v


def test_pi_examples():
    gm = generic_matrix()
    assert pi_project(minor(gm, D(12, 23))) == a["a12"] * a["a23"] - a["a13"]
    assert pi_project(minor(gm, D(2, 4))) == a["a12"] * a["a23"] - a["a13"]
    assert pi_project(minor(gm, D(1, 2))) == pi_project(minor(gm, D(3, 4))) == a["a12"]
    assert projected_minor(D(1, 4)) == projected_minor(D(123, 234))
    assert projected_minor(D(23, 34)) == projected_minor(D(1, 3))
    with pytest.raises(ValueError):
        pi_project(MultiPoly.var("t1"))


def test_pi_lands_in_fixed_points():
    assert check_pi_projection()
    m = generic_matrix().substitute({"a34": a["a12"], "a24": a["a12"] * a["a23"] - a["a13"]})
    assert g_on_matrix(m) == m
    # the generic matrix itself is not fixed
    assert g_on_matrix(generic_matrix()) != generic_matrix()


def test_g_on_matrix_is_an_involution():
    gm = generic_matrix()
    assert g_on_matrix(g_on_matrix(gm)) == gm


def test_characters_constant_on_orbits():
    for cid in CATALOG_IDS:
        assert projected_character(cid) == projected_character(g_on_catalog(cid))
        assert projected_character(cid, "121321") == projected_character(cid)


def test_hexagon_matches_cluster_list():
    expected = [
        ((13, 34), (23, 34)), ((13, 34), (1, 2)), ((12, 24), (1, 2)),
        ((12, 24), (2, 4)), ((2, 3), (2, 4)), ((2, 3), (23, 34)),
    ]
    want = {frozenset(projected_minor(D(*s)) for s in pair) for pair in expected}
    got = hexagon_cluster_polys()
    assert all(len(c) == 2 for c in got)
    assert set(got) == want
    labels = {(f, pair) for f, pair in hexagon_clusters()}
    assert ("D[13][34]", "D[1][3] = D[23][34]") in labels


def test_hexagon_dot():
    dot = hexagon_dot()
    assert dot.count("--") == 6
    assert dot.count("mu1") == 3 and dot.count("mu2") == 3
