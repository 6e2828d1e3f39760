from __future__ import annotations

import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from clusterfold.charfun import (
    catalog_char,
    character_of,
    character_table,
    cluster_char,
    count_comp_series,
    euler_char,
    match_minor,
    point_count_polynomial,
    verify_exchange,
    verify_minor_identity,
    verify_multiplicativity,
)
from clusterfold.coordring import D
from clusterfold.exactalg import GF, MultiPoly
from clusterfold.repcore import ARROWS, CATALOG_IDS, CATALOG_MINORS, catalog_rep, catalog_sum, direct_sum, zero_rep
from clusterfold.rigidmut import T0, exchange_graph, mutate

t = {f"t{k}": MultiPoly.var(f"t{k}") for k in range(1, 7)}
C = {c: catalog_rep(c) for c in CATALOG_IDS}


# -- brute-force oracle: enumerate every graded subspace, keep subreps, count maximal chains


def _subspaces(d, p):
    vecs = list(itertools.product(range(p), repeat=d))
    seen = set()
    for k in range(d + 1):
        for gens in itertools.combinations(vecs, k):
            span = {tuple(sum(c * g[i] for c, g in zip(cs, gens)) % p for i in range(d))
                    for cs in itertools.product(range(p), repeat=k)}
            seen.add(frozenset(span))
    return seen


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _apply(m, v, p):
    return tuple(sum(int(m[i, j].r) * v[j] for j in range(m.cols)) % p for i in range(m.rows))


def brute_force_types(x, p):
    """Counter of composition-series types of x over F_p, by exhaustive search."""
    xp = x.reduce(GF(p))
    subs = []
    for u in itertools.product(*(_subspaces(d, p) for d in x.dim)):
        if all(_apply(xp.arrow(name), v, p) in u[t - 1] for name, s, t in ARROWS for v in u[s - 1]):
            subs.append(u)
    dims = {u: tuple(_log(len(c), p) for c in u) for u in subs}
    out = Counter()

    def walk(u, typ):
        if dims[u] == x.dim:
            out[typ] += 1
            return
        for w in subs:
            diff = [b - a for a, b in zip(dims[u], dims[w])]
            if sum(diff) == 1 and min(diff) == 0 and all(a <= b for a, b in zip(u, w)):
                walk(w, typ + (diff.index(1) + 1,))

    walk(next(u for u in subs if dims[u] == (0, 0, 0)), ())
    return out


@pytest.mark.parametrize("cid", ["P2", "SOC2", "TOP2", "U12", "P1"])
@pytest.mark.parametrize("p", [2, 3])
def test_counts_match_brute_force(cid, p):
    x = C[cid]
    oracle = brute_force_types(x, p)
    xp = x.reduce(GF(p))
    word = [v for v in (1, 2, 3) for _ in range(x.dim[v - 1])]
    for typ in set(itertools.permutations(word)):
        assert count_comp_series(xp, typ) == oracle.get(typ, 0), typ


def test_counts_match_brute_force_on_a_sum():
    x = direct_sum([C["S1"], C["S1"], C["S2"]])
    oracle = brute_force_types(x, 2)
    xp = x.reduce(GF(2))
    assert count_comp_series(xp, (1, 1, 2)) == oracle[(1, 1, 2)] == 3
    assert sum(oracle.values()) == sum(count_comp_series(xp, typ) for typ in set(itertools.permutations((1, 1, 2))))


def test_count_examples():
    assert count_comp_series(C["S1"].reduce(GF(2)), "1") == 1
    assert count_comp_series(C["P2"].reduce(GF(2)), "2132") == 1
    assert count_comp_series(C["P2"].reduce(GF(2)), "1232") == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_p2_has_one_series_of_each_type(p):
    xp = C["P2"].reduce(GF(p))
    assert count_comp_series(xp, "2132") == 1
    assert count_comp_series(xp, "2312") == 1


def test_euler_char_examples():
    assert euler_char(C["S1"], "1") == 1
    assert euler_char(C["P2"], "2312") == 1
    assert euler_char(C["S2"], "1") == 0


def test_point_count_of_semisimple_sum_is_projective_line():
    x = direct_sum([C["S1"], C["S1"]])
    assert str(point_count_polynomial(x, "11")) == "q + 1"
    assert euler_char(x, "11") == 2


def test_euler_char_independent_of_primes():
    for cid in ("SOC2", "P2", "U32"):
        x = C[cid]
        for typ in set(itertools.permutations([v for v in (1, 2, 3) for _ in range(x.dim[v - 1])])):
            assert euler_char(x, typ, (2, 3, 5, 7, 11, 13)) == euler_char(x, typ, (17, 19, 23, 29, 31, 37))


def test_character_examples():
    assert cluster_char(C["S1"], "213213").poly == t["t2"] + t["t5"]
    assert cluster_char(C["P2"], "213213").poly == t["t1"] * t["t2"] * t["t3"] * t["t4"]
    assert cluster_char(zero_rep(), "213213").poly == 1


def test_match_minor_examples():
    assert match_minor(C["U21"], "213213") == D(1, 3)
    assert match_minor(C["P1"], "213213") == D(123, 234)
    assert match_minor(C["TOP2"], "213213") == D(13, 34)


@pytest.mark.parametrize("word", ["213213", "121321"])
def test_character_table(word):
    table = character_table(word)
    assert {cid: str(m) for cid, _, m in table} == CATALOG_MINORS


def test_coefficients_are_nonnegative_integers():
    for cid in CATALOG_IDS:
        for w in ("213213", "121321"):
            assert all(isinstance(c, int) and c > 0 for _, c in catalog_char(cid, w).poly.terms)


def test_multiplicativity_examples():
    assert verify_multiplicativity(C["S1"], C["P2"])
    assert cluster_char(direct_sum([C["S1"], C["P2"]]), "213213").poly == (t["t2"] + t["t5"]) * t["t1"] * t["t2"] * t["t3"] * t["t4"]
    assert verify_multiplicativity(zero_rep(), C["TOP2"])
    assert cluster_char(direct_sum([C["S1"], C["S1"]]), "213213").poly == (t["t2"] + t["t5"]) ** 2


def test_exchange_examples():
    assert verify_exchange(mutate(T0, "U32"))
    assert verify_exchange(mutate(mutate(T0, "U32").result, "SOC2"))


@pytest.mark.parametrize("word", ["213213", "121321"])
def test_all_exchange_relations(word):
    for e in exchange_graph(T0).edges:
        assert verify_exchange(e, word), e.pair
        assert verify_minor_identity(e), e.pair


def test_character_is_iso_invariant():
    from clusterfold.folding import g_act

    # g(g(P2)) is P2 itself; g(P2) is P2 with re-signed matrices
    assert cluster_char(g_act(C["P2"]), "213213").poly == catalog_char("P2").poly


@settings(max_examples=15)
@given(st.lists(st.sampled_from(["S1", "S2", "S3", "U12", "U21", "U23", "U32"]), min_size=1, max_size=2))
def test_character_of_sum_matches_direct_computation(ids):
    x = catalog_sum(ids)
    assert cluster_char(x, "213213").poly == character_of(x, "213213")
