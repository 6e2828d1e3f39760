"""Cluster characters from Euler characteristics of composition-series varieties.

Euler characteristics are obtained by counting F_q-points of the variety of
composition series for several primes q, fitting a polynomial in q and
evaluating it at q = 1. Extra primes beyond those needed for the fit act as
a certificate that the count really is polynomial.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coordring import NONTRIVIAL_MINORS, MinorSpec, check_identity, minor, parse_word, validate_word, word_matrix
from .exactalg import GF, QQ, Mat, MultiPoly, PrimeField, T_VARS, poly_interpolate_q, primes_from
from .repcore import ARROWS, CATALOG_IDS, CATALOG_MINORS, Rep, catalog_rep, decompose, direct_sum

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)
MIN_SURPLUS = 2

_OUT_ARROWS = {v: [(name, t) for name, s, t in ARROWS if s == v] for v in (1, 2, 3)}


class EulerCharacteristicError(ArithmeticError):
    """Point counts are not fitted by a polynomial, or the fit is not integral."""


class CharacterError(ArithmeticError):
    pass


def _canon(basis: Mat) -> tuple:
    r, piv = basis.transpose().rref()
    return tuple(x.r for x in r.entries[: len(piv) * r.cols])


def _projective_points(m: int, field: PrimeField):
    """Normalized coordinate vectors (first nonzero entry 1) of P^{m-1}(F_q)."""
    q = field.p
    for lead in range(m):
        for tail in itertools.product(range(q), repeat=m - lead - 1):
            yield [0] * lead + [1] + list(tail)


def count_comp_series(x: Rep, word: Sequence[int] | str) -> int:
    """Number of chains 0 = X_0 < ... < X_n = X of submodules with X_k / X_{k-1} = S_{word[k]}."""
    word = parse_word(word) if isinstance(word, str) else tuple(word)
    field = x.field
    if not isinstance(field, PrimeField):
        raise TypeError("point counting needs a module over a prime field")
    if tuple(word.count(v) for v in (1, 2, 3)) != x.dim:
        return 0
    memo: dict = {}

    def rec(k: int, bases: tuple[Mat, Mat, Mat]) -> int:
        if k == len(word):
            return 1
        key = (k,) + tuple(_canon(b) for b in bases)
        if key in memo:
            return memo[key]
        a = word[k]
        rows = []
        for name, t in _OUT_ARROWS[a]:
            b = bases[t - 1]
            ann = b.left_annihilator() if b.cols else Mat.identity(x.d(t), field)
            if ann.rows:
                rows.append(ann @ x.arrow(name))
        da = x.d(a)
        allowed = Mat.vstack(rows).kernel() if rows else Mat.identity(da, field)
        current = bases[a - 1]
        comp = []
        span = current
        for c in allowed.columns():
            trial = Mat.hstack([span, Mat.column(c, field)]) if span.cols else Mat.column(c, field)
            if trial.rank() > span.cols:
                comp.append(c)
                span = trial
        total = 0
        for coeffs in _projective_points(len(comp), field):
            v = [sum((coeffs[j] * comp[j][i] for j in range(len(comp))), field.zero) for i in range(da)]
            new = Mat.hstack([current, Mat.column(v, field)]) if current.cols else Mat.column(v, field)
            nb = list(bases)
            nb[a - 1] = new
            total += rec(k + 1, tuple(nb))
        memo[key] = total
        return total

    start = tuple(Mat.zeros(n, 0, field) for n in x.dim)
    return rec(0, start)


def flag_degree_bound(x: Rep) -> int:
    """Upper bound on the dimension of any composition-series variety of X.

    Such a chain is determined by the complete flags it induces at each
    vertex, so the variety embeds in a product of flag varieties.
    """
    return min(x.total_dim, sum(d * (d - 1) // 2 for d in x.dim))


def _primes_for(bound: int, primes: Sequence[int]) -> list[int]:
    primes = list(primes)
    need = bound + 1 + MIN_SURPLUS
    if len(primes) < need:
        primes += [p for p in primes_from(max(primes) + 1, need - len(primes))]
    return primes


@lru_cache(maxsize=None)
def _euler_char_cached(x: Rep, word: tuple[int, ...], primes: tuple[int, ...]) -> int:
    if tuple(word.count(v) for v in (1, 2, 3)) != x.dim:
        return 0
    bound = flag_degree_bound(x)
    ps = _primes_for(bound, primes)
    points = []
    for p in ps:
        try:
            xp = x.reduce(GF(p))
        except ZeroDivisionError as exc:
            raise EulerCharacteristicError(f"module has no reduction mod {p}") from exc
        points.append((p, count_comp_series(xp, word)))
    fit = poly_interpolate_q(points, bound)
    if not fit.consistent:
        raise EulerCharacteristicError(f"point counts {points} for type {word} are not polynomial of degree <= {bound}")
    chi = fit.at(1)
    if chi.denominator != 1:
        raise EulerCharacteristicError(f"non-integral Euler characteristic {chi} for type {word}")
    return int(chi)


def point_count_polynomial(x: Rep, word: Sequence[int] | str, primes: Sequence[int] = DEFAULT_PRIMES) -> MultiPoly:
    word = parse_word(word) if isinstance(word, str) else tuple(word)
    bound = flag_degree_bound(x)
    ps = _primes_for(bound, primes)
    fit = poly_interpolate_q([(p, count_comp_series(x.reduce(GF(p)), word)) for p in ps], bound)
    if not fit.consistent:
        raise EulerCharacteristicError(f"point counts for type {word} are not polynomial")
    return fit.poly


def euler_char(x: Rep, word: Sequence[int] | str, primes: Sequence[int] = DEFAULT_PRIMES) -> int:
    if x.field != QQ:
        raise TypeError("euler_char takes a module over Q")
    word = parse_word(word) if isinstance(word, str) else tuple(word)
    return _euler_char_cached(x, word, tuple(primes))


@dataclass(frozen=True)
class CharPoly:
    poly: MultiPoly
    word: tuple[int, ...]

    def __str__(self):
        return str(self.poly)


def _compositions(n: int, parts: int):
    for cut in itertools.combinations(range(n + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (n + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def cluster_char(x: Rep, w: Sequence[int] | str, primes: Sequence[int] = DEFAULT_PRIMES) -> CharPoly:
    """The pullback of phi_X along t -> x_{w1}(t1) ... x_{w6}(t6)."""
    w = parse_word(w)
    if not validate_word(w):
        raise ValueError(f"word {''.join(map(str, w))} does not represent the longest element")
    n = x.total_dim
    terms: dict[tuple[int, ...], int] = {}
    for exps in _compositions(n, 6):
        typ = tuple(a for a, e in zip(w, exps) for _ in range(e))
        if tuple(typ.count(v) for v in (1, 2, 3)) != x.dim:
            continue
        chi = euler_char(x, typ, primes)
        if chi == 0:
            continue
        if chi < 0:
            raise CharacterError(f"negative Euler characteristic {chi} for type {typ}")
        denom = math.prod(math.factorial(e) for e in exps)
        coeff = Fraction(chi, denom)
        if coeff.denominator != 1:
            raise CharacterError(f"coefficient {coeff} of exponent {exps} is not an integer")
        terms[exps] = int(coeff)
    poly = sum((MultiPoly.monomial(dict(zip(T_VARS, e)), c) for e, c in terms.items()), MultiPoly())
    return CharPoly(poly, w)


@lru_cache(maxsize=None)
def catalog_char(cid: str, w: str = "213213") -> CharPoly:
    return cluster_char(catalog_rep(cid), w)


@lru_cache(maxsize=None)
def _minor_pullbacks(w: tuple[int, ...]) -> tuple[tuple[MinorSpec, MultiPoly], ...]:
    m = word_matrix(w)
    return tuple((s, minor(m, s)) for s in NONTRIVIAL_MINORS)


def match_minor(x: Rep, w: Sequence[int] | str = "213213") -> MinorSpec:
    w = parse_word(w)
    phi = cluster_char(x, w).poly
    hits = [s for s, p in _minor_pullbacks(w) if p == phi]
    if len(hits) != 1:
        raise CharacterError(f"character {phi} matches {len(hits)} minors, expected exactly one")
    return hits[0]


def character_table(w: Sequence[int] | str = "213213") -> list[tuple[str, CharPoly, MinorSpec]]:
    w = parse_word(w)
    return [(cid, cluster_char(catalog_rep(cid), w), match_minor(catalog_rep(cid), w)) for cid in CATALOG_IDS]


def verify_multiplicativity(x: Rep, y: Rep, w: Sequence[int] | str = "213213") -> bool:
    return cluster_char(direct_sum([x, y]), w).poly == cluster_char(x, w).poly * cluster_char(y, w).poly


def character_of(x: Rep, w: Sequence[int] | str = "213213") -> MultiPoly:
    """phi_X through decomposition and multiplicativity."""
    w = "".join(map(str, parse_word(w)))
    out = MultiPoly.const(1)
    for cid in decompose(x):
        out = out * catalog_char(cid, w).poly
    return out


def verify_exchange(edge, w: Sequence[int] | str = "213213") -> bool:
    """phi(T_i) phi(T_i*) = phi(T_a) + phi(T_b) for the edge's exchange sequences."""
    w = "".join(map(str, parse_word(w)))
    mu = edge.mutation if hasattr(edge, "mutation") else edge
    lhs = catalog_char(mu.removed, w).poly * catalog_char(mu.added, w).poly
    rhs = character_of(mu.forward.left.target, w) + character_of(mu.backward.left.target, w)
    return lhs == rhs


def minor_identity(edge) -> tuple[tuple[MinorSpec, ...], tuple[tuple[MinorSpec, ...], ...]]:
    """The exchange relation of an edge written with the catalog minors."""
    mu = edge.mutation if hasattr(edge, "mutation") else edge

    def specs(ids):
        return tuple(MinorSpec.parse(CATALOG_MINORS[c]) for c in ids)

    lhs = specs((mu.removed, mu.added))
    rhs = (specs(mu.forward.middle), specs(mu.backward.middle))
    return lhs, rhs


def verify_minor_identity(edge) -> bool:
    lhs, rhs = minor_identity(edge)
    return check_identity(lhs, rhs)
