"""Rigid objects, minimal add(T)-approximations and mutation of maximal rigid modules."""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import Mat
from .repcore import (
    CATALOG_IDS,
    NONPROJECTIVE_IDS,
    PROJECTIVE_IDS,
    Rep,
    RepMap,
    catalog_rep,
    cokernel_of,
    decompose,
    direct_sum,
    ext1_dim,
    hom_basis,
    hom_coordinates,
    identity_map,
    kernel_of,
    map_from_sum,
    map_into_sum,
    zero_map,
)


class MutationError(RuntimeError):
    """A property guaranteed by the exchange-sequence theorem failed to hold."""


def is_rigid(x: Rep) -> bool:
    return ext1_dim(x, x) == 0


@lru_cache(maxsize=None)
def ext_table() -> dict[tuple[str, str], int]:
    return {(a, b): ext1_dim(catalog_rep(a), catalog_rep(b)) for a in CATALOG_IDS for b in CATALOG_IDS}


def _compatible(ids: Iterable[str]) -> bool:
    t = ext_table()
    ids = list(ids)
    return all(t[a, b] == 0 for a in ids for b in ids)


def is_basic_maximal_rigid(ids: Iterable[str]) -> bool:
    ids = list(ids)
    if len(set(ids)) != len(ids) or len(ids) != 6:
        return False
    if any(i not in CATALOG_IDS for i in ids):
        return False
    if not _compatible(ids):
        return False
    return not any(_compatible(ids + [c]) for c in CATALOG_IDS if c not in ids)


@dataclass(frozen=True, order=True)
class RigidObject:
    """A basic maximal rigid module, recorded by the catalog ids of its summands."""

    summands: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @classmethod
    def of(cls, ids: Iterable[str]) -> "RigidObject":
        ids = list(ids)
        obj = cls(tuple(ids))
        if not set(PROJECTIVE_IDS) <= set(ids):
            raise ValueError(f"{obj} must contain P1, P2, P3")
        if not is_basic_maximal_rigid(ids):
            raise ValueError(f"{obj} is not basic maximal rigid")
        return obj

    @classmethod
    def parse(cls, text: str) -> "RigidObject":
        """Comma or plus separated ids; P1, P2, P3 are added when none is given."""
        ids = [s.strip() for s in text.replace("+", ",").split(",") if s.strip()]
        if not set(ids) & set(PROJECTIVE_IDS):
            ids += list(PROJECTIVE_IDS)
        return cls.of(ids)

    @property
    def nonprojective(self) -> tuple[str, ...]:
        return tuple(i for i in self.summands if i not in PROJECTIVE_IDS)

    def label(self) -> str:
        return " + ".join(self.nonprojective)

    def without(self, cid: str) -> tuple[str, ...]:
        return tuple(i for i in self.summands if i != cid)

    def rep(self) -> Rep:
        return direct_sum([catalog_rep(i) for i in self.summands])

    def __str__(self):
        return "{" + ", ".join(self.summands) + "}"


T0 = RigidObject(("SOC2", "U32", "U12", "P1", "P2", "P3"))


# ---------------------------------------------------------------------------
# approximations


@dataclass(frozen=True)
class Approximation:
    """A map into (left) or out of (right) a direct sum of catalog modules."""

    map: RepMap
    summands: tuple[str, ...]


@lru_cache(maxsize=None)
def radical_basis(cid: str) -> tuple[RepMap, ...]:
    """Non-invertible endomorphisms of an indecomposable catalog module.

    End is local, so these are the basis elements with their scalar part
    (trace / dim times identity) removed, reduced to an independent set.
    """
    x = catalog_rep(cid)
    ident = identity_map(x)
    parts = []
    for b in hom_basis(x, x):
        lam = b.block().trace() / x.total_dim
        parts.append(b - ident.scale(lam))
    parts = [p for p in parts if not p.is_zero()]
    return tuple(_independent(parts))


def _independent(maps: Sequence[RepMap]) -> list[RepMap]:
    out: list[RepMap] = []
    rank = 0
    for m in maps:
        trial = hom_coordinates(out + [m])
        r = trial.rank()
        if r > rank:
            out.append(m)
            rank = r
    return out


def _radical(ci: str, cj: str) -> tuple[RepMap, ...]:
    if ci == cj:
        return radical_basis(ci)
    return hom_basis(catalog_rep(ci), catalog_rep(cj))


def _lift_cokernel(full: Sequence[RepMap], image: Sequence[RepMap]) -> list[RepMap]:
    """Basis elements of ``full`` that complete span(image) to span(full)."""
    chosen: list[RepMap] = []
    base = list(image)
    rank = hom_coordinates(base).rank() if base else 0
    for f in full:
        r = hom_coordinates(base + chosen + [f]).rank()
        if r > rank:
            chosen.append(f)
            rank = r
    return chosen


def _distinct(ids: Iterable[str]) -> list[str]:
    out = []
    for i in ids:
        if i not in out:
            out.append(i)
    return sorted(out, key=CATALOG_IDS.index)


def left_approximation(x: Rep, t: Iterable[str]) -> Approximation:
    """Minimal left add(T)-approximation X -> T' built summand by summand.

    For each T_j: Hom(X, T_j) modulo the maps that factor as X -> T_i -> T_j
    through a radical morphism; a lifted basis of that quotient gives the
    copies of T_j in T'.
    """
    ids = _distinct(t)
    homs = {i: hom_basis(x, catalog_rep(i)) for i in ids}
    parts: list[RepMap] = []
    summands: list[str] = []
    for j in ids:
        factoring = [g @ f for i in ids for f in homs[i] for g in _radical(i, j)]
        for f in _lift_cokernel(homs[j], factoring):
            parts.append(f)
            summands.append(j)
    target = direct_sum([catalog_rep(s) for s in summands], x.field)
    if not parts:
        return Approximation(zero_map(x, target), ())
    return Approximation(map_into_sum(x, target, parts), tuple(summands))


def right_approximation(x: Rep, t: Iterable[str]) -> Approximation:
    """Minimal right add(T)-approximation T' -> X (dual construction)."""
    ids = _distinct(t)
    homs = {i: hom_basis(catalog_rep(i), x) for i in ids}
    parts: list[RepMap] = []
    summands: list[str] = []
    for j in ids:
        factoring = [f @ g for i in ids for f in homs[i] for g in _radical(j, i)]
        for f in _lift_cokernel(homs[j], factoring):
            parts.append(f)
            summands.append(j)
    source = direct_sum([catalog_rep(s) for s in summands], x.field)
    if not parts:
        return Approximation(zero_map(source, x), ())
    return Approximation(map_from_sum(source, x, parts), tuple(summands))


def _precompose_surjective(f: RepMap, s: Rep) -> bool:
    """Is Hom(T', S) -> Hom(X, S), g -> g o f, onto (f: X -> T')?"""
    target = hom_basis(f.source, s)
    if not target:
        return True
    image = [g @ f for g in hom_basis(f.target, s)]
    if not image:
        return False
    return hom_coordinates(image).rank() == len(target)


def _postcompose_surjective(f: RepMap, s: Rep) -> bool:
    """Is Hom(S, T') -> Hom(S, X), g -> f o g, onto (f: T' -> X)?"""
    target = hom_basis(s, f.target)
    if not target:
        return True
    image = [f @ g for g in hom_basis(s, f.source)]
    if not image:
        return False
    return hom_coordinates(image).rank() == len(target)


def is_left_approximation(f: RepMap, t: Iterable[str]) -> bool:
    return all(_precompose_surjective(f, catalog_rep(i)) for i in _distinct(t))


def is_right_approximation(f: RepMap, t: Iterable[str]) -> bool:
    return all(_postcompose_surjective(f, catalog_rep(i)) for i in _distinct(t))


def _drop_summand(approx: Approximation, k: int, left: bool) -> RepMap:
    """The approximation with the k-th target summand removed."""
    ids = list(approx.summands)
    keep = [i for i in range(len(ids)) if i != k]
    sub = direct_sum([catalog_rep(ids[i]) for i in keep], approx.map.source.field)
    mats = []
    for v in range(3):
        offs = [0]
        for cid in ids:
            offs.append(offs[-1] + catalog_rep(cid).dim[v])
        idx = [r for i in keep for r in range(offs[i], offs[i + 1])]
        m = approx.map.maps[v]
        mats.append(m.submatrix(idx, range(m.cols)) if left else m.submatrix(range(m.rows), idx))
    if left:
        return RepMap(approx.map.source, sub, tuple(mats))
    return RepMap(sub, approx.map.target, tuple(mats))


def is_minimal(approx: Approximation, t: Iterable[str], left: bool = True) -> bool:
    """No proper summand of the target (source) still approximates.

    Dropping one indecomposable summand at a time suffices: the property is
    inherited by any larger summand containing a working smaller one.
    """
    t = list(t)
    check = is_left_approximation if left else is_right_approximation
    return all(not check(_drop_summand(approx, k, left), t) for k in range(len(approx.summands)))


# ---------------------------------------------------------------------------
# short exact sequences and mutation


@dataclass(frozen=True)
class Ses:
    """0 -> X --left--> E --right--> Y -> 0 with E a sum of catalog modules ``middle``."""

    left: RepMap
    right: RepMap
    middle: tuple[str, ...] = ()

    def is_exact(self) -> bool:
        if not (self.left.is_morphism() and self.right.is_morphism()):
            return False
        if not (self.left.is_injective() and self.right.is_surjective()):
            return False
        if not (self.right @ self.left).is_zero():
            return False
        # image(left) == kernel(right): dimensions agree vertex-wise
        return all(self.left.source.dim[i] + self.right.target.dim[i] == self.left.target.dim[i] for i in range(3))

    def splits(self) -> bool:
        """Does the injection admit a retraction?"""
        x, e = self.left.source, self.left.target
        comps = [r @ self.left for r in hom_basis(e, x)]
        ident = identity_map(x)
        if x.total_dim == 0:
            return True
        if not comps:
            return False
        a = hom_coordinates(comps)
        b = Mat.column(ident.vector(), x.field)
        return a.solve(b) is not None


@dataclass(frozen=True)
class Mutation:
    source: RigidObject
    result: RigidObject
    removed: str
    added: str
    forward: Ses   # 0 -> T_i -> T_a -> T_i* -> 0
    backward: Ses  # 0 -> T_i* -> T_b -> T_i -> 0


def _fail(item: str, msg: str):
    raise MutationError(f"exchange-sequence theorem, item ({item}): {msg}")


@lru_cache(maxsize=None)
def mutate(t: RigidObject, i: str) -> Mutation:
    """Replace the non-projective summand ``i`` via its two exchange sequences."""
    if i not in t.summands:
        raise ValueError(f"{i} is not a summand of {t}")
    if i in PROJECTIVE_IDS:
        raise ValueError(f"cannot mutate at projective summand {i}")
    rest = t.without(i)
    ti = catalog_rep(i)

    left = left_approximation(ti, rest)
    f = left.map
    if not f.is_injective():
        _fail("1", f"left approximation of {i} is not injective")
    coker, f_prime = cokernel_of(f)
    star_parts = decompose(coker)
    if len(star_parts) != 1:
        _fail("3", f"cokernel {star_parts} is not indecomposable")
    star = star_parts[0]
    if star in PROJECTIVE_IDS:
        _fail("3", f"cokernel {star} is projective")
    # express the cokernel on the catalog module itself
    from .repcore import find_isomorphism

    iso = find_isomorphism(coker, catalog_rep(star))
    f_prime = iso @ f_prime
    forward = Ses(f, f_prime, left.summands)

    right = right_approximation(ti, rest)
    g_prime = right.map
    if not g_prime.is_surjective():
        _fail("2", f"right approximation onto {i} is not surjective")
    ker, g = kernel_of(g_prime)
    if decompose(ker) != (star,):
        _fail("3", f"the two exchange sequences have different end terms {decompose(ker)} and {star}")
    iso_k = find_isomorphism(catalog_rep(star), ker)
    g = g @ iso_k
    backward = Ses(g, g_prime, right.summands)

    if not (forward.is_exact() and backward.is_exact()):
        _fail("1", "exchange sequence is not exact")
    if not is_minimal(left, rest, left=True):
        _fail("1", "left approximation is not minimal")
    if not is_minimal(right, rest, left=False):
        _fail("2", "right approximation is not minimal")
    if not is_right_approximation(f_prime, rest):
        _fail("2", "the forward sequence's projection is not a right approximation")
    if not is_left_approximation(g, rest):
        _fail("1", "the backward sequence's injection is not a left approximation")
    star_rep = catalog_rep(star)
    if ext1_dim(ti, star_rep) != 1 or ext1_dim(star_rep, ti) != 1:
        _fail("4", f"dim Ext^1 between {i} and {star} is not 1")
    if forward.splits() or backward.splits():
        _fail("4", "an exchange sequence splits")
    result_ids = rest + (star,)
    if not is_basic_maximal_rigid(result_ids):
        _fail("5", f"{sorted(result_ids)} is not basic maximal rigid")
    if set(left.summands) & set(right.summands):
        _fail("6", f"middle terms {left.summands} and {right.summands} share a summand")
    return Mutation(t, RigidObject(result_ids), i, star, forward, backward)


# ---------------------------------------------------------------------------
# exchange graph


@dataclass(frozen=True)
class Edge:
    a: RigidObject
    b: RigidObject
    mutation: Mutation  # from a to b

    @property
    def pair(self) -> tuple[str, str]:
        return (self.mutation.removed, self.mutation.added)


@dataclass
class ExchangeGraph:
    vertices: list[RigidObject]
    edges: list[Edge]
    adjacency: dict[RigidObject, dict[str, RigidObject]] = field(default_factory=dict)

    def degree(self, v: RigidObject) -> int:
        return len(self.adjacency[v])

    def neighbours(self, v: RigidObject) -> list[RigidObject]:
        return sorted(self.adjacency[v].values())

    def to_json(self) -> dict:
        return {
            "vertices": [list(v.summands) for v in self.vertices],
            "edges": [
                {
                    "from": list(e.a.summands),
                    "to": list(e.b.summands),
                    "exchanged": list(e.pair),
                    "forward_middle": list(e.mutation.forward.middle),
                    "backward_middle": list(e.mutation.backward.middle),
                }
                for e in self.edges
            ],
        }

    def to_dot(self, name: str = "exchange") -> str:
        idx = {v: k for k, v in enumerate(self.vertices)}
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  v{idx[v]} [label="{v.label()}"];')
        for e in self.edges:
            lines.append(f'  v{idx[e.a]} -- v{idx[e.b]} [label="{e.pair[0]}/{e.pair[1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def exchange_graph(seed: RigidObject = T0) -> ExchangeGraph:
    seen = {seed}
    queue = deque([seed])
    adjacency: dict[RigidObject, dict[str, RigidObject]] = {}
    edges: dict[frozenset, Edge] = {}
    while queue:
        v = queue.popleft()
        adjacency[v] = {}
        for slot in v.nonprojective:
            mu = mutate(v, slot)
            w = mu.result
            adjacency[v][slot] = w
            key = frozenset((v, w))
            if key not in edges:
                a, b = sorted((v, w))
                edges[key] = Edge(a, b, mu if a == v else mutate(w, mu.added))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    vertices = sorted(seen)
    edge_list = sorted(edges.values(), key=lambda e: (e.a, e.b))
    return ExchangeGraph(vertices, edge_list, adjacency)


def enumerate_maximal_rigid() -> set[RigidObject]:
    """Brute force over 3-subsets of the non-projective catalog."""
    out = set()
    for triple in itertools.combinations(NONPROJECTIVE_IDS, 3):
        if _compatible(triple):
            out.add(RigidObject(triple + PROJECTIVE_IDS))
    return out


def graph_json(g: ExchangeGraph) -> str:
    return json.dumps(g.to_json(), sort_keys=True, indent=2)
