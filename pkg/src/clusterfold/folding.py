"""The Z/2Z diagram automorphism of A3 and the folded (type C2) exchange graph."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .coordring import MinorSpec, UniMatrix, generic_matrix, minor
from .exactalg import A_VARS, MultiPoly
from .repcore import (
    ARROWS,
    CATALOG_MINORS,
    InvalidModule,
    Rep,
    catalog_rep,
    decompose,
    validate,
)
from .rigidmut import RigidObject, T0, exchange_graph, mutate

PSI = ((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0))


@dataclass(frozen=True)
class GroupAction:
    vertices: tuple[tuple[int, int], ...] = ((1, 3), (2, 2), (3, 1))
    arrows: tuple[tuple[str, str], ...] = (("alpha", "beta"), ("beta", "alpha"), ("alpha*", "beta*"), ("beta*", "alpha*"))
    psi: tuple[tuple[int, ...], ...] = PSI

    def vertex(self, v: int) -> int:
        return dict(self.vertices)[v]

    def arrow(self, name: str) -> str:
        return dict(self.arrows)[name]


G = GroupAction()

# fixed-point substitution defining N' inside N
PI_SUBSTITUTION = {
    "a34": MultiPoly.var("a12"),
    "a24": MultiPoly.var("a12") * MultiPoly.var("a23") - MultiPoly.var("a13"),
}


class FoldingError(RuntimeError):
    pass


def g_act(x: Rep) -> Rep:
    """Swap vertices 1 and 3 together with alpha <-> beta, alpha* <-> beta*."""
    dim = tuple(x.d(G.vertex(v)) for v in (1, 2, 3))
    maps = tuple(x.arrow(G.arrow(name)) for name, _, _ in ARROWS)
    y = Rep(dim, maps, x.field)
    if validate(x) and not validate(y):
        raise InvalidModule("g-action broke the preprojective relations")
    return y


@lru_cache(maxsize=None)
def g_on_catalog(cid: str) -> str:
    parts = decompose(g_act(catalog_rep(cid)))
    if len(parts) != 1:
        raise FoldingError(f"g({cid}) decomposed as {parts}")
    return parts[0]


def is_stable(t: RigidObject) -> bool:
    image = sorted(g_on_catalog(c) for c in t.summands)
    return image == sorted(t.summands)


def slots(t: RigidObject) -> tuple[str, tuple[str, str]]:
    """(g-fixed non-projective summand, g-swapped pair) of a stable object."""
    if not is_stable(t):
        raise FoldingError(f"{t} is not g-stable")
    fixed = [c for c in t.nonprojective if g_on_catalog(c) == c]
    moved = [c for c in t.nonprojective if g_on_catalog(c) != c]
    if len(fixed) != 1 or len(moved) != 2:
        raise FoldingError(f"{t} does not have one fixed and one swapped non-projective summand")
    return fixed[0], (moved[0], moved[1])


def folded_mutate(t: RigidObject, k: int) -> RigidObject:
    """Slot 2 mutates the fixed summand; slot 1 mutates both swapped summands."""
    fixed, (a, b) = slots(t)
    if k == 2:
        out = mutate(t, fixed).result
    elif k == 1:
        first = mutate(t, a)
        ab = mutate(first.result, b).result
        second = mutate(t, b)
        ba = mutate(second.result, a).result
        if ab != ba:
            raise FoldingError(f"folding theorem, item (1): mu_1 mu_3 != mu_3 mu_1 at {t}: {ab} vs {ba}")
        out = ab
    else:
        raise ValueError("folded slot must be 1 or 2")
    if not is_stable(out):
        raise FoldingError(f"folding theorem, item (1): folded mutation of {t} at slot {k} is not stable")
    return out


@dataclass(frozen=True)
class FoldedEdge:
    a: RigidObject
    b: RigidObject
    slot: int


@dataclass
class FoldedGraph:
    vertices: list[RigidObject]
    edges: list[FoldedEdge]
    adjacency: dict[RigidObject, dict[int, RigidObject]] = field(default_factory=dict)

    def degree(self, v: RigidObject) -> int:
        return len(set(self.adjacency[v].values()))

    def is_single_cycle(self) -> bool:
        if not self.vertices or any(self.degree(v) != 2 for v in self.vertices):
            return False
        start = self.vertices[0]
        prev, cur, steps = None, start, 0
        while True:
            nxt = [w for w in self.adjacency[cur].values() if w != prev]
            prev, cur = cur, nxt[0]
            steps += 1
            if cur == start:
                return steps == len(self.vertices)


def stable_exchange_graph(seed: RigidObject = T0) -> FoldedGraph:
    stable = [v for v in exchange_graph(seed).vertices if is_stable(v)]
    if not stable:
        return FoldedGraph([], [])
    seen: set = set()
    queue = deque([stable[0]])
    adjacency: dict = {}
    edges: dict = {}
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        adjacency[v] = {}
        for k in (1, 2):
            w = folded_mutate(v, k)
            adjacency[v][k] = w
            a, b = sorted((v, w))
            edges.setdefault((a, b), FoldedEdge(a, b, k))
            queue.append(w)
    if seen != set(stable):
        raise FoldingError("stable vertices are not connected by folded mutations")
    return FoldedGraph(sorted(seen), [edges[k] for k in sorted(edges)], adjacency)


def pi_project(p: MultiPoly) -> MultiPoly:
    bad = p.variables() - set(A_VARS)
    if bad:
        raise ValueError(f"pi_project takes polynomials in the a-variables, got {sorted(bad)}")
    check_pi_projection()
    return p.substitute(PI_SUBSTITUTION)


def g_on_matrix(m: UniMatrix) -> UniMatrix:
    """M -> Psi^{-1} (M^T)^{-1} Psi."""
    return m.transpose_inverse_conjugate(G.psi)


@lru_cache(maxsize=1)
def check_pi_projection() -> bool:
    """The substituted generic matrix is a fixed point of the involution on N."""
    m = generic_matrix().substitute(PI_SUBSTITUTION)
    if g_on_matrix(m) != m:
        raise FoldingError("pi substitution does not land in the fixed points of g")
    return True


def projected_minor(spec: MinorSpec) -> MultiPoly:
    return minor(generic_matrix(), spec).substitute(PI_SUBSTITUTION)


def projected_character(cid: str, w: str = "213213") -> MultiPoly:
    from .charfun import match_minor

    return pi_project(minor(generic_matrix(), match_minor(catalog_rep(cid), w)))


def hexagon_clusters(g: FoldedGraph | None = None) -> list[tuple[str, ...]]:
    """For each stable vertex: the fixed minor and the identified pair ``Da = Db``."""
    g = g or stable_exchange_graph()
    out = []
    for v in g.vertices:
        fixed, (a, b) = slots(v)
        pair = " = ".join(sorted((CATALOG_MINORS[a], CATALOG_MINORS[b])))
        out.append((CATALOG_MINORS[fixed], pair))
    return out


def hexagon_cluster_polys(g: FoldedGraph | None = None) -> list[frozenset]:
    """Each stable cluster as the set of its pi-projected minors."""
    g = g or stable_exchange_graph()
    out = []
    for v in g.vertices:
        fixed, (a, b) = slots(v)
        out.append(frozenset(projected_minor(MinorSpec.parse(CATALOG_MINORS[c])) for c in (fixed, a, b)))
    return out


def hexagon_json(g: FoldedGraph | None = None) -> dict:
    g = g or stable_exchange_graph()
    labels = dict(zip(g.vertices, hexagon_clusters(g)))
    return {
        "vertices": [{"summands": list(v.summands), "cluster": list(labels[v])} for v in g.vertices],
        "edges": [{"from": list(e.a.summands), "to": list(e.b.summands), "slot": int(e.slot)} for e in g.edges],
    }


def hexagon_dot(g: FoldedGraph | None = None) -> str:
    g = g or stable_exchange_graph()
    labels = dict(zip(g.vertices, hexagon_clusters(g)))
    idx = {v: k for k, v in enumerate(g.vertices)}
    lines = ["graph folded {"]
    for v in g.vertices:
        lines.append(f'  v{idx[v]} [label="{", ".join(labels[v])}"];')
    for e in g.edges:
        lines.append(f'  v{idx[e.a]} -- v{idx[e.b]} [label="mu{e.slot}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
