"""Modules over the preprojective algebra of type A3.

The double quiver has vertices 1, 2, 3 and arrows::

    alpha: 1 -> 2    alpha*: 2 -> 1    beta*: 2 -> 3    beta: 3 -> 2

A representation stores one matrix per arrow; an arrow s -> t acts on column
vectors by left multiplication (``d_t x d_s`` matrix). A path read left to
right, g1 then g2, acts by ``A[g2] @ A[g1]``. The relations are

    alpha alpha* = 0,   alpha* alpha + beta* beta = 0,   beta beta* = 0.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .coordring import MinorSpec
from .exactalg import QQ, Mat, format_scalar, rational_roots
from .exactalg.field import parse_field

VERTICES = (1, 2, 3)
ARROWS: tuple[tuple[str, int, int], ...] = (
    ("alpha", 1, 2),
    ("alpha*", 2, 1),
    ("beta*", 2, 3),
    ("beta", 3, 2),
)
ARROW_INDEX = {name: k for k, (name, _, _) in enumerate(ARROWS)}
# (vertex, paths summed in the relation); a path (g1, g2) acts by A[g2] @ A[g1]
RELATIONS: tuple[tuple[int, tuple[tuple[str, str], ...]], ...] = (
    (1, (("alpha", "alpha*"),)),
    (2, (("alpha*", "alpha"), ("beta*", "beta"))),
    (3, (("beta", "beta*"),)),
)


class InvalidModule(ValueError):
    pass


@dataclass(frozen=True)
class Rep:
    dim: tuple[int, int, int]
    maps: tuple[Mat, Mat, Mat, Mat]
    field: object = QQ

    def __post_init__(self):
        if len(self.dim) != 3 or len(self.maps) != 4:
            raise InvalidModule("need a 3-vector of dimensions and four arrow matrices")
        for (name, s, t), m in zip(ARROWS, self.maps):
            if m.shape != (self.dim[t - 1], self.dim[s - 1]):
                raise InvalidModule(f"arrow {name} must be {self.dim[t - 1]}x{self.dim[s - 1]}, got {m.rows}x{m.cols}")
            if m.field != self.field:
                raise InvalidModule(f"arrow {name} is over {m.field}, module over {self.field}")

    def arrow(self, name: str) -> Mat:
        return self.maps[ARROW_INDEX[name]]

    def d(self, vertex: int) -> int:
        return self.dim[vertex - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def reduce(self, field) -> "Rep":
        return Rep(self.dim, tuple(m.reduce(field) for m in self.maps), field)

    def __str__(self):
        return render_rep(self)


def make_rep(dim: Sequence[int], field=QQ, **arrows) -> Rep:
    """Build a Rep from nested row lists; ``alpha_star``/``beta_star`` name the starred arrows.

    Unspecified arrows are zero.
    """
    dim = tuple(int(x) for x in dim)
    maps = []
    for name, s, t in ARROWS:
        key = name.replace("*", "_star")
        rows = arrows.pop(key, None)
        if rows is None:
            maps.append(Mat.zeros(dim[t - 1], dim[s - 1], field))
        else:
            maps.append(Mat(dim[t - 1], dim[s - 1], [x for r in rows for x in r], field))
    if arrows:
        raise TypeError(f"unknown arrows {sorted(arrows)}")
    return Rep(dim, tuple(maps), field)


def zero_rep(field=QQ) -> Rep:
    return make_rep((0, 0, 0), field)


def relation_values(rep: Rep) -> list[Mat]:
    out = []
    for v, paths in RELATIONS:
        acc = Mat.zeros(rep.d(v), rep.d(v), rep.field)
        for g1, g2 in paths:
            acc = acc + rep.arrow(g2) @ rep.arrow(g1)
        out.append(acc)
    return out


def validate(rep: Rep) -> bool:
    return all(m.is_zero() for m in relation_values(rep))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class RepMap:
    source: Rep
    target: Rep
    maps: tuple[Mat, Mat, Mat]

    def __post_init__(self):
        for i, m in enumerate(self.maps):
            if m.shape != (self.target.dim[i], self.source.dim[i]):
                raise InvalidModule(f"vertex {i + 1} map has shape {m.shape}")

    def is_morphism(self) -> bool:
        for name, s, t in ARROWS:
            if self.maps[t - 1] @ self.source.arrow(name) != self.target.arrow(name) @ self.maps[s - 1]:
                return False
        return True

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """Composition ``self o other``."""
        if other.target.dim != self.source.dim:
            raise InvalidModule("cannot compose maps with mismatched modules")
        return RepMap(other.source, self.target, tuple(a @ b for a, b in zip(self.maps, other.maps)))

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a + b for a, b in zip(self.maps, other.maps)))

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a - b for a, b in zip(self.maps, other.maps)))

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, tuple(m.scale(c) for m in self.maps))

    def power(self, k: int) -> "RepMap":
        return RepMap(self.source, self.target, tuple(m.power(k) for m in self.maps))

    def ranks(self) -> tuple[int, int, int]:
        return tuple(m.rank() for m in self.maps)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def is_injective(self) -> bool:
        return self.ranks() == self.source.dim

    def is_surjective(self) -> bool:
        return self.ranks() == self.target.dim

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def inverse(self) -> "RepMap":
        inv = tuple(m.inverse() for m in self.maps)
        if any(m is None for m in inv):
            raise ValueError("map is not invertible")
        return RepMap(self.target, self.source, inv)

    def block(self) -> Mat:
        return Mat.block_diag(list(self.maps), self.source.field)

    def vector(self) -> list:
        return [x for m in self.maps for x in m.entries]


def identity_map(x: Rep) -> RepMap:
    return RepMap(x, x, tuple(Mat.identity(n, x.field) for n in x.dim))


def zero_map(x: Rep, y: Rep) -> RepMap:
    return RepMap(x, y, tuple(Mat.zeros(y.dim[i], x.dim[i], x.field) for i in range(3)))


def _map_from_vector(x: Rep, y: Rep, vec: Sequence) -> RepMap:
    mats = []
    pos = 0
    for i in range(3):
        n = y.dim[i] * x.dim[i]
        mats.append(Mat._raw(y.dim[i], x.dim[i], vec[pos:pos + n], x.field))
        pos += n
    return RepMap(x, y, tuple(mats))


class _Operator:
    """Accumulates a linear operator given as sums of terms L @ G @ R in unknown blocks G."""

    def __init__(self, field, in_blocks: Sequence[tuple[int, int]], out_blocks: Sequence[tuple[int, int]]):
        self.field = field
        self.in_off = list(itertools.accumulate([0] + [p * q for p, q in in_blocks]))
        self.out_off = list(itertools.accumulate([0] + [p * q for p, q in out_blocks]))
        self.in_blocks = list(in_blocks)
        self.out_blocks = list(out_blocks)
        self.rows = [[field.zero] * self.in_off[-1] for _ in range(self.out_off[-1])]

    def add(self, out_k: int, in_k: int, left: Mat | None, right: Mat | None, sign: int = 1):
        m, n = self.out_blocks[out_k]
        p, q = self.in_blocks[in_k]
        L = left if left is not None else Mat.identity(m, self.field)
        R = right if right is not None else Mat.identity(n, self.field)
        ro, co = self.out_off[out_k], self.in_off[in_k]
        for r in range(m):
            for k in range(p):
                lk = L[r, k]
                if not lk:
                    continue
                for c in range(n):
                    for l in range(q):
                        rl = R[l, c]
                        if rl:
                            self.rows[ro + r * n + c][co + k * q + l] += sign * lk * rl

    def matrix(self) -> Mat:
        return Mat._raw(len(self.rows), self.in_off[-1], [x for r in self.rows for x in r], self.field)


def _d0(x: Rep, y: Rep) -> Mat:
    """Hom(X_i, Y_i) (vertex blocks) -> Hom(X_s, Y_t) (arrow blocks), f -> f_t A^X - A^Y f_s."""
    op = _Operator(x.field, [(y.dim[i], x.dim[i]) for i in range(3)],
                   [(y.d(t), x.d(s)) for _, s, t in ARROWS])
    for k, (name, s, t) in enumerate(ARROWS):
        op.add(k, t - 1, None, x.arrow(name), 1)
        op.add(k, s - 1, y.arrow(name), None, -1)
    return op.matrix()


def _d1(x: Rep, y: Rep) -> Mat:
    """Arrow blocks -> relation blocks by differentiating each relation."""
    op = _Operator(x.field, [(y.d(t), x.d(s)) for _, s, t in ARROWS],
                   [(y.d(v), x.d(v)) for v, _ in RELATIONS])
    for k, (_, paths) in enumerate(RELATIONS):
        for g1, g2 in paths:
            op.add(k, ARROW_INDEX[g1], y.arrow(g2), None, 1)
            op.add(k, ARROW_INDEX[g2], None, x.arrow(g1), 1)
    return op.matrix()


def _check_same_field(x: Rep, y: Rep):
    if x.field != y.field:
        raise InvalidModule(f"modules over different fields: {x.field} and {y.field}")


@lru_cache(maxsize=65536)
def hom_basis(x: Rep, y: Rep) -> tuple[RepMap, ...]:
    _check_same_field(x, y)
    ker = _d0(x, y).kernel()
    return tuple(_map_from_vector(x, y, ker.col(j)) for j in range(ker.cols))


def hom_dim(x: Rep, y: Rep) -> int:
    return len(hom_basis(x, y))


@lru_cache(maxsize=65536)
def ext1_dim(x: Rep, y: Rep) -> int:
    """dim Ext^1(X, Y) as the middle cohomology of the relation complex."""
    _check_same_field(x, y)
    d0 = _d0(x, y)
    d1 = _d1(x, y)
    return d1.cols - d1.rank() - d0.rank()


def hom_coordinates(maps: Sequence[RepMap]) -> Mat:
    """Matrix whose columns are the flattened maps."""
    if not maps:
        return Mat.zeros(0, 0)
    return Mat.from_columns([f.vector() for f in maps], maps[0].source.field)


# ---------------------------------------------------------------------------
# sums, kernels, cokernels


def direct_sum(xs: Sequence[Rep], field=QQ) -> Rep:
    if not xs:
        return zero_rep(field)
    field = xs[0].field
    dim = tuple(sum(x.dim[i] for x in xs) for i in range(3))
    maps = tuple(Mat.block_diag([x.maps[k] for x in xs], field) for k in range(4))
    return Rep(dim, maps, field)


def sum_injections(xs: Sequence[Rep]) -> tuple[Rep, list[RepMap]]:
    total = direct_sum(xs)
    incs = []
    offs = [0, 0, 0]
    for x in xs:
        mats = []
        for i in range(3):
            m = Mat.zeros(total.dim[i], x.dim[i], total.field)
            rows = m.to_rows()
            for k in range(x.dim[i]):
                rows[offs[i] + k][k] = total.field.one
            mats.append(Mat.from_rows(rows, total.field, cols=x.dim[i]))
            offs[i] += x.dim[i]
        incs.append(RepMap(x, total, tuple(mats)))
    return total, incs


def map_into_sum(x: Rep, target: Rep, parts: Sequence[RepMap]) -> RepMap:
    """Column map X -> T_1 + ... + T_k assembled from the components."""
    mats = tuple(Mat.vstack([p.maps[i] for p in parts], cols=x.dim[i], field=x.field) for i in range(3))
    return RepMap(x, target, mats)


def map_from_sum(source: Rep, x: Rep, parts: Sequence[RepMap]) -> RepMap:
    """Row map T_1 + ... + T_k -> X assembled from the components."""
    mats = tuple(Mat.hstack([p.maps[i] for p in parts], rows=x.dim[i], field=x.field) for i in range(3))
    return RepMap(source, x, mats)


def subrep(x: Rep, bases: Sequence[Mat]) -> tuple[Rep, RepMap]:
    """Submodule spanned vertex-wise by the (independent) columns of ``bases``."""
    maps = []
    for name, s, t in ARROWS:
        img = x.arrow(name) @ bases[s - 1]
        if bases[t - 1].cols == 0:
            if not img.is_zero():
                raise InvalidModule(f"subspace not stable under {name}")
            maps.append(Mat.zeros(0, bases[s - 1].cols, x.field))
            continue
        sol = bases[t - 1].solve(img)
        if sol is None:
            raise InvalidModule(f"subspace not stable under {name}")
        maps.append(sol)
    sub = Rep(tuple(b.cols for b in bases), tuple(maps), x.field)
    return sub, RepMap(sub, x, tuple(bases))


def quotient(x: Rep, bases: Sequence[Mat]) -> tuple[Rep, RepMap]:
    """X modulo the submodule spanned by ``bases``, with the projection."""
    projs, sections = [], []
    for i in range(3):
        n = x.dim[i]
        basis = bases[i]
        cols = basis.columns()
        comp = []
        current = basis
        for j in range(n):
            if len(cols) + len(comp) == n:
                break
            e = [x.field.one if k == j else x.field.zero for k in range(n)]
            trial = Mat.from_columns(cols + comp + [e], x.field, rows=n)
            if trial.rank() > current.rank():
                comp.append(e)
                current = trial
        full = Mat.from_columns(cols + comp, x.field, rows=n)
        inv = full.inverse()
        k = len(cols)
        projs.append(inv.submatrix(range(k, n), range(n)))
        sections.append(Mat.from_columns(comp, x.field, rows=n))
    maps = tuple(projs[t - 1] @ x.arrow(name) @ sections[s - 1] for name, s, t in ARROWS)
    q = Rep(tuple(x.dim[i] - bases[i].cols for i in range(3)), maps, x.field)
    return q, RepMap(x, q, tuple(projs))


def kernel_of(f: RepMap) -> tuple[Rep, RepMap]:
    return subrep(f.source, [m.kernel() for m in f.maps])


def image_of(f: RepMap) -> tuple[Rep, RepMap]:
    return subrep(f.target, [m.column_space() for m in f.maps])


def cokernel_of(f: RepMap) -> tuple[Rep, RepMap]:
    return quotient(f.target, [m.column_space() for m in f.maps])


# ---------------------------------------------------------------------------
# isomorphism


def _coefficient_vectors(m: int):
    # deterministic "generic" points first, then an exhaustive small box
    for base in (7, 11, 101, 1009):
        yield [base ** k + k for k in range(m)]
    for k in range(1, 4):
        yield [((j + 1) * k * 31) % 97 + 1 for j in range(m)]
    box = (0, 1, -1, 2, -2)
    if m <= 6:
        yield from itertools.product(box, repeat=m)


def find_isomorphism(x: Rep, y: Rep) -> RepMap | None:
    _check_same_field(x, y)
    if x.dim != y.dim:
        return None
    basis = hom_basis(x, y)
    if not basis:
        return None if x.total_dim else zero_map(x, y)
    for coeffs in _coefficient_vectors(len(basis)):
        f = zero_map(x, y)
        for c, b in zip(coeffs, basis):
            if c:
                f = f + b.scale(c)
        if f.is_invertible():
            g = f.inverse()
            if (g @ f).maps == identity_map(x).maps and g.is_morphism():
                return f
    return None


def is_iso(x: Rep, y: Rep) -> bool:
    return find_isomorphism(x, y) is not None


# ---------------------------------------------------------------------------
# catalog of indecomposables

CATALOG_IDS = ("S1", "S2", "S3", "U12", "U21", "U23", "U32", "TOP2", "SOC2", "P1", "P2", "P3")
PROJECTIVE_IDS = ("P1", "P2", "P3")
NONPROJECTIVE_IDS = tuple(i for i in CATALOG_IDS if i not in PROJECTIVE_IDS)

CATALOG_MINORS = {
    "S1": "D[1][2]", "S2": "D[2][3]", "S3": "D[3][4]",
    "U12": "D[12][23]", "U21": "D[1][3]", "U23": "D[23][34]", "U32": "D[2][4]",
    "TOP2": "D[13][34]", "SOC2": "D[12][24]",
    "P1": "D[123][234]", "P2": "D[12][34]", "P3": "D[1][4]",
}


def _build_catalog() -> dict[str, Rep]:
    return {
        "S1": make_rep((1, 0, 0)),
        "S2": make_rep((0, 1, 0)),
        "S3": make_rep((0, 0, 1)),
        # top over socle
        "U12": make_rep((1, 1, 0), alpha=[[1]]),
        "U21": make_rep((1, 1, 0), alpha_star=[[1]]),
        "U23": make_rep((0, 1, 1), beta_star=[[1]]),
        "U32": make_rep((0, 1, 1), beta=[[1]]),
        "TOP2": make_rep((1, 1, 1), alpha_star=[[1]], beta_star=[[1]]),
        "SOC2": make_rep((1, 1, 1), alpha=[[1]], beta=[[1]]),
        "P1": make_rep((1, 1, 1), alpha=[[1]], beta_star=[[1]]),
        "P3": make_rep((1, 1, 1), beta=[[1]], alpha_star=[[1]]),
        # basis at vertex 2: (top, socle)
        "P2": make_rep((1, 2, 1), alpha_star=[[1, 0]], beta_star=[[1, 0]], alpha=[[0], [-1]], beta=[[0], [1]]),
    }


_CATALOG = _build_catalog()


def catalog_rep(cid: str) -> Rep:
    try:
        return _CATALOG[cid]
    except KeyError:
        raise KeyError(f"unknown catalog id {cid!r}; expected one of {', '.join(CATALOG_IDS)}") from None


def catalog() -> dict[str, tuple[Rep, MinorSpec]]:
    return {cid: (_CATALOG[cid], MinorSpec.parse(CATALOG_MINORS[cid])) for cid in CATALOG_IDS}


def catalog_sum(ids: Iterable[str]) -> Rep:
    return direct_sum([catalog_rep(i) for i in ids])


# ---------------------------------------------------------------------------
# decomposition


def _nilpotent_parts(x: Rep, basis: Sequence[RepMap]) -> list[RepMap]:
    n = x.total_dim
    ident = identity_map(x)
    out = []
    for b in basis:
        lam = b.block().trace() / n
        out.append(b - ident.scale(lam))
    return out


def is_local_endomorphism_ring(x: Rep) -> bool:
    """Exact test that End(X) = (scalars) + (nil ideal).

    Subtracting trace/dim times the identity from each basis element leaves
    trace-zero maps; their span is a nil ideal iff it is closed under
    composition (trace zero on all powers forces nilpotency in char 0).
    """
    if x.total_dim == 0:
        return False
    if x.field.characteristic:
        raise ValueError("endomorphism-ring test needs characteristic 0")
    nil = _nilpotent_parts(x, hom_basis(x, x))
    if not nil:
        return True
    span = hom_coordinates(nil)
    r = span.rank()
    products = [a @ b for a in nil for b in nil]
    extended = Mat.hstack([span, hom_coordinates(products)])
    return extended.rank() == r


def _splitting_candidates(x: Rep) -> Iterable[RepMap]:
    basis = hom_basis(x, x)
    yield from basis
    nil = _nilpotent_parts(x, basis)
    for a, b in itertools.combinations(basis, 2):
        yield a + b
        yield a - b
    for a, b in itertools.product(nil, repeat=2):
        yield a @ b
    for a, b, c in itertools.combinations(basis, 3):
        yield a + b + c


def split_once(x: Rep) -> tuple[Rep, Rep] | None:
    """Find X = K + I with both nonzero via Fitting's lemma, or None.

    For a candidate endomorphism phi with rational eigenvalue lam, the power
    (phi - lam)^n is never invertible; it is nonzero exactly when phi has a
    second eigenvalue, and then its kernel and image split X.
    """
    n = x.total_dim
    ident = identity_map(x)
    for phi in _splitting_candidates(x):
        for lam in rational_roots(phi.block().charpoly()):
            psi = (phi - ident.scale(lam)).power(n)
            if psi.is_zero():
                break
            k, _ = kernel_of(psi)
            i, _ = image_of(psi)
            if k.total_dim and i.total_dim:
                return k, i
    return None


def indecomposable_summands(x: Rep) -> list[Rep]:
    if x.total_dim == 0:
        return []
    if is_local_endomorphism_ring(x):
        return [x]
    parts = split_once(x)
    if parts is None:
        raise RuntimeError(f"no splitting endomorphism found for a decomposable module of dim {x.dim}")
    return indecomposable_summands(parts[0]) + indecomposable_summands(parts[1])


def identify(x: Rep) -> str:
    """Catalog id of an indecomposable module."""
    xq = x if x.field == QQ else None
    if xq is None:
        raise ValueError("catalog matching is done over Q")
    for cid in CATALOG_IDS:
        c = _CATALOG[cid]
        if c.dim == x.dim and is_iso(c, x):
            return cid
    raise LookupError(f"indecomposable module of dim {x.dim} matches no catalog entry")


def _catalog_key(cid: str) -> int:
    return CATALOG_IDS.index(cid)


def decompose(x: Rep) -> tuple[str, ...]:
    """Multiset of catalog ids of the indecomposable summands, in catalog order."""
    return tuple(sorted((identify(s) for s in indecomposable_summands(x)), key=_catalog_key))


def hom_profile(x: Rep) -> tuple[int, ...]:
    """dim Hom(Z, X) for every catalog Z; determines X up to isomorphism."""
    return tuple(hom_dim(_CATALOG[c], x) for c in CATALOG_IDS)


# ---------------------------------------------------------------------------
# text format
#
#   field: QQ
#   dim: 1 2 1
#   alpha: [0; -1]
#   alpha*: [1 0]
#   beta*: [1 0]
#   beta: [0; 1]


def _render_mat(m: Mat) -> str:
    if m.rows == 0 or m.cols == 0:
        return "[]"
    return "[" + "; ".join(" ".join(format_scalar(v) for v in r) for r in m.to_rows()) + "]"


def render_rep(x: Rep) -> str:
    lines = [f"field: {x.field}", "dim: " + " ".join(map(str, x.dim))]
    for (name, _, _), m in zip(ARROWS, x.maps):
        lines.append(f"{name}: {_render_mat(m)}")
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*([A-Za-z*]+)\s*:\s*(.*?)\s*$")


def parse_rep(text: str) -> Rep:
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise InvalidModule(f"cannot parse line {raw!r}")
        key = m.group(1)
        if key in fields:
            raise InvalidModule(f"duplicate key {key!r}")
        fields[key] = m.group(2)
    allowed = {"field", "dim"} | set(ARROW_INDEX)
    unknown = set(fields) - allowed
    if unknown:
        raise InvalidModule(f"unknown keys {sorted(unknown)}")
    field = parse_field(fields.get("field", "QQ"))
    if "dim" not in fields:
        raise InvalidModule("missing dim line")
    dim = tuple(int(v) for v in fields["dim"].split())
    if len(dim) != 3 or any(v < 0 for v in dim):
        raise InvalidModule("dim must be three nonnegative integers")
    maps = []
    for name, s, t in ARROWS:
        rows, cols = dim[t - 1], dim[s - 1]
        body = fields.get(name, "[]" if rows * cols == 0 else None)
        if body is None:
            raise InvalidModule(f"missing matrix for {name}")
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InvalidModule(f"matrix for {name} must be bracketed")
        inner = body[1:-1].strip()
        if rows * cols == 0:
            if inner:
                raise InvalidModule(f"matrix for {name} must be empty")
            maps.append(Mat.zeros(rows, cols, field))
            continue
        entries = [[Fraction(tok) for tok in r.split()] for r in inner.split(";")]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise InvalidModule(f"matrix for {name} must be {rows}x{cols}")
        maps.append(Mat(rows, cols, [v for r in entries for v in r], field))
    return Rep(dim, tuple(maps), field)
