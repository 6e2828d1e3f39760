"""Unitriangular 4x4 matrices, their minors, and total positivity."""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .exactalg import A_VARS, T_VARS, MultiPoly, parse_scalar

N = 4


class UniMatrix:
    """4x4 upper unitriangular matrix with polynomial (or scalar) entries."""

    __slots__ = ("_e",)

    def __init__(self, entries: Sequence[Sequence]):
        if len(entries) != N or any(len(r) != N for r in entries):
            raise ValueError("UniMatrix must be 4x4")
        e = [[MultiPoly.coerce(x) for x in row] for row in entries]
        for i in range(N):
            if e[i][i] != 1:
                raise ValueError(f"diagonal entry ({i + 1},{i + 1}) must be 1")
            for j in range(i):
                if not e[i][j].is_zero():
                    raise ValueError(f"entry ({i + 1},{j + 1}) below the diagonal must be 0")
        self._e = tuple(tuple(r) for r in e)

    @classmethod
    def identity(cls) -> "UniMatrix":
        return cls([[1 if i == j else 0 for j in range(N)] for i in range(N)])

    @classmethod
    def from_upper(cls, upper: dict[tuple[int, int], object]) -> "UniMatrix":
        """Build from 1-indexed strictly-upper entries, e.g. {(1, 2): x}."""
        rows = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
        for (i, j), v in upper.items():
            if not 1 <= i < j <= N:
                raise ValueError(f"({i},{j}) is not strictly upper")
            rows[i - 1][j - 1] = v
        return cls(rows)

    def __call__(self, i: int, j: int) -> MultiPoly:
        """1-indexed entry."""
        return self._e[i - 1][j - 1]

    def rows(self) -> tuple[tuple[MultiPoly, ...], ...]:
        return self._e

    def __matmul__(self, other: "UniMatrix") -> "UniMatrix":
        out = [[sum((self._e[i][k] * other._e[k][j] for k in range(N)), MultiPoly()) for j in range(N)] for i in range(N)]
        return UniMatrix(out)

    def __eq__(self, other):
        return isinstance(other, UniMatrix) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def substitute(self, assignment) -> "UniMatrix":
        return UniMatrix([[x.substitute(assignment) for x in row] for row in self._e])

    def is_concrete(self) -> bool:
        return all(x.is_constant() for row in self._e for x in row)

    def transpose_inverse_conjugate(self, psi: Sequence[Sequence[int]]) -> "UniMatrix":
        """Return psi^{-1} (M^T)^{-1} psi, which is again unitriangular for the forms used here."""
        n = [[self._e[i][j] - (1 if i == j else 0) for j in range(N)] for i in range(N)]

        def mul(a, b):
            return [[sum((a[i][k] * b[k][j] for k in range(N)), MultiPoly()) for j in range(N)] for i in range(N)]

        # (I + n)^{-1} = I - n + n^2 - n^3 since n is strictly upper triangular
        inv = [[MultiPoly.const(1 if i == j else 0) for j in range(N)] for i in range(N)]
        power = [[MultiPoly.const(1 if i == j else 0) for j in range(N)] for i in range(N)]
        for k in range(1, N):
            power = mul(power, n)
            sign = -1 if k % 2 else 1
            inv = [[inv[i][j] + sign * power[i][j] for j in range(N)] for i in range(N)]
        inv_t = [[inv[j][i] for j in range(N)] for i in range(N)]
        p = [[MultiPoly.const(x) for x in row] for row in psi]
        # psi is orthogonal up to sign pattern: psi^{-1} = psi^T for antidiag(+-1)
        p_inv = [[MultiPoly.const(psi[j][i]) for j in range(N)] for i in range(N)]
        return UniMatrix(mul(mul(p_inv, inv_t), p))

    def __repr__(self):
        return "UniMatrix(" + "; ".join(", ".join(str(x) for x in r) for r in self._e) + ")"


@dataclass(frozen=True, order=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for name, s in (("rows", self.rows), ("cols", self.cols)):
            if not s or len(s) >= N:
                raise ValueError(f"{name} must be a nonempty proper subset of 1..4")
            if any(not 1 <= x <= N for x in s) or list(s) != sorted(set(s)):
                raise ValueError(f"{name} must be strictly increasing in 1..4")
        if len(self.rows) != len(self.cols):
            raise ValueError("minor must be square")

    def __str__(self):
        return "D[" + "".join(map(str, self.rows)) + "][" + "".join(map(str, self.cols)) + "]"

    _RE = re.compile(r"^D\[(\d+)\]\[(\d+)\]$")

    @classmethod
    def parse(cls, text: str) -> "MinorSpec":
        m = cls._RE.match(text.strip())
        if not m:
            raise ValueError(f"bad minor syntax {text!r}; expected e.g. D[12][34]")
        return cls(tuple(int(c) for c in m.group(1)), tuple(int(c) for c in m.group(2)))


def D(rows: str | int, cols: str | int) -> MinorSpec:
    """Shorthand: ``D(12, 34)`` is the minor with rows 1,2 and columns 3,4."""
    return MinorSpec(tuple(int(c) for c in str(rows)), tuple(int(c) for c in str(cols)))


def generic_matrix() -> UniMatrix:
    return UniMatrix.from_upper({(int(v[1]), int(v[2])): MultiPoly.var(v) for v in A_VARS})


def _det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    total = MultiPoly()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = MultiPoly.const(-1 if inversions % 2 else 1)
        for i in range(n):
            term = term * m[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def minor(m: UniMatrix, spec: MinorSpec) -> MultiPoly:
    return _det([[m(i, j) for j in spec.cols] for i in spec.rows])


def one_param(vertex: int, t) -> UniMatrix:
    if vertex not in (1, 2, 3):
        raise ValueError("vertex must be 1, 2 or 3")
    return UniMatrix.from_upper({(vertex, vertex + 1): t})


def word_permutation(w: Sequence[int]) -> tuple[int, ...]:
    """One-line notation of s_{w1} s_{w2} ... acting on (1,2,3,4) positions."""
    perm = list(range(1, N + 1))
    for a in w:
        perm[a - 1], perm[a] = perm[a], perm[a - 1]
    return tuple(perm)


def validate_word(w: Sequence[int]) -> bool:
    """True iff ``w`` is a length-6 word whose product of adjacent transpositions is 4321."""
    w = parse_word(w) if isinstance(w, str) else tuple(w)
    if len(w) != 6 or any(a not in (1, 2, 3) for a in w):
        return False
    return word_permutation(w) == tuple(range(N, 0, -1))


def parse_word(text: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        if not re.fullmatch(r"[123]+", text.strip()):
            raise ValueError(f"word {text!r} must use the letters 1, 2, 3")
        return tuple(int(c) for c in text.strip())
    return tuple(int(a) for a in text)


def word_matrix(w: Sequence[int] | str) -> UniMatrix:
    w = parse_word(w)
    if not validate_word(w):
        raise ValueError(f"word {''.join(map(str, w))} does not represent the longest element of S4")
    m = UniMatrix.identity()
    for k, a in enumerate(w):
        m = m @ one_param(a, MultiPoly.var(T_VARS[k]))
    return m


NONTRIVIAL_MINORS: tuple[MinorSpec, ...] = (
    D(1, 2), D(2, 3), D(3, 4), D(12, 23), D(1, 3), D(23, 34),
    D(2, 4), D(13, 34), D(12, 24), D(123, 234), D(12, 34), D(1, 4),
)

CRITERION_SIX: tuple[MinorSpec, ...] = (D(1, 4), D(12, 34), D(123, 234), D(12, 24), D(2, 4), D(3, 4))


def nontrivial_minors() -> list[MinorSpec]:
    return list(NONTRIVIAL_MINORS)


def product_poly(specs: Iterable[MinorSpec], m: UniMatrix | None = None) -> MultiPoly:
    m = m or generic_matrix()
    out = MultiPoly.const(1)
    for s in specs:
        out = out * minor(m, s)
    return out


def check_identity(lhs: Sequence[MinorSpec], rhs: Sequence[Sequence[MinorSpec]]) -> bool:
    """Is prod(lhs) == sum(prod(term) for term in rhs) on the generic matrix?"""
    g = generic_matrix()
    right = sum((product_poly(term, g) for term in rhs), MultiPoly())
    return product_poly(lhs, g) == right


def _concrete_minors(m: UniMatrix, specs: Iterable[MinorSpec]) -> list[Fraction]:
    if not m.is_concrete():
        raise ValueError("positivity tests need a matrix with rational entries")
    return [minor(m, s).constant_value() for s in specs]


def is_totally_positive(m: UniMatrix) -> bool:
    return all(v > 0 for v in _concrete_minors(m, NONTRIVIAL_MINORS))


def criterion_six(m: UniMatrix) -> bool:
    return all(v > 0 for v in _concrete_minors(m, CRITERION_SIX))


def random_rational(rng: random.Random, bound: int = 100, positive: bool = False) -> Fraction:
    num = rng.randint(1 if positive else -bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_unitriangular(rng: random.Random, bound: int = 100, positive: bool = False) -> UniMatrix:
    return UniMatrix.from_upper({(i, j): random_rational(rng, bound, positive) for i in range(1, N + 1) for j in range(i + 1, N + 1)})


def random_positive_parametrization(rng: random.Random, word: str = "213213", bound: int = 100) -> UniMatrix:
    ts = {v: random_rational(rng, bound, positive=True) for v in T_VARS}
    return word_matrix(word).substitute(ts)


def parse_matrix_text(text: str) -> UniMatrix:
    lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
    if len(lines) != N:
        raise ValueError(f"expected 4 matrix lines, got {len(lines)}")
    rows = []
    for ln in lines:
        toks = ln.split()
        if len(toks) != N:
            raise ValueError(f"expected 4 entries per line, got {len(toks)}: {ln!r}")
        rows.append([parse_scalar(t) for t in toks])
    return UniMatrix(rows)


def load_matrix(path: str | Path) -> UniMatrix:
    return parse_matrix_text(Path(path).read_text())
