"""Multivariate polynomials over a fixed variable alphabet.

Coefficients are Python ints (Fractions only when a computation genuinely
produces them, e.g. interpolation). Terms are kept in graded lexicographic
order over :data:`VARIABLES`, so two polynomials are equal iff their term
tuples are equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

A_VARS = ("a12", "a13", "a14", "a23", "a24", "a34")
T_VARS = ("t1", "t2", "t3", "t4", "t5", "t6")
VARIABLES = A_VARS + T_VARS + ("q",)
_INDEX = {v: i for i, v in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * _NVARS


def _norm_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _term_key(exp: tuple[int, ...]):
    # descending graded lex
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], object] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != _NVARS:
                raise ValueError(f"exponent vector must have length {_NVARS}")
            c = _norm_coeff(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = tuple(sorted(clean.items(), key=lambda kv: _term_key(kv[0])))
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if name not in _INDEX:
            raise ValueError(f"unknown variable {name!r}")
        e = [0] * _NVARS
        e[_INDEX[name]] = 1
        return cls({tuple(e): 1})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls.const(x)

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "MultiPoly":
        e = [0] * _NVARS
        for v, k in powers.items():
            e[_INDEX[v]] += k
        return cls({tuple(e): coeff})

    # -- queries --------------------------------------------------------
    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == _ZERO_EXP)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self.terms[0][1]) if self.terms else Fraction(0)

    def variables(self) -> set[str]:
        return {VARIABLES[i] for exp, _ in self.terms for i, e in enumerate(exp) if e}

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def coefficients(self) -> list:
        return [c for _, c in self.terms]

    def coefficient(self, powers: Mapping[str, int]):
        e = [0] * _NVARS
        for v, k in powers.items():
            e[_INDEX[v]] = k
        return self.as_dict().get(tuple(e), 0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = MultiPoly.coerce(other)
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return MultiPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        return MultiPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = MultiPoly.coerce(other)
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return MultiPoly(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def substitute(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Replace variables by polynomials or scalars; others are kept."""
        idx = {_INDEX[v]: MultiPoly.coerce(p) for v, p in assignment.items()}
        out = MultiPoly()
        powcache: dict = {}
        for exp, c in self.terms:
            keep = list(exp)
            term = MultiPoly.const(c)
            for i, k in enumerate(exp):
                if k and i in idx:
                    keep[i] = 0
                    key = (i, k)
                    if key not in powcache:
                        powcache[key] = idx[i] ** k
                    term = term * powcache[key]
            out = out + term * MultiPoly({tuple(keep): 1})
        return out

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        p = self.substitute(assignment)
        return p.constant_value()

    # -- text -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (exp, c) in enumerate(self.terms):
            neg = c < 0
            a = -c if neg else c
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e > 1:
                    factors.append(f"{VARIABLES[i]}^{e}")
            cs = str(a) if isinstance(a, int) else f"{a.numerator}/{a.denominator}"
            if not factors:
                body = cs
            elif a == 1:
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            if k == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    _TOKEN = re.compile(r"\s*([+-])?\s*([^+\-\s][^+\-]*)")

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Inverse of ``str``: terms like ``-3/2*t1^2*q`` joined by + and -."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        out = cls()
        pos = 0
        first = True
        while pos < len(s):
            m = cls._TOKEN.match(s, pos)
            if not m or (not first and m.group(1) is None):
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            body = m.group(2).strip()
            coeff: Fraction = Fraction(sign)
            powers: dict[str, int] = {}
            for f in body.split("*"):
                f = f.strip()
                if not f:
                    raise ValueError(f"cannot parse polynomial {text!r}")
                if f in _INDEX or "^" in f:
                    v, _, k = f.partition("^")
                    if v not in _INDEX:
                        raise ValueError(f"unknown variable {v!r}")
                    powers[v] = powers.get(v, 0) + (int(k) if k else 1)
                else:
                    coeff *= Fraction(f)
            out = out + cls.monomial(powers, coeff)
            pos = m.end()
            first = False
        return out


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_sub(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a - b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_substitute(p: MultiPoly, assignment: Mapping[str, object]) -> MultiPoly:
    return p.substitute(assignment)


@dataclass(frozen=True)
class Interpolation:
    poly: MultiPoly
    consistent: bool
    integral: bool

    def at(self, q) -> Fraction:
        return self.poly.evaluate({"q": q})


def poly_interpolate_q(points: Sequence[tuple[int, int]], degree_bound: int) -> Interpolation:
    """Fit a polynomial in ``q`` through the first ``degree_bound + 1`` points.

    The remaining points are checked against the fit (``consistent``), and
    ``integral`` records whether every coefficient came out an integer.
    """
    if len(points) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(points)}")
    qs = [x for x, _ in points]
    if len(set(qs)) != len(qs):
        raise ValueError("interpolation nodes must be distinct")
    fit = points[: degree_bound + 1]
    # Lagrange basis, expanded to monomial coefficients
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, (xi, yi) in enumerate(fit):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(fit):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += Fraction(yi) * b / denom
    poly = MultiPoly({tuple([0] * (_NVARS - 1) + [k]): c for k, c in enumerate(coeffs)})

    def value(x):
        return sum(c * x ** k for k, c in enumerate(coeffs))

    consistent = all(value(x) == y for x, y in points[degree_bound + 1:])
    integral = all(c.denominator == 1 for c in coeffs)
    return Interpolation(poly, consistent, integral)
