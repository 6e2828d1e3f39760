"""Exact scalar fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values (always stored in
lowest terms with a positive denominator). Prime-field scalars are :class:`Mod`
instances. Both support the usual arithmetic operators, so the linear algebra
in :mod:`clusterfold.exactalg.matrix` is written once for either field.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_from(start: int, count: int) -> list[int]:
    """Return ``count`` consecutive primes, the first one >= ``start``."""
    out = []
    n = max(start, 2)
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


class Mod:
    """An element of F_p."""

    __slots__ = ("p", "r")

    def __init__(self, r: int, p: int):
        self.p = p
        self.r = r % p

    def _other(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise TypeError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other.r
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no reduction mod {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.r + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.r - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.r, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.r * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(self.r * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if self.r == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(o * pow(self.r, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.r, self.p)

    def __pow__(self, e: int):
        if e < 0:
            if self.r == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return Mod(pow(self.r, -1, self.p) ** (-e), self.p)
        return Mod(pow(self.r, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.r == other.r
        if isinstance(other, int):
            return (other - self.r) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.r, self.p))

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return f"Mod({self.r}, {self.p})"

    def __str__(self):
        return str(self.r)


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Mod):
            raise TypeError("cannot lift an F_p element to Q")
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise TypeError(f"mixed prime fields F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no reduction mod {self.p}")
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    @property
    def zero(self) -> Mod:
        return Mod(0, self.p)

    @property
    def one(self) -> Mod:
        return Mod(1, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.p == self.p

    def elements(self):
        return [Mod(r, self.p) for r in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str):
    text = text.strip()
    if text in ("QQ", "Q"):
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        return GF(int(text[3:-1]))
    raise ValueError(f"unknown field {text!r}")


def parse_scalar(token: str) -> Fraction:
    """Parse ``p/q`` or an integer token into a Fraction."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational token {token!r}") from exc


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)
