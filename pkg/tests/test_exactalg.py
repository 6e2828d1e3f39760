from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clusterfold.exactalg import (
    GF,
    QQ,
    FieldMismatch,
    Mat,
    Mod,
    MultiPoly,
    ShapeError,
    T_VARS,
    format_scalar,
    is_prime,
    mat_kernel,
    mat_rank,
    mat_solve,
    parse_scalar,
    poly_interpolate_q,
    poly_mul,
    poly_substitute,
)

t = {v: MultiPoly.var(v) for v in T_VARS}


def test_rank_of_identity():
    assert mat_rank(Mat.identity(2)) == 2


def test_kernel_over_f2():
    k = mat_kernel(Mat.from_rows([[1, 1]], GF(2)))
    assert k.shape == (2, 1)
    assert k.col(0) == [1, 1]


def test_rank_all_ones():
    assert mat_rank(Mat.from_rows([[1] * 3] * 3)) == 1


def test_solve_and_no_solution():
    a = Mat.from_rows([[1, 2], [3, 4]])
    x = mat_solve(a, Mat.column([5, 6]))
    assert a @ x == Mat.column([5, 6])
    assert mat_solve(Mat.from_rows([[1, 1], [1, 1]]), Mat.column([0, 1])) is None


def test_shape_and_field_errors():
    with pytest.raises(ShapeError):
        Mat.identity(2) @ Mat.identity(3)
    with pytest.raises(FieldMismatch):
        Mat.identity(2) + Mat.identity(2, GF(3))
    with pytest.raises(ValueError):
        GF(4)


def test_inverse_det_charpoly():
    a = Mat.from_rows([[2, 1], [1, 1]])
    assert a.det() == 1
    assert a @ a.inverse() == Mat.identity(2)
    assert a.charpoly() == [1, -3, 1]


def test_prime_field_division():
    f = GF(7)
    assert f(3) / f(5) * f(5) == f(3)
    assert f(Fraction(1, 2)) == 4
    assert is_prime(13) and not is_prime(1)


def test_scalar_text():
    assert parse_scalar("-3/6") == Fraction(-1, 2)
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(-1, 3)) == "-1/3"


def test_distributivity_example():
    p = poly_mul(t["t1"] + t["t4"], t["t3"] + t["t6"])
    assert p == t["t1"] * t["t3"] + t["t1"] * t["t6"] + t["t4"] * t["t3"] + t["t4"] * t["t6"]
    assert str(p) == "t1*t3 + t1*t6 + t3*t4 + t4*t6"


def test_substitution_examples():
    a12, a34 = MultiPoly.var("a12"), MultiPoly.var("a34")
    assert poly_substitute(a34 - a12, {"a34": a12}).is_zero()
    assert poly_substitute(t["t2"] + t["t5"], {"t2": 1, "t5": 1}) == 2


def test_text_rendering():
    p = 2 * t["t2"] * t["t5"] - t["t2"] ** 2 + 1
    assert str(p) == "-t2^2 + 2*t2*t5 + 1"
    assert MultiPoly.parse(str(p)) == p
    assert str(MultiPoly()) == "0"


@pytest.mark.parametrize(
    "points, bound, expected",
    [
        ([(2, 3), (3, 4), (5, 6)], 1, "q + 1"),
        ([(2, 1), (3, 1), (5, 1)], 0, "1"),
        ([(2, 7), (3, 13), (5, 31), (7, 57)], 2, "q^2 + q + 1"),
    ],
)
def test_interpolation_examples(points, bound, expected):
    fit = poly_interpolate_q(points, bound)
    assert fit.consistent
    assert str(fit.poly) == expected


def test_interpolation_reports_inconsistency():
    fit = poly_interpolate_q([(2, 1), (3, 2), (5, 7)], 1)
    assert not fit.consistent


small = st.integers(-6, 6)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(rows, cols, data):
    entries = data.draw(st.lists(small, min_size=rows * cols, max_size=rows * cols))
    m = Mat(rows, cols, entries)
    k = m.kernel()
    assert m.rank() + k.cols == cols
    assert (m @ k).is_zero() if k.cols else True


@given(st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-5, 5), max_size=5))
def test_poly_text_round_trip(terms):
    p = sum((MultiPoly.monomial(dict(zip(T_VARS, e)), c) for e, c in terms.items()), MultiPoly())
    assert MultiPoly.parse(str(p)) == p


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), small, st.integers(1, 6), small, st.integers(1, 6))
def test_prime_field_agrees_with_rationals(p, a, b, c, d):
    if b % p == 0 or d % p == 0:
        return
    x, y = Fraction(a, b), Fraction(c, d)
    f = GF(p)
    assert f(x + y) == f(x) + f(y)
    assert f(x * y) == f(x) * f(y)
    assert f(x - y) == f(x) - f(y)
    if y and (c % p):
        assert f(x / y) == f(x) / f(y)


def test_mod_equality_with_int():
    assert Mod(8, 7) == 1
    assert QQ(Fraction(2, 4)) == Fraction(1, 2)
