from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from betadigits import poly
from betadigits.errors import InputError

X = sympy.Symbol("X")
small_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda p: p[-1] != 0)


def to_sympy(p):
    return sympy.Poly(list(reversed(p)), X)


def test_parse_and_format():
    assert poly.parse_polynomial("-1, -1, 1") == [-1, -1, 1]
    assert poly.format_polynomial([-1, -1, 1]) == "X^2 - X - 1"
    for bad in ["", "1,a", "5", "0,0"]:
        with pytest.raises(InputError):
            poly.parse_polynomial(bad)


@given(small_polys, small_polys)
def test_mul_and_divmod_match_sympy(p, q):
    assert to_sympy(poly.mul(p, q)) == to_sympy(p) * to_sympy(q)
    quo, rem = poly.divmod_poly(p, q)
    sq, sr = sympy.div(to_sympy(p), to_sympy(q), domain="QQ")
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(sq.all_coeffs())] == poly.trim(quo) or sq.is_zero
    back = poly.add(poly.mul(q, quo), rem)
    assert poly.trim([Fraction(c) for c in back]) == poly.trim([Fraction(c) for c in p])


@given(small_polys, small_polys)
def test_gcd_matches_sympy(p, q):
    g = poly.gcd(p, q)
    sg = sympy.gcd(to_sympy(p), to_sympy(q)).monic()
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(sg.all_coeffs())] == [Fraction(c) for c in g]


@given(small_polys)
def test_real_root_count_matches_sympy(p):
    if not poly.is_squarefree(p):
        return
    n = poly.count_real_roots(p, -100, 100)
    assert n == len(sympy.real_roots(to_sympy(p)))


@pytest.mark.parametrize(
    "p, u",
    [
        ([-1, -1, 1], 0),
        ([1, 0, 1], 2),
        ([1, -1, 1, 0, -1, 0, 1, -1, 1], 4),
        ([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], 8),
        ([-1, 1], 1),
        ([1, 1], 1),
        ([2, 1], 0),
        ([1, 1, 1], 2),
    ],
)
def test_unit_circle_count(p, u):
    assert poly.unit_circle_root_count(p) == u


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=6).filter(lambda p: p[-1] == 1 and p[0] != 0))
def test_unit_circle_count_vs_numeric(p):
    if not poly.is_squarefree(p):
        return
    roots = sympy.Poly(list(reversed(p)), X).nroots(n=50, maxsteps=200)
    numeric = sum(1 for r in roots if abs(abs(complex(r)) - 1) < 1e-20)
    assert poly.unit_circle_root_count(p) == numeric
