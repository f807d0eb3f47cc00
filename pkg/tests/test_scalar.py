from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import mobius, totient
from sympy.polys.specialpolys import cyclotomic_poly
from sympy.abc import x as sym_x

from ribbonkit.scalar import (
    Cyclotomic, approx, conjugate, cyclotomic_polynomial, near_equal, root_of_unity_order,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 16, 20]


@st.composite
def cyclotomics(draw, conductor=None):
    n = conductor or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.dictionaries(st.integers(0, n - 1),
                                  st.fractions(min_value=-5, max_value=5, max_denominator=7),
                                  max_size=4))
    return Cyclotomic(n, coeffs)


def numeric(n, coeffs) -> complex:
    """Independent evaluation: sum of coefficients times numpy roots of unity."""
    ks = np.array(list(coeffs.keys()), dtype=float)
    cs = np.array([float(c) for c in coeffs.values()])
    return complex(np.sum(cs * np.exp(2j * np.pi * ks / n))) if len(ks) else 0j


# -- examples ------------------------------------------------------------------

def test_conjugate_of_root_of_unity():
    assert conjugate(Cyclotomic.zeta(5)) == Cyclotomic.zeta(5, 4)


def test_conjugate_fixes_rationals():
    assert conjugate(Cyclotomic.rational(Fraction(3, 2))) == Fraction(3, 2)


def test_conjugate_approx():
    assert conjugate(0.309 + 0.951j) == pytest.approx(0.309 - 0.951j)


def test_near_equal_examples():
    assert near_equal(Cyclotomic.zeta(4, 2), -1, 1e-9)
    assert near_equal(1, 1 + 1e-12, 1e-9)
    assert near_equal(Cyclotomic.golden(), 1.618033988, 1e-6)


def test_near_equal_exact_is_strict():
    assert not near_equal(Cyclotomic.zeta(8), Cyclotomic.zeta(8, 3), 10.0)


def test_approx_examples():
    assert approx(Cyclotomic.zeta(1, 0)) == 1
    assert abs(approx(Cyclotomic.zeta(8)) - (np.sqrt(2) / 2) * (1 + 1j)) < 1e-12
    assert abs(approx(Cyclotomic(5, {2: -1, 3: -1})) - 1.6180339887) < 1e-10


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_polynomial_matches_sympy(n):
    want = [int(c) for c in reversed(cyclotomic_poly(n, sym_x, polys=True).all_coeffs())]
    assert list(cyclotomic_polynomial(n)) == want


@pytest.mark.parametrize("n", range(1, 31))
def test_sum_of_primitive_roots_is_mobius(n):
    from math import gcd
    s = sum((Cyclotomic.zeta(n, k) for k in range(n) if gcd(k, n) == 1), Cyclotomic.rational(0))
    assert s == int(mobius(n))


@pytest.mark.parametrize("n", [3, 5, 8, 12, 16, 20])
def test_norm_of_one_minus_zeta(n):
    # prod_{k primitive} (1 - zeta^k) = Phi_n(1)
    from math import gcd
    p = Cyclotomic.rational(1)
    for k in range(n):
        if gcd(k, n) == 1:
            p = p * (1 - Cyclotomic.zeta(n, k))
    assert p == sum(cyclotomic_polynomial(n))
    assert int(totient(n)) == sum(1 for k in range(n) if gcd(k, n) == 1)


def test_square_roots():
    assert Cyclotomic.sqrt2() * Cyclotomic.sqrt2() == 2
    assert Cyclotomic.sqrt5() * Cyclotomic.sqrt5() == 5
    phi = Cyclotomic.golden()
    assert phi * phi == phi + 1


def test_root_of_unity_order():
    assert root_of_unity_order(Cyclotomic.zeta(16, 3)) == 16
    assert root_of_unity_order(Cyclotomic.zeta(20, 4)) == 5
    assert root_of_unity_order(Cyclotomic.rational(2)) is None


def test_immutable():
    z = Cyclotomic.zeta(5)
    with pytest.raises(AttributeError):
        z.conductor = 7


def test_bad_exponent():
    with pytest.raises(ValueError):
        Cyclotomic(4, {4: 1})


def test_mixing_with_float_falls_back_to_complex():
    out = Cyclotomic.zeta(4) * 0.5
    assert isinstance(out, complex) and out == pytest.approx(0.5j)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(6, {}).inverse()


# -- properties ----------------------------------------------------------------

@given(st.sampled_from(CONDUCTORS).flatmap(
    lambda n: st.tuples(st.just(n), st.dictionaries(
        st.integers(0, n - 1), st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=4))))
def test_approx_matches_numpy_evaluation(args):
    n, coeffs = args
    assert abs(approx(Cyclotomic(n, coeffs)) - numeric(n, coeffs)) < 1e-12 * (1 + sum(abs(c) for c in coeffs.values()))


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == 1


@given(cyclotomics(), cyclotomics())
def test_conjugate_is_involutive_automorphism(a, b):
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)


@given(cyclotomics())
def test_approx_commutes_with_conjugation(a):
    assert abs(approx(conjugate(a)) - approx(a).conjugate()) < 1e-12 * (1 + abs(approx(a)))


@given(cyclotomics(), st.sampled_from([2, 3, 4]))
def test_lift_preserves_value(a, m):
    assert a.lift(a.conductor * m) == a
    assert abs(approx(a.lift(a.conductor * m)) - approx(a)) < 1e-12 * (1 + abs(approx(a)))


@given(st.sampled_from([5, 8, 12, 16]), st.integers(0, 40))
def test_galois_acts_on_roots(n, k):
    from math import gcd
    j = next(j for j in (3, 5, 7, 11, 13) if gcd(j, n) == 1)
    assert Cyclotomic.zeta(n, k).galois(j) == Cyclotomic.zeta(n, k * j)
    assert approx(Cyclotomic.zeta(n, k)) == pytest.approx(cmath.exp(2j * cmath.pi * k / n), abs=1e-12)
