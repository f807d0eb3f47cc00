"""Exact cyclotomic scalars with a complex-float fallback.

A :class:`Cyclotomic` is a rational linear combination ``sum_k c_k zeta_n^k`` of
powers of ``zeta_n = exp(2 pi i / n)``.  Coefficients are stored densely over
the full basis ``0 <= k < n`` and kept reduced modulo the n-th cyclotomic
polynomial, so two values of the same conductor are equal iff their coefficient
tuples agree.  Values of different conductors are lifted to the lcm.

Anything that leaves a cyclotomic field (e.g. ``phi ** -0.5``) is carried as a
plain Python ``complex``; the helpers here accept both kinds.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

DEFAULT_TOL = 1e-9


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // lead
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """Exact element of the cyclotomic field ``Q(zeta_n)``.

    Instances are immutable.  Arithmetic with ``int``, ``Fraction`` and other
    ``Cyclotomic`` values stays exact; arithmetic with ``float``/``complex``
    falls back to ``complex``.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs=None):
        if conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {conductor}")
        vec = [Fraction(0)] * conductor
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, c in items:
                if not 0 <= k < conductor:
                    raise ValueError(f"exponent {k} outside [0, {conductor})")
                vec[k] += Fraction(c)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", _reduce(vec, conductor))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """``zeta_n ** k``."""
        return cls(n, {k % n: 1})

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, {0: Fraction(q)})

    @classmethod
    def sqrt2(cls) -> "Cyclotomic":
        return cls(8, {1: 1, 7: 1})

    @classmethod
    def sqrt5(cls) -> "Cyclotomic":
        # quadratic Gauss sum for p = 5
        return cls(5, {1: 1, 2: -1, 3: -1, 4: 1})

    @classmethod
    def golden(cls) -> "Cyclotomic":
        """The golden ratio ``(1 + sqrt 5) / 2 = -zeta_5^2 - zeta_5^3``."""
        return cls(5, {2: -1, 3: -1})

    @classmethod
    def _raw(cls, conductor: int, reduced: list) -> "Cyclotomic":
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", tuple(reduced))
        return obj

    # -- structure ----------------------------------------------------------
    def lift(self, m: int) -> "Cyclotomic":
        """Re-express over conductor ``m`` (a multiple of the current one)."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot lift conductor {n} to {m}")
        step = m // n
        vec = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            if c:
                vec[k * step] = c
        return Cyclotomic._raw(m, _reduce(vec, m))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def galois(self, j: int) -> "Cyclotomic":
        """Apply the automorphism ``zeta_n -> zeta_n ** j`` (``gcd(j, n) = 1``)."""
        n = self.conductor
        if math.gcd(j, n) != 1:
            raise ValueError(f"{j} is not a unit mod {n}")
        vec = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(k * j) % n] += c
        return Cyclotomic._raw(n, _reduce(vec, n))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.conductor) if self.conductor > 1 else self

    def __complex__(self) -> complex:
        n = self.conductor
        acc = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                acc += float(c) * _root(n, k)
        return acc

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic._raw(1, [Fraction(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        m = math.lcm(self.conductor, o.conductor)
        a, b = self.lift(m), o.lift(m)
        return Cyclotomic._raw(m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, [-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        if o.conductor == 1:
            s = o.coeffs[0]
            return Cyclotomic._raw(self.conductor, [c * s for c in self.coeffs])
        if self.conductor == 1:
            s = self.coeffs[0]
            return Cyclotomic._raw(o.conductor, [c * s for c in o.coeffs])
        m = math.lcm(self.conductor, o.conductor)
        a, b = self.lift(m).terms(), o.lift(m).terms()
        vec = [Fraction(0)] * m
        for i, x in a:
            for j, y in b:
                vec[(i + j) % m] += x * y
        return Cyclotomic._raw(m, _reduce(vec, m))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Field inverse via the norm: ``1/s = prod_{j != 1} sigma_j(s) / N(s)``."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        if self.is_rational():
            return Cyclotomic._raw(n, [1 / self.coeffs[0]] + [Fraction(0)] * (n - 1))
        others = Cyclotomic.rational(1)
        for j in range(2, n):
            if math.gcd(j, n) == 1:
                others = others * self.galois(j)
        norm = (self * others).to_fraction()
        return others * (1 / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return complex(self) ** e
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        m = math.lcm(self.conductor, o.conductor)
        return self.lift(m).coeffs == o.lift(m).coeffs

    __hash__ = None  # type: ignore[assignment]

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        terms = self.terms()
        if not terms:
            return "Cyclotomic(0)"
        body = " + ".join(f"{c}*z{self.conductor}^{k}" if k else f"{c}" for k, c in terms)
        return f"Cyclotomic({body})"


@lru_cache(maxsize=None)
def _root(n: int, k: int) -> complex:
    # exact values where they are cheap, so approx() of real inputs stays real
    if (4 * k) % n == 0:
        return [1, 1j, -1, -1j][(4 * k // n) % 4]
    return cmath.exp(2j * math.pi * k / n)


def _reduce(vec: list, n: int) -> tuple:
    """Reduce a length-n coefficient vector modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    vec = list(vec)
    for k in range(n - 1, deg - 1, -1):
        c = vec[k]
        if c:
            vec[k] = Fraction(0)
            base = k - deg
            for j in range(deg):
                if phi[j]:
                    vec[base + j] -= c * phi[j]
    return tuple(vec)


Scalar = Union[Cyclotomic, complex, float, int, Fraction]


def is_exact(s) -> bool:
    return isinstance(s, (Cyclotomic, int, Rational))


def to_exact(s) -> Cyclotomic:
    if isinstance(s, Cyclotomic):
        return s
    if isinstance(s, (int, Rational)):
        return Cyclotomic.rational(s)
    raise TypeError(f"{s!r} is not an exact scalar")


def approx(s) -> complex:
    """Complex-float evaluation of a scalar."""
    return complex(s)


def conjugate(s):
    """Complex conjugation; exact on cyclotomics (``zeta^k -> zeta^(n-k)``)."""
    if isinstance(s, Cyclotomic):
        return s.conjugate()
    if isinstance(s, (int, Rational)):
        return s
    return complex(s).conjugate()


def near_equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality when both sides are exact, else ``|a - b| <= tol``."""
    if is_exact(a) and is_exact(b):
        return to_exact(a) == to_exact(b)
    return abs(complex(a) - complex(b)) <= tol


def is_zero(s, tol: float = DEFAULT_TOL) -> bool:
    return near_equal(s, 0, tol)


def inverse(s):
    if isinstance(s, Cyclotomic):
        return s.inverse()
    if isinstance(s, (int, Rational)):
        return Fraction(1) / Fraction(s)
    return 1 / complex(s)


def root_of_unity_order(s, bound: int = 240) -> int | None:
    """Smallest ``m <= bound`` with ``s ** m == 1`` (exact), or None."""
    x = to_exact(s)
    p = Cyclotomic.rational(1)
    for m in range(1, bound + 1):
        p = p * x
        if p == 1:
            return m
    return None


def format_scalar(s) -> str:
    z = complex(s)
    return f"{z.real:.12g}{z.imag:+.12g}j"
