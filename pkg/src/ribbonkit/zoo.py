"""Built-in example categories with exactly specified data."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .dagger import DaggerStructure
from .fusion_ring import FusionRing
from .scalar import Cyclotomic
from .skeletal import SkeletalData, f_tuples

NAMES = ("trivial", "fibonacci", "yang_lee", "ising", "semion", "vec_z2_symmetric", "toric_code")


@dataclass(frozen=True)
class ZooEntry:
    name: str
    data: SkeletalData
    dagger: DaggerStructure
    expected: dict = field(default_factory=dict)


def _ring(labels, rules, dual=None) -> FusionRing:
    """``rules`` maps ``(a, b)`` to the list of outcomes; unit rows are added."""
    r = len(labels)
    N = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        N[0, a, a] = N[a, 0, a] = 1
    for (a, b), cs in rules.items():
        for c in cs:
            N[a, b, c] = 1
    return FusionRing(tuple(labels), tuple(dual or range(r)), N)


def _fill_f(ring: FusionRing, special: dict, one) -> dict:
    """All non-unit F entries: ``special`` where given, 1 elsewhere."""
    return {t: special.get(t, one) for t in f_tuples(ring) if 0 not in t[:3]}


def _trivial() -> ZooEntry:
    ring = _ring(["1"], {})
    one = Cyclotomic.rational(1)
    data = SkeletalData(ring, {}, {}, (one,), (one,), name="trivial")
    return ZooEntry("trivial", data, DaggerStructure.canonical(ring),
                    {"center": ["1"], "hermitian": True, "modular": True})


def _fib_like(name: str, galois: bool) -> ZooEntry:
    ring = _ring(["1", "tau"], {(1, 1): [0, 1]})
    phi = (1 + math.sqrt(5)) / 2
    if not galois:
        F = [[1 / phi, phi ** -0.5], [phi ** -0.5, -1 / phi]]
        r1, rt, th = cmath.exp(-4j * math.pi / 5), cmath.exp(3j * math.pi / 5), cmath.exp(4j * math.pi / 5)
    else:
        # zeta_5 -> zeta_5^2 applied to the Fibonacci solution
        F = [[-phi, 1j * math.sqrt(phi)], [1j * math.sqrt(phi), phi]]
        r1, rt, th = cmath.exp(2j * math.pi / 5), cmath.exp(1j * math.pi / 5), cmath.exp(-2j * math.pi / 5)
    special = {(1, 1, 1, 1, e, f): F[e][f] for e, f in product((0, 1), repeat=2)}
    data = SkeletalData(
        ring, _fill_f(ring, special, 1.0),
        R={(1, 1, 0): r1, (1, 1, 1): rt},
        twist=(1.0, th), pivotal=(1.0, 1.0), name=name)
    # the conjugate solution is pseudo-unitary: F^H G F = G for G = diag(-1, 1)
    dag = DaggerStructure({(1, 1, 0): -1.0}) if galois else DaggerStructure.canonical(ring)
    return ZooEntry(name, data, dag, {"center": ["1"], "hermitian": not galois, "modular": True})


def _ising() -> ZooEntry:
    ring = _ring(["1", "sigma", "psi"], {(1, 1): [0, 2], (1, 2): [1], (2, 1): [1], (2, 2): [0]})
    z = lambda k: Cyclotomic.zeta(16, k)  # noqa: E731
    s = Cyclotomic.sqrt2().lift(16) / 2
    special = {
        (1, 1, 1, 1, 0, 0): s, (1, 1, 1, 1, 0, 2): s,
        (1, 1, 1, 1, 2, 0): s, (1, 1, 1, 1, 2, 2): -s,
        (2, 1, 2, 1, 1, 1): Cyclotomic.rational(-1),
        (1, 2, 1, 2, 1, 1): Cyclotomic.rational(-1),
    }
    R = {(1, 1, 0): z(-1), (1, 1, 2): z(3), (1, 2, 1): z(12), (2, 1, 1): z(12),
         (2, 2, 0): Cyclotomic.rational(-1)}
    one = Cyclotomic.rational(1)
    data = SkeletalData(ring, _fill_f(ring, special, one), R, (one, z(1), -one), (one, one, one),
                        name="ising")
    return ZooEntry("ising", data, DaggerStructure.canonical(ring),
                    {"center": ["1"], "hermitian": True, "modular": True})


def _z2(name: str, f_sign: int, r: Cyclotomic, theta: Cyclotomic, t: int, label: str) -> SkeletalData:
    ring = _ring(["1", label], {(1, 1): [0]})
    one = Cyclotomic.rational(1)
    F = {(1, 1, 1, 1, 0, 0): Cyclotomic.rational(f_sign)}
    return SkeletalData(ring, F, {(1, 1, 0): r}, (one, theta), (one, Cyclotomic.rational(t)), name=name)


def _semion() -> ZooEntry:
    i = Cyclotomic.zeta(4)
    data = _z2("semion", -1, i, i, -1, "s")
    return ZooEntry("semion", data, DaggerStructure.canonical(data.ring),
                    {"center": ["1"], "hermitian": True, "modular": True})


def _vec_z2_symmetric() -> ZooEntry:
    one = Cyclotomic.rational(1)
    data = _z2("vec_z2_symmetric", 1, one, one, 1, "x")
    return ZooEntry("vec_z2_symmetric", data, DaggerStructure.canonical(data.ring),
                    {"center": ["1", "x"], "hermitian": True, "modular": False})


def _toric_code() -> ZooEntry:
    bits = [(0, 0), (1, 0), (0, 1), (1, 1)]
    idx = {b: k for k, b in enumerate(bits)}
    rules = {}
    for a, b in product(range(4), repeat=2):
        rules[(a, b)] = [idx[((bits[a][0] + bits[b][0]) % 2, (bits[a][1] + bits[b][1]) % 2)]]
    ring = _ring(["1", "e", "m", "f"], rules)
    one = Cyclotomic.rational(1)
    R = {}
    for a, b in product(range(1, 4), repeat=2):
        c = rules[(a, b)][0]
        R[(a, b, c)] = Cyclotomic.rational((-1) ** (bits[a][1] * bits[b][0]))
    theta = tuple(Cyclotomic.rational((-1) ** (x * y)) for x, y in bits)
    data = SkeletalData(ring, _fill_f(ring, {}, one), R, theta, (one,) * 4, name="toric_code")
    return ZooEntry("toric_code", data, DaggerStructure.canonical(ring),
                    {"center": ["1"], "hermitian": True, "modular": True})


_BUILDERS = {
    "trivial": _trivial,
    "fibonacci": lambda: _fib_like("fibonacci", False),
    "yang_lee": lambda: _fib_like("yang_lee", True),
    "ising": _ising,
    "semion": _semion,
    "vec_z2_symmetric": _vec_z2_symmetric,
    "toric_code": _toric_code,
}

_CACHE: dict = {}


def builtin(name: str) -> ZooEntry:
    """Return the named built-in category (cached; entries are immutable)."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown zoo entry {name!r}; available: {', '.join(NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def all_entries() -> list[ZooEntry]:
    return [builtin(n) for n in NAMES]
