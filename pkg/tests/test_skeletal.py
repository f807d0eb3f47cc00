from __future__ import annotations

import cmath
import math
from dataclasses import replace
from itertools import product

import numpy as np
import pytest
import sympy as sp

from ribbonkit import zoo
from ribbonkit.skeletal import (
    InvalidDataError, MissingEntryError, ZeroGaugeError, check_all, check_hexagon,
    check_pentagon, check_ribbon, check_zigzag, gauge_transform, random_gauge,
)
from ribbonkit.treecalc import Duality, duality

def verdicts(data):
    return [r.passed for r in check_all(data)]


def with_f(data, key, value):
    F = dict(data.F)
    F[key] = value
    return replace(data, F=F, mode="")


# -- independent pentagon oracle ---------------------------------------------------

def sympy_fib_pentagon(F4):
    """All Fibonacci pentagon equations in sympy, with ``F4`` the 2x2 block F^{ttt}_t.

    Labels are 0/1; F is 1 on every admissible tuple except the block.
    """
    def N(a, b, c):
        if a == 0:
            return b == c
        if b == 0:
            return a == c
        return True  # t x t = 1 + t

    def F(a, b, c, d, e, f):
        if (a, b, c, d) == (1, 1, 1, 1):
            return F4[e, f]
        return sp.Integer(1)

    residuals = []
    r = (0, 1)
    for a, b, c, d, e, f, g, k, l in product(r, repeat=9):
        if not (N(a, b, f) and N(f, c, g) and N(g, d, e) and N(c, d, l) and N(f, l, e)
                and N(b, l, k) and N(a, k, e)):
            continue
        lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k)
        rhs = sum(F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l)
                  for h in r if N(b, c, h) and N(a, h, g) and N(h, d, k))
        residuals.append(sp.nsimplify(sp.simplify(lhs - rhs)))
    return residuals


def test_fibonacci_pentagon_oracle_in_sympy():
    phi = (1 + sp.sqrt(5)) / 2
    good = sp.Matrix([[1 / phi, 1 / sp.sqrt(phi)], [1 / sp.sqrt(phi), -1 / phi]])
    assert all(r == 0 for r in sympy_fib_pentagon(good))
    bad = good.copy()
    bad[1, 1] = 1 / phi
    assert any(r != 0 for r in sympy_fib_pentagon(bad))


def test_fibonacci_pentagon_passes(fib):
    phi = (1 + math.sqrt(5)) / 2
    block = np.array([[fib.f(1, 1, 1, 1, e, f) for f in (0, 1)] for e in (0, 1)])
    assert np.allclose(block, [[1 / phi, phi ** -0.5], [phi ** -0.5, -1 / phi]], atol=1e-12)
    assert check_pentagon(fib).passed


def test_rank_one_all_pass():
    assert all(verdicts(zoo.builtin("trivial").data))


def test_pentagon_sign_flip_names_instance(fib):
    bad = with_f(fib, (1, 1, 1, 1, 1, 1), -fib.f(1, 1, 1, 1, 1, 1))
    rep = check_pentagon(bad)
    assert not rep.passed
    w = rep.first_failure()
    assert w.kind == "pentagon" and len(w.key) == 9 and w.residual() > 1e-3


def test_hexagon_example_values(fib):
    assert abs(complex(fib.r(1, 1, 0)) - cmath.exp(-4j * math.pi / 5)) < 1e-12
    assert abs(complex(fib.r(1, 1, 1)) - cmath.exp(3j * math.pi / 5)) < 1e-12
    assert check_hexagon(fib).passed


def test_hexagon_failure(fib):
    R = dict(fib.R)
    R[(1, 1, 1)] = 1.0
    rep = check_hexagon(replace(fib, R=R))
    assert not rep.passed and rep.first_failure().kind.startswith("hexagon")


def test_ribbon_examples(fib):
    assert abs(complex(fib.theta(1)) - cmath.exp(4j * math.pi / 5)) < 1e-12
    assert check_ribbon(fib).passed
    rep = check_ribbon(replace(fib, twist=(1.0, 1.0)))
    assert not rep.passed
    assert (1, 1, 1) in [f.key for f in rep.failures if f.kind == "twist_channel"]


def test_zigzag_examples(fib):
    assert check_zigzag(fib).passed
    assert check_zigzag(zoo.builtin("trivial").data).passed


def test_ising_zigzag_fails_with_unrescaled_cap(ising):
    one = ising.one()
    minus = ising.with_pivotal((one, -one, one))
    plus = ising.with_pivotal((one, one, one))
    p, m = duality(1, plus), duality(1, minus)
    assert check_zigzag(minus).passed
    # right cup rescaled by t_sigma = -1, right cap left alone
    mixed = Duality(m.coev, m.ev, m.coev_r, p.ev_r)
    rep = check_zigzag(minus, caps={1: mixed})
    assert not rep.passed
    vals = {f.kind: f.lhs for f in rep.failures}
    assert set(vals) >= {"right_a"} and all(v == -1 for v in vals.values())


def test_missing_entry_raises(fib):
    F = dict(fib.F)
    del F[(1, 1, 1, 1, 0, 1)]
    bad = replace(fib, F=F, mode="")
    with pytest.raises(MissingEntryError):
        bad.check_complete()


def test_unit_entry_must_be_one(fib):
    with pytest.raises(InvalidDataError):
        with_f(fib, (0, 1, 1, 0, 1, 1) if (0, 1, 1, 0, 1, 1) in fib.F else (0, 1, 1, 1, 1, 1), 2.0)


def test_inadmissible_entry_rejected(fib):
    with pytest.raises(InvalidDataError):
        with_f(fib, (1, 0, 1, 1, 0, 1), 1.0)


# -- gauges ----------------------------------------------------------------------

def test_identity_gauge_is_noop(entry):
    g = gauge_transform(entry.data, {})
    assert g.F == entry.data.F and g.R == entry.data.R


def gauge_oracle(F, g, e, f):
    """F^{ttt}_t entry after the vertex gauge, evaluated term by term."""
    gv = lambda a, b, c: g.get((a, b, c), 1)  # noqa: E731
    return F * gv(1, 1, e) * gv(e, 1, 1) / (gv(1, 1, f) * gv(1, f, 1))


@pytest.mark.parametrize("g, flips", [
    ({(1, 1, 1): -1}, False),  # the two factors of g(t,t,t) cancel in every entry
    ({(1, 1, 0): -1}, True),   # the vacuum vertex carries the off-diagonal sign
])
def test_fibonacci_sign_gauges(fib, g, flips):
    out = gauge_transform(fib, g)
    for e, f in product((0, 1), repeat=2):
        want = gauge_oracle(complex(fib.f(1, 1, 1, 1, e, f)), g, e, f)
        assert abs(complex(out.f(1, 1, 1, 1, e, f)) - want) < 1e-12
        sign = -1 if flips and e != f else 1
        assert abs(complex(out.f(1, 1, 1, 1, e, f)) - sign * complex(fib.f(1, 1, 1, 1, e, f))) < 1e-12
    assert check_pentagon(out).passed and check_hexagon(out).passed


def test_zero_gauge_rejected(fib):
    with pytest.raises(ZeroGaugeError):
        gauge_transform(fib, {(1, 1, 1): 0})


@pytest.mark.parametrize("name", zoo.NAMES)
def test_verdicts_invariant_under_100_random_gauges(name):
    data = zoo.builtin(name).data
    base = verdicts(data)
    assert all(base)
    rng = np.random.default_rng(7)
    kinds = ["rational", "complex", "phase"]
    for k in range(100):
        g = random_gauge(data.ring, rng, kinds[k % 3])
        assert verdicts(gauge_transform(data, g)) == base


@pytest.mark.parametrize("name", ["ising", "semion", "toric_code"])
def test_exact_gauge_stays_exact(name):
    data = zoo.builtin(name).data
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = gauge_transform(data, random_gauge(data.ring, rng, "rational"))
        assert g.exact and all(verdicts(g))


@pytest.mark.parametrize("name", ["ising", "semion", "toric_code", "vec_z2_symmetric", "trivial"])
def test_exact_and_approx_verdicts_agree(name):
    data = zoo.builtin(name).data
    assert data.exact
    assert verdicts(data) == verdicts(data.to_approx())
    if data.rank == 1:
        return
    # a broken variant must also fail identically in both modes
    key = min(k for k in data.R if 0 not in k[:2])
    R = dict(data.R)
    R[key] = R[key] * 2
    broken = replace(data, R=R, mode="")
    assert broken.exact
    assert verdicts(broken) == verdicts(broken.to_approx())
    assert not all(verdicts(broken))


@pytest.mark.parametrize("name", [n for n in zoo.NAMES])
def test_ribbon_identity_per_channel(name):
    data = zoo.builtin(name).data
    for a, b, c in data.ring.channels():
        lhs = complex(data.theta(c)) / (complex(data.theta(a)) * complex(data.theta(b)))
        rhs = complex(data.r(a, b, c)) * complex(data.r(b, a, c))
        assert abs(lhs - rhs) < 1e-9
