from __future__ import annotations

import cmath
import math
from dataclasses import replace
from itertools import product

import numpy as np
import pytest

from ribbonkit import zoo
from ribbonkit.dagger import dagger
from ribbonkit.fusion_ring import fp_dimensions
from ribbonkit.modular import s_t_matrices
from ribbonkit.scalar import approx
from ribbonkit.treecalc import (
    EmptyHomSpaceError, MissingPivotalError, StrandCapError, TypeMismatchError, braid_generator,
    braid_rep, channel_projector, cup_cap, dimension, duality, fusion_trees, hom_dim,
    identity_on, monodromy, partial_trace, quantum_trace, zigzag_composites,
)

PHI = (1 + math.sqrt(5)) / 2


def paths_oracle(ring, leaves, root) -> int:
    """Number of fusion paths as a product of fusion matrices."""
    v = np.zeros(ring.rank, dtype=np.int64)
    v[0] = 1
    for a in leaves:
        v = v @ ring.N[a]
    return int(v[root])


def dense(m) -> np.ndarray:
    return m.to_complex().entries


# -- hom spaces --------------------------------------------------------------------

def test_hom_dim_examples(fib, ising):
    assert hom_dim(["tau"] * 3, "tau", fib.ring) == 2
    assert hom_dim(["sigma"] * 4, "1", ising.ring) == 2
    for a in range(ising.rank):
        assert hom_dim([a], a, ising.ring) == 1


@pytest.mark.parametrize("name", zoo.NAMES)
def test_hom_dim_matches_matrix_products(name):
    ring = zoo.builtin(name).data.ring
    for n in range(1, 5):
        for leaves in product(range(ring.rank), repeat=n):
            for root in range(ring.rank):
                assert hom_dim(list(leaves), root, ring) == paths_oracle(ring, leaves, root)


# -- braid group ---------------------------------------------------------------------

def test_fibonacci_three_strand_generators(fib):
    s1, s2 = braid_rep(3, "tau", "tau", fib)
    want = np.diag([cmath.exp(-4j * math.pi / 5), cmath.exp(3j * math.pi / 5)])
    assert np.allclose(dense(s1), want, atol=1e-12)
    F = np.array([[fib.f(1, 1, 1, 1, e, f) for f in (0, 1)] for e in (0, 1)], dtype=complex)
    # sigma2 = F^{-1} sigma1 F in the left-nested basis (F is an involution here)
    assert np.allclose(dense(s2), np.linalg.inv(F) @ want @ F, atol=1e-12)


@pytest.mark.parametrize("name", [n for n in zoo.NAMES if n != "trivial"])
def test_two_strand_generator_is_diagonal_r(name):
    data = zoo.builtin(name).data
    for a, b in product(range(data.rank), repeat=2):
        g = braid_generator((a, b), 0, data)
        for j, t in enumerate(g.source):
            i = g.target.index(type(t)((b, a), t.root, t.internal))
            assert abs(complex(g.entries[i, j]) - complex(data.r(a, b, t.root))) < 1e-12


def test_ising_generators_are_eighth_roots(ising):
    s1, s2 = braid_rep(3, "sigma", "sigma", ising)
    ev = np.linalg.eigvals(dense(s1))
    assert np.allclose(np.abs(ev), 1.0)
    for z in ev:
        k = cmath.phase(z) / (2 * math.pi / 16)
        assert abs(k - round(k)) < 1e-9
    assert np.allclose(dense(s1 @ s2 @ s1), dense(s2 @ s1 @ s2), atol=1e-12)


@pytest.mark.parametrize("name", zoo.NAMES)
@pytest.mark.parametrize("n", [3, 4])
def test_braid_relations(name, n):
    data = zoo.builtin(name).data
    for a, root in product(range(data.rank), repeat=2):
        if not fusion_trees([a] * n, data.ring, root):
            continue
        gens = braid_rep(n, a, root, data)
        for i in range(n - 2):
            lhs = gens[i] @ gens[i + 1] @ gens[i]
            rhs = gens[i + 1] @ gens[i] @ gens[i + 1]
            assert lhs.residual(rhs) <= 1e-9
        for i, j in product(range(n - 1), repeat=2):
            if abs(i - j) >= 2:
                assert (gens[i] @ gens[j]).residual(gens[j] @ gens[i]) <= 1e-9


@pytest.mark.parametrize("name", zoo.NAMES)
def test_inverse_crossing(name):
    data = zoo.builtin(name).data
    for word in product(range(data.rank), repeat=3):
        for i in (0, 1):
            g = braid_generator(word, i, data)
            gi = braid_generator(g.target[0].leaves, i, data, inverse_=True) if g.target else None
            if gi is not None:
                assert (gi @ g).residual(identity_on(word, data)) <= 1e-9


# -- monodromy ---------------------------------------------------------------------------

def test_monodromy_examples(fib):
    assert np.allclose(dense(monodromy("1", "tau", fib)), np.eye(1))
    want = np.diag([cmath.exp(-8j * math.pi / 5), cmath.exp(6j * math.pi / 5)])
    assert np.allclose(dense(monodromy("tau", "tau", fib)), want, atol=1e-12)
    toric = zoo.builtin("toric_code").data
    m = monodromy("e", "m", toric)
    assert m.entries.shape == (1, 1) and m.entries[0, 0] == -1


@pytest.mark.parametrize("name", zoo.NAMES)
def test_trace_of_monodromy_equals_closed_formula(name):
    data = zoo.builtin(name).data
    S = s_t_matrices(data).s_complex()
    for a, b in product(range(data.rank), repeat=2):
        assert abs(complex(quantum_trace(monodromy(a, b, data), data)) - S[a, b]) <= 1e-9


# -- duality and traces ------------------------------------------------------------------

@pytest.mark.parametrize("name", zoo.NAMES)
def test_zigzags_exact(name):
    data = zoo.builtin(name).data
    for a in range(data.rank):
        for key, m in zigzag_composites(a, data, duality(a, data)).items():
            if data.exact:
                assert m.entries[0, 0] == 1, key
            else:
                assert abs(complex(m.entries[0, 0]) - 1) <= 1e-12, key


@pytest.mark.parametrize("name", ["trivial", "fibonacci", "ising", "semion", "toric_code"])
def test_loop_equals_fp_dimension(name):
    data = zoo.builtin(name).data
    fp = fp_dimensions(data.ring)
    for a in range(data.rank):
        coev, ev = cup_cap(a, data)
        pair = duality(a, data)
        assert coev.entries.shape == (1, 1) and ev.entries.shape == (1, 1)
        loop = (pair.ev_r @ coev).entries[0, 0]
        assert abs(complex(loop) - fp[a]) <= 1e-9
        assert abs(complex(quantum_trace(identity_on([a], data), data)) - fp[a]) <= 1e-9


def test_yang_lee_dimension(yang_lee):
    assert abs(complex(dimension(1, yang_lee)) - (1 - math.sqrt(5)) / 2) <= 1e-12


def test_trace_of_zero_is_zero(fib):
    f = identity_on([1, 1], fib).scaled(0)
    assert quantum_trace(f, fib) == 0


@pytest.mark.parametrize("name", zoo.NAMES)
def test_trace_cyclicity(name):
    data = zoo.builtin(name).data
    for a in range(data.rank):
        g1, g2 = (braid_generator([a] * 3, i, data) for i in (0, 1))
        p = g1 @ g2 @ g2
        q = g2 @ g2 @ g1
        assert abs(approx(quantum_trace(p, data)) - approx(quantum_trace(q, data))) <= 1e-9


@pytest.mark.parametrize("name", zoo.NAMES)
def test_partial_trace_preserves_full_trace(name):
    data = zoo.builtin(name).data
    for a, b in product(range(data.rank), repeat=2):
        g = braid_generator([a, b, b], 1, data)
        h = g @ braid_generator([a, b, b], 0, data) if a == b else g
        full = approx(quantum_trace(h, data))
        assert abs(approx(quantum_trace(partial_trace(h, data), data)) - full) <= 1e-9


def test_partial_trace_of_crossing_is_twist(fib):
    # closing one strand of the self-crossing c_{t,t} gives theta_t id_t
    g = braid_generator([1, 1], 0, fib)
    out = partial_trace(g, fib)
    assert abs(complex(out.entries[0, 0]) - complex(fib.theta(1))) <= 1e-12


def test_projector_trace(fib):
    p = channel_projector(1, 1, 0, fib)
    assert abs(complex(quantum_trace(p, fib)) - 1) <= 1e-12
    q = channel_projector(1, 1, 1, fib)
    assert abs(complex(quantum_trace(q, fib)) - PHI) <= 1e-12


@pytest.mark.parametrize("name", ["trivial", "fibonacci", "ising", "semion", "toric_code"])
def test_positive_traces_in_hermitian_categories(name):
    e = zoo.builtin(name)
    for a, root in product(range(e.data.rank), repeat=2):
        if not fusion_trees([a] * 3, e.data.ring, root):
            continue
        for g in braid_rep(3, a, root, e.data):
            assert approx(quantum_trace(dagger(g, e.dagger) @ g, e.data)).real >= -1e-12


def test_negative_trace_in_yang_lee():
    e = zoo.builtin("yang_lee")
    g = braid_rep(3, "tau", "tau", e.data)[0]
    assert approx(quantum_trace(dagger(g, e.dagger) @ g, e.data)).real < -0.1


# -- errors --------------------------------------------------------------------------

def test_errors(fib, ising):
    with pytest.raises(StrandCapError):
        braid_rep(9, "tau", "tau", fib)
    with pytest.raises(EmptyHomSpaceError):
        braid_rep(3, "sigma", "1", ising)
    s1 = braid_generator([1, 1, 1], 0, fib)
    with pytest.raises(TypeMismatchError):
        identity_on([1, 1], fib) @ s1
    with pytest.raises(TypeMismatchError):
        quantum_trace(braid_generator([0, 1], 0, fib), fib)
    with pytest.raises(MissingPivotalError):
        duality(1, replace(fib, pivotal=None))
    with pytest.raises(ValueError):
        braid_generator([1, 1], 1, fib)
