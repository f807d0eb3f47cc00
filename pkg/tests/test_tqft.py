from __future__ import annotations

import warnings

import numpy as np
import pytest

from conftest import MODULAR
from ribbonkit import zoo
from ribbonkit.modular import s_t_matrices
from ribbonkit.tqft import (
    MAX_COMPONENTS, MAX_GENUS, NonModularError, NonModularWarning, SurfaceSpec, SurgerySpec,
    closed_invariant, state_space_dim, torus_mcg_check, verlinde_value,
)

PHI = (1 + 5 ** 0.5) / 2


def count_oracle(ring, genus: int, punctures=()) -> int:
    """Fusion-tree count: ``[H^g N_l1 ... N_ln]_{00}`` with handle operator ``H = sum_a N_a N_a*``."""
    Ns = [ring.N[a].astype(np.int64) for a in range(ring.rank)]
    H = sum(Ns[a] @ Ns[ring.dual[a]] for a in range(ring.rank))
    M = np.linalg.matrix_power(H, genus)
    for p in punctures:
        M = M @ Ns[ring.index(p)]
    return int(M[0, 0])


def Z(data, framings, chain=False) -> complex:
    return closed_invariant(SurgerySpec(framings, chain), data).value


@pytest.mark.parametrize("name", MODULAR)
@pytest.mark.parametrize("genus", range(5))
def test_dimension_matches_tree_count(name, genus):
    data = zoo.builtin(name).data
    assert state_space_dim(SurfaceSpec(genus), data) == count_oracle(data.ring, genus)


@pytest.mark.parametrize("name", MODULAR)
def test_punctured_dimensions_match_tree_count(name):
    data = zoo.builtin(name).data
    labels = data.ring.labels
    for genus in range(3):
        for k in range(3):
            for punct in np.ndindex(*([data.rank] * k)):
                p = tuple(labels[i] for i in punct)
                assert state_space_dim(SurfaceSpec(genus, p), data) == count_oracle(data.ring, genus, p)


def test_genus_series():
    series = lambda n: [state_space_dim(SurfaceSpec(g), zoo.builtin(n).data) for g in range(5)]  # noqa: E731
    assert series("fibonacci") == [1, 2, 5, 15, 50]
    assert series("ising") == [1, 3, 10, 36, 136]
    assert series("semion") == [1, 2, 4, 8, 16]
    assert series("toric_code") == [1, 4, 16, 64, 256]


def test_fibonacci_genus_two_pre_rounding(fib):
    v = verlinde_value(SurfaceSpec(2), fib)
    assert abs(v - 5) <= 1e-6
    assert abs(v - (1 + PHI ** 2) * (1 + PHI ** -2)) <= 1e-9


def test_ising_punctured_torus(ising):
    assert state_space_dim(SurfaceSpec(1, ("psi",)), ising) == 1
    assert state_space_dim(SurfaceSpec(1, ("sigma",)), ising) == 0


@pytest.mark.parametrize("name", MODULAR)
def test_gluing(name):
    data = zoo.builtin(name).data
    ring = data.ring
    for g1 in range(5):
        for g2 in range(5 - g1):
            total = sum(state_space_dim(SurfaceSpec(g1, (ring.labels[a],)), data)
                        * state_space_dim(SurfaceSpec(g2, (ring.labels[ring.dual[a]],)), data)
                        for a in range(ring.rank))
            assert total == state_space_dim(SurfaceSpec(g1 + g2), data)


# -- closed invariants ----------------------------------------------------------------

@pytest.mark.parametrize("name", MODULAR)
def test_sphere_and_s2xs1(name):
    data = zoo.builtin(name).data
    D = s_t_matrices(data).global_dim
    assert abs(Z(data, ()) - 1 / D) <= 1e-9
    assert abs(Z(data, (0,)) - 1) <= 1e-9
    # (+1) and (-1) framed unknots are S^3 after the anomaly correction
    assert abs(Z(data, (1,)) - 1 / D) <= 1e-9
    assert abs(Z(data, (-1,)) - 1 / D) <= 1e-9


def test_fibonacci_sphere_value(fib):
    assert abs(Z(fib, ()) - (1 + PHI ** 2) ** -0.5) <= 1e-12
    assert abs(Z(fib, ()) - 0.5257311121) <= 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_kirby_moves(name):
    data = zoo.builtin(name).data
    D = s_t_matrices(data).global_dim
    s3 = 1 / D
    for f in range(-2, 3):
        # slam-dunk: a 0-framed meridian cancels any framed unknot
        assert abs(Z(data, (f, 0), chain=True) - s3) <= 1e-9
        # blow up: a disjoint +-1 unknot does not change the manifold
        assert abs(Z(data, (f, 1)) - Z(data, (f,))) <= 1e-9
        assert abs(Z(data, (f, -1)) - Z(data, (f,))) <= 1e-9
    # blow down a +1 unknot linked once with a +1 unknot: framing 0, so S^2 x S^1
    assert abs(Z(data, (1, 1), chain=True) - 1) <= 1e-9
    # connected sum with S^2 x S^1 multiplies by Z(S^2 x S^1) / Z(S^3) = D
    for fr in [(2,), (1, -3), (3, 3)]:
        assert abs(Z(data, fr + (0,)) - D * Z(data, fr)) <= 1e-9


def test_normalization_record(fib):
    rep = closed_invariant(SurgerySpec((1,)), fib)
    n = rep.normalization
    assert n["sigma"] == 1
    D = n["D"]
    assert abs(n["anomaly"] - D / n["gauss_plus"]) <= 1e-12
    assert abs(rep.value - n["prefactor"] * n["anomaly"] * n["raw_sum"]) <= 1e-12
    assert rep.to_dict()["value"] == [rep.value.real, rep.value.imag]


def test_lens_space_order(fib):
    # |Z(L(p,1))| from a p-framed unknot; L(1,1) = S^3 and L(0,1) = S^2 x S^1
    D = s_t_matrices(fib).global_dim
    assert abs(Z(fib, (1,)) - 1 / D) <= 1e-9
    v2 = Z(fib, (2,))
    S = s_t_matrices(fib).s_complex()
    T = s_t_matrices(fib).t_complex()
    # oracle: sum_a d_a^2 theta_a^2 written out by hand
    d = S[0]
    raw = np.sum(d * d * np.diag(T) ** 2)
    p = np.sum(d * d * np.diag(T))
    assert abs(v2 - raw / D ** 2 * (D / p)) <= 1e-12


# -- torus relations -------------------------------------------------------------------

@pytest.mark.parametrize("name", MODULAR)
def test_torus_relations(name):
    rep = torus_mcg_check(zoo.builtin(name).data)
    assert rep.passed and rep.max_residual <= 1e-9


def test_torus_relations_non_modular():
    rep = torus_mcg_check(zoo.builtin("vec_z2_symmetric").data)
    assert not rep.passed and rep.notes["non_modular"]


# -- errors -------------------------------------------------------------------------------

def test_errors(fib):
    vec = zoo.builtin("vec_z2_symmetric").data
    with pytest.raises(NonModularError):
        closed_invariant(SurgerySpec(()), vec)
    with pytest.warns(NonModularWarning):
        state_space_dim(SurfaceSpec(1), vec)
    with pytest.raises(ValueError):
        SurfaceSpec(MAX_GENUS + 1)
    with pytest.raises(ValueError):
        SurgerySpec(tuple(range(MAX_COMPONENTS + 1)))
    with pytest.raises(KeyError):
        state_space_dim(SurfaceSpec(1, ("nope",)), fib)


def test_non_modular_dimensions_still_integral():
    vec = zoo.builtin("vec_z2_symmetric").data
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert state_space_dim(SurfaceSpec(0), vec) >= 0
