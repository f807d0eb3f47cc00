"""State-space dimensions, torus modular relations and surgery invariants.

Normalizations use ``D = sqrt(sum_a d_a^2) > 0``.  For a surgery link with
``n`` components and linking matrix of signature ``sigma``::

    Z = D^{-1} (p_+ / D)^{-sigma} D^{-n} <L(omega)>,   omega = sum_a d_a a

where ``<.>`` is the unnormalized link evaluation, so the unknot colored ``a``
evaluates to ``d_a`` and a framing ``f`` contributes ``theta_a^f``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .modular import ModularData, s_t_matrices
from .reports import ValidationReport
from .skeletal import SkeletalData

MAX_GENUS = 6
MAX_PUNCTURES = 6
MAX_COMPONENTS = 8


class IntegralityError(ValueError):
    """A state-space dimension did not come out integral."""


class NonModularError(ValueError):
    pass


class NonModularWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "punctures", tuple(self.punctures))
        if not 0 <= self.genus <= MAX_GENUS:
            raise ValueError(f"genus {self.genus} outside 0..{MAX_GENUS}")
        if len(self.punctures) > MAX_PUNCTURES:
            raise ValueError(f"{len(self.punctures)} punctures exceeds the cap {MAX_PUNCTURES}")


@dataclass(frozen=True)
class SurgerySpec:
    """Framed unlink, or a linear Hopf chain when ``chain`` is set.

    In a chain, consecutive components link once and nothing else links.
    """

    framings: tuple = ()
    chain: bool = False

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        if len(self.framings) > MAX_COMPONENTS:
            raise ValueError(f"{len(self.framings)} components exceeds the cap {MAX_COMPONENTS}")

    def linking_matrix(self) -> np.ndarray:
        n = len(self.framings)
        L = np.diag(np.array(self.framings, dtype=float)) if n else np.zeros((0, 0))
        if self.chain:
            for i in range(n - 1):
                L[i, i + 1] = L[i + 1, i] = 1.0
        return L

    def signature(self) -> int:
        L = self.linking_matrix()
        if not L.size:
            return 0
        ev = np.linalg.eigvalsh(L)
        return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


@dataclass
class TqftReport:
    value: complex
    normalization: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        norm = {k: ([v.real, v.imag] if isinstance(v, complex) else v)
                for k, v in self.normalization.items()}
        return {"value": [self.value.real, self.value.imag], "normalization": norm}


def _modular(data: SkeletalData, md: ModularData | None) -> ModularData:
    return md if md is not None else s_t_matrices(data)


def verlinde_value(surface: SurfaceSpec, data: SkeletalData, md: ModularData | None = None) -> complex:
    """``sum_a (D/d_a)^{2g-2} prod_i S_{a,l_i} / S_{a,0}`` before rounding."""
    md = _modular(data, md)
    ring = data.ring
    S = md.s_complex()
    d = np.array([complex(x) for x in md.qdims])
    D = md.global_dim
    lam = [ring.index(p) for p in surface.punctures]
    total = 0j
    for a in range(ring.rank):
        term = (D / d[a]) ** (2 * surface.genus - 2)
        for l in lam:
            term *= S[a, l] / S[a, 0]
        total += term
    return complex(total)


def state_space_dim(surface: SurfaceSpec, data: SkeletalData, md: ModularData | None = None,
                    tol: float = 1e-6) -> int:
    """Dimension of the state space of a punctured surface (Verlinde-type sum)."""
    md = _modular(data, md)
    if not md.is_modular():
        warnings.warn("S-matrix is singular: the dimension formula is not a TQFT dimension here",
                      NonModularWarning, stacklevel=2)
    val = verlinde_value(surface, data, md)
    n = round(val.real)
    if abs(val - n) > tol or n < 0:
        raise IntegralityError(f"Verlinde sum {val:.10g} is not a non-negative integer")
    return int(n)


def closed_invariant(surgery: SurgerySpec, data: SkeletalData,
                     md: ModularData | None = None) -> TqftReport:
    """Invariant of the closed 3-manifold obtained by surgery on an unlink or Hopf chain."""
    md = _modular(data, md)
    if not md.is_modular():
        raise NonModularError("closed invariants need an invertible S-matrix")
    S = md.s_complex()
    d = np.array([complex(x) for x in md.qdims])
    th = np.array([complex(x) for x in data.twist])
    D = md.global_dim
    pplus = complex(md.gauss_plus)
    fr = surgery.framings
    n = len(fr)
    if n == 0:
        raw = 1.0 + 0j
    elif not surgery.chain or n == 1:
        raw = complex(np.prod([np.sum(d * d * th ** f) for f in fr]))
    else:
        # transfer matrix: interior colors are divided by d once
        v = d * th ** fr[0]
        for i in range(1, n):
            v = v @ S
            v = v * d * th ** fr[i]
            if i < n - 1:
                v = v / d
        raw = complex(np.sum(v))
    sigma = surgery.signature()
    anomaly = (pplus / D) ** (-sigma)
    prefactor = D ** (-1 - n)
    return TqftReport(complex(prefactor * anomaly * raw), {
        "D": D, "sigma": sigma, "gauss_plus": pplus, "anomaly": complex(anomaly),
        "prefactor": prefactor, "raw_sum": raw,
    })


def torus_mcg_check(data: SkeletalData, tol: float = 1e-9,
                    md: ModularData | None = None) -> ValidationReport:
    """``(S T)^3 = p_+ S^2`` and ``S^2 = D^2 C`` for the unnormalized matrices.

    The first relation in this form holds when every simple is self-dual up
    to the charge conjugation commuting with ``T``; it is checked as stated.
    """
    md = _modular(data, md)
    rep = ValidationReport("torus_mcg")
    if not md.is_modular(tol):
        rep.record("modular", ("S invertible",), False)
        rep.notes["non_modular"] = True
        return rep
    S, T = md.s_complex(), md.t_complex()
    r = data.rank
    C = np.zeros((r, r))
    for a in range(r):
        C[a, data.ring.dual[a]] = 1.0
    D2 = complex(md.global_dim_sq)
    pp = complex(md.gauss_plus)
    lhs = np.linalg.matrix_power(S @ T, 3)
    res1 = float(np.linalg.norm(lhs - pp * S @ S, 2))
    res2 = float(np.linalg.norm(S @ S - D2 * C, 2))
    rep.record("ST_cubed", ("(ST)^3 = p+ S^2",), res1 <= tol)
    rep.record("S_squared", ("S^2 = D^2 C",), res2 <= tol)
    rep.max_residual = max(res1, res2)
    rep.notes["residuals"] = {"ST_cubed": float(f"{res1:.3e}"), "S_squared": float(f"{res2:.3e}")}
    return rep
