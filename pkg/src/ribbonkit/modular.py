"""Quantum dimensions, unnormalized S and T matrices, and the Mueger center."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _linalg
from .scalar import DEFAULT_TOL, approx, inverse, near_equal
from .skeletal import SkeletalData
from .treecalc import dimension, monodromy, quantum_trace


def quantum_dimensions(data: SkeletalData) -> list:
    """``d_a = tr(id_a)`` under the loaded pivotal structure."""
    return [dimension(a, data) for a in range(data.rank)]


def character_residual(data: SkeletalData, dims) -> float:
    """Max of ``|d_a d_b - sum_c N_ab^c d_c|``."""
    d = np.array([approx(x) for x in dims])
    return float(np.max(np.abs(np.outer(d, d) - np.einsum("abc,c->ab", data.ring.N, d))))


@dataclass
class ModularData:
    """Unnormalized modular data of a ribbon fusion category.

    ``s_tilde[a, b] = sum_c N_ab^c theta_c / (theta_a theta_b) d_c`` and
    ``t = diag(theta)``; the Gauss sums are ``p_pm = sum_a theta_a^{pm 1} d_a^2``.
    """

    qdims: list
    global_dim_sq: object
    s_tilde: np.ndarray
    t: np.ndarray
    gauss_plus: object
    gauss_minus: object

    @property
    def exact(self) -> bool:
        return self.s_tilde.dtype == object

    @property
    def global_dim(self) -> float:
        """Positive square root of ``D^2`` (real for every dimension vector here)."""
        return float(np.sqrt(approx(self.global_dim_sq).real))

    def is_modular(self, tol: float = DEFAULT_TOL) -> bool:
        """Whether ``s_tilde`` is invertible."""
        if self.exact:
            return not _linalg.det(self.s_tilde).is_zero()
        sv = np.linalg.svd(_linalg.to_complex(self.s_tilde), compute_uv=False)
        return bool(sv.min() > max(tol, 1e-8) * sv.max())

    def s_complex(self) -> np.ndarray:
        return _linalg.to_complex(self.s_tilde)

    def t_complex(self) -> np.ndarray:
        return _linalg.to_complex(self.t)


def s_t_matrices(data: SkeletalData) -> ModularData:
    ring = data.ring
    r = ring.rank
    d = quantum_dimensions(data)
    th = data.twist
    S = _linalg.zeros((r, r), data.exact)
    for a in range(r):
        for b in range(r):
            total = data.zero()
            for c in ring.outcomes(a, b):
                total = total + th[c] * inverse(th[a] * th[b]) * d[c]
            S[a, b] = total
    T = _linalg.zeros((r, r), data.exact)
    for a in range(r):
        T[a, a] = th[a]
    dsq = [x * x for x in d]
    D2 = sum(dsq[1:], dsq[0])
    pp = sum((th[a] * dsq[a] for a in range(1, r)), th[0] * dsq[0])
    pm = sum((inverse(th[a]) * dsq[a] for a in range(1, r)), inverse(th[0]) * dsq[0])
    return ModularData(d, D2, S, T, pp, pm)


def s_tilde_from_traces(data: SkeletalData) -> np.ndarray:
    """``S_ab = tr(c_{b,a} o c_{a,b})`` evaluated through the tree calculus."""
    r = data.rank
    S = _linalg.zeros((r, r), data.exact)
    for a in range(r):
        for b in range(r):
            S[a, b] = quantum_trace(monodromy(a, b, data), data)
    return S


def transparent_by_channels(data: SkeletalData, tol: float = DEFAULT_TOL) -> list[int]:
    """Labels ``a`` with ``R^{ab}_c R^{ba}_c = 1`` on every channel."""
    ring = data.ring
    out = []
    for a in range(ring.rank):
        if all(near_equal(data.r(a, b, c) * data.r(b, a, c), 1, tol)
               for b in range(ring.rank) for c in ring.outcomes(a, b)):
            out.append(a)
    return out


def transparent_by_s(data: SkeletalData, tol: float = DEFAULT_TOL,
                     md: ModularData | None = None) -> list[int]:
    """Labels ``a`` with ``S_ab = d_a d_b`` for every ``b``."""
    md = md or s_t_matrices(data)
    d = md.qdims
    return [a for a in range(data.rank)
            if all(near_equal(md.s_tilde[a, b], d[a] * d[b], tol) for b in range(data.rank))]


def muger_center(data: SkeletalData, tol: float = DEFAULT_TOL) -> list[str]:
    """Labels of the transparent simples (channel criterion)."""
    return [data.ring.labels[a] for a in transparent_by_channels(data, tol)]


@dataclass
class CenterReport:
    """Centre, transparent dimensions and positivity, side by side.

    No verdict about the relation between these predicates is drawn.
    """

    center: list
    center_by_s: list
    center_trivial: bool
    transparent: list = field(default_factory=list)
    classification: str = ""
    modular: bool = False

    @property
    def criteria_agree(self) -> bool:
        return self.center == self.center_by_s

    def to_dict(self) -> dict:
        return {
            "center": list(self.center),
            "center_by_s": list(self.center_by_s),
            "criteria_agree": self.criteria_agree,
            "center_trivial": self.center_trivial,
            "modular": self.modular,
            "transparent": self.transparent,
            "classification": self.classification,
        }


def check_center(data: SkeletalData, tol: float = DEFAULT_TOL, dag=None) -> CenterReport:
    from .dagger import DaggerStructure, classify_positivity

    labels = data.ring.labels
    md = s_t_matrices(data)
    chan = transparent_by_channels(data, tol)
    by_s = transparent_by_s(data, tol, md)
    rows = []
    for a in chan:
        if a == 0:
            continue
        d = approx(md.qdims[a])
        rows.append({
            "label": labels[a],
            "dimension": [d.real, d.imag],
            "abs_dimension_is_one": bool(abs(abs(d) - 1) <= tol),
            "dimension_squared_equals_dimension": bool(near_equal(md.qdims[a] * md.qdims[a],
                                                                  md.qdims[a], tol)),
        })
    cls = classify_positivity(data, dag or DaggerStructure.canonical(), tol)
    return CenterReport(
        center=[labels[a] for a in chan],
        center_by_s=[labels[a] for a in by_s],
        center_trivial=chan == [0],
        transparent=rows,
        classification=cls.verdict,
        modular=md.is_modular(tol),
    )
