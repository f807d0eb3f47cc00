"""Skeletal coherence data (F, R, twist, pivotal) and the axiom verifiers.

Conventions
-----------
Fusion-tree kets are left-nested.  The F-move re-brackets three leaves::

    |((a b)_e c)_d>  =  sum_f  F[(a, b, c, d, e, f)]  |(a (b c)_f)_d>

and the braiding acts on an adjacent pair fused to ``c`` by
``c_{a,b} |(a b)_c> = R[(a, b, c)] |(b a)_c>``.  With these conventions the
pentagon reads::

    F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]

and the hexagon (for ``c`` and, with ``R^{xy}_z -> 1/R^{yx}_z``, for ``c^{-1}``)::

    R^{ab}_e F^{bac}_d[e,g] R^{ac}_g = sum_f F^{abc}_d[e,f] R^{af}_d F^{bca}_d[f,g]
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Mapping

import numpy as np

from . import _linalg
from .fusion_ring import FusionRing
from .reports import ValidationReport
from .scalar import (
    DEFAULT_TOL, Cyclotomic, approx, inverse, is_exact, near_equal, root_of_unity_order, to_exact,
)


class MissingEntryError(KeyError):
    """An admissible index tuple has no F or R entry."""

    def __str__(self):
        return str(self.args[0])


class InvalidDataError(ValueError):
    """Skeletal data violates a load-time invariant."""


class ZeroGaugeError(ValueError):
    pass


def f_admissible(ring: FusionRing, a, b, c, d, e, f) -> bool:
    N = ring.N
    return bool(N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d])


def f_tuples(ring: FusionRing) -> list[tuple]:
    """All admissible F index tuples in lexicographic order."""
    r = range(ring.rank)
    return [t for t in product(r, repeat=6) if f_admissible(ring, *t)]


@dataclass(frozen=True, eq=False)
class SkeletalData:
    """F-symbols, R-symbols, twists and pivotal coefficients over a fusion ring.

    ``R`` and ``twist`` are None for unbraided data.  ``mode`` is ``"exact"``
    when every stored value is a cyclotomic number, else ``"approx"``.
    """

    ring: FusionRing
    F: Mapping[tuple, object]
    R: Mapping[tuple, object] | None = None
    twist: tuple | None = None
    pivotal: tuple | None = None
    name: str = ""
    mode: str = field(default="", compare=False)

    def __post_init__(self):
        ring = self.ring
        if not ring.multiplicity_free:
            bad = next(t for t in ring.channels() if ring.N[t] > 1)
            raise InvalidDataError(
                f"fusion multiplicity {ring.N[bad]} at {bad}: F/R layer is multiplicity-free only")
        values = list(self.F.values())
        if self.R is not None:
            values += list(self.R.values())
        if self.twist is not None:
            values += list(self.twist)
        if self.pivotal is not None:
            values += list(self.pivotal)
        mode = "exact" if _linalg.all_exact(values) else "approx"
        if self.mode and self.mode != mode and not (self.mode == "approx"):
            raise InvalidDataError(f"declared mode {self.mode!r} but values require {mode!r}")
        mode = self.mode or mode
        conv = to_exact if mode == "exact" else complex
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "F", {tuple(int(i) for i in k): conv(v) for k, v in self.F.items()})
        if self.R is not None:
            object.__setattr__(self, "R", {tuple(int(i) for i in k): conv(v)
                                           for k, v in self.R.items()})
        if self.twist is not None:
            if len(self.twist) != ring.rank:
                raise InvalidDataError(f"twist has length {len(self.twist)}, expected {ring.rank}")
            object.__setattr__(self, "twist", tuple(conv(v) for v in self.twist))
        if self.pivotal is not None:
            if len(self.pivotal) != ring.rank:
                raise InvalidDataError(
                    f"pivotal has length {len(self.pivotal)}, expected {ring.rank}")
            object.__setattr__(self, "pivotal", tuple(conv(v) for v in self.pivotal))
        self._check_structure()
        object.__setattr__(self, "_finv_cache", {})

    def _check_structure(self):
        ring = self.ring
        for key in self.F:
            if len(key) != 6 or not f_admissible(ring, *key):
                raise InvalidDataError(f"F entry at inadmissible tuple {key}")
            if 0 in key[:3] and not near_equal(self.F[key], 1, 1e-12):
                raise InvalidDataError(f"unit-involving F entry {key} = {self.F[key]!r} is not 1")
        if self.R is not None:
            for key in self.R:
                if len(key) != 3 or not ring.admissible(*key):
                    raise InvalidDataError(f"R entry at inadmissible channel {key}")
                if 0 in key[:2] and not near_equal(self.R[key], 1, 1e-12):
                    raise InvalidDataError(f"unit-involving R entry {key} is not 1")
        if self.twist is not None and not near_equal(self.twist[0], 1, 1e-12):
            raise InvalidDataError("twist of the unit must be 1")
        if self.pivotal is not None and not near_equal(self.pivotal[0], 1, 1e-12):
            raise InvalidDataError("pivotal coefficient of the unit must be 1")

    # -- accessors ------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @property
    def braided(self) -> bool:
        return self.R is not None

    @property
    def rank(self) -> int:
        return self.ring.rank

    def one(self):
        return Cyclotomic.rational(1) if self.exact else 1.0 + 0j

    def zero(self):
        return Cyclotomic.rational(0) if self.exact else 0j

    def f(self, a, b, c, d, e, f):
        key = (a, b, c, d, e, f)
        if 0 in key[:3]:
            return self.F.get(key, self.one())
        try:
            return self.F[key]
        except KeyError:
            raise MissingEntryError(f"missing F entry at admissible tuple {key}") from None

    def r(self, a, b, c):
        if self.R is None:
            raise MissingEntryError("data carries no R-symbols")
        if a == 0 or b == 0:
            return self.R.get((a, b, c), self.one())
        try:
            return self.R[(a, b, c)]
        except KeyError:
            raise MissingEntryError(f"missing R entry at admissible channel {(a, b, c)}") from None

    def f_matrix(self, a, b, c, d):
        """``(rows e, cols f, matrix)`` of the F-move for ``a x b x c -> d``."""
        ring = self.ring
        es = [e for e in range(ring.rank) if ring.N[a, b, e] and ring.N[e, c, d]]
        fs = [f for f in range(ring.rank) if ring.N[b, c, f] and ring.N[a, f, d]]
        rows = [[self.f(a, b, c, d, e, f) for f in fs] for e in es]
        return es, fs, _linalg.as_array(rows, self.exact) if rows else _linalg.zeros((0, 0), self.exact)

    def f_inv(self, a, b, c, d, f, e):
        """Entry ``[f, e]`` of the inverse F-matrix."""
        cache = self._finv_cache
        key = (a, b, c, d)
        if key not in cache:
            es, fs, m = self.f_matrix(a, b, c, d)
            cache[key] = (es, fs, _linalg.inv(m))
        es, fs, mi = cache[key]
        return mi[fs.index(f), es.index(e)]

    def theta(self, a):
        if self.twist is None:
            raise MissingEntryError("data carries no twists")
        return self.twist[a]

    def pivotal_coeffs(self) -> tuple:
        if self.pivotal is None:
            return tuple(self.one() for _ in range(self.rank))
        return self.pivotal

    def with_pivotal(self, t) -> "SkeletalData":
        return replace(self, pivotal=tuple(t), mode="")

    def check_complete(self) -> None:
        """Raise :class:`MissingEntryError` for the first absent admissible tuple."""
        for key in f_tuples(self.ring):
            if 0 not in key[:3] and key not in self.F:
                raise MissingEntryError(f"missing F entry at admissible tuple {key}")
        if self.R is not None:
            for key in self.ring.channels():
                if 0 not in key[:2] and key not in self.R:
                    raise MissingEntryError(f"missing R entry at admissible channel {key}")
        for key in f_tuples(self.ring):
            a, b, c, d = key[:4]
            es, fs, m = self.f_matrix(a, b, c, d)
            if len(es) != len(fs):
                raise InvalidDataError(f"F-matrix {(a, b, c, d)} is not square")
            dt = _linalg.det(m)
            if (is_exact(dt) and to_exact(dt).is_zero()) or abs(complex(dt)) < 1e-12:
                raise InvalidDataError(f"F-matrix {(a, b, c, d)} is singular")

    def twist_report(self) -> dict:
        """Orders of the twists as roots of unity (exact mode only)."""
        if self.twist is None or not self.exact:
            return {}
        return {self.ring.labels[a]: root_of_unity_order(t) for a, t in enumerate(self.twist)}

    def to_approx(self) -> "SkeletalData":
        return replace(
            self,
            F={k: complex(v) for k, v in self.F.items()},
            R=None if self.R is None else {k: complex(v) for k, v in self.R.items()},
            twist=None if self.twist is None else tuple(complex(v) for v in self.twist),
            pivotal=None if self.pivotal is None else tuple(complex(v) for v in self.pivotal),
            mode="approx",
        )


def default_pivotal(data: SkeletalData) -> SkeletalData:
    if data.pivotal is not None:
        return data
    warnings.warn(f"{data.name or 'category'}: no pivotal coefficients given; using all ones",
                  stacklevel=2)
    return data.with_pivotal([data.one()] * data.rank)


# -- verifiers ------------------------------------------------------------------

def check_pentagon(data: SkeletalData, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Verify every pentagon instance; failures carry both sides."""
    ring = data.ring
    N = ring.N
    r = range(ring.rank)
    rep = ValidationReport("pentagon")
    for a, b, c, d, e in product(r, repeat=5):
        for f in ring.outcomes(a, b):
            for g in ring.outcomes(f, c):
                if not N[g, d, e]:
                    continue
                for l in ring.outcomes(c, d):
                    if not N[f, l, e]:
                        continue
                    for k in ring.outcomes(b, l):
                        if not N[a, k, e]:
                            continue
                        lhs = data.f(f, c, d, e, g, l) * data.f(a, b, l, e, f, k)
                        rhs = data.zero()
                        for h in ring.outcomes(b, c):
                            if N[a, h, g] and N[h, d, k]:
                                rhs = rhs + (data.f(a, b, c, g, f, h) * data.f(a, h, d, e, g, k)
                                             * data.f(b, c, d, k, h, l))
                        rep.record("pentagon", (a, b, c, d, e, f, g, k, l),
                                   near_equal(lhs, rhs, tol), lhs, rhs)
    return rep


def _hexagon_family(data: SkeletalData, rfun, kind: str, tol: float, rep: ValidationReport):
    ring = data.ring
    N = ring.N
    r = range(ring.rank)
    for a, b, c, d in product(r, repeat=4):
        for e in ring.outcomes(a, b):
            if not N[e, c, d]:
                continue
            for g in ring.outcomes(a, c):
                if not N[b, g, d]:
                    continue
                lhs = rfun(a, b, e) * data.f(b, a, c, d, e, g) * rfun(a, c, g)
                rhs = data.zero()
                for f in ring.outcomes(b, c):
                    if N[a, f, d]:
                        rhs = rhs + data.f(a, b, c, d, e, f) * rfun(a, f, d) * data.f(b, c, a, d, f, g)
                rep.record(kind, (a, b, c, d, e, g), near_equal(lhs, rhs, tol), lhs, rhs)


def check_hexagon(data: SkeletalData, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Both hexagon families: for the braiding and for its inverse."""
    rep = ValidationReport("hexagon")
    if not data.ring.commutative:
        rep.record("commutative_ring", (), False)
        return rep
    _hexagon_family(data, data.r, "hexagon", tol, rep)
    _hexagon_family(data, lambda x, y, z: inverse(data.r(y, x, z)), "hexagon_inverse", tol, rep)
    return rep


def check_ribbon(data: SkeletalData, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``theta_c = theta_a theta_b R^{ab}_c R^{ba}_c`` per channel and ``theta_{a*} = theta_a``."""
    rep = ValidationReport("ribbon")
    ring = data.ring
    for a, b, c in ring.channels():
        lhs = data.theta(c)
        rhs = data.theta(a) * data.theta(b) * data.r(a, b, c) * data.r(b, a, c)
        rep.record("twist_channel", (a, b, c), near_equal(lhs, rhs, tol), lhs, rhs)
    for a in range(ring.rank):
        lhs, rhs = data.theta(ring.dual[a]), data.theta(a)
        rep.record("twist_dual", (a,), near_equal(lhs, rhs, tol), lhs, rhs)
    return rep


def check_zigzag(data: SkeletalData, tol: float = DEFAULT_TOL, caps=None) -> ValidationReport:
    """Both zigzag identities for the left and the right (pivotal) duality pairs.

    ``caps`` optionally maps a label index to a :class:`~ribbonkit.treecalc.Duality`
    used instead of the canonical cups and caps.
    """
    from .treecalc import duality, zigzag_composites

    rep = ValidationReport("zigzag")
    data = data if data.pivotal is not None else data.with_pivotal([data.one()] * data.rank)
    for a in range(data.rank):
        pair = caps.get(a) if caps and a in caps else duality(a, data)
        for name, m in zigzag_composites(a, data, pair).items():
            val = m.entries[0, 0]
            rep.record(name, (a,), near_equal(val, 1, tol), val, 1)
    return rep


def check_all(data: SkeletalData, tol: float = DEFAULT_TOL) -> list[ValidationReport]:
    from .fusion_ring import validate_ring

    reports = [validate_ring(data.ring), check_pentagon(data, tol)]
    if data.braided:
        reports.append(check_hexagon(data, tol))
        if data.twist is not None:
            reports.append(check_ribbon(data, tol))
    reports.append(check_zigzag(data, tol))
    return reports


# -- gauge ------------------------------------------------------------------------

def gauge_transform(data: SkeletalData, g: Mapping[tuple, object]) -> SkeletalData:
    """Rescale every vertex ``|(a b)_c>`` by ``g[(a, b, c)]`` (missing channels: 1).

    ``F'[e,f] = F[e,f] g(a,b,e) g(e,c,d) / (g(b,c,f) g(a,f,d))`` and
    ``R'^{ab}_c = R^{ab}_c g(a,b,c) / g(b,a,c)``.
    """
    exact = data.exact and all(is_exact(v) for v in g.values())
    conv = to_exact if exact else complex

    def gv(a, b, c):
        v = g.get((a, b, c), 1)
        if abs(complex(v)) == 0:
            raise ZeroGaugeError(f"zero gauge factor at {(a, b, c)}")
        if (a == 0 or b == 0) and not near_equal(v, 1, 1e-12):
            raise ValueError(f"gauge on unit channel {(a, b, c)} must be 1")
        return conv(v)

    F = {}
    for (a, b, c, d, e, f), v in data.F.items():
        F[(a, b, c, d, e, f)] = conv(v) * gv(a, b, e) * gv(e, c, d) / (gv(b, c, f) * gv(a, f, d))
    R = None
    if data.R is not None:
        R = {(a, b, c): conv(v) * gv(a, b, c) / gv(b, a, c) for (a, b, c), v in data.R.items()}
    out = replace(data, F=F, R=R, mode="" if exact else "approx",
                  twist=None if data.twist is None else tuple(conv(t) for t in data.twist),
                  pivotal=None if data.pivotal is None else tuple(conv(t) for t in data.pivotal))
    return out


def random_gauge(ring: FusionRing, rng: np.random.Generator, kind: str = "rational") -> dict:
    """Random gauge on all channels without a unit leg.

    ``kind`` is ``"rational"`` (small nonzero fractions), ``"complex"`` or
    ``"phase"`` (unit modulus, preserves unitarity).
    """
    from fractions import Fraction

    g = {}
    for a, b, c in ring.channels():
        if a == 0 or b == 0:
            continue
        if kind == "rational":
            num = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
            g[(a, b, c)] = Fraction(num, int(rng.integers(1, 6)))
        elif kind == "phase":
            g[(a, b, c)] = complex(np.exp(2j * np.pi * rng.random()))
        else:
            g[(a, b, c)] = complex(rng.uniform(0.3, 3.0) * np.exp(2j * np.pi * rng.random()))
    return g


def approx_residual(x, y) -> float:
    return abs(approx(x) - approx(y))
