"""Dagger structures, positivity, the transported dagger and braiding search.

The dagger acts on fusion-tree coordinates as a twisted conjugate transpose:
a basis tree ``t`` carries the weight ``w(t)``, the product of the basis
phases over its vertices, and for ``f: S -> T``::

    f^dagger = W_S^{-1}  conj(f)^T  W_T

With all phases equal to 1 this is the plain conjugate transpose.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from . import _linalg
from .reports import ValidationReport
from .scalar import DEFAULT_TOL, approx, inverse, is_exact, to_exact
from .skeletal import InvalidDataError, SkeletalData, check_hexagon
from .treecalc import (
    MorphismMatrix, TypeMismatchError, associator, block_braiding, braid_generator, duality,
    fusion_trees, identity, tensor,
)


class SearchUnsupportedError(ValueError):
    """Braiding search was requested outside the supported rank range."""


@dataclass(frozen=True, eq=False)
class DaggerStructure:
    """Action of the dagger on the chosen basis vectors of ``Hom(a x b, c)``.

    ``phases`` maps ``(a, b, c)`` to a unit-modulus scalar; missing channels
    have phase 1.  Scalars are always conjugated.
    """

    phases: Mapping[tuple, object] = field(default_factory=dict)
    conjugates_scalars: bool = True

    def __post_init__(self):
        clean = {}
        for key, v in self.phases.items():
            key = tuple(int(i) for i in key)
            if is_exact(v):
                v = to_exact(v)
                ok = (v * v.conjugate()) == 1
            else:
                v = complex(v)
                ok = abs(abs(v) - 1.0) <= 1e-12
            if not ok:
                raise InvalidDataError(f"dagger phase at {key} has modulus {abs(complex(v)):.6g}, not 1")
            clean[key] = v
        object.__setattr__(self, "phases", clean)

    @classmethod
    def canonical(cls, ring=None) -> "DaggerStructure":
        """All phases 1: the plain conjugate transpose."""
        return cls({})

    def phase(self, a, b, c):
        return self.phases.get((a, b, c), 1)

    def weight(self, tree):
        w = 1
        for v in tree.vertices():
            w = w * self.phase(*v)
        return w


def dagger(f: MorphismMatrix, dag: DaggerStructure) -> MorphismMatrix:
    """``f^dagger: target -> source``."""
    m = _linalg.conj(f.entries).T.copy()
    if dag.phases:
        ws = [dag.weight(t) for t in f.source]
        wt = [dag.weight(t) for t in f.target]
        if f.exact and all(is_exact(w) for w in ws + wt):
            ws, wt = [to_exact(w) for w in ws], [to_exact(w) for w in wt]
        else:
            m = _linalg.to_complex(m)
            ws, wt = [complex(w) for w in ws], [complex(w) for w in wt]
        for i, j in product(range(m.shape[0]), range(m.shape[1])):
            m[i, j] = m[i, j] * wt[j] * inverse(ws[i])
    return MorphismMatrix(f.target, f.source, m)


def three_strand_generators(data: SkeletalData, inverses: bool = False) -> list[tuple[str, MorphismMatrix]]:
    """Both crossings on every 3-letter word, over all roots."""
    labels = data.ring.labels
    out = []
    for word in product(range(data.rank), repeat=3):
        for i in (0, 1):
            name = f"sigma{i + 1}[{','.join(labels[w] for w in word)}]"
            out.append((name, braid_generator(word, i, data)))
            if inverses:
                out.append((name + "^-1", braid_generator(word, i, data, inverse_=True)))
    return out


def two_strand_generators(data: SkeletalData) -> list[tuple[str, MorphismMatrix]]:
    labels = data.ring.labels
    return [(f"sigma[{labels[a]},{labels[b]}]", braid_generator((a, b), 0, data))
            for a, b in product(range(data.rank), repeat=2)]


def _generating_set(data: SkeletalData) -> list[tuple[str, MorphismMatrix]]:
    gens = []
    if data.braided:
        gens += three_strand_generators(data)
    labels = data.ring.labels
    for a, b, c, d in product(range(data.rank), repeat=4):
        es, _, _ = data.f_matrix(a, b, c, d)
        if es:
            gens.append((f"F[{labels[a]},{labels[b]},{labels[c]};{labels[d]}]",
                         associator(a, b, c, d, data)))
    if data.pivotal is not None:
        for a in range(data.rank):
            pair = duality(a, data)
            for nm, m in zip(("coev", "ev", "coev_r", "ev_r"), pair):
                gens.append((f"{nm}[{labels[a]}]", m))
    return gens


def check_dagger_axioms(data: SkeletalData, dag: DaggerStructure,
                        tol: float = DEFAULT_TOL) -> ValidationReport:
    """Involutivity, identities, contravariance and monoidal compatibility on generators."""
    rep = ValidationReport("dagger")
    gens = _generating_set(data)
    for name, f in gens:
        ff = dagger(dagger(f, dag), dag)
        ok = ff.allclose(f, tol)
        rep.record("involutive", name, ok)
        if not ok:
            rep.max_residual = max(rep.max_residual, ff.residual(f))
        if name.startswith("F["):
            # the tree-basis dagger is monoidal only if associators are unitary for it
            back = dagger(f, dag) @ f
            ok = back.allclose(identity(f.source, f.exact), tol)
            rep.record("associator_unitary", name, ok)
            if not ok:
                rep.max_residual = max(rep.max_residual, back.residual(identity(f.source, f.exact)))
    for word in product(range(data.rank), repeat=3):
        idm = identity(fusion_trees(word, data.ring), data.exact)
        rep.record("identity", tuple(data.ring.labels[w] for w in word),
                   dagger(idm, dag).allclose(idm, tol))
    if data.braided:
        # composable pairs: sigma_2 after sigma_1 on every word
        for word in product(range(data.rank), repeat=3):
            g1 = braid_generator(word, 0, data)
            w2 = (word[1], word[0], word[2])
            g2 = braid_generator(w2, 1, data)
            comp = dagger(g2 @ g1, dag)
            other = dagger(g1, dag) @ dagger(g2, dag)
            rep.record("contravariant", tuple(data.ring.labels[w] for w in word),
                       comp.allclose(other, tol))
        two = two_strand_generators(data)
        for (n1, f), (n2, g) in product(two, repeat=2):
            lhs = dagger(tensor(f, g, data.ring), dag)
            rhs = tensor(dagger(f, dag), dagger(g, dag), data.ring)
            rep.record("monoidal", f"{n1} x {n2}", lhs.allclose(rhs, tol))
    if data.pivotal is not None:
        for a in range(data.rank):
            p = duality(a, data)
            comp = dagger(p.ev_r @ p.coev, dag)
            other = dagger(p.coev, dag) @ dagger(p.ev_r, dag)
            rep.record("contravariant", f"loop[{data.ring.labels[a]}]", comp.allclose(other, tol))
    return rep


# -- positivity ------------------------------------------------------------------------

def unitarity_violation(g: MorphismMatrix, dag: DaggerStructure) -> float:
    """Operator norm of ``g g^dagger - id``."""
    prod = (g @ dagger(g, dag)).to_complex()
    return float(np.linalg.norm(prod.entries - np.eye(len(g.target)), 2)) if len(g.target) else 0.0


@dataclass
class PositivityResult:
    """Outcome of :func:`classify_positivity`.

    ``hermitian`` is the operational verdict (positive dimensions and unitary
    braid generators); ``literal_positive`` is the predicate
    ``f^dagger f = 0 => f = 0`` evaluated on the generating morphisms.
    """

    hermitian: bool
    evidence: list = field(default_factory=list)
    dimensions: tuple = ()
    max_unitarity_violation: float = 0.0
    max_plain_unitarity_violation: float = 0.0
    literal_positive: bool = True
    literal_evidence: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "hermitian" if self.hermitian else "non-hermitian"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "evidence": list(self.evidence),
            "dimensions": [[float(complex(d).real), float(complex(d).imag)] for d in self.dimensions],
            "max_unitarity_violation": self.max_unitarity_violation,
            "max_plain_unitarity_violation": self.max_plain_unitarity_violation,
            "literal_positive": self.literal_positive,
            "literal_evidence": list(self.literal_evidence),
        }


def classify_positivity(data: SkeletalData, dag: DaggerStructure,
                        tol: float = DEFAULT_TOL) -> PositivityResult:
    """Hermitian iff every ``d_a`` is real and positive and every braid generator is unitary."""
    from .modular import quantum_dimensions

    labels = data.ring.labels
    dims = quantum_dimensions(data)
    res = PositivityResult(True, dimensions=tuple(dims))
    for a, d in enumerate(dims):
        z = approx(d)
        if abs(z.imag) > tol or z.real <= tol:
            res.hermitian = False
            res.evidence.append(f"d_{labels[a]} = {z.real:.12g}{z.imag:+.3g}j is not positive")
    if data.braided:
        worst, witness = 0.0, None
        plain = DaggerStructure.canonical()
        for name, g in three_strand_generators(data):
            v = unitarity_violation(g, dag)
            if v > worst:
                worst, witness = v, name
            res.max_plain_unitarity_violation = max(res.max_plain_unitarity_violation,
                                                    unitarity_violation(g, plain))
        res.max_unitarity_violation = worst
        if worst > tol:
            res.hermitian = False
            res.evidence.append(f"{witness} is not unitary: ||g g^dagger - 1|| = {worst:.6g}")
    for name, f in _generating_set(data):
        ff = (dagger(f, dag) @ f).to_complex()
        if ff.entries.size and np.max(np.abs(ff.entries)) <= tol and \
                np.max(np.abs(f.to_complex().entries)) > tol:
            res.literal_positive = False
            res.literal_evidence.append(f"{name}: f^dagger f = 0 but f != 0")
    res.literal_evidence += isotropic_witnesses(data, dag)
    res.literal_positive = not res.literal_evidence
    return res


def isotropic_witnesses(data: SkeletalData, dag: DaggerStructure, strands: int = 3) -> list[str]:
    """Nonzero ``x: c -> l_1 x ... x l_n`` with ``x^dagger x = 0``.

    For a column ``v`` in the tree basis ``x^dagger x = sum_t w(t) |v_t|^2``,
    so an isotropic vector exists exactly when two trees of the same hom
    space have weights pointing in opposite directions.
    """
    labels = data.ring.labels
    out = []
    for word in product(range(data.rank), repeat=strands):
        for c in range(data.rank):
            trees = fusion_trees(word, data.ring, c)
            ws = [complex(dag.weight(t)) for t in trees]
            for i, j in product(range(len(trees)), repeat=2):
                if i < j and abs(ws[i] + ws[j]) <= 1e-12:
                    out.append(f"x = e_{i} + e_{j} in Hom({labels[c]}, "
                               f"{' x '.join(labels[w] for w in word)}) has x^dagger x = 0")
                    break
    return out


# -- transported dagger ------------------------------------------------------------------

def transport_generators(data: SkeletalData, inverses: bool = True) -> list[tuple[str, MorphismMatrix, int]]:
    """Braid generators with a split keeping the crossing inside one factor.

    Two strands split 1 | 1; ``sigma1`` on three strands splits 2 | 1 and
    ``sigma2`` splits 1 | 2.
    """
    out = [(n, g, 1) for n, g in two_strand_generators(data)]
    for n, g in three_strand_generators(data, inverses=inverses):
        out.append((n, g, 2 if n.startswith("sigma1") else 1))
    return out


def _word_and_root(basis) -> tuple[tuple, int | None]:
    word = basis[0].leaves
    roots = {t.root for t in basis}
    return word, (roots.pop() if len(roots) == 1 else None)


def transported_dagger(f: MorphismMatrix, data: SkeletalData, dag: DaggerStructure,
                       split: int | None = None) -> MorphismMatrix:
    """``c_{Y,X}^{-1} o f^dagger o c_{Y',X'}`` for ``f: X x Y -> X' x Y'``.

    ``split`` is the number of strands in the first factor (default: half,
    rounded down, at least 1).  The result maps ``Y' x X'`` to ``Y x X``.
    """
    if not f.source or not f.target:
        raise TypeMismatchError("transported dagger needs non-empty bases")
    sw, sroot = _word_and_root(f.source)
    tw, troot = _word_and_root(f.target)
    if len(sw) != len(tw) or len(sw) < 2:
        raise TypeMismatchError("source and target must be tensor products of the same length")
    k = split if split is not None else max(1, len(sw) // 2)
    if not 0 < k < len(sw):
        raise ValueError(f"split {k} out of range")
    x, y = sw[:k], sw[k:]
    xt, yt = tw[:k], tw[k:]
    c_src = block_braiding(y, x, data, sroot)       # Y x X -> X x Y
    c_tgt = block_braiding(yt, xt, data, troot)     # Y' x X' -> X' x Y'
    if c_src.target != f.source or c_tgt.target != f.target:
        raise TypeMismatchError("morphism bases are not the full fusion-tree bases of their words")
    return c_src.inverse() @ dagger(f, dag) @ c_tgt


def transport_roundtrip_residual(f: MorphismMatrix, data: SkeletalData, dag: DaggerStructure,
                                 split: int) -> float:
    """Operator-norm distance between ``f`` and its twice-transported dagger.

    The first transport swaps the factors, so the second one splits the
    ``Y' x X'`` source after ``n - split`` strands.
    """
    n = len(f.source[0].leaves)
    once = transported_dagger(f, data, dag, split)
    return transported_dagger(once, data, dag, n - split).residual(f)


# -- braiding search -------------------------------------------------------------------------

@dataclass
class BraidingSolution:
    R: dict
    residual: float
    compatible: bool
    max_violation: float

    def invariants(self, ring) -> tuple:
        return _gauge_invariants(self.R, ring)


@dataclass
class BraidingCount:
    solutions: list
    mode: str

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def compatible_count(self) -> int:
        return sum(s.compatible for s in self.solutions)


def _unknowns(ring) -> list[tuple]:
    return [ch for ch in ring.channels() if ch[0] != 0 and ch[1] != 0]


def _gauge_invariants(R: Mapping, ring) -> tuple:
    """``R^{aa}_c`` and ``R^{ab}_c R^{ba}_c`` in channel order."""
    out = []
    for a, b, c in _unknowns(ring):
        if a == b:
            out.append(complex(R[(a, b, c)]))
        elif a < b:
            out.append(complex(R[(a, b, c)]) * complex(R[(b, a, c)]))
    return tuple(out)


class _HexagonSystem:
    """Both hexagon families as a sum of monomials ``coef * prod x_k^{e_k}``.

    Every equation is polynomial in the R unknowns and their inverses, so the
    residual and its (holomorphic) Jacobian are evaluated in closed form.
    """

    def __init__(self, data: SkeletalData, keys: list):
        ring = data.ring
        N = ring.N
        col = {k: i for i, k in enumerate(keys)}
        n = len(keys)
        coefs, rows, eqs = [], [], []

        def mono(factors, sign):
            # factors: list of (a, b, c, power); unit legs contribute 1
            e = np.zeros(n, dtype=np.int64)
            for a, b, c, pw in factors:
                if a and b:
                    e[col[(a, b, c)]] += pw
            return e

        f = lambda *t: complex(data.f(*t))  # noqa: E731
        eq = 0
        for inv in (False, True):
            def rf(a, b, c):
                return (b, a, c, -1) if inv else (a, b, c, 1)
            for a, b, c, d in product(range(ring.rank), repeat=4):
                for e in ring.outcomes(a, b):
                    if not N[e, c, d]:
                        continue
                    for g in ring.outcomes(a, c):
                        if not N[b, g, d]:
                            continue
                        coefs.append(f(b, a, c, d, e, g))
                        rows.append(mono([rf(a, b, e), rf(a, c, g)], 1))
                        eqs.append(eq)
                        for h in ring.outcomes(b, c):
                            if N[a, h, d]:
                                coefs.append(-f(a, b, c, d, e, h) * f(b, c, a, d, h, g))
                                rows.append(mono([rf(a, h, d)], 1))
                                eqs.append(eq)
                        eq += 1
        self.n_eq = eq
        self.coefs = np.array(coefs, dtype=complex)
        self.E = np.array(rows, dtype=np.int64).reshape(len(rows), n)
        self.eqs = np.array(eqs, dtype=np.int64)

    def terms(self, x: np.ndarray) -> np.ndarray:
        return self.coefs * np.prod(x[None, :] ** self.E, axis=1)

    def residual(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n_eq, dtype=complex)
        np.add.at(out, self.eqs, self.terms(x))
        return out

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        dt = self.terms(x)[:, None] * self.E / x[None, :]
        J = np.zeros((self.n_eq, len(x)), dtype=complex)
        np.add.at(J, self.eqs, dt)
        return J


def _hexagon_residuals(data: SkeletalData, keys: list, x: np.ndarray) -> np.ndarray:
    return _HexagonSystem(data, keys).residual(np.asarray(x, dtype=complex))


def _newton(system: _HexagonSystem, x0, max_iter=60, target=1e-13):
    x = x0.copy()
    for _ in range(max_iter):
        res = system.residual(x)
        norm = float(np.max(np.abs(res))) if res.size else 0.0
        if norm <= target:
            return x, norm
        if np.any(np.abs(x) < 1e-8) or not np.all(np.isfinite(x)):
            return x, np.inf
        step, *_ = np.linalg.lstsq(system.jacobian(x), res, rcond=None)
        x = x - step
    res = system.residual(x)
    return x, float(np.max(np.abs(res))) if res.size else 0.0


def solve_hexagon(data: SkeletalData, starts: int = 64, seed: int = 0,
                  tol: float = 1e-12) -> list[dict]:
    """All R-solutions of the hexagon equations for fixed F, up to gauge invariants.

    Multi-start Gauss-Newton on the complex R unknowns (holomorphic
    residuals, analytic Jacobian), each root polished to residual
    ``<= tol`` and deduplicated by the gauge invariants ``R^{aa}_c`` and
    ``R^{ab}_c R^{ba}_c``.  Roots are returned sorted by the real then
    imaginary parts of their invariants.
    """
    ring = data.ring
    if ring.rank > 3:
        raise SearchUnsupportedError(f"braiding search supports rank <= 3, got {ring.rank}")
    keys = _unknowns(ring)
    if not keys:
        return [{}]
    system = _HexagonSystem(data, keys)
    rng = np.random.default_rng(seed)
    found: dict = {}
    for _ in range(starts):
        x0 = np.exp(2j * np.pi * rng.random(len(keys)))
        x, norm = _newton(system, x0)
        if norm > tol:
            continue
        R = dict(zip(keys, (complex(v) for v in x)))
        inv = _gauge_invariants(R, ring)
        key = tuple((round(z.real, 7) + 0.0, round(z.imag, 7) + 0.0) for z in inv)
        found.setdefault(key, R)
    return [found[k] for k in sorted(found)]


def _generator_violation(data: SkeletalData, dag: DaggerStructure) -> float:
    worst = 0.0
    for _, g in three_strand_generators(data):
        worst = max(worst, unitarity_violation(g, dag))
    return worst


def count_dagger_compatible_braidings(data: SkeletalData, dag: DaggerStructure,
                                      tol: float = DEFAULT_TOL,
                                      candidates: Sequence[Mapping] | None = None,
                                      **search) -> BraidingCount:
    """Enumerate braidings on ``data`` (search or verify mode) and mark the dagger-compatible ones.

    A braiding is dagger-compatible when every braid generator ``g`` on three
    strands satisfies ``g^dagger = g^{-1}``; this is the condition under which
    the transported dagger agrees with the given one.
    """
    base = replace(data, R=None, twist=None, mode="")
    if candidates is None:
        sols = solve_hexagon(base, **search)
        mode = "search"
    else:
        mode = "verify"
        sols, seen = [], set()
        for cand in candidates:
            trial = replace(base, R=dict(cand), mode="")
            if not check_hexagon(trial, tol).passed:
                continue
            R = {k: complex(v) for k, v in trial.R.items()}
            key = tuple((round(z.real, 7) + 0.0, round(z.imag, 7) + 0.0)
                        for z in _gauge_invariants(R, data.ring))
            if key not in seen:
                seen.add(key)
                sols.append((key, dict(trial.R)))
        sols = [R for _, R in sorted(sols, key=lambda kv: kv[0])]
    out = []
    approx_base = base.to_approx() if base.exact else base
    for R in sols:
        trial = replace(approx_base, R={k: complex(v) for k, v in R.items()}, mode="approx")
        resid = float(np.max(np.abs(_hexagon_residuals(approx_base, _unknowns(data.ring),
                                                       np.array([complex(R[k]) for k in _unknowns(data.ring)])))
                             )) if _unknowns(data.ring) else 0.0
        viol = _generator_violation(trial, dag)
        out.append(BraidingSolution(R, resid, viol <= max(tol, 1e-8), viol))
    return BraidingCount(out, mode)
