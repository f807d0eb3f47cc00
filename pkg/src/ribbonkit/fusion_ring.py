"""Fusion rings: labels, duality and fusion multiplicities."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .reports import ValidationReport


class MalformedInputError(ValueError):
    """Input data disagrees with the declared shape or format."""


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Grothendieck ring of a fusion category.

    Attributes
    ----------
    labels : tuple of str
        Names of the simple objects; index 0 is the unit.
    dual : tuple of int
        ``dual[a]`` is the index of the dual object.
    N : ndarray, shape (r, r, r)
        ``N[a, b, c]`` is the multiplicity of ``c`` in ``a x b``.
    """

    labels: tuple
    dual: tuple
    N: np.ndarray

    def __post_init__(self):
        N = np.asarray(self.N, dtype=np.int64)
        r = len(self.labels)
        if N.shape != (r, r, r):
            raise MalformedInputError(f"fusion tensor has shape {N.shape}, expected {(r, r, r)}")
        if len(self.dual) != r:
            raise MalformedInputError(f"dual has length {len(self.dual)}, expected {r}")
        if len(set(self.labels)) != r:
            raise MalformedInputError("labels are not distinct")
        if (N < 0).any():
            raise MalformedInputError("negative fusion multiplicity")
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)) and 0 <= label < self.rank:
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}; known: {list(self.labels)}") from None

    def outcomes(self, a: int, b: int) -> list[int]:
        return [c for c in range(self.rank) if self.N[a, b, c]]

    def admissible(self, a: int, b: int, c: int) -> bool:
        return bool(self.N[a, b, c])

    def channels(self):
        """All admissible ``(a, b, c)`` in lexicographic order."""
        return [tuple(int(i) for i in t) for t in zip(*np.nonzero(self.N))]

    def fusion_matrix(self, a: int) -> np.ndarray:
        """``(N_a)_{bc} = N[a, b, c]``."""
        return np.array(self.N[a])

    @property
    def multiplicity_free(self) -> bool:
        return int(self.N.max(initial=0)) <= 1

    @property
    def commutative(self) -> bool:
        return bool((self.N == self.N.transpose(1, 0, 2)).all())

    def permuted(self, perm: Sequence[int]) -> "FusionRing":
        """Relabel so that new index ``i`` is old index ``perm[i]``."""
        perm = list(perm)
        inv = {old: new for new, old in enumerate(perm)}
        N = self.N[np.ix_(perm, perm, perm)]
        return FusionRing(
            tuple(self.labels[p] for p in perm),
            tuple(inv[self.dual[p]] for p in perm),
            N,
        )


def find_unit(N: np.ndarray) -> int | None:
    r = N.shape[0]
    eye = np.eye(r, dtype=N.dtype)
    for u in range(r):
        if (N[u] == eye).all() and (N[:, u, :] == eye).all():
            return u
    return None


def make_ring(labels, dual, fusion) -> FusionRing:
    """Build a ring from ``[a, b, c, N]`` quadruples, moving the unit to index 0."""
    r = len(labels)
    N = np.zeros((r, r, r), dtype=np.int64)
    for entry in fusion:
        if len(entry) != 4:
            raise MalformedInputError(f"fusion entry {entry!r} is not [a, b, c, N]")
        a, b, c, m = (int(x) for x in entry)
        if not all(0 <= i < r for i in (a, b, c)):
            raise MalformedInputError(f"fusion entry {entry!r} has index outside rank {r}")
        N[a, b, c] = m
    ring = FusionRing(tuple(labels), tuple(dual), N)
    u = find_unit(ring.N)
    if u is not None and u != 0:
        perm = [u] + [i for i in range(r) if i != u]
        ring = ring.permuted(perm)
    return ring


def validate_ring(ring: FusionRing) -> ValidationReport:
    """Check unit law, duality involution, rigidity and associativity."""
    rep = ValidationReport("ring")
    r = ring.rank
    N = ring.N
    for b, c in product(range(r), repeat=2):
        want = int(b == c)
        rep.record("unit_left", (0, b, c), N[0, b, c] == want, int(N[0, b, c]), want)
        rep.record("unit_right", (b, 0, c), N[b, 0, c] == want, int(N[b, 0, c]), want)
    for a in range(r):
        d = ring.dual[a]
        ok = 0 <= d < r and ring.dual[d] == a
        rep.record("dual_involution", (a,), ok)
    rep.record("dual_unit", (0,), ring.dual[0] == 0)
    for a, b in product(range(r), repeat=2):
        want = int(b == ring.dual[a])
        rep.record("rigidity", (a, b), N[a, b, 0] == want, N[a, b, 0], want)
    # sum_e N[a,b,e] N[e,c,d] == sum_f N[b,c,f] N[a,f,d]
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bcf,afd->abcd", N, N)
    for a, b, c, d in product(range(r), repeat=4):
        rep.record("associativity", (a, b, c, d), left[a, b, c, d] == right[a, b, c, d],
                   int(left[a, b, c, d]), int(right[a, b, c, d]))
    return rep


def fp_dimensions(ring: FusionRing, tol: float = 1e-12, max_steps: int = 100_000) -> np.ndarray:
    """Frobenius-Perron dimensions by power iteration.

    The Perron vector of ``I + sum_a N_a`` is a common eigenvector of all
    fusion matrices, and normalized to ``v[0] = 1`` it is the dimension vector.
    """
    r = ring.rank
    M = np.eye(r) + ring.N.sum(axis=0).astype(float)
    v = np.ones(r)
    for _ in range(max_steps):
        w = M @ v
        w /= w[0]
        if np.max(np.abs(w - v)) <= tol:
            v = w
            break
        v = w
    else:
        raise ConvergenceError(f"power iteration did not converge in {max_steps} steps")
    # d_a d_b = sum_c N[a,b,c] d_c
    resid = np.max(np.abs(np.outer(v, v) - np.einsum("abc,c->ab", ring.N, v)))
    if resid > 1e-9:
        raise ConvergenceError(f"dimension residual {resid:.2e} too large")
    return v
