"""Fusion-tree bases and explicit morphism matrices.

Every hom space ``Hom(l_1 x ... x l_n, root)`` gets the basis of left-nested
fusion trees; a :class:`MorphismMatrix` maps coordinates in one such basis to
another (column = source tree).  Braid generators, cups and caps, monodromies
and the categorical trace are all built from the F and R symbols of a
:class:`~ribbonkit.skeletal.SkeletalData`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from . import _linalg
from .fusion_ring import FusionRing
from .scalar import inverse
from .skeletal import SkeletalData

MAX_STRANDS = 8


class EmptyHomSpaceError(ValueError):
    pass


class StrandCapError(ValueError):
    pass


class TypeMismatchError(ValueError):
    """Ill-typed composite: bases do not match."""


class MissingPivotalError(ValueError):
    pass


@dataclass(frozen=True)
class FusionTree:
    """A basis vector of ``Hom(leaves[0] x ... x leaves[-1], root)``.

    ``shape="left"`` trees fuse left to right; ``internal`` holds the labels
    after fusing the first 2, 3, ..., n-1 leaves.  ``shape="right"`` is only
    used for three leaves, ``(a (b c)_f)_d`` with ``internal = (f,)``.
    """

    leaves: tuple
    root: int
    internal: tuple = ()
    shape: str = "left"

    def path(self) -> tuple:
        """Labels ``y_1 = leaves[0], ..., y_n = root`` along a left-nested tree."""
        if not self.leaves:
            return ()
        return (self.leaves[0], *self.internal, self.root) if len(self.leaves) > 1 else (self.root,)

    def vertices(self) -> list[tuple]:
        if self.shape == "right":
            a, b, c = self.leaves
            (f,) = self.internal
            return [(b, c, f), (a, f, self.root)]
        y = self.path()
        return [(y[k - 1], self.leaves[k], y[k]) for k in range(1, len(self.leaves))]


@dataclass(frozen=True)
class ProductTree:
    """Basis vector of a tensor product: two trees joined at a final vertex."""

    left: FusionTree
    right: FusionTree
    root: int

    @property
    def leaves(self) -> tuple:
        return self.left.leaves + self.right.leaves

    def vertices(self) -> list[tuple]:
        return [*self.left.vertices(), *self.right.vertices(), (self.left.root, self.right.root, self.root)]


def fusion_trees(leaves: Sequence[int], ring: FusionRing, root: int | None = None) -> list[FusionTree]:
    """Left-nested trees in lexicographic order of ``(root, internal)``."""
    leaves = tuple(int(l) for l in leaves)
    if not leaves:
        return [FusionTree((), 0)] if root in (None, 0) else []
    paths = [(leaves[0],)]
    for lab in leaves[1:]:
        paths = [p + (c,) for p in paths for c in ring.outcomes(p[-1], lab)]
    trees = [FusionTree(leaves, p[-1], p[1:-1]) for p in paths]
    if root is not None:
        trees = [t for t in trees if t.root == root]
    return sorted(trees, key=lambda t: (t.root, t.internal))


def hom_dim(leaves: Sequence, root, ring: FusionRing) -> int:
    """Number of left-nested fusion paths from ``leaves`` to ``root``."""
    leaves = [ring.index(l) for l in leaves]
    return len(fusion_trees(leaves, ring, ring.index(root)))


@dataclass(frozen=True, eq=False)
class MorphismMatrix:
    """A morphism written in fusion-tree bases; ``entries[i, j]`` maps source j to target i."""

    source: tuple
    target: tuple
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        if self.entries.shape != (len(self.target), len(self.source)):
            raise TypeMismatchError(
                f"entries shape {self.entries.shape} != ({len(self.target)}, {len(self.source)})")

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def __matmul__(self, other: "MorphismMatrix") -> "MorphismMatrix":
        """Composite ``self o other``."""
        if other.target != self.source:
            raise TypeMismatchError("composite is ill-typed: target of the right factor "
                                    "does not match source of the left factor")
        a, b = self.entries, other.entries
        if a.dtype != b.dtype:
            a, b = _linalg.to_complex(a), _linalg.to_complex(b)
        if a.dtype == object and a.shape[1] == 0:
            out = _linalg.zeros((a.shape[0], b.shape[1]), True)
        else:
            out = a @ b
        return MorphismMatrix(other.source, self.target, out)

    def inverse(self) -> "MorphismMatrix":
        return MorphismMatrix(self.target, self.source, _linalg.inv(self.entries))

    def scaled(self, s) -> "MorphismMatrix":
        return MorphismMatrix(self.source, self.target, self.entries * s)

    def to_complex(self) -> "MorphismMatrix":
        return MorphismMatrix(self.source, self.target, _linalg.to_complex(self.entries))

    def allclose(self, other: "MorphismMatrix", tol: float) -> bool:
        return (self.source == other.source and self.target == other.target
                and _linalg.allclose(self.entries, other.entries, tol))

    def residual(self, other: "MorphismMatrix") -> float:
        d = _linalg.to_complex(self.entries) - _linalg.to_complex(other.entries)
        return float(np.linalg.norm(d, 2)) if d.size else 0.0

    def root_block(self, root: int) -> np.ndarray:
        rows = [i for i, t in enumerate(self.target) if t.root == root]
        cols = [j for j, t in enumerate(self.source) if t.root == root]
        return self.entries[np.ix_(rows, cols)]


def identity(basis: Sequence, exact: bool) -> MorphismMatrix:
    return MorphismMatrix(tuple(basis), tuple(basis), _linalg.eye(len(basis), exact))


def identity_on(leaves: Sequence[int], data: SkeletalData, root: int | None = None) -> MorphismMatrix:
    return identity(fusion_trees(leaves, data.ring, root), data.exact)


# -- braiding ---------------------------------------------------------------------

def braid_generator(leaves: Sequence[int], i: int, data: SkeletalData, root: int | None = None,
                    inverse_: bool = False) -> MorphismMatrix:
    """Crossing of strands ``i`` and ``i + 1`` (0-based) on ``leaves``.

    With ``inverse_`` the crossing is ``c^{-1}_{l_{i+1}, l_i}`` instead of
    ``c_{l_i, l_{i+1}}``; both map ``leaves`` to the swapped word.
    """
    leaves = tuple(int(l) for l in leaves)
    n = len(leaves)
    if not 0 <= i < n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    ring = data.ring
    src = fusion_trees(leaves, ring, root)
    new_leaves = leaves[:i] + (leaves[i + 1], leaves[i]) + leaves[i + 2:]
    tgt = fusion_trees(new_leaves, ring, root)
    index = {t: k for k, t in enumerate(tgt)}
    m = _linalg.zeros((len(tgt), len(src)), data.exact)
    x, y = leaves[i], leaves[i + 1]

    def rr(p, q, c):
        return inverse(data.r(q, p, c)) if inverse_ else data.r(p, q, c)

    for j, t in enumerate(src):
        path = t.path()
        if i == 0:
            m[index[FusionTree(new_leaves, t.root, t.internal)], j] = rr(x, y, path[1])
            continue
        base, old_mid, top = path[i - 1], path[i], path[i + 1]
        for new_mid in ring.outcomes(base, y):
            if not ring.N[new_mid, x, top]:
                continue
            coeff = data.zero()
            for f in ring.outcomes(x, y):
                if ring.N[base, f, top]:
                    coeff = coeff + (data.f_inv(base, y, x, top, f, new_mid) * rr(x, y, f)
                                     * data.f(base, x, y, top, old_mid, f))
            internal = list(t.internal)
            internal[i - 1] = new_mid
            m[index[FusionTree(new_leaves, t.root, tuple(internal))], j] = coeff
    return MorphismMatrix(src, tgt, m)


def braid_rep(n: int, anyon, root, data: SkeletalData) -> list[MorphismMatrix]:
    """Generators ``sigma_1 .. sigma_{n-1}`` on ``Hom(anyon^n, root)``."""
    if n > MAX_STRANDS:
        raise StrandCapError(f"{n} strands exceeds the cap of {MAX_STRANDS}")
    a, r = data.ring.index(anyon), data.ring.index(root)
    if not fusion_trees([a] * n, data.ring, r):
        raise EmptyHomSpaceError(
            f"Hom({data.ring.labels[a]}^{n}, {data.ring.labels[r]}) is zero-dimensional")
    return [braid_generator([a] * n, i, data, root=r) for i in range(n - 1)]


def block_braiding(left: Sequence[int], right: Sequence[int], data: SkeletalData,
                   root: int | None = None) -> MorphismMatrix:
    """``c_{X,Y}: X x Y -> Y x X`` for words ``X = left``, ``Y = right``.

    Built from elementary crossings ``c_{x,y}`` by moving the strands of ``Y``
    leftwards one at a time, as dictated by the hexagon axioms.
    """
    word = list(left) + list(right)
    k = len(left)
    result = identity_on(word, data, root)
    for j in range(len(right)):
        for pos in range(k + j - 1, j - 1, -1):
            g = braid_generator(word, pos, data, root)
            word[pos], word[pos + 1] = word[pos + 1], word[pos]
            result = g @ result
    return result


def monodromy(a, b, data: SkeletalData) -> MorphismMatrix:
    """``c_{b,a} o c_{a,b}`` on ``a x b``: diagonal with ``R^{ba}_c R^{ab}_c``."""
    a, b = data.ring.index(a), data.ring.index(b)
    basis = fusion_trees([a, b], data.ring)
    m = _linalg.zeros((len(basis), len(basis)), data.exact)
    for k, t in enumerate(basis):
        m[k, k] = data.r(b, a, t.root) * data.r(a, b, t.root)
    return MorphismMatrix(basis, basis, m)


# -- duality ----------------------------------------------------------------------

class Duality(NamedTuple):
    """Left pair ``coev: 1 -> a a*``, ``ev: a* a -> 1`` and the pivotal right pair
    ``coev_r: 1 -> a* a``, ``ev_r: a a* -> 1``."""

    coev: MorphismMatrix
    ev: MorphismMatrix
    coev_r: MorphismMatrix
    ev_r: MorphismMatrix


def _scalar_map(src: FusionTree, tgt: FusionTree, value, exact: bool) -> MorphismMatrix:
    m = _linalg.zeros((1, 1), exact)
    m[0, 0] = value
    return MorphismMatrix((src,), (tgt,), m)


UNIT_TREE = FusionTree((), 0)


def cup_cap(a, data: SkeletalData) -> tuple[MorphismMatrix, MorphismMatrix]:
    """Left duality ``(coev_a, ev_a)`` normalized so the zigzags hold."""
    d = duality(a, data)
    return d.coev, d.ev


def right_cup_cap(a, data: SkeletalData) -> tuple[MorphismMatrix, MorphismMatrix]:
    d = duality(a, data)
    return d.coev_r, d.ev_r


def duality(a, data: SkeletalData) -> Duality:
    ring = data.ring
    a = ring.index(a)
    ad = ring.dual[a]
    if data.pivotal is None:
        raise MissingPivotalError("pivotal coefficients are required for cups and caps")
    t = data.pivotal[a]
    one = data.one()
    # coev_a = |(a a*)_0>,  ev_a = <(a* a)_0| / F^{a a* a}_a[0,0]
    coev = _scalar_map(UNIT_TREE, FusionTree((a, ad), 0), one, data.exact)
    ev = _scalar_map(FusionTree((ad, a), 0), UNIT_TREE,
                     one / data.f(a, ad, a, a, 0, 0), data.exact)
    # right pair from the left pair of a* twisted by the pivotal coefficient
    coev_r = _scalar_map(UNIT_TREE, FusionTree((ad, a), 0), one / t, data.exact)
    ev_r = _scalar_map(FusionTree((a, ad), 0), UNIT_TREE,
                       t / data.f(ad, a, ad, ad, 0, 0), data.exact)
    return Duality(coev, ev, coev_r, ev_r)


def associator(a: int, b: int, c: int, d: int, data: SkeletalData) -> MorphismMatrix:
    """Coordinate change from ``((a b) c)_d`` trees to ``(a (b c))_d`` trees."""
    es, fs, m = data.f_matrix(a, b, c, d)
    src = [FusionTree((a, b, c), d, (e,)) for e in es]
    tgt = [FusionTree((a, b, c), d, (f,), "right") for f in fs]
    return MorphismMatrix(src, tgt, m.T.copy())


def zigzag_composites(a: int, data: SkeletalData, pair: Duality) -> dict:
    """The four zigzag composites as 1x1 matrices (each should be the identity).

    ``left_a``:  (id_a x ev_a) o (coev_a x id_a)
    ``left_b``:  (ev_a x id_a*) o (id_a* x coev_a)
    ``right_a``: (ev_r x id_a) o (id_a x coev_r)
    ``right_b``: (id_a* x ev_r) o (coev_r x id_a*)
    """
    ring = data.ring
    ad = ring.dual[a]
    ex = data.exact
    out = {}

    # left_a: a -> ((a a*)_0 a)_a  --F-->  (a (a* a)_f)_a  --ev on f=0--> a
    assoc = associator(a, ad, a, a, data)
    col = [k for k, t in enumerate(assoc.source) if t.internal == (0,)][0]
    row = [k for k, t in enumerate(assoc.target) if t.internal == (0,)][0]
    out["left_a"] = _one(pair.coev.entries[0, 0] * assoc.entries[row, col] * pair.ev.entries[0, 0], ex)
    # left_b: a* -> (a* (a a*)_0)_a*  --F^{-1}-->  ((a* a)_e a*)_a*  --ev on e=0--> a*
    inv = associator(ad, a, ad, ad, data).inverse()
    col = [k for k, t in enumerate(inv.source) if t.internal == (0,)][0]
    row = [k for k, t in enumerate(inv.target) if t.internal == (0,)][0]
    out["left_b"] = _one(pair.coev.entries[0, 0] * inv.entries[row, col] * pair.ev.entries[0, 0], ex)
    # right_a: a -> (a (a* a)_0)_a  --F^{-1}-->  ((a a*)_e a)_a  --ev_r on e=0--> a
    inv = associator(a, ad, a, a, data).inverse()
    col = [k for k, t in enumerate(inv.source) if t.internal == (0,)][0]
    row = [k for k, t in enumerate(inv.target) if t.internal == (0,)][0]
    out["right_a"] = _one(pair.coev_r.entries[0, 0] * inv.entries[row, col] * pair.ev_r.entries[0, 0], ex)
    # right_b: a* -> ((a* a)_0 a*)_a*  --F-->  (a* (a a*)_f)_a*  --ev_r on f=0--> a*
    assoc = associator(ad, a, ad, ad, data)
    col = [k for k, t in enumerate(assoc.source) if t.internal == (0,)][0]
    row = [k for k, t in enumerate(assoc.target) if t.internal == (0,)][0]
    out["right_b"] = _one(pair.coev_r.entries[0, 0] * assoc.entries[row, col] * pair.ev_r.entries[0, 0], ex)
    return out


def _one(value, exact: bool) -> MorphismMatrix:
    t = FusionTree((), 0)
    return _scalar_map(t, t, value, exact)


# -- traces -----------------------------------------------------------------------

def dimension(a: int, data: SkeletalData):
    """Loop value ``ev_r o coev`` (right quantum dimension)."""
    d = duality(a, data)
    return (d.ev_r @ d.coev).entries[0, 0]


def left_dimension(a: int, data: SkeletalData):
    """Loop value ``ev o coev_r`` (left quantum dimension)."""
    d = duality(a, data)
    return (d.ev @ d.coev_r).entries[0, 0]


def quantum_trace(f: MorphismMatrix, data: SkeletalData):
    """Full categorical trace: ``sum_trees d_root * f[tree, tree]``."""
    if not f.is_endomorphism:
        raise TypeMismatchError("quantum trace needs an endomorphism")
    dims = {}
    total = data.zero()
    for k, t in enumerate(f.source):
        if t.root not in dims:
            dims[t.root] = dimension(t.root, data)
        total = total + dims[t.root] * f.entries[k, k]
    return total


def partial_trace(f: MorphismMatrix, data: SkeletalData) -> MorphismMatrix:
    """Close the last strand of an endomorphism of ``X x U`` with a cap and a cup.

    On the block of ``X`` fusing to ``p``:
    ``tr_U(f)[s', s] = sum_r (d_r / d_p) f[(s', r), (s, r)]``.
    """
    if not f.is_endomorphism:
        raise TypeMismatchError("partial trace needs an endomorphism")
    leaves = f.source[0].leaves if f.source else ()
    if len(leaves) < 2:
        raise ValueError("partial trace needs at least two strands")
    head = leaves[:-1]
    basis = fusion_trees(head, data.ring)
    index = {t: k for k, t in enumerate(basis)}
    out = _linalg.zeros((len(basis), len(basis)), data.exact)
    dims = {c: dimension(c, data) for c in range(data.rank)}

    def head_tree(t: FusionTree) -> FusionTree:
        path = t.path()
        p = path[-2]
        return FusionTree(head, p, t.internal[:-1] if len(head) > 1 else ())

    for i, ti in enumerate(f.target):
        hi = head_tree(ti)
        for j, tj in enumerate(f.source):
            hj = head_tree(tj)
            if ti.root != tj.root or hi.root != hj.root:
                continue
            out[index[hi], index[hj]] = out[index[hi], index[hj]] + (
                dims[ti.root] / dims[hi.root] * f.entries[i, j])
    return MorphismMatrix(basis, basis, out)


def tensor(f: MorphismMatrix, g: MorphismMatrix, ring: FusionRing) -> MorphismMatrix:
    """``f x g`` in the product-tree basis ``((tree_f)_p (tree_g)_q)_r``."""
    exact = f.exact and g.exact
    fe = f.entries if exact or not f.exact else _linalg.to_complex(f.entries)
    ge = g.entries if exact or not g.exact else _linalg.to_complex(g.entries)

    def basis(fb, gb):
        return [ProductTree(x, y, r) for x, y in product(fb, gb) for r in ring.outcomes(x.root, y.root)]

    src, tgt = basis(f.source, g.source), basis(f.target, g.target)
    fs, ft = {t: k for k, t in enumerate(f.source)}, {t: k for k, t in enumerate(f.target)}
    gs, gt = {t: k for k, t in enumerate(g.source)}, {t: k for k, t in enumerate(g.target)}
    m = _linalg.zeros((len(tgt), len(src)), exact)
    for i, T in enumerate(tgt):
        for j, S in enumerate(src):
            if T.root == S.root and T.left.root == S.left.root and T.right.root == S.right.root:
                m[i, j] = fe[ft[T.left], fs[S.left]] * ge[gt[T.right], gs[S.right]]
    return MorphismMatrix(src, tgt, m)


def channel_projector(a, b, c, data: SkeletalData) -> MorphismMatrix:
    """Projection of ``a x b`` onto its ``c`` channel."""
    basis = fusion_trees([a, b], data.ring)
    m = _linalg.zeros((len(basis), len(basis)), data.exact)
    for k, t in enumerate(basis):
        if t.root == c:
            m[k, k] = data.one()
    return MorphismMatrix(basis, basis, m)
