"""Pivotal structures as characters of the universal grading, and sphericality."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .scalar import DEFAULT_TOL, Cyclotomic, approx, near_equal
from .skeletal import SkeletalData
from .treecalc import dimension, left_dimension

MAX_RANK = 12


class RankCapError(ValueError):
    pass


@dataclass(frozen=True)
class PivotalStructure:
    """Pivotal coefficients ``t_a`` with ``t_0 = 1`` and ``t_a t_b = t_c`` on channels."""

    t: tuple

    def satisfies_monoidality(self, ring, tol: float = DEFAULT_TOL) -> bool:
        return all(near_equal(self.t[a] * self.t[b], self.t[c], tol) for a, b, c in ring.channels())


def adjoint_labels(ring) -> set[int]:
    """Simples of the adjoint subcategory: the fusion closure of all ``a x a*``."""
    adj = {c for a in range(ring.rank) for c in ring.outcomes(a, ring.dual[a])}
    while True:
        more = {c for x in adj for y in adj for c in ring.outcomes(x, y)} - adj
        if not more:
            return adj
        adj |= more


def grading_classes(ring) -> list[int]:
    """Class index of every simple under the universal grading (unit class 0)."""
    adj = adjoint_labels(ring)
    cls = [-1] * ring.rank
    k = 0
    for a in range(ring.rank):
        if cls[a] >= 0:
            continue
        stack = [a]
        cls[a] = k
        while stack:
            x = stack.pop()
            for d in adj:
                for y in ring.outcomes(x, d):
                    if cls[y] < 0:
                        cls[y] = k
                        stack.append(y)
        k += 1
    return cls


def grading_group(ring) -> tuple[list[int], list[list[int]]]:
    """Classes and the multiplication table of the universal grading group."""
    cls = grading_classes(ring)
    g = max(cls) + 1
    rep = [cls.index(k) for k in range(g)]
    table = [[cls[ring.outcomes(rep[i], rep[j])[0]] for j in range(g)] for i in range(g)]
    return cls, table


def _characters(table: list[list[int]]) -> list[tuple]:
    """All homomorphisms from the group to the roots of unity, as exponent tuples mod ``g``."""
    g = len(table)
    # greedy generating set
    gens, span = [], {0}
    for x in range(g):
        if x not in span:
            gens.append(x)
            frontier = set(span)
            while True:
                new = {table[s][y] for s in frontier for y in gens} | frontier
                if new == frontier:
                    break
                frontier = new
            span = frontier

    def power(x, n):
        out = 0
        for _ in range(n):
            out = table[out][x]
        return out

    orders = []
    for x in gens:
        n = 1
        while power(x, n) != 0:
            n += 1
        orders.append(n)
    chars = []
    for choice in product(*[range(o) for o in orders]):
        # value on a generator of order o is zeta_g^(k g / o)
        chi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            s = frontier.pop()
            for x, k, o in zip(gens, choice, orders):
                y = table[s][x]
                val = (chi[s] + k * g // o) % g
                if y in chi:
                    if chi[y] != val:
                        ok = False
                        break
                else:
                    chi[y] = val
                    frontier.append(y)
        if ok and all((chi[i] + chi[j]) % g == chi[table[i][j]] for i in range(g) for j in range(g)):
            chars.append(tuple(chi[i] for i in range(g)))
    return sorted(set(chars))


def enumerate_pivotal(data: SkeletalData) -> list[PivotalStructure]:
    """Every solution of ``t_a t_b = t_c`` with ``t_0 = 1``, as exact roots of unity.

    Channels ``a x a* -> c`` force ``t_c = 1`` on the adjoint subcategory, so
    solutions are characters of the universal grading group.
    """
    ring = data.ring
    if ring.rank > MAX_RANK:
        raise RankCapError(f"rank {ring.rank} exceeds the pivotal enumeration cap {MAX_RANK}")
    cls, table = grading_group(ring)
    g = len(table)
    out = []
    for chi in _characters(table):
        t = tuple(Cyclotomic.zeta(g, chi[cls[a]]) if g > 1 else Cyclotomic.rational(1)
                  for a in range(ring.rank))
        out.append(PivotalStructure(t))
    out.sort(key=lambda p: [(round(approx(x).real, 12), round(approx(x).imag, 12)) for x in p.t])
    return out


@dataclass
class SphericalityReport:
    """Pivotal structures, their left and right dimensions, and sphericality."""

    structures: list = field(default_factory=list)
    canonical: int | None = None

    @property
    def pivotal_count(self) -> int:
        return len(self.structures)

    @property
    def spherical_count(self) -> int:
        return sum(s["spherical"] for s in self.structures)

    def to_dict(self) -> dict:
        return {
            "pivotal_count": self.pivotal_count,
            "spherical_count": self.spherical_count,
            "canonical_ribbon_candidate": self.canonical,
            "structures": self.structures,
        }


def _pair(z) -> list:
    z = approx(z)
    return [z.real, z.imag]


def check_sphericality(data: SkeletalData, tol: float = DEFAULT_TOL) -> SphericalityReport:
    """Sphericality (left trace = right trace) for every pivotal structure.

    The canonical ribbon candidate is the structure whose dimensions satisfy
    ``theta_a d_a = sum_c d_c R^{aa}_c`` (loop with one kink) for every ``a``.
    """
    ring = data.ring
    rep = SphericalityReport()
    for k, piv in enumerate(enumerate_pivotal(data)):
        d = data.with_pivotal(piv.t)
        right = [dimension(a, d) for a in range(ring.rank)]
        left = [left_dimension(a, d) for a in range(ring.rank)]
        spherical = all(near_equal(x, y, tol) for x, y in zip(left, right))
        entry = {
            "t": [_pair(x) for x in piv.t],
            "right_dimensions": [_pair(x) for x in right],
            "left_dimensions": [_pair(x) for x in left],
            "spherical": spherical,
            "dual_symmetric": all(near_equal(right[a], right[ring.dual[a]], tol) for a in range(ring.rank)),
        }
        if data.braided and data.twist is not None:
            entry["kink_relation"] = all(
                near_equal(d.theta(a) * right[a],
                           sum((right[c] * d.r(a, a, c) for c in ring.outcomes(a, a)), d.zero()), tol)
                for a in range(ring.rank))
            if entry["kink_relation"] and spherical and rep.canonical is None:
                rep.canonical = k
        rep.structures.append(entry)
    return rep
