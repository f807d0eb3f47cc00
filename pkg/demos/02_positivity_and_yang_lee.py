"""Hermitian versus non-hermitian: Fibonacci and its Galois conjugate.

The two categories share a fusion ring.  Yang-Lee has a negative quantum
dimension, so no dagger makes it positive; the sign dagger stored with it
keeps the braid generators unitary at the cost of isotropic vectors.
"""
from __future__ import annotations

from ribbonkit import zoo
from ribbonkit.dagger import DaggerStructure, classify_positivity, unitarity_violation
from ribbonkit.treecalc import braid_rep


def show(name):
    e = zoo.builtin(name)
    res = classify_positivity(e.data, e.dagger)
    dims = ", ".join(f"{complex(d).real:+.10f}" for d in res.dimensions)
    print(f"{name}: {res.verdict}  dimensions ({dims})")
    for line in res.evidence:
        print(f"  evidence: {line}")
    print(f"  largest ||g g^dagger - 1|| over 3-strand generators: {res.max_unitarity_violation:.2e} "
          f"(plain conjugate transpose: {res.max_plain_unitarity_violation:.2e})")
    for line in res.literal_evidence[:2]:
        print(f"  isotropic: {line}")


def main():
    show("fibonacci")
    show("yang_lee")
    yl = zoo.builtin("yang_lee").data
    s1, s2 = braid_rep(3, "tau", "tau", yl)
    print(f"\nYang-Lee sigma_2 on Hom(tau, tau^3) is not unitary for the plain conjugate transpose: "
          f"violation {unitarity_violation(s2, DaggerStructure.canonical()):.3f}")


if __name__ == "__main__":
    main()
