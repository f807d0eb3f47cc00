"""State-space dimensions of surfaces and invariants of a few closed 3-manifolds."""
from __future__ import annotations

from ribbonkit import zoo
from ribbonkit.modular import s_t_matrices
from ribbonkit.tqft import SurfaceSpec, SurgerySpec, closed_invariant, state_space_dim


def main():
    print("dim V(closed genus g surface), g = 0..4")
    for name in ("fibonacci", "yang_lee", "ising", "semion", "toric_code"):
        data = zoo.builtin(name).data
        print(f"  {name:11s} {[state_space_dim(SurfaceSpec(g), data) for g in range(5)]}")
    ising = zoo.builtin("ising").data
    print(f"\nIsing torus with one puncture: psi -> {state_space_dim(SurfaceSpec(1, ('psi',)), ising)}, "
          f"sigma -> {state_space_dim(SurfaceSpec(1, ('sigma',)), ising)}")

    fib = zoo.builtin("fibonacci").data
    D = s_t_matrices(fib).global_dim
    print(f"\nFibonacci, 1/D = {1 / D:.10f}")
    for label, spec in [("S^3 (empty link)", SurgerySpec(())),
                        ("S^3 (+1 unknot)", SurgerySpec((1,))),
                        ("S^3 (-1 unknot)", SurgerySpec((-1,))),
                        ("S^2 x S^1 (0 unknot)", SurgerySpec((0,))),
                        ("S^3 (Hopf link 3,0)", SurgerySpec((3, 0), chain=True)),
                        ("L(2,1)", SurgerySpec((2,))),
                        ("L(5,1)", SurgerySpec((5,)))]:
        rep = closed_invariant(spec, fib)
        print(f"  {label:22s} Z = {rep.value:.10f}   sigma = {rep.normalization['sigma']:+d}")


if __name__ == "__main__":
    main()
