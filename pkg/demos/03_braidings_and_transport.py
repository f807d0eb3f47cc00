"""Enumerate braidings on fixed F-data and transport the dagger through the braiding."""
from __future__ import annotations

from ribbonkit import zoo
from ribbonkit.dagger import (
    count_dagger_compatible_braidings, transport_generators, transport_roundtrip_residual,
)


def main():
    for name in ("trivial", "fibonacci", "yang_lee", "ising", "semion", "vec_z2_symmetric"):
        e = zoo.builtin(name)
        bc = count_dagger_compatible_braidings(e.data, e.dagger)
        print(f"{name:18s} {bc.count} braidings, {bc.compatible_count} compatible with the dagger")
        for s in bc.solutions:
            vals = ", ".join(f"R{k}={complex(v):.4f}" for k, v in sorted(s.R.items()) if k[0] and k[1])
            if vals:
                print(f"    {vals}")

    print("\nTwice-transported dagger versus the identity, on generators whose crossing sits in one factor:")
    for e in zoo.all_entries():
        worst = max((transport_roundtrip_residual(g, e.data, e.dagger, k)
                     for _, g, k in transport_generators(e.data)), default=0.0)
        print(f"  {e.name:18s} max residual {worst:.1e}")


if __name__ == "__main__":
    main()
