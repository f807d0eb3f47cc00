"""Unnormalized S and T matrices, Gauss sums and the transparent simples."""
from __future__ import annotations

import numpy as np

from ribbonkit import zoo
from ribbonkit.modular import muger_center, s_t_matrices
from ribbonkit.tqft import torus_mcg_check

np.set_printoptions(precision=4, suppress=True)


def main():
    for e in zoo.all_entries():
        md = s_t_matrices(e.data)
        print(f"{e.name}: modular={md.is_modular()}  center={muger_center(e.data)}  "
              f"D^2={complex(md.global_dim_sq).real:.4f}  p+={complex(md.gauss_plus):.4f}")
        print(np.real_if_close(md.s_complex()))
        rep = torus_mcg_check(e.data)
        if rep.passed:
            print(f"  torus relations hold, residuals {rep.notes['residuals']}")
        print()


if __name__ == "__main__":
    main()
