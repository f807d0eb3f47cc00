"""Pivotal structures as grading characters, and which of them are spherical."""
from __future__ import annotations

from ribbonkit import zoo
from ribbonkit.spherical import check_sphericality, grading_group


def main():
    for e in zoo.all_entries():
        cls, table = grading_group(e.data.ring)
        rep = check_sphericality(e.data)
        print(f"{e.name}: grading group of order {len(table)}, {rep.pivotal_count} pivotal, "
              f"{rep.spherical_count} spherical, ribbon candidate #{rep.canonical}")
        for k, s in enumerate(rep.structures):
            t = ", ".join(f"{complex(*x):.0f}".replace("+0j", "") for x in s["t"])
            d = ", ".join(f"{x[0]:+.4f}" for x in s["right_dimensions"])
            print(f"    #{k} t=({t})  d=({d})  spherical={s['spherical']}")


if __name__ == "__main__":
    main()
