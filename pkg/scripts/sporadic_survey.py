#!/usr/bin/env python3
"""Survey the r = 1 line: divisor-case exclusions at genus p+1 plus quaternion witnesses."""

import argparse

from skelsig.groups import bundled_catalog
from skelsig.kspace import sporadic_analysis


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11, 13, 17, 19])
    ap.add_argument("--witness-n", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()

    catalog = bundled_catalog()
    for h in args.h:
        report = sporadic_analysis(h, args.primes, args.witness_n, catalog)
        print(f"h = {h}:")
        for genus_report in report.nonexistence:
            rules = [f"d={c.divisor}:{c.rule}" for c in genus_report.cases]
            print(f"  genus {genus_report.sigma:3d} (p={genus_report.p:2d}): "
                  f"{genus_report.verdict:10s} {'  '.join(rules)}")
        for w in report.witnesses:
            mark = "ok" if w.verified else "FAILED"
            print(f"  witness n={w.n}: ({h},1) realized at genus {w.genus} "
                  f"by {w.witness.group_name} [{mark}]")
        print(f"  complete: {report.complete}")


if __name__ == "__main__":
    main()
