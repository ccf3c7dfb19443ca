"""Peel the 5000-ballot sushi file and print the report with timings.

Usage: python3 scripts/sushi_groups.py path/to/sushi3a.5000.10.order
"""
import sys
import time

from tcarank import DatasetSpec, build_bundle, parse_dataset, peel, render_report


def main(path):
    p = parse_dataset(DatasetSpec(path))
    t0 = time.perf_counter()
    res = peel(p)
    t1 = time.perf_counter()
    print(render_report(build_bundle(p, res, with_map=False)))
    print(f"peel {t1 - t0:.2f}s over n={p.n}, d={p.d}")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(sys.argv[1])
