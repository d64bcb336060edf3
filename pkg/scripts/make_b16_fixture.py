#!/usr/bin/env python3
"""Build a small order-type database in the 40-byte b16 format.

Record 0 is the pinned convex-position 10-gon (readers self-check it).  A
handful of probe indices get their own seeded strong-general-position
configurations; the remaining records cycle a fixed pool so generation stays
fast while every record is a valid configuration.
"""

import argparse
import sys

from kpkc.chirotope import write_b16
from kpkc.geomoracle import convex_config, sample_config

PROBE_SEED_BASE = 1000
POOL_SEED_BASE = 2000
POOL_SIZE = 16

PROBE_INDICES = (1, 2, 20, 100, 1000, 10000)


def build_records(count):
    records = [None] * count
    records[0] = convex_config()
    for pos, idx in enumerate(PROBE_INDICES):
        if idx < count:
            records[idx] = sample_config(PROBE_SEED_BASE + pos)
    pool = [sample_config(POOL_SEED_BASE + i) for i in range(POOL_SIZE)]
    for idx in range(count):
        if records[idx] is None:
            records[idx] = pool[idx % POOL_SIZE]
    return records


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-o", "--output", required=True)
    ap.add_argument("--count", type=int, default=10001)
    args = ap.parse_args(argv)
    if args.count < 1:
        ap.error("--count must be positive")
    write_b16(build_records(args.count), args.output)
    print(f"wrote {args.output}: {args.count} records")
    return 0


if __name__ == "__main__":
    sys.exit(main())
