"""How often does the simultaneous-basis heuristic succeed on sums of built-ins?

Exhaustive over ordered k-fold sums (each factor possibly mirrored) for small k,
sampled for larger k.
"""
import argparse
import itertools
import random
from dataclasses import dataclass

from cabletau import cfk


@dataclass
class CoverageConfig:
    exhaustive_upto: int = 3
    sampled_k: int = 4
    samples: int = 300
    seed: int = 1


FACTORS = [(n, m) for n in cfk.KNOT_NAMES for m in (False, True)]


def build(parts):
    c = None
    for name, mirrored in parts:
        f = cfk.knot_library(name)
        f = cfk.mirror(f) if mirrored else f
        c = f if c is None else cfk.connected_sum(c, f)
    return c


def label(parts):
    return "#".join(f"mirror({n})" if m else n for n, m in parts)


def attempt(parts) -> bool:
    try:
        cfk.simplify_both(build(parts))
        return True
    except cfk.NoSimultaneousBasis:
        return False


def main(cfg: CoverageConfig):
    for k in range(1, cfg.exhaustive_upto + 1):
        combos = list(itertools.product(FACTORS, repeat=k))
        failed = [c for c in combos if not attempt(c)]
        print(f"k={k}: {len(combos) - len(failed)}/{len(combos)} succeed")
        for c in failed:
            print("   fails:", label(c))
    rng = random.Random(cfg.seed)
    combos = [tuple(rng.choice(FACTORS) for _ in range(cfg.sampled_k)) for _ in range(cfg.samples)]
    failed = [c for c in combos if not attempt(c)]
    print(f"k={cfg.sampled_k} (sampled): {len(combos) - len(failed)}/{len(combos)} succeed")
    for c in failed:
        print("   fails:", label(c))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exhaustive-upto", type=int, default=3)
    ap.add_argument("--sampled-k", type=int, default=4)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    main(CoverageConfig(a.exhaustive_upto, a.sampled_k, a.samples, a.seed))
