"""Witness pairs K+_n, K-_n (equal tau, opposite epsilon) and how their cables separate."""
import argparse
from dataclasses import dataclass, field
from math import gcd

from cabletau import formulas as fm


@dataclass
class WitnessConfig:
    n_lo: int = -2
    n_hi: int = 2
    ps: list = field(default_factory=lambda: [2, 3, 4])
    q_max: int = 9


def main(cfg: WitnessConfig):
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        plus, minus = fm.corollary_witnesses(n)
        print(f"n={n:>2}  {plus.description:<10} (tau, eps) = ({plus.invariants.tau}, {plus.invariants.epsilon:+d})"
              f"  g4 >= {fm.g4_lower_bound(plus.invariants)}   "
              f"{minus.description:<10} (tau, eps) = ({minus.invariants.tau}, {minus.invariants.epsilon:+d})"
              f"  g4 >= {fm.g4_lower_bound(minus.invariants)}")
        for p in cfg.ps:
            diffs = set()
            for q in range(-cfg.q_max, cfg.q_max + 1):
                if gcd(p, q) == 1:
                    s = fm.CableSpec(p, q)
                    diffs.add(fm.cable_tau_formula(minus.invariants, s) - fm.cable_tau_formula(plus.invariants, s))
            print(f"      p={p}: tau(K-_(p,q)) - tau(K+_(p,q)) over |q| <= {cfg.q_max}: {sorted(diffs)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs=2, default=[-2, 2], metavar=("LO", "HI"))
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--q-max", type=int, default=9)
    a = ap.parse_args()
    main(WitnessConfig(a.n[0], a.n[1], a.p, a.q_max))
