"""Tensor-pairing tau vs. closed-form tau over a grid of knots, p and framings.

    python3 scripts/crosscheck_grid.py --p 2 3 --n -2 2 --extra "trefoil_rh#figure8"
"""
import argparse
import time
from dataclasses import dataclass, field

from cabletau import acceptance, cli


@dataclass
class GridConfig:
    ps: list = field(default_factory=lambda: [2, 3])
    n_lo: int = -2
    n_hi: int = 2
    extra: list = field(default_factory=list)


def main(cfg: GridConfig) -> int:
    knots = acceptance.crosscheck_knots()
    for expr in cfg.extra:
        knots[expr] = cli.parse_knot_expr(expr)
    bad = 0
    print(f"{'knot':<34}{'p':>3}{'n':>4}{'q':>5}{'formula':>9}{'tensor':>8}{'size':>7}{'red':>5}  notes")
    for name, c in knots.items():
        for p in cfg.ps:
            for n in range(cfg.n_lo, cfg.n_hi + 1):
                t = time.perf_counter()
                want, res, problems = acceptance.crosscheck_row(c, p, n)
                dt = time.perf_counter() - t
                bad += bool(problems)
                got = "-" if res is None else res.tau
                size = "-" if res is None else res.tensor_size
                red = "-" if res is None else res.reduced_size
                note = "; ".join(problems) or f"ok {dt:.2f}s"
                print(f"{name:<34}{p:>3}{n:>4}{p * n + 1:>5}{want:>9}{got:>8}{size:>7}{red:>5}  {note}")
    print(f"{bad} problem row(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--n", type=int, nargs=2, default=[-2, 2], metavar=("LO", "HI"))
    ap.add_argument("--extra", nargs="*", default=[], help="additional knot expressions")
    a = ap.parse_args()
    raise SystemExit(main(GridConfig(a.p, a.n[0], a.n[1], a.extra)))
