"""Truncated A-infinity relations of CFA(p,1) for a range of p and sequence lengths."""
import argparse
import time
from dataclasses import dataclass, field

from cabletau import bordered


@dataclass
class AInfConfig:
    ps: list = field(default_factory=lambda: [2, 3, 4])
    max_len: int = 8


def main(cfg: AInfConfig) -> int:
    bad = 0
    for p in cfg.ps:
        t = time.perf_counter()
        m = bordered.cfa_p1(p)
        rels = m.instantiate(cfg.max_len)
        wf = bordered.relation_violations(m, cfg.max_len)
        ainf = bordered.a_infinity_violations(m, cfg.max_len)
        bad += len(wf) + len(ainf)
        print(f"p={p}: {len(rels)} relations up to length {cfg.max_len}, "
              f"{len(wf)} malformed, {len(ainf)} A-infinity violations ({time.perf_counter() - t:.1f}s)")
        for v in ainf[:5]:
            print("   ", v)
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--max-len", type=int, default=8)
    a = ap.parse_args()
    raise SystemExit(main(AInfConfig(a.p, a.max_len)))
