"""Command-line front end: ``cabletau {invariants,cfd,cable,table,selftest}``.

Exit codes: 0 success, 1 mathematical or crosscheck failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import acceptance as _acc
from . import bordered as _bd
from . import cfk as _cfk
from . import formulas as _fm
from . import pairing as _pr

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class MathFailure(Exception):
    pass


# ------------------------------------------------------------------ expressions

_TOKEN = re.compile(r"\s*(?:(mirror)\s*\(|([A-Za-z_][A-Za-z0-9_]*)|(#)|(\)))")


def _tokens(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse knot expression at {text[pos:]!r}")
        kind = next(i for i in range(1, 5) if m.group(i) is not None)
        out.append((("mirror", "name", "#", ")")[kind - 1], m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_knot_expr(text: str) -> _cfk.CfkComplex:
    """expr := term ('#' term)*;  term := name | 'mirror(' expr ')'."""
    toks = _tokens(text)
    i = 0

    def term():
        nonlocal i
        if i >= len(toks):
            raise InputError(f"unexpected end of expression {text!r}")
        kind, val = toks[i]
        i += 1
        if kind == "name":
            try:
                return _cfk.knot_library(val)
            except KeyError as e:
                raise InputError(str(e.args[0])) from None
        if kind == "mirror":
            c = expr()
            if i >= len(toks) or toks[i][0] != ")":
                raise InputError(f"missing ')' in {text!r}")
            i += 1
            return _cfk.mirror(c)
        raise InputError(f"unexpected {val!r} in {text!r}")

    def expr():
        nonlocal i
        c = term()
        while i < len(toks) and toks[i][0] == "#":
            i += 1
            c = _cfk.connected_sum(c, term())
        return c

    c = expr()
    if i != len(toks):
        raise InputError(f"trailing input in {text!r}")
    return c


# ------------------------------------------------------------------ config


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    builtin: Optional[str] = None
    p: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    framing: Optional[int] = None
    method: str = "both"
    fmt: str = "human"

    def spec(self) -> _fm.CableSpec:
        if self.p is None:
            raise InputError("-p is required")
        if (self.q is None) == (self.n is None):
            raise InputError("give exactly one of -q and -n")
        try:
            s = _fm.CableSpec.from_framing(self.p, self.n) if self.n is not None else _fm.CableSpec(self.p, self.q)
        except _fm.InvalidCable as e:
            raise InputError(str(e)) from None
        if self.method in ("tensor", "both") and not s.has_framing:
            raise InputError(f"tensor method needs q = 1 mod p (got p={s.p}, q={s.q}); use --method formula")
        return s


def load_complex(cfg: RunConfig) -> _cfk.CfkComplex:
    if (cfg.input is None) == (cfg.builtin is None):
        raise InputError("give exactly one of --input and --builtin")
    if cfg.builtin is not None:
        c = parse_knot_expr(cfg.builtin)
    else:
        try:
            with open(cfg.input) as fh:
                c = _cfk.CfkComplex.from_json(fh.read())
        except OSError as e:
            raise InputError(f"cannot read {cfg.input}: {e.strerror}") from None
        except _cfk.ComplexFormatError as e:
            raise InputError(f"{cfg.input}: {e}") from None
    report = _cfk.validate(c)
    if not report.ok:
        raise InputError(f"{c.name}: invalid complex: " + "; ".join(v.message for v in report.violations))
    return c


def _emit(cfg: RunConfig, record: dict, human: str):
    if cfg.fmt == "machine":
        print(json.dumps(record, sort_keys=True))
    else:
        print(human)


# ------------------------------------------------------------------ commands


def cmd_invariants(cfg: RunConfig) -> int:
    c = load_complex(cfg)
    inv = _cfk.invariants(c)
    problems = inv.check()
    if _cfk.tau_from_tower(c) != inv.tau:
        problems.append("tower tau disagrees with cancellation tau")
    rec = {"knot": c.name, "generators": len(c), **asdict(inv)}
    lines = [f"{c.name}: tau={inv.tau} nu={inv.nu} nu'={inv.nu_prime} epsilon={inv.epsilon}",
             f"generators: {len(c)}"]
    if c.has_maslov:
        poly = _cfk.alexander_polynomial(c)
        rec["alexander_polynomial"] = {str(k): v for k, v in sorted(poly.items())}
        lines.append(f"Alexander polynomial: {_cfk.format_laurent(poly)}")
    _emit(cfg, rec, "\n".join(lines))
    if problems:
        raise MathFailure("; ".join(problems))
    return EXIT_OK


def cmd_cfd(cfg: RunConfig) -> int:
    if cfg.framing is None:
        raise InputError("--framing is required")
    c = load_complex(cfg)
    d = _bd.cfd(c, cfg.framing)
    if cfg.fmt == "machine":
        print(json.dumps({
            "name": d.name,
            "generators": [[g, i.value] for g, i in sorted(d.generators)],
            "edges": [line.split() for line in d.edge_list().splitlines()],
        }, sort_keys=True))
    else:
        print(d.dump())
    if not _bd.satisfies_type_d(d):
        raise MathFailure("output violates the type D condition")
    return EXIT_OK


def cable_record(c: _cfk.CfkComplex, s: _fm.CableSpec, method: str) -> dict:
    inv = _cfk.invariants(c)
    kp = _fm.KnotInvariantPair(inv.tau, inv.epsilon)
    rec = {"knot": c.name, "p": s.p, "q": s.q, "tau": inv.tau, "epsilon": inv.epsilon}
    if method in ("formula", "both"):
        rec["tau_formula"] = _fm.cable_tau_formula(kp, s)
        rec["epsilon_formula"] = _fm.cable_epsilon_formula(kp, s)
    status = "ok"
    if method in ("tensor", "both") and s.has_framing:
        try:
            res = _pr.cable_tau_tensor(c, s.p, s.framing, strict=False)
        except (_pr.UnboundedPairing, _pr.NoSymmetricPinning, _pr.InconsistentRelativeGrading,
                _cfk.NotAKnotComplex, _cfk.NoSimultaneousBasis) as e:
            rec["tau_tensor"] = None
            rec["error"] = f"{type(e).__name__}: {e}"
            return {**rec, "status": "error"}
        rec["tau_tensor"] = res.tau
        rec["tensor_candidates"] = res.candidate_taus
        rec["reduced_size"] = res.reduced_size
        if res.ambiguous and len(res.candidate_taus) > 1:
            confirmed = method == "both" and rec["tau_formula"] in res.candidate_taus
            status = "ambiguous-confirmed" if confirmed else "ambiguous"
        elif method == "both" and res.tau != rec["tau_formula"]:
            status = "mismatch"
    rec["status"] = status
    return rec


_BAD = {"mismatch", "ambiguous", "error"}


def _cable_line(rec: dict) -> str:
    parts = [f"{rec['knot']} ({rec['p']},{rec['q']}):"]
    if "tau_formula" in rec:
        parts.append(f"tau_formula={rec['tau_formula']} epsilon_formula={rec['epsilon_formula']}")
    if "tau_tensor" in rec:
        parts.append(f"tau_tensor={rec['tau_tensor']}")
    parts.append(rec["status"])
    return " ".join(parts)


def cmd_cable(cfg: RunConfig) -> int:
    s = cfg.spec()
    c = load_complex(cfg)
    rec = cable_record(c, s, cfg.method)
    human = _cable_line(rec)
    if rec["status"] == "ok" and cfg.method == "both":
        human += " (formula and tensor agree)"
    _emit(cfg, rec, human)
    if rec["status"] in _BAD:
        raise MathFailure(f"cable check failed: {rec.get('error', rec['status'])}")
    return EXIT_OK


def cmd_table(cfg: RunConfig, knots, ps, q_range, witnesses) -> int:
    rows = []
    for expr in knots:
        c = parse_knot_expr(expr)
        for p in ps:
            for q in q_range:
                try:
                    s = _fm.CableSpec(p, q)
                except _fm.InvalidCable:
                    continue
                rec = cable_record(c, s, cfg.method if s.has_framing else "formula")
                rec["knot"] = expr
                rows.append(rec)
    failed = 0
    if cfg.fmt == "human" and rows:
        print(f"{'knot':<32}{'p':>3}{'q':>4}{'tau_f':>7}{'eps_f':>7}{'tau_t':>7}  status")
    for rec in rows:
        failed += rec["status"] in _BAD
        if cfg.fmt == "machine":
            print(json.dumps(rec, sort_keys=True))
        else:
            tt = rec.get("tau_tensor")
            print(f"{rec['knot']:<32}{rec['p']:>3}{rec['q']:>4}{rec.get('tau_formula', ''):>7}"
                  f"{rec.get('epsilon_formula', ''):>7}{'' if tt is None else tt:>7}  {rec['status']}")
    for n in witnesses:
        for w in _fm.corollary_witnesses(n):
            rec = {"witness_n": n, "knot": w.description, "tau": w.invariants.tau,
                   "epsilon": w.invariants.epsilon, "g4_bound": _fm.g4_lower_bound(w.invariants)}
            _emit(cfg, rec, f"witness n={n}: {w.description} tau={w.invariants.tau} "
                            f"epsilon={w.invariants.epsilon} g4>={rec['g4_bound']}")
    if failed:
        raise MathFailure(f"{failed} row(s) failed")
    return EXIT_OK


def cmd_selftest(cfg: RunConfig, only=None) -> int:
    results = []
    for key in (only or _acc.CHECKS):
        res = _acc.run_check(key)
        results.append(res)
        if cfg.fmt == "machine":
            print(json.dumps({"key": res.key, "passed": res.passed, "detail": res.detail,
                              "seconds": round(res.seconds, 3)}, sort_keys=True))
        else:
            print(res.line())
    failed = [r for r in results if not r.passed]
    if failed:
        raise MathFailure(f"first failure: {failed[0].key}: {failed[0].detail}")
    return EXIT_OK


# ------------------------------------------------------------------ argv


def _int_list(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            out += list(range(int(m.group(1)), int(m.group(2)) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cabletau", description="tau and epsilon of knots and their cables")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, source=True):
        sp.add_argument("--format", dest="fmt", choices=("human", "machine"), default="human")
        if source:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--input", help="JSON complex file")
            g.add_argument("--builtin", help="knot expression, e.g. 'trefoil_rh#mirror(figure8)'")

    common(sub.add_parser("invariants", help="tau, nu, nu', epsilon of a complex"))
    sp = sub.add_parser("cfd", help="type D structure of the framed complement")
    common(sp)
    sp.add_argument("--framing", "-n", type=int, required=True)
    sp = sub.add_parser("cable", help="tau of a (p,q) cable")
    common(sp)
    sp.add_argument("-p", type=int, required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("-q", type=int)
    grp.add_argument("-n", type=int, help="framing; q = pn + 1")
    sp.add_argument("--method", choices=("formula", "tensor", "both"), default="both")
    sp = sub.add_parser("table", help="grid of cable values")
    common(sp, source=False)
    sp.add_argument("--knots", default=",".join(_cfk.KNOT_NAMES), help="comma-separated knot expressions")
    sp.add_argument("-p", default="2", help="list such as 2,3 or 2..4")
    sp.add_argument("-q", default="-5..5", help="list such as -5..5 or 1,3")
    sp.add_argument("--odd-only", action="store_true", help="keep odd q only")
    sp.add_argument("--witnesses", default="", help="n values for the witness table, e.g. -1..1")
    sp.add_argument("--method", choices=("formula", "tensor", "both"), default="both")
    sp = sub.add_parser("selftest", help="run the acceptance checks")
    common(sp, source=False)
    sp.add_argument("--only", default="", help="comma-separated check keys (algebra,1..8)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, input=getattr(ns, "input", None),
                    builtin=getattr(ns, "builtin", None), method=getattr(ns, "method", "both"))
    try:
        if ns.command == "invariants":
            return cmd_invariants(cfg)
        if ns.command == "cfd":
            cfg.framing = ns.framing
            return cmd_cfd(cfg)
        if ns.command == "cable":
            cfg.p, cfg.q, cfg.n = ns.p, ns.q, ns.n
            return cmd_cable(cfg)
        if ns.command == "table":
            try:
                ps, qs, wit = _int_list(ns.p), _int_list(ns.q), _int_list(ns.witnesses)
            except ValueError as e:
                raise InputError(f"bad range: {e}") from None
            if ns.odd_only:
                qs = [q for q in qs if q % 2]
            knots = [k.strip() for k in ns.knots.split(",") if k.strip()]
            return cmd_table(cfg, knots, ps, qs, wit)
        only = [k.strip() for k in ns.only.split(",") if k.strip()]
        unknown = [k for k in only if k not in _acc.CHECKS]
        if unknown:
            raise InputError(f"unknown check keys {unknown}; choose from {list(_acc.CHECKS)}")
        return cmd_selftest(cfg, only or None)
    except (InputError, _cfk.NotAKnotComplex) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (MathFailure, _cfk.NoSimultaneousBasis, _pr.AmbiguousPinning) as e:
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
