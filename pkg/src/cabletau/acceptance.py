"""Acceptance checks shared by ``cabletau selftest`` and the test suite.

Each check returns a :class:`CheckResult`; ``run_all`` runs them in order.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import gcd

from . import bordered as _bd
from . import cfk as _cfk
from . import formulas as _fm
from . import pairing as _pr
from . import torus_algebra as _ta


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        label = f"criterion {self.key}" if self.key.isdigit() else self.key
        msg = f"[{status}] {label}: {self.title} ({self.seconds:.1f}s)"
        if self.detail:
            msg += f" -- {self.detail}"
        return msg


def _result(key, title, failures, ok_detail=""):
    failures = list(failures)
    detail = ok_detail if not failures else f"{len(failures)} failure(s); first: {failures[0]}"
    return CheckResult(key, title, not failures, detail, failures=failures)


# ------------------------------------------------------------------ algebra


def check_algebra() -> CheckResult:
    """Associativity over the whole basis plus the four generating products."""
    E = _ta.AlgebraElement
    bad = []
    for a, b, c in itertools.product(_ta.BASIS, repeat=3):
        lhs = _ta.multiply(_ta.multiply(a, b), c)
        rhs = _ta.multiply(a, _ta.multiply(b, c))
        if lhs is not rhs:
            bad.append(f"associativity: ({a.name}{b.name}){c.name}={lhs.name} but {a.name}({b.name}{c.name})={rhs.name}")
    for (a, b), want in {
        (E.R1, E.R2): E.R12, (E.R2, E.R3): E.R23, (E.R1, E.R23): E.R123, (E.R12, E.R3): E.R123,
    }.items():
        got = _ta.multiply(a, b)
        if got is not want:
            bad.append(f"product {a.name}*{b.name} = {got.name}, expected {want.name}")
    return _result("algebra", "torus algebra is associative with the expected products", bad)


# ------------------------------------------------------------------ 1


EXPECTED_INVARIANTS = {
    "unknot": (0, 0, 0, 0),
    "trefoil_rh": (1, 1, 0, 1),
    "trefoil_lh": (-1, 0, -1, -1),
    "figure8": (0, 0, 0, 0),
}


def check_builtin_invariants() -> CheckResult:
    bad = []
    for name, want in EXPECTED_INVARIANTS.items():
        got = _cfk.invariants(_cfk.knot_library(name)).as_tuple()
        if got != want:
            bad.append(f"{name}: (tau, nu, nu', eps) = {got}, expected {want}")
    return _result("1", "built-in (tau, nu, nu', epsilon)", bad)


# ------------------------------------------------------------------ 2

I1, I2 = _ta.Idempotent.I1, _ta.Idempotent.I2

CFD_FIXTURES = {
    ("unknot", 0): ([("u", I1)], [("u", "u", "12")]),
    ("trefoil_rh", 2): (
        [("a", I1), ("ab", I2), ("b", I1), ("bc", I2), ("c", I1)],
        [("b", "ab", "3"), ("ab", "a", "2"), ("b", "bc", "1"), ("c", "bc", "123"), ("a", "c", "12")],
    ),
    ("trefoil_lh", -2): (
        [("a", I1), ("ab", I2), ("b", I1), ("cb", I2), ("c", I1)],
        [("a", "ab", "3"), ("ab", "b", "2"), ("c", "cb", "1"), ("b", "cb", "123"), ("a", "c", "12")],
    ),
}


def fixture(name: str, n: int) -> _bd.TypeDStructure:
    gens, edges = CFD_FIXTURES[(name, n)]
    return _bd.TypeDStructure.build(gens, edges, name=f"fixture {name} n={n}")


def check_cfd_fixtures() -> CheckResult:
    bad = []
    for (name, n) in CFD_FIXTURES:
        d = _bd.cfd(_cfk.knot_library(name), n)
        if not _bd.isomorphic(d, fixture(name, n)):
            bad.append(f"CFD({name}, n={n}) differs from the fixture:\n{d.edge_list()}")
    return _result("2", "CFD of framed complements matches the fixtures", bad)


# ------------------------------------------------------------------ 3


def crosscheck_knots() -> dict:
    lib = {n: _cfk.knot_library(n) for n in _cfk.KNOT_NAMES}
    r = lib["trefoil_rh"]
    lib["trefoil_rh#trefoil_rh"] = _cfk.connected_sum(r, r)
    lib["trefoil_rh#mirror(trefoil_rh)"] = _cfk.connected_sum(r, _cfk.mirror(r))
    return lib


def crosscheck_row(c: _cfk.CfkComplex, p: int, n: int) -> tuple:
    """(formula tau, CableResult or None, list of problems)."""
    inv = _cfk.invariants(c)
    spec = _fm.CableSpec.from_framing(p, n)
    want = _fm.cable_tau_formula(_fm.KnotInvariantPair(inv.tau, inv.epsilon), spec)
    problems = []
    try:
        res = _pr.cable_tau_tensor(c, p, n, strict=True)
    except (_pr.AmbiguousPinning, _pr.NoSymmetricPinning, _pr.InconsistentRelativeGrading,
            _pr.UnboundedPairing, _cfk.NotAKnotComplex, ArithmeticError) as e:
        return want, None, [f"{type(e).__name__}: {e}"]
    if res.tau != want:
        problems.append(f"tensor tau {res.tau} != formula {want}")
    if res.rank != 1:
        problems.append(f"homology rank {res.rank}")
    if res.ambiguous or len(res.candidate_taus) != 1:
        problems.append(f"pinning not unique: {res.candidate_taus}")
    if not all(res.checks.values()):
        problems.append(f"survivor diagnostics {res.checks}")
    return want, res, problems


def check_crosscheck_grid(ps=(2, 3), ns=(-2, -1, 0, 1, 2)) -> CheckResult:
    bad = []
    for name, c in crosscheck_knots().items():
        for p in ps:
            for n in ns:
                _, _, problems = crosscheck_row(c, p, n)
                bad += [f"{name} p={p} n={n}: {msg}" for msg in problems]
    runs = len(crosscheck_knots()) * len(ps) * len(ns)
    return _result("3", "tensor tau equals formula tau on the grid", bad, f"{runs} runs")


# ------------------------------------------------------------------ 4


def check_spot_values() -> CheckResult:
    bad = []
    R, L = _fm.RH_TREFOIL, _fm.LH_TREFOIL
    got = _fm.cable_tau_formula(R, _fm.CableSpec(2, 3))
    if got != 3:
        bad.append(f"tau(R_2,3) = {got}")
    for m in range(-3, 4):
        s = _fm.CableSpec(2, 2 * m + 1)
        if _fm.cable_tau_formula(R, s) != 2 + m:
            bad.append(f"tau(R_2,{s.q}) = {_fm.cable_tau_formula(R, s)}, identity says {2 + m}")
        if _fm.cable_tau_formula(L, s) != 3 + m:
            bad.append(f"tau(L_2,{s.q}) = {_fm.cable_tau_formula(L, s)}, identity says {3 + m}")
    for p in range(2, 6):
        for q in range(-9, 10):
            if gcd(p, q) != 1:
                continue
            s = _fm.CableSpec(p, q)
            t = _fm.torus_knot_invariants(s).tau
            branch = (p - 1) * (q - 1) // 2 if q > 0 else (p - 1) * (q + 1) // 2
            lo, hi = _fm.sandwich(_fm.UNKNOT, s)
            if t != branch or not lo <= t <= hi:
                bad.append(f"T({p},{q}): tau {t}, branch {branch}, window [{lo},{hi}]")
    return _result("4", "cable spot values and torus-knot branches", bad)


# ------------------------------------------------------------------ 5


def check_witnesses() -> CheckResult:
    bad = []
    for n in range(-2, 3):
        plus, minus = _fm.corollary_witnesses(n)
        if plus.invariants != _fm.KnotInvariantPair(n, 1):
            bad.append(f"n={n}: {plus.description} has {plus.invariants}")
        if minus.invariants != _fm.KnotInvariantPair(n, -1):
            bad.append(f"n={n}: {minus.description} has {minus.invariants}")
        for p in (2, 3, 4):
            for q in range(-9, 10):
                if gcd(p, q) != 1:
                    continue
                s = _fm.CableSpec(p, q)
                d = _fm.cable_tau_formula(minus.invariants, s) - _fm.cable_tau_formula(plus.invariants, s)
                if d != p - 1:
                    bad.append(f"n={n} ({p},{q}): cable difference {d}, expected {p - 1}")
    return _result("5", "witness pairs with equal tau and different cables", bad)


# ------------------------------------------------------------------ 6


def random_complex(rng: random.Random, max_factors: int = 3) -> _cfk.CfkComplex:
    k = rng.randint(1, max_factors)
    c = None
    for _ in range(k):
        f = _cfk.knot_library(rng.choice(_cfk.KNOT_NAMES))
        if rng.random() < 0.5:
            f = _cfk.mirror(f)
        c = f if c is None else _cfk.connected_sum(c, f)
    return c


def property_failures(c: _cfk.CfkComplex, framings=range(-4, 5)) -> list:
    """Structural invariants that must hold for any knot complex."""
    bad = []
    name = c.name
    m = _cfk.mirror(c)
    for tag, x in (("input", c), ("mirror", m), ("reduce", _cfk.reduce(c))):
        if _cfk.d_squared(x):
            bad.append(f"{name}: d^2 != 0 after {tag}")
    simp, _ = _cfk.simplify_both(c)
    if _cfk.d_squared(simp):
        bad.append(f"{name}: d^2 != 0 after basis change")
    inv, minv = _cfk.invariants(c), _cfk.invariants(m)
    bad += [f"{name}: {msg}" for msg in inv.check()]
    if (minv.tau, minv.epsilon) != (-inv.tau, -inv.epsilon):
        bad.append(f"{name}: mirror gives tau/eps {minv.tau}/{minv.epsilon} vs {inv.tau}/{inv.epsilon}")
    for n in framings:
        d = _bd.cfd(c, n)
        if not _bd.satisfies_type_d(d):
            bad.append(f"{name}: CFD at n={n} fails the type D condition")
    return bad


def sum_rule_failures(c1, c2) -> list:
    e1, e2 = _cfk.epsilon(c1), _cfk.epsilon(c2)
    s = _cfk.connected_sum(c1, c2)
    if _cfk.d_squared(s):
        return [f"{s.name}: d^2 != 0 after connected sum"]
    want = _fm.connected_sum_epsilon(e1, e2)
    got = _cfk.epsilon(s)
    if want is not _fm.UNDETERMINED and got != want:
        return [f"eps({c1.name}#{c2.name}) = {got}, rule gives {want}"]
    return []


def check_properties(cases: int = 200, seed: int = 20240611, a_inf_len: int = 8) -> CheckResult:
    rng = random.Random(seed)
    bad = []
    for _ in range(cases):
        c1, c2 = random_complex(rng, 2), random_complex(rng, 2)
        bad += property_failures(c1)
        bad += sum_rule_failures(c1, c2)
    for p in (2, 3, 4):
        v = _bd.a_infinity_violations(_bd.cfa_p1(p), a_inf_len)
        if v:
            bad.append(f"CFA(p={p}) A-infinity relations fail: {v[0]}")
    return _result("6", "randomized structural properties", bad, f"{cases} cases")


# ------------------------------------------------------------------ 7


def check_tau_oracle() -> CheckResult:
    lib = {n: _cfk.knot_library(n) for n in _cfk.KNOT_NAMES}
    cases = list(lib.values())
    for a, b in itertools.combinations_with_replacement(_cfk.KNOT_NAMES, 2):
        cases.append(_cfk.connected_sum(lib[a], lib[b]))
    bad = []
    for c in cases:
        t1, t2 = _cfk.tau(c), _cfk.tau_from_tower(c)
        if t1 != t2:
            bad.append(f"{c.name}: cancellation tau {t1}, tower tau {t2}")
    return _result("7", "cancellation tau equals U-tower tau", bad, f"{len(cases)} complexes")


# ------------------------------------------------------------------ 8


def check_epsilon_zero_summand() -> CheckResult:
    f8, u = _cfk.knot_library("figure8"), _cfk.knot_library("unknot")
    bad = []
    for p in (2, 3):
        for n in (-1, 0, 1):
            big = _pr.cable_tau_tensor(f8, p, n)
            small = _pr.cable_tau_tensor(u, p, n)
            if not _pr.contains_summand(big.reduced, small.reduced, big.grading.alexander, small.grading.alexander):
                bad.append(f"p={p} n={n}: unknot pattern output is not a summand")
    return _result("8", "figure8 cable output contains the unknot-pattern summand", bad)


CHECKS = {
    "algebra": check_algebra,
    "1": check_builtin_invariants,
    "2": check_cfd_fixtures,
    "3": check_crosscheck_grid,
    "4": check_spot_values,
    "5": check_witnesses,
    "6": check_properties,
    "7": check_tau_oracle,
    "8": check_epsilon_zero_summand,
}


def run_check(key: str, **kw) -> CheckResult:
    fn = CHECKS[key]
    t = time.perf_counter()
    try:
        res = fn(**kw)
    except Exception as e:  # a crash is a failure of that criterion, not of the harness
        res = CheckResult(key, fn.__name__, False, f"{type(e).__name__}: {e}")
    res.seconds = time.perf_counter() - t
    return res


def run_all(stop_at_first: bool = False, report=None) -> list:
    out = []
    for key in CHECKS:
        res = run_check(key)
        out.append(res)
        if report is not None:
            report(res)
        if stop_at_first and not res.passed:
            break
    return out
