"""Closed-form tau and epsilon arithmetic for cables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd


class InvalidCable(ValueError):
    pass


@dataclass(frozen=True)
class CableSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= 1:
            raise InvalidCable(f"cable needs p > 1, got p={self.p}")
        if gcd(self.p, self.q) != 1:
            raise InvalidCable(f"p={self.p} and q={self.q} are not coprime")

    @classmethod
    def from_framing(cls, p: int, n: int) -> "CableSpec":
        return cls(p, p * n + 1)

    @property
    def framing(self) -> int:
        """n with q = pn + 1; only defined when q is 1 mod p."""
        if (self.q - 1) % self.p:
            raise InvalidCable(f"q={self.q} is not 1 mod p={self.p}; no framing form")
        return (self.q - 1) // self.p

    @property
    def has_framing(self) -> bool:
        return (self.q - 1) % self.p == 0


@dataclass(frozen=True)
class KnotInvariantPair:
    tau: int
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (-1, 0, 1):
            raise ValueError(f"epsilon must be -1, 0 or 1, got {self.epsilon}")
        if self.epsilon == 0 and self.tau != 0:
            raise ValueError("epsilon = 0 forces tau = 0")

    def mirror(self) -> "KnotInvariantPair":
        return KnotInvariantPair(-self.tau, -self.epsilon)


UNKNOT = KnotInvariantPair(0, 0)
RH_TREFOIL = KnotInvariantPair(1, 1)
LH_TREFOIL = KnotInvariantPair(-1, -1)


def _check(s):
    if not isinstance(s, CableSpec):
        raise InvalidCable(f"expected a CableSpec, got {s!r}")


def _torus_tau(p: int, q: int) -> int:
    if q > 0:
        return (p - 1) * (q - 1) // 2
    return (p - 1) * (q + 1) // 2


def cable_tau_formula(kp: KnotInvariantPair, s: CableSpec) -> int:
    _check(s)
    p, q = s.p, s.q
    if kp.epsilon == 1:
        return p * kp.tau + (p - 1) * (q - 1) // 2
    if kp.epsilon == -1:
        return p * kp.tau + (p - 1) * (q + 1) // 2
    return _torus_tau(p, q)


def _torus_epsilon(q: int) -> int:
    if q < -1:
        return -1
    if q > 1:
        return 1
    return 0


def cable_epsilon_formula(kp: KnotInvariantPair, s: CableSpec) -> int:
    _check(s)
    if kp.epsilon != 0:
        return kp.epsilon
    return _torus_epsilon(s.q)


def cable(kp: KnotInvariantPair, s: CableSpec) -> KnotInvariantPair:
    return KnotInvariantPair(cable_tau_formula(kp, s), cable_epsilon_formula(kp, s))


def torus_knot_invariants(s: CableSpec) -> KnotInvariantPair:
    return cable(UNKNOT, s)


def iterated_cable(kp: KnotInvariantPair, specs) -> KnotInvariantPair:
    return reduce(cable, specs, kp)


def sandwich(kp: KnotInvariantPair, s: CableSpec) -> tuple:
    """Lower and upper bounds valid for every knot with this tau."""
    _check(s)
    base = s.p * kp.tau
    return base + (s.p - 1) * (s.q - 1) // 2, base + (s.p - 1) * (s.q + 1) // 2


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def g4_lower_bound(kp: KnotInvariantPair) -> int:
    bound = abs(kp.tau)
    if kp.epsilon != _sgn(kp.tau):
        bound += 1
    return bound


@dataclass(frozen=True)
class Witness:
    description: str
    base: KnotInvariantPair
    spec: CableSpec
    invariants: KnotInvariantPair


def corollary_witnesses(n: int) -> tuple:
    """Two knots with tau = n and epsilon = +1 / -1, both cables of trefoils.

    The positive one is the (2, 2n-3) cable of the right-handed trefoil.
    The negative one is the (2, 2n+3) cable of the left-handed trefoil: with
    q = 2m+1 the formula gives tau(L_{2,q}) = m - 1, so m = n + 1.
    """
    plus = CableSpec(2, 2 * n - 3)
    minus = CableSpec(2, 2 * n + 3)
    kp = cable(RH_TREFOIL, plus)
    km = cable(LH_TREFOIL, minus)
    return (
        Witness(f"R_{{2,{plus.q}}}", RH_TREFOIL, plus, kp),
        Witness(f"L_{{2,{minus.q}}}", LH_TREFOIL, minus, km),
    )


class _Undetermined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDETERMINED"

    def __bool__(self):
        return False


UNDETERMINED = _Undetermined()


def connected_sum_epsilon(e1: int, e2: int):
    for e in (e1, e2):
        if e not in (-1, 0, 1):
            raise ValueError(f"epsilon must be -1, 0 or 1, got {e}")
    if e1 == e2:
        return e1
    if e1 == 0:
        return e2
    if e2 == 0:
        return e1
    return UNDETERMINED
