"""Knot Floer complexes CFK^- over F2[U] and the concordance invariants tau, nu, nu', epsilon.

A complex is a list of generators with Alexander (and optionally Maslov)
gradings and a set of arrows ``x -> U^k y``.  Coefficients live in F2[U], so a
pair of generators may be joined by several arrows with different powers; an
arrow listed twice cancels.
"""
from __future__ import annotations

import json
import zlib
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import _f2


class NotAKnotComplex(ValueError):
    pass


class NoSimultaneousBasis(RuntimeError):
    pass


class MissingMaslov(ValueError):
    pass


class ComplexFormatError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CfkGenerator:
    id: str
    alexander: int
    maslov: Optional[int] = None


@dataclass(frozen=True, order=True)
class CfkArrow:
    src: str
    tgt: str
    u_power: int = 0


@dataclass(frozen=True)
class CfkComplex:
    name: str
    generators: tuple
    arrows: frozenset

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(sorted(self.generators, key=lambda g: g.id)))
        object.__setattr__(self, "arrows", frozenset(self.arrows))

    @classmethod
    def build(cls, name: str, gens: Iterable, arrows: Iterable = ()) -> "CfkComplex":
        """Convenience constructor: gens as (id, A[, M]) tuples, arrows as (src, tgt[, k]).

        Repeated arrows cancel in pairs.
        """
        g = [x if isinstance(x, CfkGenerator) else CfkGenerator(*x) for x in gens]
        parity: Counter = Counter()
        for a in arrows:
            a = a if isinstance(a, CfkArrow) else CfkArrow(*a)
            parity[a] += 1
        return cls(name, tuple(g), frozenset(a for a, n in parity.items() if n % 2))

    @property
    def gen(self) -> dict:
        return {g.id: g for g in self.generators}

    def A(self, x: str) -> int:
        return self.gen[x].alexander

    @property
    def has_maslov(self) -> bool:
        return bool(self.generators) and all(g.maslov is not None for g in self.generators)

    def renamed(self, name: str) -> "CfkComplex":
        return CfkComplex(name, self.generators, self.arrows)

    def __len__(self):
        return len(self.generators)

    # JSON, canonical ordering: generators by id, arrows lexicographic
    def to_dict(self) -> dict:
        gens = []
        for g in self.generators:
            d = {"id": g.id, "alexander": g.alexander}
            if g.maslov is not None:
                d["maslov"] = g.maslov
            gens.append(d)
        arrows = [{"from": a.src, "to": a.tgt, "u_power": a.u_power} for a in sorted(self.arrows)]
        return {"name": self.name, "generators": gens, "arrows": arrows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CfkComplex":
        try:
            name = str(d.get("name", "complex"))
            gens = []
            for g in d["generators"]:
                m = g.get("maslov")
                gens.append(CfkGenerator(str(g["id"]), _as_int(g["alexander"]), None if m is None else _as_int(m)))
            arrows = [(str(a["from"]), str(a["to"]), _as_int(a.get("u_power", 0))) for a in d.get("arrows", [])]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ComplexFormatError(f"malformed complex: {exc!r}") from None
        ids = [g.id for g in gens]
        if len(set(ids)) != len(ids):
            raise ComplexFormatError("duplicate generator ids")
        known = set(ids)
        for s, t, k in arrows:
            if s not in known or t not in known:
                raise ComplexFormatError(f"arrow {s}->{t} references an unknown generator")
            if k < 0:
                raise ComplexFormatError(f"arrow {s}->{t} has negative U-power")
        return cls.build(name, gens, arrows)

    @classmethod
    def from_json(cls, text: str) -> "CfkComplex":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ComplexFormatError(f"not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise ComplexFormatError("top level must be an object")
        return cls.from_dict(d)


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ComplexFormatError(f"expected an integer, got {v!r}")
    return v


# ---------------------------------------------------------------- differential


def _dmap(c: CfkComplex) -> dict:
    d: dict = defaultdict(lambda: defaultdict(set))
    for a in c.arrows:
        d[a.src][a.tgt] ^= {a.u_power}
    return d


def _arrows_from(d: dict) -> frozenset:
    return frozenset(CfkArrow(s, t, k) for s, row in d.items() for t, ks in row.items() for k in ks)


def d_squared(c: CfkComplex) -> dict:
    """Nonzero entries of the square of the differential: (x, z) -> set of U-powers."""
    d = _dmap(c)
    out = {}
    for x in list(d):
        acc: dict = defaultdict(set)
        for y, k1s in list(d[x].items()):
            for z, k2s in list(d.get(y, {}).items()):
                for k1 in k1s:
                    for k2 in k2s:
                        acc[z] ^= {k1 + k2}
        for z, ks in acc.items():
            if ks:
                out[(x, z)] = ks
    return out


# ---------------------------------------------------------------- validation


@dataclass
class Violation:
    kind: str
    message: str
    arrows: tuple = ()


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(c: CfkComplex) -> ValidationReport:
    rep = ValidationReport()
    ids = [g.id for g in c.generators]
    if len(set(ids)) != len(ids):
        rep.violations.append(Violation("duplicate-id", "generator ids are not unique"))
    gen = c.gen
    for a in sorted(c.arrows):
        if a.src not in gen or a.tgt not in gen:
            rep.violations.append(Violation("unknown-generator", f"{a} uses an unknown id", (a,)))
            continue
        if a.u_power < 0:
            rep.violations.append(Violation("negative-power", f"{a} has k < 0", (a,)))
        As, At = gen[a.src].alexander, gen[a.tgt].alexander
        if At - a.u_power > As:
            rep.violations.append(Violation("filtration", f"{a} raises the Alexander filtration", (a,)))
        if a.u_power == 0 and At >= As:
            rep.violations.append(Violation("not-reduced", f"{a} preserves both filtrations", (a,)))
        ms, mt = gen[a.src].maslov, gen[a.tgt].maslov
        if ms is not None and mt is not None and mt - 2 * a.u_power != ms - 1:
            rep.violations.append(Violation("maslov", f"{a} does not drop the Maslov grading by one", (a,)))
    if rep.violations:
        return rep
    for (x, z), ks in sorted(d_squared(c).items()):
        culprits = tuple(sorted(a for a in c.arrows if a.src == x or a.tgt == z))
        rep.violations.append(
            Violation("d-squared", f"d^2({x}) has {z} with U-powers {sorted(ks)}", culprits)
        )
    alex = Counter(g.alexander for g in c.generators)
    if alex != Counter({-a: n for a, n in alex.items()}):
        rep.warnings.append(Violation("asymmetric", f"Alexander multiset {dict(sorted(alex.items()))} is not symmetric"))
    return rep


def is_reduced(c: CfkComplex) -> bool:
    return all(a.u_power >= 1 or c.A(a.tgt) < c.A(a.src) for a in c.arrows)


# ---------------------------------------------------------------- reduction


def _cancel(d: dict, x: str, y: str) -> None:
    """Cancel the unit arrow x -> y in place."""
    row_x = {w: set(ks) for w, ks in d.get(x, {}).items() if w != y}
    incoming = [(z, set(row[y])) for z, row in d.items() if y in row and z != x and row[y]]
    for z, kzs in incoming:
        for w, kws in row_x.items():
            for a in kzs:
                for b in kws:
                    d[z][w] ^= {a + b}
    d.pop(x, None)
    d.pop(y, None)
    for row in d.values():
        row.pop(x, None)
        row.pop(y, None)


def reduce(c: CfkComplex) -> CfkComplex:
    gen = c.gen
    d = _dmap(c)
    alive = set(gen)
    while True:
        pick = None
        for x in sorted(d):
            if x not in alive:
                continue
            for y in sorted(d[x]):
                if d[x][y] == {0} and gen[x].alexander == gen[y].alexander:
                    pick = (x, y)
                    break
            if pick:
                break
        if pick is None:
            break
        _cancel(d, *pick)
        alive -= set(pick)
    gens = [g for g in c.generators if g.id in alive]
    return CfkComplex(c.name, tuple(gens), _arrows_from(d))


# ---------------------------------------------------------------- simplified bases


@dataclass(frozen=True)
class Role:
    kind: str  # "isolated" | "source" | "target"
    partner: Optional[str] = None
    length: int = 0


@dataclass
class BasisRoles:
    vertical: dict = field(default_factory=dict)
    horizontal: dict = field(default_factory=dict)

    @property
    def x0(self) -> str:
        return _isolated(self.vertical)

    @property
    def x0_prime(self) -> str:
        return _isolated(self.horizontal)

    def vertical_arrows(self):
        return sorted((x, r.partner, r.length) for x, r in self.vertical.items() if r.kind == "source")

    def horizontal_arrows(self):
        return sorted((x, r.partner, r.length) for x, r in self.horizontal.items() if r.kind == "source")


def _isolated(roles: dict) -> str:
    iso = [x for x, r in roles.items() if r.kind == "isolated"]
    if len(iso) != 1:
        raise NotAKnotComplex(f"expected one distinguished generator, found {len(iso)}")
    return iso[0]


def vertical_part(c: CfkComplex) -> list:
    return sorted((a.src, a.tgt) for a in c.arrows if a.u_power == 0)


def horizontal_part(c: CfkComplex) -> list:
    return sorted((a.src, a.tgt) for a in c.arrows if c.A(a.tgt) - a.u_power == c.A(a.src))


def _roles_from_pairs(c: CfkComplex, pairs, length) -> Optional[dict]:
    """Roles if the given (src, tgt) list is a perfect matching plus one isolated."""
    roles = {}
    for s, t in pairs:
        if s in roles or t in roles or s == t:
            return None
        L = length(s, t)
        roles[s] = Role("source", t, L)
        roles[t] = Role("target", s, L)
    for g in c.generators:
        roles.setdefault(g.id, Role("isolated"))
    if sum(r.kind == "isolated" for r in roles.values()) != 1:
        return None
    return roles


def vertical_roles(c: CfkComplex) -> Optional[dict]:
    return _roles_from_pairs(c, vertical_part(c), lambda s, t: c.A(s) - c.A(t))


def horizontal_roles(c: CfkComplex) -> Optional[dict]:
    return _roles_from_pairs(c, horizontal_part(c), lambda s, t: c.A(t) - c.A(s))


def _change_basis(c: CfkComplex, order: list, new_cols: list, weight: dict) -> CfkComplex:
    """Rewrite c in the basis e'_l = sum_j U^(w_j - w_l) P0[j][l] e_j.

    ``order`` indexes the bitmasks in ``new_cols`` (column l is the new element
    whose leading term is order[l]).
    """
    n = len(order)
    idx = {x: i for i, x in enumerate(order)}
    inv = _f2.invert(new_cols)  # inv[t] = coordinates of e_t in the new basis
    d = _dmap(c)
    w = [weight[x] for x in order]
    out: dict = defaultdict(lambda: defaultdict(set))
    for l in range(n):
        acc: dict = defaultdict(set)  # old target index -> exponents
        for j in _f2.bits(new_cols[l]):
            shift = w[j] - w[l]
            for t, ks in d.get(order[j], {}).items():
                acc[idx[t]] ^= {shift + k for k in ks}
        for t, ks in acc.items():
            for m in _f2.bits(inv[t]):
                for k in ks:
                    out[order[l]][order[m]] ^= {k + w[m] - w[t]}
    for row in out.values():
        for ks in row.values():
            if any(k < 0 for k in ks):
                raise ArithmeticError("basis change produced a negative U-power")
    return CfkComplex(c.name, c.generators, _arrows_from(out))


def _persistent_basis(boundary: list) -> list:
    """New basis columns: cycles R_j replace their lows, chains V_j the rest."""
    per = _f2.persistence(boundary)
    cols = list(per.chains)
    for h, j in per.pairs:
        cols[h] = per.reduced[j]
    return cols


_TIE_RANK = {"target": 0, "isolated": 1, "source": 2}


def _simplify(c: CfkComplex, kind: str, other_roles: Optional[dict] = None, salt: int = 0) -> CfkComplex:
    """One persistence pass in the vertical or horizontal direction.

    Within a block of equal Alexander grading, column additions push earlier
    generators into later ones.  Ordering ties by the roles of the other
    direction (targets, then the isolated one, then sources) means those
    additions never disturb an existing matching in that direction.
    """
    if d_squared(c):
        raise ValueError("d^2 != 0")

    def tie(g):
        r = other_roles.get(g.id) if other_roles else None
        rank = _TIE_RANK[r.kind] if r else 0
        return (rank, zlib.crc32(f"{salt}:{g.id}".encode()) if salt else 0, g.id)

    if kind == "vertical":
        gens = sorted(c.generators, key=lambda g: (g.alexander, tie(g)))
        keep = lambda a: a.u_power == 0
        weight = {g.id: 0 for g in c.generators}
    else:
        gens = sorted(c.generators, key=lambda g: (-g.alexander, tie(g)))
        keep = lambda a: c.A(a.tgt) - a.u_power == c.A(a.src)
        weight = {g.id: g.alexander for g in c.generators}
    order = [g.id for g in gens]
    idx = {x: i for i, x in enumerate(order)}
    boundary = [0] * len(order)
    for a in c.arrows:
        if keep(a):
            boundary[idx[a.src]] ^= 1 << idx[a.tgt]
    return _change_basis(c, order, _persistent_basis(boundary), weight)


def simplify_vertical(c: CfkComplex) -> tuple:
    out = _simplify(c, "vertical")
    roles = vertical_roles(out)
    if roles is None:
        raise NotAKnotComplex(f"{c.name}: vertical complex does not have rank-one homology")
    return out, BasisRoles(vertical=roles)


def simplify_horizontal(c: CfkComplex) -> tuple:
    out = _simplify(c, "horizontal")
    roles = horizontal_roles(out)
    if roles is None:
        raise NotAKnotComplex(f"{c.name}: horizontal complex does not have rank-one homology")
    return out, BasisRoles(horizontal=roles)


def _simplify_both_direct(c: CfkComplex, attempts: int) -> Optional[tuple]:
    v, _ = simplify_vertical(c)
    h_first, _ = simplify_horizontal(c)
    for salt in range(attempts):
        h = _simplify(v, "horizontal", vertical_roles(v), salt)
        vr, hr = vertical_roles(h), horizontal_roles(h)
        if vr is not None and hr is not None:
            return h, BasisRoles(vertical=vr, horizontal=hr)
        w = _simplify(h_first, "vertical", horizontal_roles(h_first), salt)
        vr, hr = vertical_roles(w), horizontal_roles(w)
        if vr is not None and hr is not None:
            return w, BasisRoles(vertical=vr, horizontal=hr)
    return None


def simplify_both(c: CfkComplex, attempts: int = 8) -> tuple:
    """Basis that is vertically and horizontally simplified at once (heuristic).

    Vertical pass, then a horizontal pass ordered by the vertical roles, then
    re-check the vertical pairing.  If that fails the mirrored order is tried,
    then a few salted tie orders.  Last resort: simplify the mirror and take
    the dual basis.  Raises NoSimultaneousBasis when all fail.
    """
    found = _simplify_both_direct(c, attempts)
    if found is not None:
        return found
    dual = _simplify_both_direct(mirror(c), attempts)
    if dual is not None:
        back = mirror(dual[0])
        vr, hr = vertical_roles(back), horizontal_roles(back)
        if vr is not None and hr is not None:
            return back, BasisRoles(vertical=vr, horizontal=hr)
    raise NoSimultaneousBasis(f"{c.name}: no simultaneously simplified basis found")


_ROLE_EPSILON = {"isolated": 0, "target": 1, "source": -1}


def epsilon_from_roles(roles: BasisRoles) -> int:
    """Epsilon read off the horizontal role of the vertically distinguished generator."""
    return _ROLE_EPSILON[roles.horizontal[roles.x0].kind]


def distinguished_role_check(c: CfkComplex) -> tuple:
    """(ok, detail): compare epsilon from the nu scans with the basis roles.

    Diagnostic only; epsilon itself always comes from the scans.
    """
    e = epsilon(c)
    _, roles = simplify_both(c)
    got = epsilon_from_roles(roles)
    kind = roles.horizontal[roles.x0].kind
    return got == e, f"{c.name}: epsilon={e}, x0={roles.x0} is horizontally {kind}"


# ---------------------------------------------------------------- subquotients


@dataclass(frozen=True)
class SubquotientComplex:
    kind: str
    s: Optional[int]
    basis: tuple  # (generator id, U-offset)
    boundary: tuple  # bitmask over basis indices, one per basis element

    def index(self, x: str) -> int:
        for i, (y, _) in enumerate(self.basis):
            if y == x:
                return i
        raise KeyError(x)

    def homology_rank(self) -> int:
        return _f2.homology_rank(list(self.boundary))

    def d_squared_zero(self) -> bool:
        return all(_f2.apply(list(self.boundary), b) == 0 for b in self.boundary)


def _subquotient(c: CfkComplex, kind: str, s, offset: dict) -> SubquotientComplex:
    order = [g.id for g in sorted(c.generators, key=lambda g: (g.alexander, g.id))]
    idx = {x: i for i, x in enumerate(order)}
    boundary = [0] * len(order)
    for a in c.arrows:
        if offset[a.src] + a.u_power == offset[a.tgt]:
            boundary[idx[a.src]] ^= 1 << idx[a.tgt]
    return SubquotientComplex(kind, s, tuple((x, offset[x]) for x in order), tuple(boundary))


def build_vertical(c: CfkComplex) -> SubquotientComplex:
    return _subquotient(c, "vertical", None, {g.id: 0 for g in c.generators})


def build_As(c: CfkComplex, s: int) -> SubquotientComplex:
    return _subquotient(c, "A_s", s, {g.id: max(0, g.alexander - s) for g in c.generators})


def build_Aprime_s(c: CfkComplex, s: int) -> SubquotientComplex:
    return _subquotient(c, "A'_s", s, {g.id: min(0, g.alexander - s) for g in c.generators})


def build_horizontal(c: CfkComplex, s: int = 0) -> SubquotientComplex:
    """C{j=s}: basis U^(A(x)-s) x for every generator (negative offsets allowed)."""
    return _subquotient(c, "horizontal", s, {g.id: g.alexander - s for g in c.generators})


# ---------------------------------------------------------------- invariants


def _vertical_persistence(c: CfkComplex):
    vert = build_vertical(c)
    per = _f2.persistence(list(vert.boundary))
    if len(per.essential) != 1:
        raise NotAKnotComplex(
            f"{c.name}: vertical homology has rank {len(per.essential)}, expected 1"
        )
    return vert, per


def tau(c: CfkComplex) -> int:
    vert, per = _vertical_persistence(c)
    x = vert.basis[per.essential[0]][0]
    return c.A(x)


def generating_cycle(c: CfkComplex) -> int:
    """A cycle of C{i=0} representing the nonzero class, as a bitmask in vertical order."""
    _, per = _vertical_persistence(c)
    return per.chains[per.essential[0]]


def v_nontrivial(c: CfkComplex, s: int) -> bool:
    """Is v_s : A_s -> C{i=0} nonzero on homology?"""
    vert, _ = _vertical_persistence(c)
    As = build_As(c, s)
    image = _f2.Echelon(vert.boundary)
    # both complexes use the same (A, id) generator order
    keep = 0
    for i, (_, off) in enumerate(As.basis):
        if off == 0:
            keep |= 1 << i
    for z in _f2.kernel(list(As.boundary)):
        if (z & keep) not in image:
            return True
    return False


def vprime_nontrivial(c: CfkComplex, s: int) -> bool:
    """Is v'_s : C{i=0} -> A'_s nonzero on homology?"""
    g = generating_cycle(c)
    Ap = build_Aprime_s(c, s)
    keep = 0
    for i, (x, _) in enumerate(Ap.basis):
        if c.A(x) >= s:
            keep |= 1 << i
    return (g & keep) not in _f2.Echelon(Ap.boundary)


def _alex_range(c: CfkComplex) -> range:
    a = [g.alexander for g in c.generators]
    return range(min(a) - 1, max(a) + 2)


def nu_scan(c: CfkComplex) -> int:
    """nu by scanning every s; used to cross-check the window shortcut."""
    for s in _alex_range(c):
        if v_nontrivial(c, s):
            return s
    raise NotAKnotComplex("v_s never nontrivial")


def nu_prime_scan(c: CfkComplex) -> int:
    for s in reversed(_alex_range(c)):
        if vprime_nontrivial(c, s):
            return s
    raise NotAKnotComplex("v'_s never nontrivial")


def nu(c: CfkComplex) -> int:
    t = tau(c)
    return t if v_nontrivial(c, t) else t + 1


def nu_prime(c: CfkComplex) -> int:
    t = tau(c)
    return t if vprime_nontrivial(c, t) else t - 1


def epsilon(c: CfkComplex) -> int:
    t = tau(c)
    return 2 * t - nu(c) - nu_prime(c)


@dataclass(frozen=True)
class ConcordanceInvariants:
    tau: int
    nu: int
    nu_prime: int
    epsilon: int

    def check(self) -> list:
        problems = []
        if self.nu not in (self.tau, self.tau + 1):
            problems.append("nu outside {tau, tau+1}")
        if self.nu_prime not in (self.tau - 1, self.tau):
            problems.append("nu' outside {tau-1, tau}")
        if self.epsilon != 2 * self.tau - self.nu - self.nu_prime:
            problems.append("epsilon != 2 tau - nu - nu'")
        if self.epsilon == 0 and self.tau != 0:
            problems.append("epsilon = 0 but tau != 0")
        return problems

    def as_tuple(self):
        return (self.tau, self.nu, self.nu_prime, self.epsilon)


def invariants(c: CfkComplex) -> ConcordanceInvariants:
    t = tau(c)
    n = t if v_nontrivial(c, t) else t + 1
    n2 = t if vprime_nontrivial(c, t) else t - 1
    return ConcordanceInvariants(t, n, n2, 2 * t - n - n2)


def tau_from_tower(c: CfkComplex) -> int:
    """tau = -max{ s : HFK^-(K, s) carries a class with U^d x != 0 for all d }.

    In Alexander grading s the associated graded complex is the horizontal
    complex on {A >= s}; multiplication by a large power of U lands in the full
    horizontal complex, so a class is non-torsion iff it survives there.
    """
    horiz = [(a.src, a.tgt) for a in c.arrows if c.A(a.tgt) - a.u_power == c.A(a.src)]
    order = [g.id for g in sorted(c.generators, key=lambda g: g.id)]
    idx = {x: i for i, x in enumerate(order)}
    cols = [0] * len(order)
    for s_, t_ in horiz:
        cols[idx[s_]] ^= 1 << idx[t_]
    full_image = _f2.Echelon(cols)
    levels = sorted({g.alexander for g in c.generators}, reverse=True)
    for s in levels:
        sub = [idx[g.id] for g in c.generators if g.alexander >= s]
        sub_cols = [cols[i] for i in sub]
        for z in _f2.kernel(sub_cols):
            chain = 0
            for pos in _f2.bits(z):
                chain |= 1 << sub[pos]
            if chain not in full_image:
                return -s
    raise NotAKnotComplex("no U-tower found")


# ---------------------------------------------------------------- operations


def mirror(c: CfkComplex) -> CfkComplex:
    gens = [
        CfkGenerator(g.id, -g.alexander, None if g.maslov is None else -g.maslov) for g in c.generators
    ]
    arrows = [CfkArrow(a.tgt, a.src, a.u_power) for a in c.arrows]
    name = c.name[7:-1] if c.name.startswith("mirror(") and c.name.endswith(")") else f"mirror({c.name})"
    return CfkComplex(name, tuple(gens), frozenset(arrows))


def tensor(c1: CfkComplex, c2: CfkComplex, sep: str = "|") -> CfkComplex:
    """Tensor product over F2[U] without reduction."""
    gens = []
    for x in c1.generators:
        for y in c2.generators:
            m = None if x.maslov is None or y.maslov is None else x.maslov + y.maslov
            gens.append(CfkGenerator(f"{x.id}{sep}{y.id}", x.alexander + y.alexander, m))
    arrows = []
    for a in c1.arrows:
        for y in c2.generators:
            arrows.append((f"{a.src}{sep}{y.id}", f"{a.tgt}{sep}{y.id}", a.u_power))
    for x in c1.generators:
        for b in c2.arrows:
            arrows.append((f"{x.id}{sep}{b.src}", f"{x.id}{sep}{b.tgt}", b.u_power))
    return CfkComplex.build(f"{c1.name}#{c2.name}", gens, arrows)


def connected_sum(c1: CfkComplex, c2: CfkComplex) -> CfkComplex:
    return reduce(tensor(c1, c2))


def alexander_polynomial(c: CfkComplex) -> dict:
    """Graded Euler characteristic {exponent: coefficient}, normalized so Delta(1) = 1."""
    if not c.has_maslov:
        raise MissingMaslov(f"{c.name} has no Maslov gradings")
    poly: Counter = Counter()
    for g in reduce(c).generators:
        poly[g.alexander] += -1 if g.maslov % 2 else 1
    if sum(poly.values()) < 0:
        poly = Counter({k: -v for k, v in poly.items()})
    return {k: v for k, v in sorted(poly.items()) if v}


def format_laurent(poly: dict, var: str = "t") -> str:
    if not poly:
        return "0"
    terms = []
    for e, coef in sorted(poly.items(), reverse=True):
        mag = abs(coef)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        terms.append(("-" if coef < 0 else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------- library


def _library():
    return {
        "unknot": CfkComplex.build("unknot", [("u", 0, 0)]),
        "trefoil_rh": CfkComplex.build(
            "trefoil_rh",
            [("c", 1, 0), ("b", 0, -1), ("a", -1, -2)],
            [("b", "a", 0), ("b", "c", 1)],
        ),
        "trefoil_lh": CfkComplex.build(
            "trefoil_lh",
            [("c", 1, 2), ("b", 0, 1), ("a", -1, 0)],
            [("c", "b", 0), ("a", "b", 1)],
        ),
        # box {a,b,c,d} plus the isolated e; Maslov = Alexander (thin, signature 0)
        "figure8": CfkComplex.build(
            "figure8",
            [("a", -1, -1), ("b", 0, 0), ("c", 1, 1), ("d", 0, 0), ("e", 0, 0)],
            [("d", "a", 0), ("d", "c", 1), ("c", "b", 0), ("a", "b", 1)],
        ),
    }


KNOT_NAMES = ("unknot", "trefoil_rh", "trefoil_lh", "figure8")


def knot_library(name: str) -> CfkComplex:
    lib = _library()
    if name not in lib:
        raise KeyError(f"unknown built-in knot {name!r}; choose from {', '.join(KNOT_NAMES)}")
    return lib[name]
