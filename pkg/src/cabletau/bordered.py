"""Type D structures and Type A modules over the torus algebra.

Edges ``x --rho--> y`` of a Type D structure stand for the term rho (x) y in
delta_1(x).  Type A relations are stored as parametric families and only
instantiated against concrete label sequences.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional

import networkx as nx

from . import cfk as _cfk
from .torus_algebra import (
    AlgebraElement,
    Idempotent,
    ReebLabel,
    composable,
    left,
    multiply,
    right,
)

R = ReebLabel
I1, I2 = Idempotent.I1, Idempotent.I2


# ---------------------------------------------------------------- Type D


@dataclass(frozen=True)
class TypeDStructure:
    generators: tuple  # (id, Idempotent)
    edges: frozenset  # (src, tgt, ReebLabel)
    name: str = ""
    # grading data carried over from the knot complex: A of the iota_1 basis and the framing
    alexander: Optional[tuple] = None
    framing: Optional[int] = None

    @classmethod
    def build(cls, generators, edges, name: str = "", alexander=None, framing=None) -> "TypeDStructure":
        parity = Counter((s, t, l if isinstance(l, ReebLabel) else ReebLabel.parse(l)) for s, t, l in edges)
        alex = None if alexander is None else tuple(sorted(dict(alexander).items()))
        return cls(tuple(generators), frozenset(e for e, n in parity.items() if n % 2), name, alex, framing)

    @property
    def idem(self) -> dict:
        return dict(self.generators)

    def out_edges(self) -> dict:
        out = defaultdict(list)
        for s, t, l in sorted(self.edges, key=_edge_key):
            out[s].append((t, l))
        return out

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        for x, i in self.generators:
            g.add_node(x, idem=i)
        for s, t, l in self.edges:
            g.add_edge(s, t, label=l)
        return g

    def edge_list(self) -> str:
        lines = [f"{s} {l.value or '0'} {t}" for s, t, l in sorted(self.edges, key=_edge_key)]
        return "\n".join(lines) + ("\n" if lines else "")

    def dump(self) -> str:
        gens = [f"{x} {i.value}" for x, i in sorted(self.generators)]
        return "generators:\n" + "\n".join("  " + g for g in gens) + "\nedges:\n" + "".join(
            "  " + line + "\n" for line in self.edge_list().splitlines()
        )


def _edge_key(e):
    s, t, l = e
    return (s, l.value, t)


def _coefficient(label: ReebLabel, src_idem: Idempotent) -> AlgebraElement:
    if label is ReebLabel.EMPTY:
        return AlgebraElement(src_idem.value)
    return AlgebraElement(label.value)


def idempotent_violations(d: TypeDStructure) -> list:
    idem = d.idem
    bad = []
    for s, t, l in d.edges:
        if l is ReebLabel.EMPTY:
            if idem[s] is not idem[t]:
                bad.append((s, t, l))
        elif left(l) is not idem[s] or right(l) is not idem[t]:
            bad.append((s, t, l))
    return sorted(bad, key=_edge_key)


def type_d_violations(d: TypeDStructure) -> list:
    """Nonzero coefficients of the Type D relation: [(x, z, algebra element)]."""
    idem = d.idem
    out = d.out_edges()
    bad = []
    for x, _ in d.generators:
        acc: Counter = Counter()
        for y, l1 in out.get(x, []):
            a = _coefficient(l1, idem[x])
            for z, l2 in out.get(y, []):
                prod = multiply(a, _coefficient(l2, idem[y]))
                if prod is not AlgebraElement.ZERO:
                    acc[(z, prod)] += 1
        bad += [(x, z, e) for (z, e), n in sorted(acc.items(), key=lambda kv: (kv[0][0], kv[0][1].value)) if n % 2]
    return bad


def satisfies_type_d(d: TypeDStructure) -> bool:
    return not idempotent_violations(d) and not type_d_violations(d)


def is_bounded(d: TypeDStructure) -> bool:
    return nx.is_directed_acyclic_graph(d.graph())


def has_pure_23_cycle(d: TypeDStructure) -> bool:
    g = nx.DiGraph()
    g.add_edges_from((s, t) for s, t, l in d.edges if l is R.R23)
    return not nx.is_directed_acyclic_graph(g)


def isomorphic(d1: TypeDStructure, d2: TypeDStructure) -> bool:
    """Graph isomorphism respecting idempotents and edge labels."""
    gm = nx.algorithms.isomorphism.MultiDiGraphMatcher(
        d1.graph(),
        d2.graph(),
        node_match=lambda a, b: a["idem"] == b["idem"],
        edge_match=lambda a, b: Counter(e["label"] for e in a.values()) == Counter(e["label"] for e in b.values()),
    )
    return gm.is_isomorphic()


# ---------------------------------------------------------------- CFD of a framed complement


@dataclass(frozen=True)
class FramedComplement:
    complex: _cfk.CfkComplex
    roles: _cfk.BasisRoles
    framing: int

    @classmethod
    def of(cls, c: _cfk.CfkComplex, framing: int) -> "FramedComplement":
        simp, roles = _cfk.simplify_both(c)
        return cls(simp, roles, framing)


def cfd_from_cfk(fc: FramedComplement) -> TypeDStructure:
    c, roles, n = fc.complex, fc.roles, fc.framing
    t = _cfk.tau(c)
    gens = [(g.id, I1) for g in c.generators]
    edges = []
    for src, tgt, ell in roles.vertical_arrows():
        ys = [f"y{k}:{src}>{tgt}" for k in range(1, ell + 1)]
        gens += [(y, I2) for y in ys]
        edges.append((src, ys[0], R.R1))
        edges += [(ys[k + 1], ys[k], R.R23) for k in range(ell - 1)]
        edges.append((tgt, ys[-1], R.R123))
    for src, tgt, ell in roles.horizontal_arrows():
        ws = [f"w{k}:{src}>{tgt}" for k in range(1, ell + 1)]
        gens += [(w, I2) for w in ws]
        edges.append((src, ws[0], R.R3))
        edges += [(ws[k], ws[k + 1], R.R23) for k in range(ell - 1)]
        edges.append((ws[-1], tgt, R.R2))
    x0, x0p = roles.x0, roles.x0_prime
    m = abs(2 * t - n)
    zs = [f"z{k}" for k in range(1, m + 1)]
    gens += [(z, I2) for z in zs]
    if n < 2 * t:
        edges.append((x0, zs[0], R.R1))
        edges += [(zs[k + 1], zs[k], R.R23) for k in range(m - 1)]
        edges.append((x0p, zs[-1], R.R3))
    elif n == 2 * t:
        edges.append((x0, x0p, R.R12))
    else:
        edges.append((x0, zs[0], R.R123))
        edges += [(zs[k], zs[k + 1], R.R23) for k in range(m - 1)]
        edges.append((zs[-1], x0p, R.R2))
    return TypeDStructure.build(
        gens, edges, name=f"CFD({c.name}, n={n})",
        alexander={g.id: g.alexander for g in c.generators}, framing=n,
    )


def expected_generator_count(fc: FramedComplement) -> int:
    t = _cfk.tau(fc.complex)
    return (
        len(fc.complex)
        + sum(l for *_, l in fc.roles.vertical_arrows())
        + sum(l for *_, l in fc.roles.horizontal_arrows())
        + abs(2 * t - fc.framing)
    )


def cfd(c: _cfk.CfkComplex, framing: int) -> TypeDStructure:
    return cfd_from_cfk(FramedComplement.of(c, framing))


# ---------------------------------------------------------------- Type A


@dataclass(frozen=True)
class TypeARelation:
    input: str
    labels: tuple
    output: str
    delta_a: int


@dataclass(frozen=True)
class Seg:
    label: ReebLabel
    param: Optional[str] = None  # None: exactly one occurrence; else a run of length param


@dataclass(frozen=True)
class RelationFamily:
    """m(input, labels) = output where labels follow ``segments``.

    ``inputs`` lists (generator, bindings) pairs; ``bound(param, env)`` gives the
    largest allowed run length (None for unbounded).
    """

    name: str
    inputs: tuple
    segments: tuple
    bound: Callable
    output: Callable
    delta: Callable

    def parse(self, labels, env0: dict):
        """('complete', env), ('prefix', env) or None."""
        env = dict(env0)
        pos = 0
        for seg in self.segments:
            if seg.param is None:
                if pos == len(labels):
                    return ("prefix", env)
                if labels[pos] is not seg.label:
                    return None
                pos += 1
            else:
                k = 0
                while pos < len(labels) and labels[pos] is seg.label:
                    k += 1
                    pos += 1
                b = self.bound(seg.param, {**env, seg.param: k})
                if b is not None and k > b:
                    return None
                env[seg.param] = k
        return ("complete", env) if pos == len(labels) else None


@dataclass
class TypeAModule:
    generators: tuple  # (id, Idempotent)
    families: tuple
    name: str = ""
    kind: str = ""
    p: Optional[int] = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def idem(self) -> dict:
        return dict(self.generators)

    def _instances(self, gen):
        for fam in self.families:
            for g, env in fam.inputs:
                if g == gen:
                    yield fam, env

    def relations_matching(self, gen: str, labels) -> list:
        """All (output, delta_a) with m(gen, *labels) containing output."""
        labels = tuple(labels)
        key = (gen, labels)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = []
        for fam, env in self._instances(gen):
            r = fam.parse(labels, env)
            if r and r[0] == "complete":
                out.append((fam.output(r[1]), fam.delta(r[1])))
        self._cache[key] = out
        return out

    def is_prefix(self, gen: str, labels) -> bool:
        labels = tuple(labels)
        for fam, env in self._instances(gen):
            r = fam.parse(labels, env)
            if r and r[0] == "prefix":
                return True
        return False

    def instantiate(self, max_len: int) -> list:
        """Every relation whose label sequence has length <= max_len."""
        rels = []
        for gen, idem in self.generators:
            for labels in composable_sequences(idem, max_len):
                for out, delta in self.relations_matching(gen, labels):
                    rels.append(TypeARelation(gen, labels, out, delta))
        return rels


_STEPS = {
    I1: (R.R1, R.R3, R.R12, R.R123),
    I2: (R.R2, R.R23),
}


def composable_sequences(start: Idempotent, max_len: int, min_len: int = 0):
    """Composable Reeb sequences starting in idempotent ``start``, by length."""
    layer = [((), start)]
    for n in range(max_len + 1):
        if n >= min_len:
            for seq, _ in layer:
                yield seq
        layer = [(seq + (l,), right(l)) for seq, i in layer for l in _STEPS[i]]


def cfa_p1(p: int) -> TypeAModule:
    if not isinstance(p, int) or p < 2:
        raise ValueError("cfa_p1 needs an integer p >= 2")
    b = lambda k: f"b{k}"
    gens = (("a", I1),) + tuple((b(k), I2) for k in range(1, 2 * p - 1))
    unbounded = lambda param, env: None
    fams = (
        RelationFamily(
            "a.3.23^i.2",
            (("a", {}),),
            (Seg(R.R3), Seg(R.R23, "i"), Seg(R.R2)),
            unbounded,
            lambda e: "a",
            lambda e: p * e["i"] + p,
        ),
        RelationFamily(
            "a.3.23^i.2.12^j.1",
            (("a", {}),),
            (Seg(R.R3), Seg(R.R23, "i"), Seg(R.R2), Seg(R.R12, "j"), Seg(R.R1)),
            lambda param, env: p - 2 if param == "j" else None,
            lambda e: b(e["j"] + 1),
            lambda e: p * e["i"] + e["j"] + 1,
        ),
        RelationFamily(
            "a.12^j.1",
            (("a", {}),),
            (Seg(R.R12, "j"), Seg(R.R1)),
            lambda param, env: p - 2,
            lambda e: b(2 * p - e["j"] - 2),
            lambda e: 0,
        ),
        RelationFamily(
            "m1(b_j)",
            tuple((b(j), {"j": j}) for j in range(1, p)),
            (),
            unbounded,
            lambda e: b(2 * p - e["j"] - 1),
            lambda e: p - e["j"],
        ),
        RelationFamily(
            "b_j.2.12^i.1 (up)",
            tuple((b(j), {"j": j}) for j in range(1, p - 1)),
            (Seg(R.R2), Seg(R.R12, "i"), Seg(R.R1)),
            lambda param, env: p - env["j"] - 2,
            lambda e: b(e["j"] + e["i"] + 1),
            lambda e: e["i"] + 1,
        ),
        RelationFamily(
            "b_j.2.12^i.1 (down)",
            tuple((b(j), {"j": j}) for j in range(p + 1, 2 * p - 1)),
            (Seg(R.R2), Seg(R.R12, "i"), Seg(R.R1)),
            lambda param, env: env["j"] - p - 1,
            lambda e: b(e["j"] - e["i"] - 1),
            lambda e: 0,
        ),
    )
    return TypeAModule(gens, fams, name=f"CFA({p},1)", kind="cfa_p1", p=p)


def relation_violations(m: TypeAModule, max_len: int) -> list:
    """Well-formedness of every instantiated relation up to max_len labels."""
    idem = m.idem
    bad = []
    for r in m.instantiate(max_len):
        if any(l is R.EMPTY for l in r.labels) or r.delta_a < 0:
            bad.append(r)
        elif r.labels:
            if not composable(r.labels) or left(r.labels[0]) is not idem[r.input] or right(r.labels[-1]) is not idem[r.output]:
                bad.append(r)
        elif idem[r.output] is not idem[r.input]:
            bad.append(r)
    return bad


def a_infinity_violations(m: TypeAModule, max_len: int) -> list:
    """Truncated A-infinity relations for label sequences of length <= max_len.

    For each generator x and composable sequence a_1..a_n the sum of
    m(m(x, a_1..a_j), a_{j+1}..a_n) over all splits plus the terms with one
    adjacent product a_k a_{k+1} must vanish.  Terms that cancel must also
    carry the same total filtration shift.
    """
    bad = []
    for gen, idem in m.generators:
        for seq in composable_sequences(idem, max_len):
            terms: Counter = Counter()
            shifts = defaultdict(set)
            for j in range(len(seq) + 1):
                for mid, d1 in m.relations_matching(gen, seq[:j]):
                    for out, d2 in m.relations_matching(mid, seq[j:]):
                        terms[out] += 1
                        shifts[out].add(d1 + d2)
            for k in range(len(seq) - 1):
                prod = multiply(seq[k], seq[k + 1])
                if prod is AlgebraElement.ZERO:
                    continue
                merged = seq[:k] + (ReebLabel(prod.value),) + seq[k + 2:]
                for out, d in m.relations_matching(gen, merged):
                    terms[out] += 1
                    shifts[out].add(d)
            for out, n in terms.items():
                if n % 2 or len(shifts[out]) > 1:
                    bad.append((gen, tuple(l.value for l in seq), out, n, sorted(shifts[out])))
    return bad
