"""Box tensor product CFA(p,1) [x] CFD, filtered reduction, grading pinning, tau of cables."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from . import _f2
from . import bordered as _bd
from . import cfk as _cfk
from .torus_algebra import ReebLabel


class UnboundedPairing(RuntimeError):
    pass


class InconsistentRelativeGrading(RuntimeError):
    pass


class NoSymmetricPinning(RuntimeError):
    pass


class AmbiguousPinning(RuntimeError):
    def __init__(self, msg, candidates):
        super().__init__(msg)
        self.candidates = candidates


@dataclass(frozen=True)
class FilteredComplex:
    generators: tuple
    arrows: frozenset  # (src, tgt, drop)
    links: frozenset = frozenset()  # (u, v, A(u) - A(v)); may mention cancelled generators

    @classmethod
    def build(cls, generators, arrows, links=None) -> "FilteredComplex":
        parity = Counter(arrows)
        arrows = frozenset(a for a, n in parity.items() if n % 2)
        links = frozenset(arrows if links is None else links)
        return cls(tuple(generators), arrows, links)

    def __len__(self):
        return len(self.generators)

    def d_squared_zero(self) -> bool:
        out = defaultdict(list)
        for s, t, _ in self.arrows:
            out[s].append(t)
        for x in self.generators:
            acc = Counter(z for y in out.get(x, []) for z in out.get(y, []))
            if any(n % 2 for n in acc.values()):
                return False
        return True

    def dump(self, grading: Optional["PinnedGrading"] = None) -> str:
        lines = []
        for g in sorted(self.generators, key=_gkey):
            a = "" if grading is None or g not in grading.alexander else f" A={grading.alexander[g]}"
            lines.append(f"gen {_fmt(g)}{a}")
        for s, t, d in sorted(self.arrows, key=lambda e: (_gkey(e[0]), _gkey(e[1]), e[2])):
            lines.append(f"arrow {_fmt(s)} -> {_fmt(t)} drop={d}")
        return "\n".join(lines) + "\n"


def _gkey(g):
    return tuple(str(x) for x in g) if isinstance(g, tuple) else (str(g),)


def _fmt(g) -> str:
    return "(x)".join(map(str, g)) if isinstance(g, tuple) else str(g)


# ---------------------------------------------------------------- box tensor


def box_tensor(m: _bd.TypeAModule, d: _bd.TypeDStructure) -> FilteredComplex:
    bounded = _bd.is_bounded(d)
    if not bounded and not (m.kind == "cfa_p1" and not _bd.has_pure_23_cycle(d)):
        raise UnboundedPairing(f"{d.name} is unbounded and the pairing may not terminate")
    out = d.out_edges()
    gens = [(x, y) for x, i in m.generators for y, j in d.generators if i is j]
    arrows = []
    for x, y in gens:
        for y2, l in out.get(y, []):
            if l is ReebLabel.EMPTY:
                arrows.append(((x, y), (x, y2), 0))
        stack = [(y, ())]
        while stack:
            node, labels = stack.pop()
            for res, delta in m.relations_matching(x, labels):
                arrows.append(((x, y), (res, node), delta))
            if not m.is_prefix(x, labels):
                continue
            for nxt, l in out.get(node, []):
                if l is not ReebLabel.EMPTY:
                    stack.append((nxt, labels + (l,)))
    links = None
    G = tensor_potential(m, d, gens)
    if G is not None:
        for src, tgt, drop in arrows:
            if G[src] - G[tgt] != drop:
                raise InconsistentRelativeGrading(f"{_fmt(src)} -> {_fmt(tgt)} has drop {drop}")
        root = gens[0]
        links = set(arrows) | {(g, root, G[g] - G[root]) for g in gens[1:]}
    return FilteredComplex.build(gens, arrows, links)


# ---------------------------------------------------------------- relative gradings


def label_weights(p: int, n: int) -> dict:
    """Alexander weight of each Reeb label in the (p, pn+1) pairing.

    With these weights every CFA(p,1) shift splits as f(in) - f(out) + sum of
    label weights, and every edge x -rho-> y of CFD(K, n) satisfies
    h(x) - h(y) = w(rho) with h = -p A on the iota_1 basis.
    """
    delta = -p * n
    return {
        ReebLabel.EMPTY: 0,
        ReebLabel.R1: 0,
        ReebLabel.R2: delta,
        ReebLabel.R3: p - delta,
        ReebLabel.R12: delta,
        ReebLabel.R23: p,
        ReebLabel.R123: p,
    }


def _propagate(seeds: dict, constraints: list, what: str) -> dict:
    """Solve value[u] - value[v] = c over a constraint list, starting from seeds."""
    val = dict(seeds)
    adj = defaultdict(list)
    for u, v, c in constraints:
        adj[u].append((v, c))
        adj[v].append((u, -c))
    stack = list(val)
    while stack:
        u = stack.pop()
        for v, c in adj[u]:
            if v not in val:
                val[v] = val[u] - c
                stack.append(v)
    for u, v, c in constraints:
        if u in val and v in val and val[u] - val[v] != c:
            raise InconsistentRelativeGrading(f"{what}: {u} / {v} disagree")
    return val


def d_potential(d: _bd.TypeDStructure, p: int) -> Optional[dict]:
    if d.alexander is None or d.framing is None:
        return None
    w = label_weights(p, d.framing)
    seeds = {x: -p * a for x, a in d.alexander}
    h = _propagate(seeds, [(s, t, w[l]) for s, t, l in d.edges], "type D grading")
    if len(h) != len(d.generators):
        return None
    return h


def a_potential(m: _bd.TypeAModule, w: dict) -> dict:
    rels = m.instantiate(m.p + 4)
    cons = [(r.input, r.output, r.delta_a - sum(w[l] for l in r.labels)) for r in rels]
    f = _propagate({"a": 0}, cons, "type A grading")
    if len(f) != len(m.generators):
        raise InconsistentRelativeGrading("type A grading does not reach every generator")
    return f


def tensor_potential(m: _bd.TypeAModule, d: _bd.TypeDStructure, gens) -> Optional[dict]:
    """Relative Alexander grading G(x (x) y) = f(x) + h(y), or None when unavailable."""
    if m.kind != "cfa_p1" or d.framing is None:
        return None
    h = d_potential(d, m.p)
    if h is None:
        return None
    f = a_potential(m, label_weights(m.p, d.framing))
    return {(x, y): f[x] + h[y] for x, y in gens}


def total_homology_rank(fc: FilteredComplex) -> int:
    idx = {g: i for i, g in enumerate(fc.generators)}
    cols = [0] * len(idx)
    for s, t, _ in fc.arrows:
        cols[idx[s]] ^= 1 << idx[t]
    return _f2.homology_rank(cols)


def reduce_filtered(fc: FilteredComplex) -> FilteredComplex:
    """Cancel drop-0 arrows until none remain."""
    d: dict = defaultdict(dict)  # src -> tgt -> set(drops)
    for s, t, k in fc.arrows:
        d[s].setdefault(t, set()).symmetric_difference_update({k})
    alive = set(fc.generators)
    order = {g: i for i, g in enumerate(sorted(fc.generators, key=_gkey))}
    while True:
        pick = None
        for x in sorted((g for g in d if g in alive), key=order.get):
            for y in sorted(d[x], key=order.get):
                if d[x][y] == {0}:
                    pick = (x, y)
                    break
            if pick:
                break
        if pick is None:
            break
        x, y = pick
        row_x = {w: set(ks) for w, ks in d[x].items() if w != y}
        incoming = [(z, set(row[y])) for z, row in d.items() if y in row and z != x and row[y]]
        for z, kzs in incoming:
            for w, kws in row_x.items():
                tgt = d[z].setdefault(w, set())
                for a in kzs:
                    for b in kws:
                        tgt.symmetric_difference_update({a + b})
        for g in (x, y):
            d.pop(g, None)
            alive.discard(g)
        for row in d.values():
            row.pop(x, None)
            row.pop(y, None)
    arrows = frozenset((s, t, k) for s, row in d.items() for t, ks in row.items() for k in ks)
    gens = tuple(g for g in fc.generators if g in alive)
    return FilteredComplex(gens, arrows, fc.links | arrows)


# ---------------------------------------------------------------- pinning


@dataclass
class PinnedGrading:
    alexander: dict  # generator -> absolute Alexander grading (every generator a link reaches)
    components: list  # lists of surviving generators
    shifts: list
    ambiguous: bool = False
    candidates: list = field(default_factory=list)  # alternative shift vectors


def relative_components(fc: FilteredComplex) -> list:
    """[(survivors, {gen: relative grading})] from the grading links; raises on conflicts."""
    g = nx.Graph()
    g.add_nodes_from(fc.generators)
    adj = defaultdict(list)
    for u, v, off in fc.links:
        g.add_edge(u, v)
        adj[u].append((v, off))
        adj[v].append((u, -off))
    alive = set(fc.generators)
    comps = []
    for nodes in sorted(nx.connected_components(g), key=lambda c: min(_gkey(x) for x in c)):
        survivors = sorted((x for x in nodes if x in alive), key=_gkey)
        if not survivors:
            continue
        root = survivors[0]
        rel = {root: 0}
        stack = [root]
        while stack:
            u = stack.pop()
            for v, off in adj[u]:
                want = rel[u] - off
                if v in rel:
                    if rel[v] != want:
                        raise InconsistentRelativeGrading(f"{_fmt(u)} / {_fmt(v)} disagree")
                else:
                    rel[v] = want
                    stack.append(v)
        comps.append((survivors, rel))
    return comps


def _symmetric(counts: Counter) -> bool:
    return all(counts.get(-a, 0) == n for a, n in counts.items() if n)


def pin_gradings(fc: FilteredComplex, max_candidates: int = 16) -> PinnedGrading:
    """Integer shifts per component making the surviving graded profile symmetric."""
    comps = relative_components(fc)
    profiles = []
    for survivors, rel in comps:
        lo = min(rel[x] for x in survivors)
        profiles.append(Counter(rel[x] - lo for x in survivors))
    widths = [max(p) for p in profiles]
    bound = sum(w + 1 for w in widths)
    total = sum(sum(p.values()) for p in profiles)
    # place the widest components first; the sum of all gradings must vanish
    order = sorted(range(len(comps)), key=lambda k: (-widths[k], -sum(profiles[k].values()), k))
    sols = []
    prof_sum = [sum(a * n for a, n in p.items()) for p in profiles]
    sizes = [sum(p.values()) for p in profiles]

    def rec(pos, shifts, counts, running):
        if len(sols) > max_candidates:
            return
        if pos == len(order):
            if running == 0 and _symmetric(counts):
                sols.append(dict(shifts))
            return
        remaining = sum(sizes[k] for k in order[pos:])
        if sum(abs(n - counts.get(-a, 0)) for a, n in counts.items() if a > 0 and n) + sum(
            abs(n - counts.get(-a, 0)) for a, n in counts.items() if a < 0 and n and counts.get(-a, 0) == 0
        ) > remaining:
            return
        k = order[pos]
        rest = order[pos + 1:]
        if not rest:
            # last component: its shift is forced by the vanishing sum
            num = -(running + prof_sum[k])
            if num % sizes[k]:
                return
            choices = [num // sizes[k]]
        else:
            choices = range(-bound, bound - widths[k] + 1)
        for s in choices:
            if s < -bound or s + widths[k] > bound:
                continue
            for a, n in profiles[k].items():
                counts[a + s] += n
            shifts[k] = s
            rec(pos + 1, shifts, counts, running + s * sizes[k] + prof_sum[k])
            for a, n in profiles[k].items():
                counts[a + s] -= n
            del shifts[k]

    if comps:
        rec(0, {}, Counter(), 0)
    if not sols:
        raise NoSymmetricPinning(f"no symmetric placement of {len(comps)} components ({total} generators)")
    best = sols[0]
    alexander = {}
    shift_list = []
    for k, (survivors, rel) in enumerate(comps):
        lo = min(rel[x] for x in survivors)
        shift_list.append(best[k])
        for x, r in rel.items():
            alexander[x] = r - lo + best[k]
    return PinnedGrading(
        alexander,
        [s for s, _ in comps],
        shift_list,
        ambiguous=len(sols) > 1,
        candidates=[[s[k] for k in range(len(comps))] for s in sols],
    )


def filtered_tau(fc: FilteredComplex, alexander: dict) -> tuple:
    """(tau, survivor): filtration level at which the homology generator is born."""
    gens = sorted(fc.generators, key=lambda g: (alexander[g], _gkey(g)))
    idx = {g: i for i, g in enumerate(gens)}
    cols = [0] * len(gens)
    for s, t, _ in fc.arrows:
        cols[idx[s]] ^= 1 << idx[t]
    per = _f2.persistence(cols)
    if len(per.essential) != 1:
        raise _cfk.NotAKnotComplex(f"homology has rank {len(per.essential)}")
    j = per.essential[0]
    return alexander[gens[j]], gens[j]


# ---------------------------------------------------------------- pipeline


@dataclass
class CableResult:
    tau: int
    p: int
    n: int
    q: int
    rank: int
    survivor: tuple
    ambiguous: bool
    candidate_taus: list
    components: int
    tensor_size: int
    reduced_size: int
    epsilon: int
    roles: _cfk.BasisRoles
    checks: dict = field(default_factory=dict)
    reduced: Optional[FilteredComplex] = None
    grading: Optional[PinnedGrading] = None


def tensor_pipeline(c: _cfk.CfkComplex, p: int, n: int):
    fcomp = _bd.FramedComplement.of(c, n)
    d = _bd.cfd_from_cfk(fcomp)
    raw = box_tensor(_bd.cfa_p1(p), d)
    return fcomp, d, raw


def cable_tau_tensor(c: _cfk.CfkComplex, p: int, n: int, strict: bool = True) -> CableResult:
    if p < 2:
        raise ValueError("p must be at least 2")
    fcomp, d, raw = tensor_pipeline(c, p, n)
    if not raw.d_squared_zero():
        raise ArithmeticError("box tensor output has d^2 != 0")
    rank = total_homology_rank(raw)
    if rank != 1:
        raise _cfk.NotAKnotComplex(f"tensor homology has rank {rank}")
    red = reduce_filtered(raw)
    pin = pin_gradings(red)
    taus = []
    for cand in pin.candidates:
        alex = {}
        for comp, (survivors, rel) in zip(cand, relative_components(red)):
            lo = min(rel[x] for x in survivors)
            for x in survivors:
                alex[x] = rel[x] - lo + comp
        taus.append(filtered_tau(red, alex)[0])
    t, survivor = filtered_tau(red, pin.alexander)
    if strict and len(set(taus)) > 1:
        raise AmbiguousPinning(f"pinning is ambiguous; tau candidates {sorted(set(taus))}", sorted(set(taus)))
    eps = _cfk.epsilon(fcomp.complex)
    res = CableResult(
        tau=t,
        p=p,
        n=n,
        q=p * n + 1,
        rank=rank,
        survivor=survivor,
        ambiguous=pin.ambiguous,
        candidate_taus=sorted(set(taus)),
        components=len(pin.components),
        tensor_size=len(raw),
        reduced_size=len(red),
        epsilon=eps,
        roles=fcomp.roles,
        reduced=red,
        grading=pin,
    )
    res.checks = survivor_checks(res, p)
    return res


def survivor_checks(res: CableResult, p: int) -> dict:
    """Compare the survivor with the generators predicted by the case analysis."""
    x0p = res.roles.x0_prime
    out = {}
    if res.epsilon == 1:
        out["survivor_is_a_x0prime"] = res.survivor == ("a", x0p)
    elif res.epsilon == -1:
        # x0' starts a vertical chain x0' -D1-> y
        r = res.roles.vertical.get(x0p)
        if r is not None and r.kind == "source":
            y = f"y1:{x0p}>{r.partner}"
            a_x1, b1_y = ("a", x0p), ("b1", y)
            g = res.grading.alexander
            if a_x1 in g and b1_y in g:
                out["b1y_minus_ax1"] = g[b1_y] - g[a_x1] == p - 1
                out["survivor_is_b1y"] = res.survivor == b1_y
    return out


# ---------------------------------------------------------------- summands


def component_graphs(fc: FilteredComplex, alexander: Optional[dict] = None) -> list:
    g = nx.DiGraph()
    for x in fc.generators:
        g.add_node(x, A=None if alexander is None else alexander.get(x))
    for s, t, k in fc.arrows:
        g.add_edge(s, t, drop=k)
    return [g.subgraph(c).copy() for c in nx.weakly_connected_components(g)]


def contains_summand(big: FilteredComplex, small: FilteredComplex, big_grading: Optional[dict] = None,
                     small_grading: Optional[dict] = None) -> bool:
    """Is every component of ``small`` matched by a distinct isomorphic component of ``big``?

    With gradings supplied the match must also preserve absolute Alexander gradings.
    """
    bigs = component_graphs(big, big_grading)
    used = [False] * len(bigs)
    nm = (lambda a, b: a["A"] == b["A"]) if big_grading is not None else None
    em = lambda a, b: a["drop"] == b["drop"]
    for comp in component_graphs(small, small_grading):
        for i, cand in enumerate(bigs):
            if used[i] or len(cand) != len(comp) or cand.number_of_edges() != comp.number_of_edges():
                continue
            if nx.is_isomorphic(cand, comp, node_match=nm, edge_match=em):
                used[i] = True
                break
        else:
            return False
    return True
