from collections import Counter

import pytest
from hypothesis import given, strategies as st

from cabletau import bordered as bd
from cabletau import cfk
from cabletau.acceptance import CFD_FIXTURES, fixture
from cabletau.torus_algebra import Idempotent, ReebLabel as R
from strategies import knot_complexes

I1, I2 = Idempotent.I1, Idempotent.I2


@pytest.mark.parametrize("key", sorted(CFD_FIXTURES))
def test_cfd_matches_fixture(key):
    name, n = key
    d = bd.cfd(cfk.knot_library(name), n)
    assert bd.isomorphic(d, fixture(name, n))
    assert bd.satisfies_type_d(fixture(name, n))


def test_fixtures_are_distinguishable():
    assert not bd.isomorphic(fixture("trefoil_rh", 2), fixture("trefoil_lh", -2))
    assert not bd.isomorphic(bd.cfd(cfk.knot_library("trefoil_rh"), 1), fixture("trefoil_rh", 2))


def test_figure8_at_zero_framing_is_unknot_plus_stable_chains():
    d = bd.cfd(cfk.knot_library("figure8"), 0)
    loops = [(s, t) for s, t, l in d.edges if l is R.R12]
    assert len(loops) == 1 and loops[0][0] == loops[0][1]
    assert len(d.generators) == 5 + 4


def unstable_labels(d):
    zs = {x for x, _ in d.generators if x.startswith("z")}
    return Counter(l for s, t, l in d.edges if s in zs or t in zs), len(zs)


@pytest.mark.parametrize("n", range(-3, 6))
def test_unstable_chain_shape_rh_trefoil(n):
    c = cfk.knot_library("trefoil_rh")
    d = bd.cfd(c, n)
    labels, m = unstable_labels(d)
    assert m == abs(2 - n)
    if n < 2:
        assert labels == Counter({R.R1: 1, R.R3: 1, R.R23: m - 1})
    elif n == 2:
        assert m == 0 and ("c", "a", R.R12) in d.edges
    else:
        assert labels == Counter({R.R123: 1, R.R2: 1, R.R23: m - 1})
    assert all(i is I2 for x, i in d.generators if x.startswith("z"))


def test_rh_trefoil_zero_framing_edges():
    d = bd.cfd(cfk.knot_library("trefoil_rh"), 0)
    # x0 = c starts the chain, x0' = a ends it
    assert {("c", "z1", R.R1), ("z2", "z1", R.R23), ("a", "z2", R.R3)} <= d.edges


@given(knot_complexes, st.integers(-4, 4))
def test_type_d_condition(c, n):
    fc = bd.FramedComplement.of(c, n)
    d = bd.cfd_from_cfk(fc)
    assert bd.idempotent_violations(d) == []
    assert bd.type_d_violations(d) == []
    assert len(d.generators) == bd.expected_generator_count(fc)
    assert not bd.has_pure_23_cycle(d)


def test_type_d_violation_detected():
    d = bd.TypeDStructure.build([("x", I1), ("y", I2), ("z", I1)], [("x", "y", "1"), ("y", "z", "2")])
    assert bd.idempotent_violations(d) == []
    assert bd.type_d_violations(d) == [("x", "z", bd.AlgebraElement.R12)]
    assert not bd.satisfies_type_d(d)


def test_idempotent_violation_detected():
    d = bd.TypeDStructure.build([("x", I1), ("y", I1)], [("x", "y", "1")])
    assert bd.idempotent_violations(d)


def test_boundedness():
    # for n >= 0 the unstable chain of the unknot closes up into a cycle
    for n in (0, 1, 2):
        assert not bd.is_bounded(bd.cfd(cfk.knot_library("unknot"), n))
    assert bd.is_bounded(bd.cfd(cfk.knot_library("unknot"), -1))
    assert bd.is_bounded(bd.cfd(cfk.knot_library("trefoil_rh"), 2))


def test_repeated_edges_cancel():
    d = bd.TypeDStructure.build([("x", I1), ("y", I2)], [("x", "y", "1"), ("x", "y", "1")])
    assert not d.edges


def test_edge_list_stable():
    d = bd.cfd(cfk.knot_library("unknot"), 0)
    assert d.edge_list() == "u 12 u\n"


# ---------------------------------------------------------------- type A


def test_cfa_generators():
    m = bd.cfa_p1(3)
    assert m.generators == (("a", I1), ("b1", I2), ("b2", I2), ("b3", I2), ("b4", I2))
    with pytest.raises(ValueError):
        bd.cfa_p1(1)


def labels(text):
    return [R.parse(x) for x in text.split()]


@pytest.mark.parametrize("p", [2, 3, 4])
def test_printed_relations(p):
    m = bd.cfa_p1(p)
    assert m.relations_matching("a", labels("3 2")) == [("a", p)]
    assert m.relations_matching("a", labels("3 23 23 2")) == [("a", 3 * p)]
    assert m.relations_matching("a", labels("3 23 2 1")) == [("b1", p + 1)]
    assert m.relations_matching("a", labels("1")) == [(f"b{2 * p - 2}", 0)]
    for j in range(1, p):
        assert m.relations_matching(f"b{j}", []) == [(f"b{2 * p - j - 1}", p - j)]
    assert m.relations_matching("a", labels("12 " * (p - 1) + "1")) == []
    assert m.relations_matching("a", labels("2")) == []


def test_p3_b_relations():
    m = bd.cfa_p1(3)
    assert m.relations_matching("b1", labels("2 1")) == [("b2", 1)]
    assert m.relations_matching("b4", labels("2 1")) == [("b3", 0)]
    assert m.relations_matching("b4", labels("2 12 1")) == []
    assert m.relations_matching("b2", labels("2 1")) == []


def test_prefix_detection():
    m = bd.cfa_p1(2)
    assert m.is_prefix("a", labels("3 23 23"))
    assert m.is_prefix("a", [])
    assert not m.is_prefix("a", labels("2"))


def test_composable_sequences_counts():
    seqs = list(bd.composable_sequences(I1, 2))
    assert () in seqs and len([s for s in seqs if len(s) == 1]) == 4
    assert all(len(s) == 2 for s in bd.composable_sequences(I2, 2, min_len=2))


@pytest.mark.parametrize("p", [2, 3, 4])
def test_relations_well_formed(p):
    assert bd.relation_violations(bd.cfa_p1(p), 8) == []


@pytest.mark.parametrize("p", [2, 3, 4])
def test_a_infinity_relations(p):
    assert bd.a_infinity_violations(bd.cfa_p1(p), 8) == []


def test_a_infinity_check_catches_a_broken_module():
    m = bd.cfa_p1(2)
    fams = tuple(f for f in m.families if f.name != "m1(b_j)")
    broken = bd.TypeAModule(m.generators, fams, kind="cfa_p1", p=2)
    assert bd.a_infinity_violations(broken, 6)
