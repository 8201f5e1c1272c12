import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topoqd.chartable import character_table
from topoqd.errors import AllZeroMultiplicities, UnknownRegion
from topoqd.fusion import (
    borromean_fusion,
    capacity,
    conjugate_irrep,
    flux_pair_orbits,
    inverse_class,
    lambda_distribution,
    loop_fusion_table,
    loop_point_multiplicity,
    point_fusion_invariant_dim,
    point_fusion_nabc,
    sector_probability,
    tee,
)
from topoqd.groups import build_from_cayley_table, builtin_group, conjugacy_classes
from topoqd.sectors import enumerate_graph_sectors, loop_sectors

from conftest import ZOO


# -- point fusion --------------------------------------------------------

def test_invariant_dim_all_trivial(zoo):
    for G in zoo.values():
        assert point_fusion_invariant_dim(G, (0, 0, 0)) == 1


def test_invariant_dim_conjugate_pairs(zoo):
    for G in zoo.values():
        t = character_table(G)
        for a in range(t.n_irreps):
            assert point_fusion_invariant_dim(G, (a, conjugate_irrep(t, a))) == 1


def test_s3_eee():
    S3 = builtin_group("S3")
    # (1/6)(2^3 + 2*(-1)^3 + 3*0) = 1
    assert point_fusion_invariant_dim(S3, (2, 2, 2)) == 1
    assert point_fusion_nabc(S3, 2, 2, 2) == 1  # E self-conjugate


def test_nabc_vacuum_rule(zoo):
    for G in zoo.values():
        t = character_table(G)
        for b in range(t.n_irreps):
            for c in range(t.n_irreps):
                assert point_fusion_nabc(G, 0, b, c) == (1 if b == c else 0)


def test_s3_nabc_squared_sum():
    S3 = builtin_group("S3")
    total = sum(point_fusion_nabc(S3, a, b, c) ** 2
                for a in range(3) for b in range(3) for c in range(3))
    assert total == 11


def test_fusion_symmetry(zoo):
    for name in ("S3", "D4", "A4"):
        G = zoo[name]
        t = character_table(G)
        k = t.n_irreps
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    assert point_fusion_nabc(G, a, b, c) == point_fusion_nabc(G, b, a, c)


def test_conjugate_irrep_is_involution(zoo):
    for G in zoo.values():
        t = character_table(G)
        for a in range(t.n_irreps):
            abar = conjugate_irrep(t, a)
            assert t.degrees[abar] == t.degrees[a]
            assert conjugate_irrep(t, abar) == a


# -- loop-point multiplicities ------------------------------------------

def test_loop_point_identity_class_is_delta():
    S3 = builtin_group("S3")
    loops = [l for l in loop_sectors(S3) if l.class_index == 0]
    for l in loops:
        for a in range(3):
            assert loop_point_multiplicity(S3, l, a) == (1 if l.irrep == a else 0)


def test_s3_loop_point_sums():
    S3 = builtin_group("S3")
    t = character_table(S3)
    loops = loop_sectors(S3)
    ones = sum(loop_point_multiplicity(S3, l, a) ** 2
               for l in loops for a in range(3))
    assert ones == 11
    cap = sum(t.degrees[a] * l.d * loop_point_multiplicity(S3, l, a)
              for l in loops for a in range(3))
    assert cap == 36  # |G|^2


# -- probabilities -------------------------------------------------------

def test_sector_probability():
    assert sector_probability({"x": 3}, {"x": 2}) == {"x": Fraction(1)}
    assert sector_probability({"a": 1, "b": 1}, {"a": 1, "b": 1}) == {
        "a": Fraction(1, 2), "b": Fraction(1, 2)}
    # order-6 point sectors on a maximum-entropy sphere shell
    probs = sector_probability({0: 1, 1: 1, 2: 1}, {0: 1, 1: 1, 2: 2})
    assert probs == {0: Fraction(1, 4), 1: Fraction(1, 4), 2: Fraction(1, 2)}
    with pytest.raises(AllZeroMultiplicities):
        sector_probability({"a": 0}, {"a": 1})


def test_sector_probability_float_dims():
    probs = sector_probability({"a": 1, "b": 1}, {"a": 1.0, "b": math.sqrt(2)})
    assert abs(sum(probs.values()) - 1) < 1e-12


# -- flux-pair fusion ----------------------------------------------------

def _dist_by_name(G, dist):
    cls = conjugacy_classes(G)
    return {G.name_of(cls[i].representative): p for i, p in dist.items()}


def test_s3_lambda_distributions():
    S3 = builtin_group("S3")
    assert lambda_distribution(S3, 0, 0) == {0: Fraction(1)}
    assert lambda_distribution(S3, 1, 1) == {1: Fraction(1, 2), 0: Fraction(1, 2)}
    assert lambda_distribution(S3, 2, 2) == {0: Fraction(1, 3), 1: Fraction(2, 3)}


def test_s3_borromean():
    S3 = builtin_group("S3")
    # commutators of a 3-cycle with a transposition are nontrivial rotations
    assert borromean_fusion(S3, 1, 2) == {1: Fraction(1)}
    assert borromean_fusion(S3, 2, 2) == {0: Fraction(1, 3), 1: Fraction(2, 3)}


def test_abelian_borromean_trivial(zoo):
    for name in ("Z2", "Z3", "Z4", "Z2xZ2"):
        G = zoo[name]
        k = len(conjugacy_classes(G))
        id_class = 0
        for mu in range(k):
            for nu in range(k):
                assert borromean_fusion(G, mu, nu) == {id_class: Fraction(1)}


def test_probability_conservation(zoo):
    for G in zoo.values():
        k = len(conjugacy_classes(G))
        for mu in range(k):
            for nu in range(k):
                assert sum(lambda_distribution(G, mu, nu).values()) == 1


@pytest.mark.parametrize("name", ZOO)
def test_lemma_conditions(name, zoo):
    G = zoo[name]
    classes = conjugacy_classes(G)
    k = len(classes)
    for mu in range(k):
        for nu in range(k):
            dist = lambda_distribution(G, mu, nu)
            # symmetry
            assert dist == lambda_distribution(G, nu, mu)
            # vacuum input
            if nu == 0:
                assert dist == {mu: Fraction(1)}
            # vacuum output
            expect = (Fraction(1, classes[mu].size)
                      if nu == inverse_class(G, mu) else Fraction(0))
            assert dist.get(0, Fraction(0)) == expect


def test_pair_partition(zoo):
    for G in zoo.values():
        k = len(conjugacy_classes(G))
        classes = conjugacy_classes(G)
        for mu in range(k):
            for nu in range(k):
                orbits = flux_pair_orbits(G, mu, nu)
                assert sum(o.size for o in orbits) == classes[mu].size * classes[nu].size


def test_orbits_match_graph_sectors():
    # the same orbits, routed through the genus-2 enumerator
    for name in ("S3", "D4", "Q8", "A4"):
        G = builtin_group(name)
        by_pair = {}
        for s in enumerate_graph_sectors(G, 2):
            by_pair.setdefault(s.cycle_classes, []).append(
                (s.orbit_size, s.lambda_class, s.rho_class))
        k = len(conjugacy_classes(G))
        for mu in range(k):
            for nu in range(k):
                direct = sorted((o.size, o.lambda_class, o.rho_class)
                                for o in flux_pair_orbits(G, mu, nu))
                routed = sorted(by_pair.get((mu, nu), []))
                assert direct == routed


def test_a5_needs_degeneracy_label():
    A5 = builtin_group("A5")
    three_cycles = next(c.index for c in conjugacy_classes(A5)
                        if A5.element_order(c.representative) == 3)
    ks = [o.k for o in flux_pair_orbits(A5, three_cycles, three_cycles)]
    assert max(ks) >= 2


def test_loop_fusion_records():
    S3 = builtin_group("S3")
    records = loop_fusion_table(S3, 2, 2)
    assert [(r.output, r.d_squared, r.probability) for r in records] == [
        ("C_1", 3, Fraction(1, 3)),
        ("C_r", 6, Fraction(2, 3)),
    ]


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_flux_probabilities_sum_to_one(data):
    name = data.draw(st.sampled_from(ZOO))
    G = builtin_group(name)
    k = len(conjugacy_classes(G))
    mu = data.draw(st.integers(0, k - 1))
    nu = data.draw(st.integers(0, k - 1))
    lam = lambda_distribution(G, mu, nu)
    rho = borromean_fusion(G, mu, nu)
    assert sum(lam.values()) == 1
    assert sum(rho.values()) == 1


# -- capacities ----------------------------------------------------------

def test_capacities():
    triv = build_from_cayley_table([[0]])
    for region in ("sphere-shell", "solid-torus-flux", "solid-torus-loop",
                   "genus-3-handlebody"):
        assert capacity(triv, region).value == 1
    S3 = builtin_group("S3")
    assert capacity(S3, "sphere-shell").value == 6  # 1 + 1 + 4
    assert capacity(S3, "solid-torus-flux").value == 6
    assert capacity(S3, "solid-torus-loop").value == 36
    assert capacity(S3, "genus-2-handlebody").value == 36
    with pytest.raises(UnknownRegion):
        capacity(S3, "klein-bottle")


def test_tee():
    triv = build_from_cayley_table([[0]])
    assert tee(triv, "sphere-shell") == 0.0
    assert math.isclose(tee(builtin_group("Z2"), "sphere-shell"), math.log(2))
    assert math.isclose(tee(builtin_group("S3"), "genus-2-handlebody"), math.log(36))
