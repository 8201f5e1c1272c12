import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topoqd.chartable import character_table
from topoqd.errors import CapExceeded, NotAbelian
from topoqd.fusion import point_fusion_invariant_dim
from topoqd.groups import builtin_group
from topoqd.oracle import abelian_fusion_oracle, orbit_count_direct
from topoqd.sectors import count_graph_sectors, enumerate_graph_sectors


def test_known_counts():
    assert orbit_count_direct(builtin_group("S3"), 2) == 11
    assert orbit_count_direct(builtin_group("Z3"), 2) == 9
    assert orbit_count_direct(builtin_group("S3"), 3) == 49


def test_cap():
    with pytest.raises(CapExceeded):
        orbit_count_direct(builtin_group("A5"), 3, cap=1000)


def test_agreement_small():
    for name, g in [("S3", 2), ("S3", 3), ("D4", 2), ("Q8", 3), ("A4", 2), ("S4", 2)]:
        G = builtin_group(name)
        count = count_graph_sectors(G, g)
        assert orbit_count_direct(G, g) == count
        assert len(enumerate_graph_sectors(G, g)) == count


def test_abelian_oracle_z2():
    Z2 = builtin_group("Z2")
    # irrep 1 is the sign character
    assert abelian_fusion_oracle(Z2, (1, 1)) == 1
    assert abelian_fusion_oracle(Z2, (1, 0)) == 0


def test_abelian_oracle_z4():
    Z4 = builtin_group("Z4")
    t = character_table(Z4)
    # irrep 1 has chi(g) = i; irrep 3 is the sign character, self-conjugate
    assert t.values[1, 1] == 1j and t.values[3, 1] == -1
    assert abelian_fusion_oracle(Z4, (1, 1, 3)) == 1


def test_not_abelian():
    with pytest.raises(NotAbelian):
        abelian_fusion_oracle(builtin_group("S3"), (0, 0))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_oracle_matches_character_formula(data):
    name = data.draw(st.sampled_from(["Z2", "Z3", "Z4", "Z2xZ2"]))
    G = builtin_group(name)
    k = character_table(G).n_irreps
    irreps = data.draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=4))
    assert abelian_fusion_oracle(G, irreps) == point_fusion_invariant_dim(G, irreps)
