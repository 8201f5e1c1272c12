"""Exact topological data of quantum double models for finite groups."""

__version__ = "0.1.0"

from .chartable import CharacterTable, character_table, restrict_and_decompose
from .consistency import ConsistencyReport, verify_all
from .fusion import (
    Capacity,
    FusionRecord,
    borromean_fusion,
    capacity,
    lambda_distribution,
    loop_fusion_table,
    loop_point_multiplicity,
    point_fusion_invariant_dim,
    point_fusion_nabc,
    sector_probability,
    tee,
)
from .groups import (
    ClassData,
    FiniteGroup,
    Subgroup,
    build_from_cayley_table,
    build_from_permutations,
    builtin_group,
    centralizer,
    commutator,
    conjugacy_classes,
    exponent,
    load_group,
)
from .oracle import abelian_fusion_oracle, orbit_count_direct
from .pairing import PairingMatrix, anyon_s_matrix, drinfeld_double_anyons, pairing_matrix_s2s1
from .sectors import (
    FluxSector,
    GraphSector,
    LoopSector,
    PointSector,
    count_graph_sectors,
    enumerate_graph_sectors,
    flux_sectors,
    genus2_decorations,
    loop_sectors,
    point_sectors,
    sector_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
