"""Superselection sectors of the quantum double: points, fluxes, loops, graphs.

Genus-g graph sectors are orbits of G^g under simultaneous conjugation.
d is kept as the exact integer d^2 (= orbit size / class size) wherever
possible; square roots only materialize in pairing matrices and display.

The flux quantum dimension d_mu^2 = n_C is an inference from the worked
order-6 values {1, sqrt2, sqrt3} matching the class sizes {1, 2, 3}; every
consistency check that uses it is also covered by the g=1 orbit-size route,
which gives the same numbers with no inference.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .chartable import CharacterTable, character_table
from .errors import EnumerationCapExceeded
from .groups import (
    FiniteGroup,
    Subgroup,
    centralizer,
    class_index_map,
    commutator,
    conjugacy_classes,
)

DEFAULT_ENUM_CAP = 100_000_000
_CHUNK = 1 << 20


@dataclass(frozen=True)
class PointSector:
    """Point particle: one per irrep, d = degree."""

    irrep: int
    d: int


@dataclass(frozen=True)
class FluxSector:
    """Pure flux loop: one per conjugacy class, d^2 = class size."""

    class_index: int
    d_squared: int


@dataclass(frozen=True)
class LoopSector:
    """Shrinkable loop (C_b, R_l): flux class decorated by a centralizer irrep."""

    class_index: int
    irrep: int
    d: int  # n_C * deg(R_l)


@dataclass(frozen=True)
class GraphSector:
    """One orbit of G^g under simultaneous conjugation; d^2 = orbit size."""

    genus: int
    representative: tuple[int, ...]  # lexicographically minimal in the orbit
    orbit_size: int
    cycle_classes: tuple[int, ...]
    lambda_class: int | None = None  # class of g*h, genus 2 only
    rho_class: int | None = None     # class of [g, h], genus 2 only

    @property
    def d_squared(self) -> int:
        return self.orbit_size


def point_sectors(G: FiniteGroup, table: CharacterTable | None = None) -> list[PointSector]:
    if table is None:
        table = character_table(G)
    return [PointSector(i, d) for i, d in enumerate(table.degrees)]


def flux_sectors(G: FiniteGroup) -> list[FluxSector]:
    return [FluxSector(c.index, c.size) for c in conjugacy_classes(G)]


def loop_sectors(G: FiniteGroup) -> list[LoopSector]:
    """One sector per (class, centralizer-irrep), class order then irrep order."""
    out = []
    for c in conjugacy_classes(G):
        sub = centralizer(G, c.representative)
        sub_table = character_table(sub.group)
        for j, deg in enumerate(sub_table.degrees):
            out.append(LoopSector(c.index, j, c.size * deg))
    return out


def loop_sector_centralizer(G: FiniteGroup, sector: LoopSector) -> Subgroup:
    rep = conjugacy_classes(G)[sector.class_index].representative
    return centralizer(G, rep)


def count_graph_sectors(G: FiniteGroup, genus: int) -> int:
    """Burnside count (1/|G|) sum_h |E(h)|^g, in exact integer arithmetic."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    class_of = class_index_map(G)
    sizes = [c.size for c in conjugacy_classes(G)]
    total = 0
    for x in G.elements():
        cent_order = G.order // sizes[class_of[x]]
        total += cent_order ** genus
    assert total % G.order == 0
    return total // G.order


def genus2_decorations(G: FiniteGroup, pair) -> tuple[int, int, int, int]:
    """Classes of (g, h, g*h, [g,h]); invariant across the orbit."""
    if isinstance(pair, GraphSector):
        if pair.genus != 2:
            raise ValueError("decorations are defined for genus 2")
        g, h = pair.representative
    else:
        g, h = pair
    class_of = class_index_map(G)
    return (
        int(class_of[g]),
        int(class_of[h]),
        int(class_of[G.mul(g, h)]),
        int(class_of[commutator(G, g, h)]),
    )


def sector_entropy(sector: GraphSector) -> float:
    """ln(orbit size) = 2 ln d, the entropy excess of the sector's extreme point."""
    return math.log(sector.orbit_size)


# -- orbit enumeration ---------------------------------------------------

def _orbit_chunk(conj: np.ndarray, weights: np.ndarray, lo: int, hi: int) -> Counter:
    """Canonical keys for tuple ids in [lo, hi): min over all conjugations."""
    ids = np.arange(lo, hi, dtype=np.int64)
    g = len(weights)
    digits = [(ids // weights[i]) % len(conj) for i in range(g)]
    mins = ids.copy()
    key = np.empty_like(ids)
    for t in range(1, len(conj)):
        row = conj[t]
        key[:] = 0
        for i in range(g):
            key += row[digits[i]].astype(np.int64) * weights[i]
        np.minimum(mins, key, out=mins)
    uniq, counts = np.unique(mins, return_counts=True)
    return Counter(dict(zip(uniq.tolist(), counts.tolist())))


def orbit_partition(G: FiniteGroup, genus: int, enum_cap: int = DEFAULT_ENUM_CAP,
                    threads: int = 1) -> list[tuple[int, int]]:
    """(canonical key, orbit size) for every orbit of G^genus, key ascending.

    Deterministic and independent of thread count: per-chunk counts merge
    by key, and the final ordering is canonical.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    total = G.order ** genus
    if total > enum_cap:
        raise EnumerationCapExceeded(
            f"|G|^g = {total} exceeds enumeration cap {enum_cap}"
        )
    weights = np.array([G.order ** (genus - 1 - i) for i in range(genus)], dtype=np.int64)
    conj = G.conj_table
    ranges = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    merged: Counter = Counter()
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda r: _orbit_chunk(conj, weights, *r), ranges):
                merged.update(part)
    else:
        for lo, hi in ranges:
            merged.update(_orbit_chunk(conj, weights, lo, hi))
    return sorted(merged.items())


def _decode(key: int, order: int, genus: int) -> tuple[int, ...]:
    digits = []
    for _ in range(genus):
        key, d = divmod(key, order)
        digits.append(d)
    return tuple(reversed(digits))


def enumerate_graph_sectors(G: FiniteGroup, genus: int,
                            enum_cap: int = DEFAULT_ENUM_CAP,
                            threads: int = 1) -> list[GraphSector]:
    """All genus-g graph sectors, orbit size ascending then representative.

    The count always equals count_graph_sectors(G, genus).
    """
    parts = orbit_partition(G, genus, enum_cap=enum_cap, threads=threads)
    class_of = class_index_map(G)
    sectors = []
    for key, size in parts:
        rep = _decode(key, G.order, genus)
        cyc = tuple(int(class_of[x]) for x in rep)
        lam = rho = None
        if genus == 2:
            _, _, lam, rho = genus2_decorations(G, rep)
        sectors.append(GraphSector(genus, rep, size, cyc, lam, rho))
    sectors.sort(key=lambda s: (s.orbit_size, s.representative))
    return sectors
