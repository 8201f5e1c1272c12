"""Brute-force reference paths used by the test suite.

Deliberately independent of the main enumerator: orbits are found by
union-find over the conjugation graph, not by canonical representatives.
Single-threaded, lower caps; these exist for correctness, not scale.
"""

from __future__ import annotations

import numpy as np

from .chartable import CharacterTable, character_table
from .errors import CapExceeded, NotAbelian
from .groups import FiniteGroup, class_index_map, generating_set

DEFAULT_ORACLE_CAP = 1_000_000


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)
            self.count -= 1


def orbit_count_direct(G: FiniteGroup, genus: int,
                       cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Orbit count of G^genus under simultaneous conjugation, via union-find.

    Edges are conjugations by a deterministic generating set; generators
    generate every conjugation, so the partition is the full orbit one.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    total = G.order ** genus
    if total > cap:
        raise CapExceeded(f"|G|^g = {total} exceeds oracle cap {cap}")
    conj = G.conj_table
    weights = [G.order ** (genus - 1 - i) for i in range(genus)]
    uf = _UnionFind(total)
    for t in generating_set(G):
        row = conj[t]
        if np.array_equal(row, np.arange(G.order)):
            continue  # central generator moves nothing
        ids = np.arange(total, dtype=np.int64)
        image = np.zeros(total, dtype=np.int64)
        for i in range(genus):
            digit = (ids // weights[i]) % G.order
            image += row[digit].astype(np.int64) * weights[i]
        targets = image.tolist()
        union = uf.union
        for x, y in enumerate(targets):
            if x != y:
                union(x, y)
    return uf.count


def abelian_fusion_oracle(G: FiniteGroup, irreps, table: CharacterTable | None = None) -> int:
    """0/1 invariant dimension for abelian G: characters must multiply to 1."""
    if not G.is_abelian:
        raise NotAbelian(f"group of order {G.order} is not abelian")
    if table is None:
        table = character_table(G)
    class_of = class_index_map(G)
    prod = np.ones(G.order, dtype=np.complex128)
    for a in irreps:
        prod *= table.values[a, class_of]
    return 1 if np.allclose(prod, 1.0, atol=1e-6) else 0
