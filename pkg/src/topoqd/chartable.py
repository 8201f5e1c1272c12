"""Complex character tables via the class-matrix (Burnside) method.

The class-algebra structure constants a_ijk are exact integers; a seeded
random real combination of the class matrices is diagonalized and each
eigenvector is rescaled into a row of central characters, from which the
irrep degree and the character values are recovered.  Everything
integer-valued downstream is snapped, and the finished table must pass
both orthogonality relations at 1e-9 before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, NonIntegerMultiplicity
from .groups import (
    ClassData,
    FiniteGroup,
    Subgroup,
    class_index_map,
    conjugacy_classes,
    identity_class_index,
)

ORTHO_TOL = 1e-9
SNAP_TOL = 1e-6
GAP_TOL = 1e-8
MAX_RETRIES = 16


@dataclass(frozen=True)
class CharacterTable:
    """Rows are irreps (canonical order), columns follow the class order."""

    group: FiniteGroup
    classes: tuple[ClassData, ...]
    degrees: tuple[int, ...]
    values: np.ndarray  # complex, shape (#irreps, #classes), read-only
    identity_class: int

    @property
    def n_irreps(self) -> int:
        return len(self.degrees)

    def chi(self, irrep: int, class_index: int) -> complex:
        return complex(self.values[irrep, class_index])

    def chi_element(self, irrep: int, x: int) -> complex:
        return complex(self.values[irrep, class_index_map(self.group)[x]])

    @property
    def trivial_irrep(self) -> int:
        # canonical order pins the all-ones character to row 0
        return 0

    def class_sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=np.int64)


def _structure_matrices(G: FiniteGroup) -> list[np.ndarray]:
    """M_i with (M_i)[j, k] = a_ijk, where C_i C_j = sum_k a_ijk C_k."""
    classes = conjugacy_classes(G)
    class_of = class_index_map(G)
    k = len(classes)
    mats = [np.zeros((k, k), dtype=np.int64) for _ in range(k)]
    inv = G.inv
    for kk, ck in enumerate(classes):
        z = ck.representative
        # x*y = z with x in C_i, y in C_j  <=>  y = x^-1 z
        for i, ci in enumerate(classes):
            for x in ci.members:
                j = int(class_of[G.mul(int(inv[x]), z)])
                mats[i][j, kk] += 1
    return mats


def _recover_rows(G: FiniteGroup, mats: list[np.ndarray], rng: np.random.Generator):
    classes = conjugacy_classes(G)
    k = len(classes)
    sizes = np.array([c.size for c in classes], dtype=np.float64)
    e = identity_class_index(G)
    coeffs = rng.standard_normal(k)
    combo = sum(c * m for c, m in zip(coeffs, mats)).astype(np.float64)
    # similarity by sqrt(class size) makes the combination normal,
    # so the eigenbasis is orthogonal and well conditioned
    d_half = np.sqrt(sizes)
    sym = combo * (d_half[None, :] / d_half[:, None])
    evals, evecs = np.linalg.eig(sym)
    gaps = np.abs(evals[:, None] - evals[None, :]) + np.eye(k)
    if gaps.min() < GAP_TOL:
        return None
    rows = []
    for col in range(k):
        v = evecs[:, col] * d_half
        if abs(v[e]) < 1e-12:
            return None
        omega = v / v[e]
        degree_sq = G.order / float(np.sum(np.abs(omega) ** 2 / sizes))
        degree = np.sqrt(degree_sq)
        d_int = round(degree)
        if d_int < 1 or abs(degree - d_int) > SNAP_TOL:
            return None
        chi = d_int * omega / sizes
        rows.append((d_int, chi))
    return rows


def _snap_values(values: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    re = values.real.copy()
    im = values.imag.copy()
    re_round = np.round(re)
    im_round = np.round(im)
    re[np.abs(re - re_round) < tol] = re_round[np.abs(re - re_round) < tol]
    im[np.abs(im - im_round) < tol] = im_round[np.abs(im - im_round) < tol]
    return re + 1j * im


def _validated(G: FiniteGroup, rows) -> CharacterTable | None:
    classes = tuple(conjugacy_classes(G))
    k = len(classes)
    e = identity_class_index(G)
    sizes = np.array([c.size for c in classes], dtype=np.float64)
    order_key = []
    for idx, (deg, chi) in enumerate(rows):
        rounded = tuple(
            (-round(z.real, 6), -round(z.imag, 6)) for z in chi
        )
        order_key.append((deg, rounded, idx))
    order_key.sort(key=lambda t: t[:2])
    degrees = tuple(rows[t[2]][0] for t in order_key)
    values = np.vstack([rows[t[2]][1] for t in order_key])
    values = _snap_values(values)

    if sum(d * d for d in degrees) != G.order:
        return None
    if any(abs(values[i, e] - degrees[i]) > SNAP_TOL for i in range(k)):
        return None
    values[:, e] = np.array(degrees, dtype=np.complex128)
    if np.any(np.abs(values) > np.array(degrees, dtype=float)[:, None] + SNAP_TOL):
        return None
    # row orthogonality
    gram = (values * sizes[None, :]) @ values.conj().T / G.order
    if np.abs(gram - np.eye(k)).max() > ORTHO_TOL:
        return None
    # column orthogonality, the distinct self-check
    col = values.conj().T @ values
    target = np.diag(G.order / sizes)
    if np.abs(col - target).max() > ORTHO_TOL:
        return None
    values.setflags(write=False)
    return CharacterTable(G, classes, degrees, values, e)


def character_table(G: FiniteGroup, seed: int = 0) -> CharacterTable:
    """Canonical character table; cached per group instance and seed."""
    key = ("chartable", seed)
    if key in G._cache:
        return G._cache[key]
    mats = _structure_matrices(G)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        rows = _recover_rows(G, mats, rng)
        if rows is None:
            continue
        table = _validated(G, rows)
        if table is not None:
            G._cache[key] = table
            return table
    raise DegenerateSpectrum(
        f"failed to separate characters of order-{G.order} group after {MAX_RETRIES} tries"
    )


def restrict_and_decompose(table: CharacterTable, irrep: int, sub: Subgroup,
                           sub_table: CharacterTable | None = None) -> tuple[int, ...]:
    """Multiplicities of the subgroup's irreps in a restricted character."""
    if sub_table is None:
        sub_table = character_table(sub.group)
    H = sub.group
    class_of_parent = class_index_map(table.group)
    class_of_sub = class_index_map(H)
    restricted = np.empty(H.order, dtype=np.complex128)
    for h in H.elements():
        restricted[h] = table.values[irrep, class_of_parent[sub.embedding[h]]]
    mults = []
    for j in range(sub_table.n_irreps):
        chi_j = sub_table.values[j, class_of_sub]
        val = np.vdot(chi_j, restricted) / H.order  # (1/|H|) sum chi_res conj(chi_j)
        m = round(val.real)
        if abs(val - m) > SNAP_TOL or m < 0:
            raise NonIntegerMultiplicity(
                f"restriction of irrep {irrep} gave {val!r} on subgroup irrep {j}"
            )
        mults.append(m)
    expected = round(table.values[irrep, table.identity_class].real)
    if sum(m * d for m, d in zip(mults, sub_table.degrees)) != expected:
        raise NonIntegerMultiplicity("restricted degrees do not add up")
    return tuple(mults)
