"""Fusion multiplicities, exact fusion probabilities, capacities.

Probabilities are exact rationals (orbit-size ratios) throughout; floats
appear only in the character-mediated multiplicities, which are snapped
to integers at 1e-6.  The degeneracy label k on (mu, nu, lambda)_k orbits
follows canonical orbit order; only the multiset over k is physical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .chartable import CharacterTable, character_table
from .errors import (
    AllZeroMultiplicities,
    NonIntegerResult,
    UnknownRegion,
)
from .groups import FiniteGroup, centralizer, class_index_map, commutator, conjugacy_classes
from .sectors import LoopSector, loop_sectors


@dataclass(frozen=True)
class FusionRecord:
    """One fusion channel: integer multiplicity or exact probability."""

    inputs: tuple[str, ...]
    output: str
    multiplicity: int | None = None
    probability: Fraction | None = None
    d_squared: int | None = None
    k: int | None = None


@dataclass(frozen=True)
class Capacity:
    """Exact effective state count of a region; ln(value) is its TEE."""

    region: str
    value: int


# -- point-sector fusion -------------------------------------------------

def _snap_int(value: complex, what: str) -> int:
    out = round(value.real)
    if abs(value - out) > 1e-6 or out < 0:
        raise NonIntegerResult(f"{what} = {value!r} does not snap to a nonnegative integer")
    return out


def point_fusion_invariant_dim(G: FiniteGroup, irreps: Sequence[int],
                               table: CharacterTable | None = None) -> int:
    """dim of the invariant subspace of a_1 x ... x a_k: (1/|G|) sum_g prod chi."""
    if table is None:
        table = character_table(G)
    sizes = table.class_sizes().astype(np.float64)
    prod = np.ones(len(table.classes), dtype=np.complex128)
    for a in irreps:
        prod *= table.values[a]
    val = complex(np.sum(prod * sizes) / G.order)
    return _snap_int(val, f"N^1{tuple(irreps)}")


def conjugate_irrep(table: CharacterTable, a: int) -> int:
    """Index of the irrep with conjugated character values; must be unique."""
    target = table.values[a].conj()
    matches = [
        i for i in range(table.n_irreps)
        if np.abs(table.values[i] - target).max() < 1e-6
    ]
    if len(matches) != 1:
        raise NonIntegerResult(f"conjugate of irrep {a} not unique: {matches}")
    return matches[0]


def point_fusion_nabc(G: FiniteGroup, a: int, b: int, c: int,
                      table: CharacterTable | None = None) -> int:
    """N_ab^c = invariant dim of (a, b, cbar)."""
    if table is None:
        table = character_table(G)
    return point_fusion_invariant_dim(G, (a, b, conjugate_irrep(table, c)), table)


def loop_point_multiplicity(G: FiniteGroup, loop: LoopSector, a: int,
                            table: CharacterTable | None = None) -> int:
    """N_l^a: how often the loop's centralizer irrep sits in the restriction of a."""
    if table is None:
        table = character_table(G)
    sub = centralizer(G, conjugacy_classes(G)[loop.class_index].representative)
    sub_table = character_table(sub.group)
    class_of_sub = class_index_map(sub.group)
    class_of = class_index_map(G)
    total = 0.0 + 0.0j
    for h in sub.group.elements():
        chi_l = sub_table.values[loop.irrep, class_of_sub[h]]
        chi_a = table.values[a, class_of[sub.embedding[h]]]
        total += chi_l * np.conj(chi_a)
    return _snap_int(complex(total / sub.group.order), f"N_l^a({loop}, {a})")


def sector_probability(multiplicities: Mapping, dims: Mapping):
    """P_I = N_I d_I / sum_J N_J d_J; exact when every d is rational."""
    keys = list(multiplicities)
    weights = {}
    exact = True
    for key in keys:
        d = dims[key]
        if isinstance(d, (int, Fraction)):
            weights[key] = Fraction(multiplicities[key]) * Fraction(d)
        else:
            exact = False
            weights[key] = multiplicities[key] * d
    total = sum(weights.values())
    if total == 0:
        raise AllZeroMultiplicities("no sector has nonzero multiplicity")
    if exact:
        return {key: Fraction(weights[key], total) for key in keys}
    return {key: weights[key] / total for key in keys}


# -- flux-pair fusion (genus-two orbits) ---------------------------------

@dataclass(frozen=True)
class FluxPairOrbit:
    """Orbit of (g, h) pairs with g in mu, h in nu; size is d^2 of the channel."""

    mu: int
    nu: int
    k: int
    representative: tuple[int, int]
    size: int
    lambda_class: int
    rho_class: int
    probability: Fraction


def flux_pair_orbits(G: FiniteGroup, mu: int, nu: int) -> list[FluxPairOrbit]:
    """Group the n_mu * n_nu pairs by simultaneous conjugation, canonically ordered."""
    classes = conjugacy_classes(G)
    class_of = class_index_map(G)
    pairs = {(g, h) for g in classes[mu].members for h in classes[nu].members}
    n_pairs = len(pairs)
    orbits = []
    while pairs:
        seed = min(pairs)
        orbit = {(G.conj(t, seed[0]), G.conj(t, seed[1])) for t in G.elements()}
        pairs -= orbit
        rep = min(orbit)
        g, h = rep
        orbits.append((
            rep, len(orbit),
            int(class_of[G.mul(g, h)]),
            int(class_of[commutator(G, g, h)]),
        ))
    orbits.sort(key=lambda o: (o[1], o[0]))
    out = []
    counter: dict[int, int] = {}
    for rep, size, lam, rho in orbits:
        k = counter.get(lam, 0) + 1
        counter[lam] = k
        out.append(FluxPairOrbit(mu, nu, k, rep, size, lam, rho,
                                 Fraction(size, n_pairs)))
    return out


def _class_label(G: FiniteGroup, index: int) -> str:
    rep = conjugacy_classes(G)[index].representative
    return f"C_{G.name_of(rep)}"


def loop_fusion_table(G: FiniteGroup, mu: int, nu: int) -> list[FusionRecord]:
    """Fusion of two pure fluxes, one record per (lambda, k) orbit."""
    labels = (_class_label(G, mu), _class_label(G, nu))
    return [
        FusionRecord(
            inputs=labels,
            output=_class_label(G, o.lambda_class),
            probability=o.probability,
            d_squared=o.size,
            k=o.k,
        )
        for o in flux_pair_orbits(G, mu, nu)
    ]


def lambda_distribution(G: FiniteGroup, mu: int, nu: int) -> dict[int, Fraction]:
    """P(mu x nu -> lambda), aggregated over k."""
    out: dict[int, Fraction] = {}
    for o in flux_pair_orbits(G, mu, nu):
        out[o.lambda_class] = out.get(o.lambda_class, Fraction(0)) + o.probability
    return out


def borromean_fusion(G: FiniteGroup, mu: int, nu: int) -> dict[int, Fraction]:
    """Outcome distribution over classes of the commutator [g, h]."""
    out: dict[int, Fraction] = {}
    for o in flux_pair_orbits(G, mu, nu):
        out[o.rho_class] = out.get(o.rho_class, Fraction(0)) + o.probability
    return out


def inverse_class(G: FiniteGroup, index: int) -> int:
    """The class of inverses (mu-bar)."""
    rep = conjugacy_classes(G)[index].representative
    return int(class_index_map(G)[G.inv_of(rep)])


# -- capacities ----------------------------------------------------------

def capacity(G: FiniteGroup, region: str) -> Capacity:
    """Exact capacity Q of a recognized region descriptor.

    sphere-shell: sum d_a^2; solid-torus-flux: sum n_C;
    solid-torus-loop: sum d_l^2; genus-<g>-handlebody: |G|^g.
    """
    region = region.strip().lower()
    if region == "sphere-shell":
        table = character_table(G)
        return Capacity(region, sum(d * d for d in table.degrees))
    if region == "solid-torus-flux":
        return Capacity(region, sum(c.size for c in conjugacy_classes(G)))
    if region == "solid-torus-loop":
        return Capacity(region, sum(l.d * l.d for l in loop_sectors(G)))
    if region.startswith("genus-") and region.endswith("-handlebody"):
        middle = region[len("genus-"):-len("-handlebody")]
        if middle.isdigit() and int(middle) >= 1:
            return Capacity(region, G.order ** int(middle))
    raise UnknownRegion(f"unrecognized region descriptor {region!r}")


def tee(G: FiniteGroup, region: str) -> float:
    """Topological entanglement entropy ln Q, in nats."""
    return math.log(capacity(G, region).value)
