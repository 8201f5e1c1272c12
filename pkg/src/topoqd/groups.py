"""Finite groups as validated Cayley tables with dense 0-based element ids.

Element ids for permutation-built groups come from a breadth-first closure
starting at the identity (id 0), applying generators in input order; this
makes every downstream labeling reproducible across runs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    InputError,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotClosed,
)

DEFAULT_ELEM_CAP = 20000

Perm = tuple[int, ...]


# -- permutations -------------------------------------------------------

def _compose(p: Perm, q: Perm) -> Perm:
    """p*q means apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def parse_cycles(text: str, k: int | None = None) -> Perm:
    """Parse cycle notation like ``(1 2 3)(4 5)`` on points 1..k (1-based)."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)*", text):
        raise NotAPermutation(f"bad cycle notation: {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if any(p < 1 for p in pts):
            raise NotAPermutation(f"points must be >= 1: {text!r}")
        cycles.append(pts)
    n = k if k is not None else max((max(c) for c in cycles if c), default=1)
    images = list(range(n))
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            raise NotAPermutation(f"repeated point in cycle: {text!r}")
        if any(p > n for p in cyc):
            raise NotAPermutation(f"point beyond degree {n}: {text!r}")
        for i, p in enumerate(cyc):
            images[p - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(images)


def cycle_notation(p: Perm) -> str:
    """Canonical cycle string; the identity prints as ``1``."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(out) if out else "1"


def _check_perm(p: Sequence[int]) -> Perm:
    n = len(p)
    if sorted(p) != list(range(n)):
        raise NotAPermutation(f"not a bijection on {n} points: {p}")
    return tuple(p)


# -- the group itself ---------------------------------------------------

class FiniteGroup:
    """Immutable multiplication structure on element ids 0..order-1."""

    def __init__(self, table: np.ndarray, names: Sequence[str] | None = None,
                 source: str = "table", validate: bool = True):
        table = np.asarray(table, dtype=np.int32)
        if validate:
            _validate_table(table)
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.identity = _find_identity(table)
        self.inv = _inverse_vector(table, self.identity)
        self.names = tuple(names) if names is not None else None
        self.source = source
        self._cache: dict = {}

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv_of(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, t: int, x: int) -> int:
        """t x t^-1."""
        return int(self.table[self.table[t, x], self.inv[t]])

    def elements(self) -> range:
        return range(self.order)

    def name_of(self, x: int) -> str:
        if self.names is not None:
            return self.names[x]
        return str(x)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool(np.array_equal(self.table, self.table.T))
        return self._cache["abelian"]

    @property
    def conj_table(self) -> np.ndarray:
        """conj_table[t, x] = t x t^-1, as one |G| x |G| array."""
        if "conj_table" not in self._cache:
            rows = [self.table[self.table[t], self.inv[t]] for t in range(self.order)]
            ct = np.vstack(rows).astype(np.int32)
            ct.setflags(write=False)
            self._cache["conj_table"] = ct
        return self._cache["conj_table"]

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, source={self.source!r})"


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    raise NoIdentity("no two-sided identity element")


def _inverse_vector(table: np.ndarray, e: int) -> np.ndarray:
    n = table.shape[0]
    inv = np.full(n, -1, dtype=np.int32)
    rows, cols = np.nonzero(table == e)
    for r, c in zip(rows, cols):
        if table[c, r] == e:
            inv[r] = c
    if np.any(inv < 0):
        bad = int(np.nonzero(inv < 0)[0][0])
        raise NoInverse(f"element {bad} has no two-sided inverse")
    inv.setflags(write=False)
    return inv


def _validate_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise InputError(f"multiplication table must be square, got {table.shape}")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        raise NotClosed(f"entry at {tuple(int(v) for v in bad)} is not an element id")
    e = _find_identity(table)
    _inverse_vector(table, e)
    # associativity, chunked so memory stays O(n^2) per slab
    for a in range(n):
        left = table[table[a], :]          # (ab)c for all b, c
        right = table[a][table]            # a(bc)
        if not np.array_equal(left, right):
            b, c = (int(v) for v in np.argwhere(left != right)[0])
            raise NotAssociative((a, b, c))


def build_from_cayley_table(table: Iterable[Iterable[int]],
                            names: Sequence[str] | None = None) -> FiniteGroup:
    """Validate an explicit n x n table; errors carry a witness where useful."""
    arr = np.asarray(list(list(row) for row in table), dtype=np.int64)
    return FiniteGroup(arr, names=names, source="table")


def build_from_permutations(gens: Sequence[Sequence[int] | str], k: int | None = None,
                            elem_cap: int = DEFAULT_ELEM_CAP) -> FiniteGroup:
    """Close a generator list to a group; BFS order fixes element ids.

    Generators may be 0-based image tuples or cycle-notation strings.
    """
    perms: list[Perm] = []
    for g in gens:
        if isinstance(g, str):
            perms.append(parse_cycles(g, k))
        else:
            perms.append(_check_perm(g))
    if not perms:
        raise InputError("need at least one generator")
    degree = max(len(p) for p in perms)
    perms = [p + tuple(range(len(p), degree)) for p in perms]

    ident = tuple(range(degree))
    elems: list[Perm] = [ident]
    index: dict[Perm, int] = {ident: 0}
    head = 0
    while head < len(elems):
        x = elems[head]
        head += 1
        for g in perms:
            y = _compose(x, g)
            if y not in index:
                if len(elems) >= elem_cap:
                    raise GroupTooLarge(f"closure exceeds element cap {elem_cap}")
                index[y] = len(elems)
                elems.append(y)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[_compose(p, q)]
    names = [cycle_notation(p) for p in elems]
    grp = FiniteGroup(table, names=names, source="perm", validate=False)
    grp._cache["generators"] = tuple(index[p] for p in perms)
    grp._cache["perms"] = tuple(elems)
    return grp


# -- conjugacy structure ------------------------------------------------

@dataclass(frozen=True)
class ClassData:
    """One conjugacy class: members sorted, representative = minimal id."""

    index: int
    representative: int
    members: tuple[int, ...]
    size: int
    centralizer: tuple[int, ...]


def conjugacy_classes(G: FiniteGroup) -> list[ClassData]:
    """Classes in canonical order: size ascending, then minimal member id."""
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = set()
    raw = []
    for x in G.elements():
        if x in seen:
            continue
        members = sorted({G.conj(t, x) for t in G.elements()})
        seen.update(members)
        raw.append(members)
    raw.sort(key=lambda m: (len(m), m[0]))
    classes = []
    for i, members in enumerate(raw):
        rep = members[0]
        cent = tuple(t for t in G.elements() if G.mul(t, rep) == G.mul(rep, t))
        classes.append(ClassData(i, rep, tuple(members), len(members), cent))
    G._cache["classes"] = classes
    return classes


def class_index_map(G: FiniteGroup) -> np.ndarray:
    """Vector mapping element id -> class index (canonical order)."""
    if "class_of" not in G._cache:
        out = np.empty(G.order, dtype=np.int32)
        for c in conjugacy_classes(G):
            for x in c.members:
                out[x] = c.index
        out.setflags(write=False)
        G._cache["class_of"] = out
    return G._cache["class_of"]


def identity_class_index(G: FiniteGroup) -> int:
    return int(class_index_map(G)[G.identity])


def class_name(G: FiniteGroup, index: int) -> str:
    rep = conjugacy_classes(G)[index].representative
    return f"C_{G.name_of(rep)}"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup with its own id space and an injective embedding into the parent."""

    parent: FiniteGroup
    embedding: tuple[int, ...]
    group: FiniteGroup

    def parent_to_sub(self, x: int) -> int:
        return self._reverse()[x]

    def _reverse(self) -> dict[int, int]:
        cache = self.group._cache
        if "sub_reverse" not in cache:
            cache["sub_reverse"] = {p: s for s, p in enumerate(self.embedding)}
        return cache["sub_reverse"]


def subgroup_from_members(G: FiniteGroup, members: Sequence[int]) -> Subgroup:
    members = tuple(sorted(members))
    pos = {p: s for s, p in enumerate(members)}
    n = len(members)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            prod = G.mul(a, b)
            if prod not in pos:
                raise NotClosed(f"subset not closed: {a}*{b} leaves it")
            table[i, j] = pos[prod]
    names = tuple(G.name_of(p) for p in members) if G.names else None
    sub = FiniteGroup(table, names=names, source="subgroup", validate=False)
    return Subgroup(G, members, sub)


def centralizer(G: FiniteGroup, h: int) -> Subgroup:
    """E(h) = {k : kh = hk} as a Subgroup of G."""
    if not 0 <= h < G.order:
        raise InputError(f"element id out of range: {h}")
    key = ("centralizer", h)
    if key not in G._cache:
        members = [t for t in G.elements() if G.mul(t, h) == G.mul(h, t)]
        G._cache[key] = subgroup_from_members(G, members)
    return G._cache[key]


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    """g h g^-1 h^-1."""
    return G.mul(G.mul(G.mul(g, h), G.inv_of(g)), G.inv_of(h))


def exponent(G: FiniteGroup) -> int:
    """lcm of element orders; bounds the order of roots of unity in characters."""
    out = 1
    for x in G.elements():
        out = math.lcm(out, G.element_order(x))
    return out


def generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Deterministic generators: the build set if known, else greedy minimal ids."""
    if "generators" in G._cache:
        return G._cache["generators"]
    gens: list[int] = []
    closed = {G.identity}
    for x in G.elements():
        if x in closed:
            continue
        gens.append(x)
        closed = {G.identity}
        queue = [G.identity]
        gen_now = list(gens)
        while queue:
            y = queue.pop()
            for g in gen_now:
                z = G.mul(y, g)
                if z not in closed:
                    closed.add(z)
                    queue.append(z)
        if len(closed) == G.order:
            break
    G._cache["generators"] = tuple(gens)
    return G._cache["generators"]


# -- builtins and the group file format --------------------------------

def _cyclic(n: int) -> FiniteGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    names = ["1"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup(table, names=names, source=f"builtin:Z{n}", validate=False)


def _direct_product_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    n1, n2 = t1.shape[0], t2.shape[0]
    out = np.empty((n1 * n2, n1 * n2), dtype=np.int32)
    for a1 in range(n1):
        for a2 in range(n2):
            row = t1[a1][:, None] * n2 + t2[a2][None, :]
            out[a1 * n2 + a2] = row.reshape(-1)
    return out


def _klein_four() -> FiniteGroup:
    z2 = (np.arange(2)[:, None] + np.arange(2)[None, :]) % 2
    table = _direct_product_table(z2, z2)
    return FiniteGroup(table, names=["1", "a", "b", "ab"],
                       source="builtin:Z2xZ2", validate=False)


def _quaternion() -> FiniteGroup:
    # ids: 1, i, j, k, -1, -i, -j, -k
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    def unit(idx):
        return (idx % 4, idx // 4)  # (axis, sign bit)
    def mul(a, b):
        (ua, sa), (ub, sb) = unit(a), unit(b)
        sign = sa ^ sb
        if ua == 0:
            axis = ub
        elif ub == 0:
            axis = ua
        elif ua == ub:
            axis, sign = 0, sign ^ 1
        else:
            axis = ({1, 2, 3} - {ua, ub}).pop()
            if (ua, ub) not in ((1, 2), (2, 3), (3, 1)):
                sign ^= 1
        return axis + 4 * sign
    table = np.array([[mul(a, b) for b in range(8)] for a in range(8)])
    return FiniteGroup(table, names=names, source="builtin:Q8", validate=False)


def _word_names(G: FiniteGroup, r: int, s: int, rname="r", sname="s") -> list[str]:
    """Names 1, r, r2, ..., s, sr, sr2, ... for a <r, s> presentation."""
    names = [""] * G.order
    order_r = G.element_order(r)
    x = G.identity
    for k in range(order_r):
        names[x] = "1" if k == 0 else (rname if k == 1 else f"{rname}{k}")
        x = G.mul(x, r)
    x = s
    for k in range(order_r):
        names[x] = sname if k == 0 else (f"{sname}{rname}" if k == 1 else f"{sname}{rname}{k}")
        x = G.mul(x, r)
    return names


def _s3() -> FiniteGroup:
    G = build_from_permutations(["(1 2 3)", "(1 2)"])
    r, s = G._cache["generators"]
    G.names = tuple(_word_names(G, r, s))
    G.source = "builtin:S3"
    return G


def _d4() -> FiniteGroup:
    G = build_from_permutations(["(1 2 3 4)", "(1 3)"])
    r, s = G._cache["generators"]
    G.names = tuple(_word_names(G, r, s))
    G.source = "builtin:D4"
    return G


_BUILTIN_GENS = {
    "S4": ["(1 2 3 4)", "(1 2)"],
    "A4": ["(1 2 3)", "(1 2)(3 4)"],
    "A5": ["(1 2 3 4 5)", "(1 2 3)"],
}


def builtin_group(name: str) -> FiniteGroup:
    m = re.fullmatch(r"[Zz](\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise InputError(f"bad cyclic order in {name!r}")
        return _cyclic(n)
    key = name.upper()
    if key == "S3":
        return _s3()
    if key == "D4":
        return _d4()
    if key == "Q8":
        return _quaternion()
    if key == "Z2XZ2":
        return _klein_four()
    if key in _BUILTIN_GENS:
        G = build_from_permutations(_BUILTIN_GENS[key])
        G.source = f"builtin:{key}"
        return G
    raise InputError(f"unknown builtin group {name!r}")


def parse_group_text(text: str, elem_cap: int = DEFAULT_ELEM_CAP) -> FiniteGroup:
    """Group file: ``perm <k>`` + one generator per line, or ``table <n>`` + rows."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError("empty group file")
    head = lines[0].split()
    if head[0] == "perm":
        if len(head) != 2 or not head[1].isdigit():
            raise InputError(f"bad header {lines[0]!r}; expected 'perm <k>'")
        k = int(head[1])
        if len(lines) < 2:
            raise InputError("no generators after 'perm' header")
        return build_from_permutations(lines[1:], k=k, elem_cap=elem_cap)
    if head[0] == "table":
        if len(head) != 2 or not head[1].isdigit():
            raise InputError(f"bad header {lines[0]!r}; expected 'table <n>'")
        n = int(head[1])
        rows = []
        if len(lines) != n + 1:
            raise InputError(f"expected {n} table rows, got {len(lines) - 1}")
        for ln in lines[1:]:
            row = [int(t) for t in ln.split()]
            if len(row) != n:
                raise InputError(f"row has {len(row)} entries, expected {n}")
            rows.append(row)
        return build_from_cayley_table(rows)
    raise InputError(f"unknown group file header {lines[0]!r}")


def load_group(spec: str, elem_cap: int = DEFAULT_ELEM_CAP) -> FiniteGroup:
    """Resolve a --group argument: builtin name first, then a file path."""
    try:
        return builtin_group(spec)
    except InputError:
        pass
    path = Path(spec)
    if not path.exists():
        raise InputError(f"{spec!r} is neither a builtin group nor a file")
    G = parse_group_text(path.read_text(), elem_cap=elem_cap)
    G.source = f"file:{path.name}"
    return G
