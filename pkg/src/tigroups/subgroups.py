"""Subgroups as bitsets, the full subgroup lattice, and subgroup predicates.

A :class:`Subgroup` stores its member set as a Python ``int`` bitset (bit ``x``
set iff element ``x`` belongs), which makes intersection, containment and
deduplication single big-integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import LatticeTooLarge, NotASubgroup, ParentMismatch
from .group import GroupTable, is_prime_power, p_part

LATTICE_MAX_ORDER = 512
MAX_SUBGROUPS = 100_000


def _bits_to_array(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n]).astype(np.int32)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    bits: int
    order: int
    gen_hint: tuple[int, ...] | None = field(default=None, repr=False)

    @cached_property
    def members(self) -> np.ndarray:
        return _bits_to_array(self.bits, self.parent.order)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return m

    @cached_property
    def gens(self) -> tuple[int, ...]:
        if self.gen_hint is not None:
            return self.gen_hint
        return _greedy_generators(self.parent, self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> int(x) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __le__(self, other: Subgroup) -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.bits != other.bits

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.bits)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def describe(self) -> str:
        G = self.parent
        gens = ", ".join(G.label(g) for g in self.gens) or "()"
        return f"order {self.order} subgroup <{gens}>"

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, gens={self.gens})"


def _make(G: GroupTable, elems: np.ndarray, bits: int, gens: Sequence[int] | None) -> Subgroup:
    return Subgroup(G, bits, len(elems), tuple(int(g) for g in gens) if gens is not None else None)


def _from_mask(G: GroupTable, mask: np.ndarray) -> Subgroup:
    mask = np.asarray(mask, dtype=bool)
    bits = kernels._mask_to_bits(mask.astype(np.uint8))
    return Subgroup(G, bits, int(mask.sum()))


def _greedy_generators(G: GroupTable, members: Iterable[int]) -> tuple[int, ...]:
    gens: list[int] = []
    cur = np.zeros(1, dtype=np.int32)
    bits = 1
    for x in members:
        x = int(x)
        if not bits >> x & 1:
            gens.append(x)
            cur, bits = kernels.dimino(G, cur, gens)
    return tuple(gens)


def trivial_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, 1, 1, ())


def whole_group(G: GroupTable) -> Subgroup:
    return Subgroup(G, (1 << G.order) - 1, G.order)


def _check_same_parent(H: Subgroup, K: Subgroup) -> None:
    if H.parent is not K.parent:
        raise ParentMismatch("subgroups belong to different groups")


def generated_subgroup(G: GroupTable, seeds: Iterable[int]) -> Subgroup:
    """Least subgroup containing ``seeds``."""
    gens: list[int] = []
    elems = np.zeros(1, dtype=np.int32)
    bits = 1
    for s in seeds:
        s = int(s)
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} out of range")
        if not bits >> s & 1:
            gens.append(s)
            elems, bits = kernels.dimino(G, elems, gens)
    return _make(G, elems, bits, gens)


def subgroup_from_elements(G: GroupTable, elements: Iterable[int]) -> Subgroup:
    elements = sorted({int(x) for x in elements})
    H = generated_subgroup(G, elements)
    if H.order != len(elements):
        raise NotASubgroup("element set is not closed under the group operation")
    return H


def cyclic_subgroup(G: GroupTable, x: int) -> Subgroup:
    return generated_subgroup(G, [x])


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    _check_same_parent(H, K)
    bits = H.bits & K.bits
    if bits == H.bits:
        return H
    if bits == K.bits:
        return K
    return Subgroup(H.parent, bits, bits.bit_count())


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    _check_same_parent(H, K)
    if K <= H:
        return H
    if H <= K:
        return K
    G = H.parent
    gens = list(H.gens)
    elems, bits = H.members, H.bits
    for k in K.gens:
        if not bits >> k & 1:
            gens.append(k)
            elems, bits = kernels.dimino(G, elems, gens)
    return _make(G, elems, bits, gens)


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """``H^g = {g^-1 h g : h in H}``."""
    G = H.parent
    bits = kernels.conjugate_bits(G, H.members, g)
    if bits == H.bits:
        return H
    gi = G.inv[g]
    gens = tuple(int(G.mul[G.mul[gi, h], g]) for h in H.gens)
    return Subgroup(G, bits, H.order, gens)


def centralizer(G: GroupTable, H: Subgroup) -> Subgroup:
    gens = list(H.gens)
    if not gens:
        return whole_group(G)
    mul = G.mul
    mask = np.all(mul[:, gens] == mul[gens, :].T, axis=1)
    return _from_mask(G, mask)


def normalizer(G: GroupTable, H: Subgroup) -> Subgroup:
    gens = list(H.gens)
    if not gens:
        return whole_group(G)
    mul, inv = G.mul, G.inv
    inside = H.mask
    mask = np.ones(G.order, dtype=bool)
    for h in gens:
        # h^g for every g at once
        mask &= inside[mul[inv, mul[h, :]]]
    return _from_mask(G, mask)


def is_normal(H: Subgroup, G: GroupTable) -> bool:
    return normalizer(G, H).order == G.order


def right_transversal(G: GroupTable, N: Subgroup) -> list[int]:
    """One representative of each right coset ``N g``."""
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    members = N.members
    for g in range(G.order):
        if not covered[g]:
            reps.append(g)
            covered[G.mul[members, g]] = True
    return reps


def normal_closure(H: Subgroup, K: Subgroup) -> Subgroup:
    """Smallest normal subgroup of ``K`` containing ``H``."""
    _check_same_parent(H, K)
    if not H <= K:
        raise NotASubgroup("H is not contained in K")
    G = H.parent
    mul, inv = G.rows, G.inv
    gens = list(H.gens)
    elems, bits = H.members, H.bits
    kgens = [int(k) for k in K.gens]
    todo = list(gens)
    while todo:
        x = todo.pop()
        for k in kgens:
            y = mul[mul[int(inv[k])][x]][k]
            if not bits >> y & 1:
                gens.append(y)
                todo.append(y)
                elems, bits = kernels.dimino(G, elems, gens)
    return _make(G, elems, bits, gens)


def is_subnormal(H: Subgroup, G: GroupTable) -> bool:
    """Descending normal-closure chain ``G = K0 > K1 > ...`` must reach ``H``."""
    K = whole_group(G)
    while True:
        nxt = normal_closure(H, K)
        if nxt.bits == K.bits:
            return K.bits == H.bits
        K = nxt


def is_TI(H: Subgroup, G: GroupTable) -> bool:
    """``H^g`` meets ``H`` trivially or equals it, for every ``g``.

    ``H^g`` only depends on the right coset of the normalizer containing ``g``,
    so one representative per coset is tested.
    """
    if H.order == 1:
        return True
    N = normalizer(G, H)
    if N.order == G.order:
        return True
    members = H.members
    for g in right_transversal(G, N):
        K = kernels.conjugate_bits(G, members, g)
        if K != H.bits and (K & H.bits).bit_count() != 1:
            return False
    return True


def is_self_centralizing(H: Subgroup, G: GroupTable) -> bool:
    return centralizer(G, H) <= H


@dataclass
class SubgroupLattice:
    """All subgroups of ``group`` sorted by ``(order, bitset)``."""

    group: GroupTable
    all: list[Subgroup]
    conjugacy_classes: list[list[int]]
    index: dict[int, int] = field(init=False, repr=False)
    class_of: list[int] = field(init=False, repr=False)
    cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.index = {H.bits: i for i, H in enumerate(self.all)}
        self.class_of = [0] * len(self.all)
        for c, members in enumerate(self.conjugacy_classes):
            for i in members:
                self.class_of[i] = c

    def __len__(self) -> int:
        return len(self.all)

    def __iter__(self):
        return iter(self.all)

    def position(self, H: Subgroup) -> int:
        return self.index[H.bits]

    def find(self, H: Subgroup) -> Subgroup:
        return self.all[self.index[H.bits]]

    @property
    def trivial(self) -> Subgroup:
        return self.all[0]

    @property
    def whole(self) -> Subgroup:
        return self.all[-1]

    def subgroups_of(self, H: Subgroup) -> list[Subgroup]:
        """The lattice of ``H``: every listed subgroup contained in ``H``."""
        return [K for K in self.all if K <= H]

    def normal_subgroups(self) -> list[Subgroup]:
        return [self.all[c[0]] for c in self.conjugacy_classes if len(c) == 1]


def cyclic_subgroups(G: GroupTable) -> dict[int, Subgroup]:
    rows = G.rows
    found: dict[int, Subgroup] = {}
    for x in range(G.order):
        bits, y, k = 1, x, 1
        while y != 0:
            bits |= 1 << y
            y = rows[y][x]
            k += 1
        if bits not in found:
            found[bits] = Subgroup(G, bits, k, (x,) if x else ())
    return found


def all_subgroups(
    G: GroupTable,
    max_order: int = LATTICE_MAX_ORDER,
    max_subgroups: int = MAX_SUBGROUPS,
) -> SubgroupLattice:
    """Every subgroup of ``G`` exactly once, with its conjugacy partition.

    Starts from the cyclic subgroups and repeatedly joins each new subgroup
    with every cyclic subgroup of prime-power order until nothing new appears.
    Prime-power cyclics suffice as join atoms because each cyclic subgroup is
    the join of its Sylow parts, and every subgroup is a join of cyclics.
    """
    if G.order > max_order:
        raise LatticeTooLarge(f"lattice too large: order {G.order} exceeds cap {max_order}")
    found = cyclic_subgroups(G)
    atoms = sorted(
        (Z for Z in found.values() if is_prime_power(Z.order)), key=lambda Z: Z.sort_key
    )
    frontier = sorted(found.values(), key=lambda H: H.sort_key)
    while frontier:
        new = []
        for H in frontier:
            hb = H.bits
            for Z in atoms:
                if Z.bits & ~hb == 0:
                    continue
                J = join(H, Z)
                if J.bits not in found:
                    found[J.bits] = J
                    new.append(J)
                    if len(found) > max_subgroups:
                        raise LatticeTooLarge(
                            f"lattice too large: more than {max_subgroups} subgroups"
                        )
        frontier = new
    subs = sorted(found.values(), key=lambda H: H.sort_key)
    return SubgroupLattice(G, subs, _conjugacy_classes(G, subs))


def _conjugacy_classes(G: GroupTable, subs: list[Subgroup]) -> list[list[int]]:
    index = {H.bits: i for i, H in enumerate(subs)}
    assigned = [False] * len(subs)
    classes = []
    for i, H in enumerate(subs):
        if assigned[i]:
            continue
        N = normalizer(G, H)
        orbit = set()
        for g in right_transversal(G, N):
            bits = kernels.conjugate_bits(G, H.members, g)
            try:
                orbit.add(index[bits])
            except KeyError:
                raise AssertionError("subgroup list is not closed under conjugation") from None
        for j in orbit:
            assigned[j] = True
        classes.append(sorted(orbit))
    return classes


def sylow_subgroups(G: GroupTable, lattice: SubgroupLattice, p: int) -> list[Subgroup]:
    if G.order % p:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    target = p_part(G.order, p)
    return [H for H in lattice.all if H.order == target]
