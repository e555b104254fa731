"""Concrete finite groups as dense multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Products follow the left-to-right convention used for permutations: ``g*h``
means "apply ``g`` first, then ``h``", so conjugation ``x^g`` is ``g^-1 x g``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GroupTooLarge

MAX_GROUP_ORDER = 2000
ASSOCIATIVITY_EXHAUSTIVE_MAX = 256

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if not images:
            raise ValueError("permutation degree must be positive")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``."""
        text = text.strip()
        if degree < 1:
            raise ValueError("permutation degree must be positive")
        stripped = _CYCLE_RE.sub("", text)
        if stripped.strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        images = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(text):
            tokens = body.replace(",", " ").split()
            try:
                points = [int(t) for t in tokens]
            except ValueError:
                raise ValueError(f"non-integer point in cycle ({body})") from None
            for pt in points:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} outside 0..{degree - 1}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated; cycles must be disjoint")
                seen.add(pt)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(tuple(images))

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


class GroupTable:
    """A finite group given by its full multiplication table.

    ``mul[g, h]`` is the index of ``g*h``. The table is validated on
    construction (identity at index 0, Latin square); associativity is checked
    separately by :func:`check_associativity` because it is cubic.
    """

    def __init__(
        self,
        mul,
        name: str = "",
        provenance: str = "",
        labels: Sequence[str] | None = None,
    ):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] < 1:
            raise ValueError("multiplication table must be a non-empty square array")
        n = mul.shape[0]
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("table entries out of range")
        ar = np.arange(n, dtype=np.int32)
        if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
            raise ValueError("index 0 must be a two-sided identity")
        srt = np.sort(mul, axis=1)
        if not (srt == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
            raise ValueError("table is not a Latin square")
        mul.setflags(write=False)
        self.mul = mul
        self.name = name
        self.provenance = provenance
        self.labels = list(labels) if labels is not None else None

        inv = np.argmax(mul == 0, axis=1).astype(np.int32)
        if not (mul[ar, inv] == 0).all() or not (mul[inv, ar] == 0).all():
            raise ValueError("inverses are not two-sided")
        inv.setflags(write=False)
        self.inv = inv

        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        power = ar.copy()
        k = 1
        while (orders == 0).any():
            k += 1
            power = mul[power, ar]
            orders[(power == 0) & (orders == 0)] = k
            if k > n:
                raise ValueError("element of unbounded order; table is not a group")
        orders.setflags(write=False)
        self.element_orders = orders

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def rows(self) -> list[list[int]]:
        """Table as nested lists (``rows[g][h] == g*h``) for scalar-heavy loops."""
        return self.mul.tolist()

    @cached_property
    def cols(self) -> list[list[int]]:
        """Transposed table: ``cols[h][g] == g*h``."""
        return self.mul.T.tolist()

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return np.array_equal(self.mul, other.mul)

    __hash__ = object.__hash__


def check_associativity(G: GroupTable, samples: int = 100_000, seed: int = 0) -> bool:
    """Exhaustive below ``ASSOCIATIVITY_EXHAUSTIVE_MAX``, random triples above."""
    mul = G.mul
    n = G.order
    if n <= ASSOCIATIVITY_EXHAUSTIVE_MAX:
        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return bool((mul[mul[a, b], c] == mul[a, mul[b, c]]).all())


def trivial_group(name: str = "C1") -> GroupTable:
    return GroupTable(np.zeros((1, 1), dtype=np.int32), name=name, provenance="trivial", labels=["()"])


def _injective_base(perms: np.ndarray) -> list[int]:
    """Points whose images already separate all the given permutations."""
    n, degree = perms.shape
    base: list[int] = []
    key = np.zeros(n, dtype=np.int64)
    distinct = 1
    for pt in range(degree):
        trial = key * degree + perms[:, pt]
        d = len(np.unique(trial))
        if d > distinct:
            base.append(pt)
            key = trial
            distinct = d
            if distinct == n:
                break
    return base


def group_from_generators(
    gens: Sequence[Permutation],
    name: str = "",
    max_order: int = MAX_GROUP_ORDER,
    provenance: str | None = None,
) -> GroupTable:
    """Close ``gens`` under composition and tabulate the result.

    Elements are numbered in breadth-first discovery order (identity first,
    then right products with each generator in turn), so the same generator
    list always yields the same table.
    """
    if provenance is None:
        provenance = "generated by " + ", ".join(str(g) for g in gens) if gens else "trivial"
    if not gens:
        return GroupTable(np.zeros((1, 1), dtype=np.int32), name=name, provenance=provenance, labels=["()"])
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share a common degree")
    gen_arrays = [np.asarray(g.images, dtype=np.int64) for g in gens]
    elements = [np.arange(degree, dtype=np.int64)]
    index = {elements[0].tobytes(): 0}
    i = 0
    while i < len(elements):
        cur = elements[i]
        for g in gen_arrays:
            nxt = g[cur]
            key = nxt.tobytes()
            if key not in index:
                if len(elements) >= max_order:
                    raise GroupTooLarge(f"group too large: closure exceeds {max_order} elements")
                index[key] = len(elements)
                elements.append(nxt)
        i += 1

    perms = np.stack(elements)
    n = len(elements)
    base = _injective_base(perms)
    weights = np.array([degree**k for k in range(len(base))][::-1], dtype=np.int64)
    keys = perms[:, base] @ weights if base else np.zeros(n, dtype=np.int64)
    order_idx = np.argsort(keys, kind="stable")
    sorted_keys = keys[order_idx]
    mul = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        # (g*h)[x] = h[g[x]]; only the base points are needed to identify g*h
        prod_keys = perms[:, perms[g, base]] @ weights if base else np.zeros(n, dtype=np.int64)
        mul[g] = order_idx[np.searchsorted(sorted_keys, prod_keys)]
    labels = [str(Permutation(tuple(p))) for p in perms.tolist()]
    return GroupTable(mul, name=name, provenance=provenance, labels=labels)


def conjugate_element(G: GroupTable, x: int, g: int) -> int:
    """``x^g = g^-1 x g``."""
    return int(G.mul[G.mul[G.inv[g], x], g])


def element_order(G: GroupTable, x: int) -> int:
    rows = G.rows
    k, y = 1, x
    while y != 0:
        y = rows[y][x]
        k += 1
    return k


def prime_divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(n: int) -> bool:
    return n >= 2 and prime_divisors(n) == [n]


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(prime_divisors(n)) == 1


def exponent(G: GroupTable) -> int:
    return math.lcm(*(int(k) for k in G.element_orders))


def words_to_elements(G: GroupTable, gens: Iterable[int]) -> list[int]:
    """Breadth-first closure of element indices under right multiplication."""
    gens = list(gens)
    rows = G.rows
    seen = {0}
    out = [0]
    for x in out:
        for s in gens:
            y = rows[x][s]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out
