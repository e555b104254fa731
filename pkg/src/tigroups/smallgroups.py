"""Exhaustive enumeration of groups of small order by Cayley-table search.

For each candidate maximal element order ``m`` an element ``a`` of order
``m`` is pinned to label 1 and the remaining labels are laid out in left
cosets of ``<a>``: label ``c*m + i`` stands for ``t_c a^i``. Right
multiplication by powers of ``a`` is then fixed, and a table is determined
by the ``(n/m - 1)`` columns of the coset representatives ``t_d``. Those
columns are filled by backtracking with Latin-square and associativity
propagation; finished tables whose exponent exceeds ``m`` are dropped, since
they are found again under a larger ``m``. Isomorphs are rejected with cheap
invariants followed by an explicit isomorphism search.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .group import GroupTable, check_associativity, prime_divisors

MAX_ENUMERATION_ORDER = 12


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class _Search:
    def __init__(self, n: int, m: int):
        self.n, self.m, self.k = n, m, n // m
        self.T = [[-1] * n for _ in range(n)]
        # column entries in use, per column; coset blocks in use, per row
        self.col_used = [[False] * n for _ in range(n)]
        self.trail: list[tuple[int, int]] = []
        for x in range(n):
            for j in range(m):
                self._raw_set(x, j, self._shift(x, j))
        for d in range(1, self.k):
            self._raw_set(0, d * m, d * m)

    def _shift(self, v: int, j: int) -> int:
        """``v * a^j``."""
        m = self.m
        return (v // m) * m + (v % m + j) % m

    def _raw_set(self, x: int, y: int, z: int) -> None:
        self.T[x][y] = z
        self.col_used[y][z] = True
        self.trail.append((x, y))

    def _undo(self, mark: int) -> None:
        T, used = self.T, self.col_used
        while len(self.trail) > mark:
            x, y = self.trail.pop()
            used[y][T[x][y]] = False
            T[x][y] = -1

    def _assign_block(self, x: int, y: int, z: int, queue: list) -> bool:
        """Set ``x*y = z`` and the whole block ``x*(y a^j)``; False on conflict."""
        m = self.m
        base_y = (y // m) * m
        off = y % m
        z0 = self._shift(z, -off)
        T = self.T
        for j in range(m):
            yy, zz = base_y + j, self._shift(z0, j)
            cur = T[x][yy]
            if cur == zz:
                continue
            if cur != -1 or self.col_used[yy][zz]:
                return False
            # row Latin: coset of zz must be unused in row x
            zb = zz // m
            for d in range(self.k):
                v = T[x][d * m]
                if v != -1 and d * m != base_y and v // m == zb:
                    return False
            self._raw_set(x, yy, zz)
            queue.append((x, yy))
        return True

    def _propagate(self, queue: list) -> bool:
        T, n = self.T, self.n
        while queue:
            x, y = queue.pop()
            z = T[x][y]
            row_y = T[y]
            for w in range(n):
                yw = row_y[w]
                if yw == -1:
                    continue
                lhs, rhs = T[z][w], T[x][yw]
                if lhs == rhs:
                    if lhs == -1:
                        continue
                elif lhs == -1:
                    if not self._assign_block(z, w, rhs, queue):
                        return False
                elif rhs == -1:
                    if not self._assign_block(x, yw, lhs, queue):
                        return False
                else:
                    return False
            for u in range(n):
                ux = T[u][x]
                if ux == -1:
                    continue
                lhs, rhs = T[ux][y], T[u][z]
                if lhs == rhs:
                    if lhs == -1:
                        continue
                elif lhs == -1:
                    if not self._assign_block(ux, y, rhs, queue):
                        return False
                elif rhs == -1:
                    if not self._assign_block(u, z, lhs, queue):
                        return False
                else:
                    return False
        return True

    def run(self):
        queue = [(x, y) for x, y in self.trail]
        if not self._propagate(queue):
            return
        yield from self._search()

    def _next_cell(self):
        for d in range(1, self.k):
            col = d * self.m
            for x in range(self.n):
                if self.T[x][col] == -1:
                    return x, col
        return None

    def _search(self):
        cell = self._next_cell()
        if cell is None:
            yield [row[:] for row in self.T]
            return
        x, y = cell
        for z in range(self.n):
            if self.col_used[y][z]:
                continue
            mark = len(self.trail)
            queue: list = []
            if self._assign_block(x, y, z, queue) and self._propagate(queue):
                yield from self._search()
            self._undo(mark)


def _table(rows: list[list[int]], name: str) -> GroupTable | None:
    try:
        G = GroupTable(np.array(rows, dtype=np.int32), name=name, provenance="Cayley-table search")
    except ValueError:
        return None
    return G if check_associativity(G) else None


def fingerprint(G: GroupTable) -> tuple:
    """Isomorphism invariants: order statistics, centre size, square and commuting-pair counts."""
    mul = G.mul
    commuting = int((mul == mul.T).sum())
    centre = int((mul == mul.T).all(axis=1).sum())
    squares = len(set(mul[np.arange(G.order), np.arange(G.order)].tolist()))
    return (
        G.order,
        tuple(sorted(Counter(G.element_orders.tolist()).items())),
        centre,
        commuting,
        squares,
    )


def _generating_tuple(G: GroupTable) -> list[int]:
    """Greedy generators, each chosen of maximal order among what is still missing."""
    rows = G.rows
    gens: list[int] = []
    inside = {0}
    orders = G.element_orders
    while len(inside) < G.order:
        g = max((x for x in range(G.order) if x not in inside), key=lambda x: (orders[x], -x))
        gens.append(g)
        frontier = list(inside)
        inside = set(inside)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = rows[x][s]
                    if y not in inside:
                        inside.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def _extend(G: GroupTable, H: GroupTable, gens: list[int], images: tuple[int, ...]) -> list[int] | None:
    """Extend ``gens -> images`` to a map on ``G`` and test it is an isomorphism."""
    rows_g, rows_h = G.rows, H.rows
    phi = [-1] * G.order
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = rows_g[x][s]
                v = rows_h[phi[x]][t]
                if phi[y] == -1:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    return None
        frontier = nxt
    if len(set(phi)) != G.order:
        return None
    for x in range(G.order):
        rx, px = rows_g[x], rows_h[phi[x]]
        for y in range(G.order):
            if phi[rx[y]] != px[phi[y]]:
                return None
    return phi


def find_isomorphism(G: GroupTable, H: GroupTable) -> list[int] | None:
    """An isomorphism ``G -> H`` as an index map, or None."""
    if G.order != H.order or fingerprint(G) != fingerprint(H):
        return None
    gens = _generating_tuple(G)
    candidates = [
        [y for y in range(H.order) if H.element_orders[y] == G.element_orders[g]] for g in gens
    ]

    def rec(i: int, chosen: tuple[int, ...]):
        if i == len(gens):
            return _extend(G, H, gens, chosen)
        for y in candidates[i]:
            found = rec(i + 1, chosen + (y,))
            if found is not None:
                return found
        return None

    return rec(0, ())


def are_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    return find_isomorphism(G, H) is not None


def enumerate_all_of_order(n: int, max_order: int = MAX_ENUMERATION_ORDER) -> list[GroupTable]:
    """One group per isomorphism class of order ``n``, named ``Ord{n}#{k}``.

    Classes are listed by decreasing maximal element order, so ``Ord{n}#1``
    is the cyclic group.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > max_order:
        raise ValueError(f"exhaustive enumeration is capped at order {max_order}")
    found: list[GroupTable] = []
    # Cauchy: an element of order max(p) exists, so smaller m cannot be maximal
    floor = max(prime_divisors(n), default=1)
    for m in sorted(_divisors(n), reverse=True):
        if m < floor:
            continue
        for rows in _Search(n, m).run():
            G = _table(rows, "")
            if G is None or int(G.element_orders.max()) != m:
                continue
            if any(are_isomorphic(G, K) for K in found):
                continue
            found.append(G)
    for k, G in enumerate(found, 1):
        G.name = f"Ord{n}#{k}"
    return found
