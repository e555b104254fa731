"""Recognition of the structural pieces appearing in the classifications.

Everything here works on :class:`~tigroups.subgroups.Subgroup` objects of a
common parent table; "the lattice of H" means the parent lattice filtered to
subgroups of ``H`` (see :meth:`SubgroupLattice.subgroups_of`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import GroupTable, prime_divisors, p_part
from .subgroups import Subgroup, SubgroupLattice, normalizer


@dataclass(frozen=True)
class FrobeniusDecomposition:
    kernel: Subgroup
    complement: Subgroup
    kernel_prime: int | None
    kernel_rank: int | None


@dataclass(frozen=True)
class Q8OddCyclicDecomposition:
    q8_part: Subgroup
    odd_cyclic_part: Subgroup


def _orders(H: Subgroup) -> np.ndarray:
    return H.parent.element_orders[H.members]


def is_abelian(H: Subgroup) -> bool:
    gens = list(H.gens)
    if len(gens) < 2:
        return True
    mul = H.parent.mul
    block = mul[np.ix_(gens, gens)]
    return bool((block == block.T).all())


def is_cyclic(H: Subgroup) -> bool:
    return bool((_orders(H) == H.order).any())


def is_nilpotent(H: Subgroup) -> bool:
    """All Sylow subgroups normal.

    A Sylow ``p``-subgroup is normal iff it is the only one, iff the number of
    ``p``-elements of ``H`` equals the ``p``-part of ``|H|``.
    """
    orders = _orders(H)
    for p in prime_divisors(H.order):
        pk = p_part(H.order, p)
        p_elements = int(np.count_nonzero(pk % orders == 0))
        if p_elements != pk:
            return False
    return True


def _normal_in(K: Subgroup, H: Subgroup) -> bool:
    """``K^h = K`` for every ``h`` in ``H``; ``K <= H`` is not required."""
    G = H.parent
    mul, inv = G.mul, G.inv
    hg = np.asarray(H.gens, dtype=np.int64)
    if hg.size == 0:
        return True
    inside = K.mask
    for k in K.gens:
        if not inside[mul[inv[hg], mul[k, hg]]].all():
            return False
    return True


def is_dedekind(H: Subgroup, lattice: list[Subgroup] | SubgroupLattice) -> bool:
    subs = lattice.subgroups_of(H) if isinstance(lattice, SubgroupLattice) else lattice
    return all(_normal_in(K, H) for K in subs if K <= H)


def elementary_abelian_params(H: Subgroup) -> tuple[int, int] | None:
    if H.order == 1:
        return None
    primes = prime_divisors(H.order)
    if len(primes) != 1:
        return None
    q = primes[0]
    orders = _orders(H)
    if not ((orders == q) | (orders == 1)).all() or not is_abelian(H):
        return None
    r, n = 0, H.order
    while n > 1:
        n //= q
        r += 1
    return q, r


def involution_count(H: Subgroup) -> int:
    return int(np.count_nonzero(_orders(H) == 2))


def is_generalized_quaternion(H: Subgroup) -> bool:
    n = H.order
    if n < 8 or n & (n - 1):
        return False
    return not is_cyclic(H) and involution_count(H) == 1


def is_quaternion_q8(H: Subgroup) -> bool:
    # order 8, non-abelian, one involution: only Q8 among groups of order 8
    return H.order == 8 and not is_abelian(H) and involution_count(H) == 1


def elementwise_commute(A: Subgroup, B: Subgroup) -> bool:
    a, b = list(A.gens), list(B.gens)
    if not a or not b:
        return True
    mul = A.parent.mul
    return bool((mul[np.ix_(a, b)] == mul[np.ix_(b, a)].T).all())


def q8_odd_cyclic_decomposition(
    H: Subgroup, lattice: list[Subgroup] | SubgroupLattice
) -> Q8OddCyclicDecomposition | None:
    if H.order % 8 or (H.order // 8) % 2 == 0:
        return None
    subs = lattice.subgroups_of(H) if isinstance(lattice, SubgroupLattice) else [
        K for K in lattice if K <= H
    ]
    m = H.order // 8
    q8s = [A for A in subs if is_quaternion_q8(A)]
    if not q8s:
        return None
    odd = [B for B in subs if B.order == m and is_cyclic(B)]
    for A in q8s:
        for B in odd:
            if (A.bits & B.bits) == 1 and elementwise_commute(A, B):
                return Q8OddCyclicDecomposition(A, B)
    return None


def minimal_normal_subgroups(G: GroupTable, lattice: SubgroupLattice) -> list[Subgroup]:
    normals = [N for N in lattice.normal_subgroups() if N.order > 1]
    return [N for N in normals if not any(M < N for M in normals)]


def _fixed_point_free(N: Subgroup, M: Subgroup) -> bool:
    """No non-identity ``m`` in ``M`` commutes with a non-identity ``n`` in ``N``."""
    mul = N.parent.mul
    n_el = N.members[1:]
    m_el = M.members[1:]
    if n_el.size == 0 or m_el.size == 0:
        return True
    return not (mul[np.ix_(m_el, n_el)] == mul[np.ix_(n_el, m_el)].T).any()


def complements(G: GroupTable, lattice: SubgroupLattice, N: Subgroup, within: Subgroup | None = None) -> list[Subgroup]:
    """Subgroups ``M`` of ``within`` (default ``G``) with ``N M = within``, ``N ∩ M = 1``."""
    total = within.order if within is not None else G.order
    target = total // N.order
    return [
        M
        for M in lattice.all
        if M.order == target and (M.bits & N.bits) == 1 and (within is None or M <= within)
    ]


def frobenius_decomposition(G: GroupTable, lattice: SubgroupLattice) -> FrobeniusDecomposition | None:
    for N in lattice.normal_subgroups():
        if N.order == 1 or N.order == G.order:
            continue
        for M in complements(G, lattice, N):
            if _fixed_point_free(N, M):
                params = elementary_abelian_params(N)
                q, r = params if params else (None, None)
                return FrobeniusDecomposition(N, M, q, r)
    return None


def normalizes(P1: Subgroup, N: Subgroup) -> bool:
    return _normal_in(N, P1)


def acts_irreducibly(P1: Subgroup, N: Subgroup, lattice: SubgroupLattice) -> bool:
    """No ``L`` with ``1 < L < N`` is invariant under conjugation by ``P1``."""
    if not normalizes(P1, N):
        raise ValueError("P1 does not normalize N")
    for L in lattice.all:
        if 1 < L.order < N.order and L <= N and normalizes(P1, L):
            return False
    return True


def commutator_nontrivial(A: Subgroup, B: Subgroup) -> bool:
    if A.parent is not B.parent:
        raise ValueError("subgroups belong to different groups")
    return not elementwise_commute(A, B)


def is_self_normalizing(G: GroupTable, H: Subgroup) -> bool:
    return normalizer(G, H).bits == H.bits

