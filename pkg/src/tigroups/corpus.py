"""Group constructions, the group-file loader and the default corpus."""

from __future__ import annotations

import enum
import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import GroupParseError, GroupTooLarge, InvalidAction
from .group import MAX_GROUP_ORDER, GroupTable, Permutation, group_from_generators
from .smallgroups import MAX_ENUMERATION_ORDER, enumerate_all_of_order
from .subgroups import LATTICE_MAX_ORDER


class RecipeKind(str, enum.Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    GENERALIZED_QUATERNION = "generalized_quaternion"
    ELEMENTARY_ABELIAN = "elementary_abelian"
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    DIRECT_PRODUCT = "direct_product"
    SEMIDIRECT_PRODUCT = "semidirect_product"
    FROM_GENERATORS = "from_generators"


@dataclass(frozen=True)
class GroupRecipe:
    """A declarative description of a group.

    ``params`` holds the integers of the family (``(n,)`` for cyclic and
    dihedral, the order for generalized quaternion, ``(q, r)`` for
    elementary abelian, the degree for symmetric, alternating and
    from-generators). Products take their two operands in ``factors``; a
    semidirect product ``N : M`` also takes ``action``, with ``action[i][j]``
    the image of the ``j``-th standard generator of ``N`` under the ``i``-th
    standard generator of ``M``. Standard generators are listed by
    :func:`build_with_generators`.
    """

    kind: RecipeKind
    params: tuple[int, ...] = ()
    factors: tuple[GroupRecipe, ...] = ()
    action: tuple[tuple[int, ...], ...] = ()
    generators: tuple[str, ...] = ()
    name: str = ""
    frobenius: bool = False


def cyclic(n: int, name: str | None = None) -> GroupRecipe:
    return GroupRecipe(RecipeKind.CYCLIC, (n,), name=name or f"Z{n}")


def dihedral(n: int, name: str | None = None) -> GroupRecipe:
    """Dihedral group of order ``2n``."""
    return GroupRecipe(RecipeKind.DIHEDRAL, (n,), name=name or f"D{n}")


def generalized_quaternion(order: int, name: str | None = None) -> GroupRecipe:
    """Dicyclic group of order ``order`` (divisible by 4); generalized quaternion for powers of two."""
    n = order // 4
    if name is None:
        name = f"Q{order}" if order & (order - 1) == 0 else f"Dic{n}"
    return GroupRecipe(RecipeKind.GENERALIZED_QUATERNION, (order,), name=name)


def elementary_abelian(q: int, r: int, name: str | None = None) -> GroupRecipe:
    return GroupRecipe(RecipeKind.ELEMENTARY_ABELIAN, (q, r), name=name or (f"Z{q}^{r}" if r > 1 else f"Z{q}"))


def symmetric(n: int, name: str | None = None) -> GroupRecipe:
    return GroupRecipe(RecipeKind.SYMMETRIC, (n,), name=name or f"S{n}")


def alternating(n: int, name: str | None = None) -> GroupRecipe:
    return GroupRecipe(RecipeKind.ALTERNATING, (n,), name=name or f"A{n}")


def from_generators(degree: int, cycles: Sequence[str], name: str) -> GroupRecipe:
    return GroupRecipe(RecipeKind.FROM_GENERATORS, (degree,), generators=tuple(cycles), name=name)


def direct_product(A: GroupRecipe, B: GroupRecipe, name: str | None = None) -> GroupRecipe:
    return GroupRecipe(RecipeKind.DIRECT_PRODUCT, factors=(A, B), name=name or f"{A.name}x{B.name}")


def semidirect_product(
    N: GroupRecipe,
    M: GroupRecipe,
    action: Sequence[Sequence[int]],
    name: str | None = None,
    frobenius: bool = False,
) -> GroupRecipe:
    return GroupRecipe(
        RecipeKind.SEMIDIRECT_PRODUCT,
        factors=(N, M),
        action=tuple(tuple(int(v) for v in row) for row in action),
        name=name or f"{N.name}:{M.name}",
        frobenius=frobenius,
    )


def cyclic_by_cyclic(q: int, m: int, k: int, name: str | None = None, frobenius: bool = False) -> GroupRecipe:
    """``Z_q : Z_m`` with the generator of ``Z_m`` acting as ``x -> x^k``."""
    return semidirect_product(cyclic(q), cyclic(m), [[k % q]], name=name, frobenius=frobenius)


# -- linear actions on elementary abelian groups ------------------------------


def _vector_index(v: Sequence[int], q: int) -> int:
    return sum(int(c) * q**i for i, c in enumerate(v))


def _index_vector(x: int, q: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        out.append(x % q)
        x //= q
    return out


def matrix_permutation(A: Sequence[Sequence[int]], q: int) -> Permutation:
    """Row-vector action ``v -> vA`` on ``F_q^r`` as a permutation of vector indices.

    With left-to-right composition this makes the permutation group a copy of
    the matrix group with the usual matrix product.
    """
    A = np.asarray(A, dtype=np.int64)
    r = A.shape[0]
    vecs = np.array([_index_vector(x, q, r) for x in range(q**r)], dtype=np.int64)
    imgs = (vecs @ A) % q
    weights = q ** np.arange(r, dtype=np.int64)
    images = tuple(int(x) for x in imgs @ weights)
    if len(set(images)) != len(images):
        raise InvalidAction(f"matrix {A.tolist()} is singular over F_{q}")
    return Permutation(images)


def linear_action(
    q: int,
    matrices: Sequence[Sequence[Sequence[int]]],
    name: str,
    complement_name: str | None = None,
    frobenius: bool = False,
) -> GroupRecipe:
    """``F_q^r : M`` where ``M`` is the matrix group generated by ``matrices``.

    ``M`` acts on column vectors, ``v -> A v``; the acting group is realised
    as permutations of the vectors so its table is built by closure.
    """
    r = len(matrices[0])
    perms = [matrix_permutation(A, q) for A in matrices]
    M = from_generators(q**r, [str(p) for p in perms], complement_name or f"{name}/complement")
    action = []
    for A in matrices:
        A = np.asarray(A, dtype=np.int64)
        action.append([_vector_index(A[:, i] % q, q) for i in range(r)])
    return semidirect_product(elementary_abelian(q, r), M, action, name=name, frobenius=frobenius)


# -- building -----------------------------------------------------------------


def _cyclic_table(n: int) -> np.ndarray:
    ar = np.arange(n)
    return (ar[:, None] + ar[None, :]) % n


def _dicyclic_table(order: int) -> np.ndarray:
    # a^i b^j at index i + 2n j; b a = a^-1 b, b^2 = a^n
    if order % 4 or order < 4:
        raise ValueError("generalized quaternion order must be a positive multiple of 4")
    n2 = order // 2
    n = n2 // 2
    idx = np.arange(order)
    i, j = idx % n2, idx // n2
    I1, J1 = i[:, None], j[:, None]
    I2, J2 = i[None, :], j[None, :]
    a_exp = np.where(J1 == 0, I1 + I2, I1 - I2)
    b_exp = J1 + J2
    a_exp = np.where(b_exp == 2, a_exp + n, a_exp)
    return (a_exp % n2) + n2 * (b_exp % 2)


def _elementary_table(q: int, r: int) -> np.ndarray:
    size = q**r
    digits = np.array([_index_vector(x, q, r) for x in range(size)], dtype=np.int64)
    weights = q ** np.arange(r, dtype=np.int64)
    summed = (digits[:, None, :] + digits[None, :, :]) % q
    return summed @ weights


def _check_cap(order: int, max_order: int) -> None:
    if order > max_order:
        raise GroupTooLarge(f"group too large: order {order} exceeds cap {max_order}")


def _extend_automorphism(N: GroupTable, gens: Sequence[int], images: Sequence[int], where: str) -> np.ndarray:
    if len(images) != len(gens):
        raise InvalidAction(f"{where}: expected {len(gens)} generator images, got {len(images)}")
    rows = N.rows
    phi = [-1] * N.order
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                if not 0 <= h < N.order:
                    raise InvalidAction(f"{where}: image {h} is not an element of the kernel")
                y, v = rows[x][g], rows[phi[x]][h]
                if phi[y] == -1:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    raise InvalidAction(f"{where}: generator images do not define a homomorphism")
        frontier = nxt
    if -1 in phi:
        raise InvalidAction(f"{where}: kernel generators do not generate the kernel")
    arr = np.asarray(phi, dtype=np.int64)
    if not np.array_equal(arr[N.mul], N.mul[arr[:, None], arr[None, :]]):
        raise InvalidAction(f"{where}: map is not a homomorphism")
    if len(np.unique(arr)) != N.order:
        raise InvalidAction(f"{where}: map is not bijective, so not an automorphism")
    return arr


def _action_table(N: GroupTable, n_gens, M: GroupTable, m_gens, action) -> np.ndarray:
    """``alpha[m]`` as an ``|M| x |N|`` array with ``alpha[m1 m2] = alpha[m1] o alpha[m2]``."""
    if len(action) != len(m_gens):
        raise InvalidAction(f"action lists {len(action)} acting generators, the complement has {len(m_gens)}")
    gen_maps = [
        _extend_automorphism(N, n_gens, imgs, f"acting generator {i}") for i, imgs in enumerate(action)
    ]
    alpha = np.full((M.order, N.order), -1, dtype=np.int64)
    alpha[0] = np.arange(N.order)
    rows = M.rows
    frontier = [0]
    seen = {0}
    while frontier:
        nxt = []
        for m in frontier:
            for s, a in zip(m_gens, gen_maps):
                y = rows[m][s]
                img = alpha[m][a]
                if y not in seen:
                    seen.add(y)
                    alpha[y] = img
                    nxt.append(y)
                elif not np.array_equal(alpha[y], img):
                    raise InvalidAction("action is not a homomorphism from the complement into Aut(kernel)")
        frontier = nxt
    if len(seen) != M.order:
        raise InvalidAction("acting generators do not generate the complement")
    composed = alpha[np.arange(M.order)[:, None, None], alpha[None, :, :]]
    if not np.array_equal(alpha[M.mul], composed):
        raise InvalidAction("action is not a homomorphism from the complement into Aut(kernel)")
    return alpha


def _generator_positions(G: GroupTable, perms: Sequence[Permutation]) -> list[int]:
    where = {lab: i for i, lab in enumerate(G.labels or [])}
    out = []
    for p in perms:
        i = where[str(p)]
        if i != 0 and i not in out:
            out.append(i)
    return out


def build_with_generators(recipe: GroupRecipe, max_order: int = MAX_GROUP_ORDER) -> tuple[GroupTable, list[int]]:
    """Build ``recipe`` and return its table with the standard generators.

    Standard generators: ``1`` for cyclic; rotation ``1`` and reflection
    ``n`` for dihedral; ``a = 1`` and ``b = order/2`` for generalized
    quaternion; unit vectors ``q^i`` for elementary abelian; the listed
    permutations for symmetric, alternating and from-generators; for
    products, those of the first factor followed by those of the second.
    """
    kind = recipe.kind
    name = recipe.name
    if kind is RecipeKind.CYCLIC:
        (n,) = recipe.params
        _check_cap(n, max_order)
        return GroupTable(_cyclic_table(n), name, f"cyclic({n})"), ([1] if n > 1 else [])
    if kind is RecipeKind.DIHEDRAL:
        (n,) = recipe.params
        table, _ = build_with_generators(cyclic_by_cyclic(n, 2, -1, name=name), max_order)
        table.provenance = f"dihedral({n})"
        return table, [1 % table.order, n] if n > 1 else [n]
    if kind is RecipeKind.GENERALIZED_QUATERNION:
        (order,) = recipe.params
        _check_cap(order, max_order)
        return GroupTable(_dicyclic_table(order), name, f"generalized_quaternion({order})"), [1, order // 2]
    if kind is RecipeKind.ELEMENTARY_ABELIAN:
        q, r = recipe.params
        _check_cap(q**r, max_order)
        return GroupTable(_elementary_table(q, r), name, f"elementary_abelian({q}, {r})"), [q**i for i in range(r)]
    if kind in (RecipeKind.SYMMETRIC, RecipeKind.ALTERNATING, RecipeKind.FROM_GENERATORS):
        (degree,) = recipe.params
        if kind is RecipeKind.SYMMETRIC:
            cycles = [] if degree < 2 else ([f"({' '.join(map(str, range(degree)))})", "(0 1)"])
        elif kind is RecipeKind.ALTERNATING:
            cycles = [f"({i} {i + 1} {i + 2})" for i in range(degree - 2)]
        else:
            cycles = list(recipe.generators)
        perms = [Permutation.from_cycles(c, degree) for c in cycles]
        table = group_from_generators(perms, name, max_order=max_order, provenance=f"{kind.value}: " + "; ".join(cycles))
        return table, _generator_positions(table, perms)
    if kind is RecipeKind.DIRECT_PRODUCT:
        A, B = recipe.factors
        TA, ga = build_with_generators(A, max_order)
        TB, gb = build_with_generators(B, max_order)
        _check_cap(TA.order * TB.order, max_order)
        na = TA.order
        idx = np.arange(na * TB.order)
        a, b = idx % na, idx // na
        mul = TB.mul[b[:, None], b[None, :]] * na + TA.mul[a[:, None], a[None, :]]
        table = GroupTable(mul, name, f"direct_product({A.name}, {B.name})")
        return table, list(ga) + [g * na for g in gb]
    if kind is RecipeKind.SEMIDIRECT_PRODUCT:
        Nr, Mr = recipe.factors
        N, gn = build_with_generators(Nr, max_order)
        M, gm = build_with_generators(Mr, max_order)
        _check_cap(N.order * M.order, max_order)
        alpha = _action_table(N, gn, M, gm, recipe.action)
        nn = N.order
        idx = np.arange(nn * M.order)
        n, m = idx % nn, idx // nn
        # (n1, m1)(n2, m2) = (n1 alpha_m1(n2), m1 m2)
        twisted = alpha[m[:, None], n[None, :]]
        mul = M.mul[m[:, None], m[None, :]] * nn + N.mul[n[:, None], twisted]
        table = GroupTable(mul, name, f"semidirect_product({Nr.name}, {Mr.name}, action={list(recipe.action)})")
        return table, list(gn) + [g * nn for g in gm]
    raise ValueError(f"unknown recipe kind {kind!r}")


def build(recipe: GroupRecipe, max_order: int = MAX_GROUP_ORDER) -> GroupTable:
    return build_with_generators(recipe, max_order)[0]


# -- group files --------------------------------------------------------------


def parse_record(line: str, line_number: int = 0, max_order: int = MAX_GROUP_ORDER) -> GroupTable:
    """Parse ``name; degree; cycles; cycles; ...`` into a group."""
    fields = [f.strip() for f in line.split(";")]
    if len(fields) < 2 or not fields[0]:
        raise GroupParseError("expected 'name; degree; generators...'", line_number, line)
    name, degree_text, *gens = fields
    try:
        degree = int(degree_text)
    except ValueError:
        raise GroupParseError(f"degree {degree_text!r} is not an integer", line_number, line) from None
    if degree < 1:
        raise GroupParseError("degree must be positive", line_number, line)
    perms = []
    for text in gens:
        if not text:
            continue
        try:
            perms.append(Permutation.from_cycles(text, degree))
        except ValueError as exc:
            raise GroupParseError(f"bad generator {text!r}: {exc}", line_number, line) from None
    try:
        return group_from_generators(perms, name, max_order=max_order, provenance=f"file: {line.strip()}")
    except GroupTooLarge as exc:
        raise GroupParseError(str(exc), line_number, line) from None


def load_groups(source: str | os.PathLike | TextIO, max_order: int = MAX_GROUP_ORDER) -> list[GroupTable]:
    """Read a group file (path or text stream); ``#`` starts a comment."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return load_groups(fh, max_order)
    groups = []
    for number, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            groups.append(parse_record(line, number, max_order))
    return groups


def loads_groups(text: str, max_order: int = MAX_GROUP_ORDER) -> list[GroupTable]:
    return load_groups(io.StringIO(text), max_order)


# -- default corpus -----------------------------------------------------------

# Matrices are over F_q acting on column vectors; each listed group acts
# fixed-point-freely unless noted.
_F3_ORDER4 = [[0, 1], [2, 0]]
_F3_ORDER8 = [[0, 1], [1, 1]]
_F3_Q8 = [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]
_F5_ORDER3 = [[0, 1], [4, 4]]
_F5_ORDER6 = [[0, 1], [4, 1]]
_F5_ORDER8 = [[0, 1], [2, 0]]
_F5_ORDER12 = [[0, 1], [1, 2]]
_F5_Q8 = [[[0, 1], [4, 0]], [[0, 2], [2, 0]]]
# a of order 6, b with b^2 = a^3 and a^b = a^-1: a dicyclic group of order 12
_F5_DIC3 = [[[0, 1], [4, 1]], [[0, 2], [2, 0]]]
# multiplication by x in F_2[x]/(x^3 + x + 1) and F_2[x]/(x^4 + x + 1)
_F8_X = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]
_F8_FROBENIUS = [[1, 0, 0], [0, 0, 1], [0, 1, 1]]  # squaring; fixes F_2, not fixed-point-free
_F16_X = [[0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]]


def _matpow(A, k: int, q: int):
    A = np.asarray(A, dtype=np.int64)
    out = np.eye(len(A), dtype=np.int64)
    for _ in range(k):
        out = (out @ A) % q
    return out.tolist()


def family_recipes() -> list[GroupRecipe]:
    """The constructed part of the default corpus, in a fixed order."""
    R: list[GroupRecipe] = []
    R += [symmetric(3), symmetric(4), alternating(4), alternating(5), symmetric(5)]
    R += [dihedral(n) for n in range(3, 13)]
    R += [generalized_quaternion(8), generalized_quaternion(16), generalized_quaternion(32), generalized_quaternion(12)]
    R += [cyclic(15), cyclic(30)]
    # Z_q : Z_2 by inversion, and further cyclic-by-cyclic Frobenius groups
    R += [cyclic_by_cyclic(q, 2, -1, name=f"Z{q}:Z2", frobenius=True) for q in (3, 5, 7, 11)]
    R += [
        cyclic_by_cyclic(5, 4, 2, frobenius=True),
        cyclic_by_cyclic(7, 3, 2, frobenius=True),
        cyclic_by_cyclic(7, 6, 3, frobenius=True),
        cyclic_by_cyclic(11, 5, 3, frobenius=True),
        cyclic_by_cyclic(11, 10, 2, frobenius=True),
        cyclic_by_cyclic(13, 3, 3, frobenius=True),
        cyclic_by_cyclic(13, 4, 5, frobenius=True),
        cyclic_by_cyclic(13, 6, 4, frobenius=True),
        cyclic_by_cyclic(13, 12, 2, frobenius=True),
    ]
    # actions with a kernel: not Frobenius
    R += [cyclic_by_cyclic(7, 9, 2), cyclic_by_cyclic(5, 8, 2), cyclic_by_cyclic(3, 8, -1)]
    R += [semidirect_product(elementary_abelian(2, 2), cyclic(3), [[2, 3]], name="Z2^2:Z3", frobenius=True)]
    R += [
        linear_action(3, [[[2, 0], [0, 2]]], "Z3^2:Z2", "Z2", frobenius=True),
        linear_action(3, [_F3_ORDER4], "Z3^2:Z4", "Z4", frobenius=True),
        linear_action(3, _F3_Q8, "Z3^2:Q8", "Q8", frobenius=True),
        linear_action(3, [_F3_ORDER8], "Z3^2:Z8", "Z8", frobenius=True),
        linear_action(5, [_F5_ORDER3], "Z5^2:Z3", "Z3", frobenius=True),
        linear_action(5, [_F5_ORDER6], "Z5^2:Z6", "Z6", frobenius=True),
        linear_action(5, [_F5_ORDER8], "Z5^2:Z8", "Z8", frobenius=True),
        linear_action(5, [_F5_ORDER12], "Z5^2:Z12", "Z12", frobenius=True),
        linear_action(5, _F5_Q8, "Z5^2:Q8", "Q8", frobenius=True),
        linear_action(5, _F5_DIC3, "Z5^2:Dic3", "Dic3", frobenius=True),
        linear_action(5, [[[2, 0], [0, 2]]], "Z5^2:Z4", "Z4", frobenius=True),
        linear_action(2, [_F8_X], "Z2^3:Z7", "Z7", frobenius=True),
        linear_action(2, [_F8_X, _F8_FROBENIUS], "AGammaL(1,8)", "Z7:Z3"),
        linear_action(2, [_matpow(_F16_X, 5, 2)], "Z2^4:Z3", "Z3", frobenius=True),
        linear_action(2, [_matpow(_F16_X, 3, 2)], "Z2^4:Z5", "Z5", frobenius=True),
        linear_action(2, [_F16_X], "Z2^4:Z15", "Z15", frobenius=True),
        linear_action(7, [[[2, 0], [0, 2]]], "Z7^2:Z3", "Z3", frobenius=True),
    ]
    Q8 = generalized_quaternion(8)
    R += [direct_product(Q8, cyclic(m), name=f"Q8xZ{m}") for m in (3, 5, 7, 9)]
    # SL(2,3): Q8 with the order-3 automorphism i -> j -> k
    R += [semidirect_product(Q8, cyclic(3), [[4, 5]], name="SL(2,3)")]
    R += [
        direct_product(cyclic(3), symmetric(3), name="Z3xS3"),
        direct_product(cyclic(2), alternating(4), name="Z2xA4"),
        direct_product(symmetric(3), symmetric(3), name="S3xS3"),
    ]
    return R


@dataclass
class CorpusConfig:
    max_order: int = LATTICE_MAX_ORDER
    files: Sequence[str | os.PathLike] = field(default_factory=tuple)
    small_order_cap: int = MAX_ENUMERATION_ORDER
    include_small: bool = True
    include_families: bool = True


def default_corpus(
    max_order: int = LATTICE_MAX_ORDER,
    files: Iterable[str | os.PathLike] = (),
    config: CorpusConfig | None = None,
) -> list[GroupTable]:
    """Exhaustive small groups, the constructed families, then loaded groups.

    Built-in groups above ``max_order`` are left out; loaded groups are kept
    whatever their order so the caller can report them as skipped.
    """
    if config is None:
        config = CorpusConfig(max_order=max_order, files=tuple(files))
    out: list[GroupTable] = []
    if config.include_small:
        for n in range(1, min(config.small_order_cap, config.max_order) + 1):
            out.extend(enumerate_all_of_order(n, max_order=config.small_order_cap))
    if config.include_families:
        for recipe in family_recipes():
            G = build(recipe)
            if G.order <= config.max_order:
                out.append(G)
    for path in config.files:
        out.extend(load_groups(path))
    return out


def frobenius_recipes() -> list[GroupRecipe]:
    return [r for r in family_recipes() if r.frobenius]
