import io

import numpy as np
import pytest

from conftest import lattice_of
from tigroups.corpus import (
    build,
    build_with_generators,
    cyclic,
    cyclic_by_cyclic,
    default_corpus,
    dihedral,
    direct_product,
    elementary_abelian,
    frobenius_recipes,
    generalized_quaternion,
    linear_action,
    load_groups,
    loads_groups,
    semidirect_product,
    symmetric,
    alternating,
)
from tigroups.errors import GroupParseError, GroupTooLarge, InvalidAction
from tigroups.structure import frobenius_decomposition, is_abelian, is_cyclic, q8_odd_cyclic_decomposition, involution_count
from tigroups.subgroups import whole_group


def test_build_examples():
    assert build(cyclic(7)).order == 7
    G = build(cyclic_by_cyclic(7, 3, 2))
    assert G.order == 21 and not is_abelian(whole_group(G))
    assert frobenius_decomposition(G, lattice_of(G)) is not None
    H = build(direct_product(generalized_quaternion(8), cyclic(3)))
    dec = q8_odd_cyclic_decomposition(whole_group(H), lattice_of(H))
    assert H.order == 24 and (dec.q8_part.order, dec.odd_cyclic_part.order) == (8, 3)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_family_properties(n):
    C = build(cyclic(n))
    assert is_cyclic(whole_group(C)) and is_abelian(whole_group(C))
    assert build(dihedral(max(n, 2))).order == 2 * max(n, 2)
    Q = build(generalized_quaternion(4 * max(n, 2)))
    assert involution_count(whole_group(Q)) == 1


def test_symmetric_and_alternating():
    assert build(symmetric(4)).order == 24
    assert build(alternating(5)).order == 60
    assert build(symmetric(1)).order == 1


def test_elementary_abelian():
    G, gens = build_with_generators(elementary_abelian(3, 2))
    assert G.order == 9 and gens == [1, 3]
    assert (G.element_orders[1:] == 3).all()


def test_trivial_action_equals_direct_product():
    for N, M in ((cyclic(5), cyclic(4)), (elementary_abelian(2, 2), symmetric(3)), (generalized_quaternion(8), cyclic(3))):
        _, gn = build_with_generators(N)
        _, gm = build_with_generators(M)
        semi = build(semidirect_product(N, M, [list(gn)] * len(gm)))
        direct = build(direct_product(N, M))
        assert np.array_equal(semi.mul, direct.mul)


def test_invalid_actions():
    with pytest.raises(InvalidAction, match="homomorphism"):
        # x -> x^2 has order 4 mod 5, not a homomorphism image of Z3
        build(cyclic_by_cyclic(5, 3, 2))
    with pytest.raises(InvalidAction, match="automorphism"):
        build(cyclic_by_cyclic(6, 2, 2))
    with pytest.raises(InvalidAction):
        build(semidirect_product(elementary_abelian(2, 2), cyclic(3), [[2, 2]]))
    with pytest.raises(InvalidAction, match="generator images"):
        build(semidirect_product(elementary_abelian(2, 2), cyclic(3), [[2]]))
    with pytest.raises(InvalidAction):
        # a singular matrix is not an automorphism
        build(linear_action(3, [[[1, 1], [1, 1]]], "bad"))


def test_order_cap_on_build():
    with pytest.raises(GroupTooLarge):
        build(cyclic(3000))
    with pytest.raises(GroupTooLarge):
        build(direct_product(cyclic(50), cyclic(50)))


def test_frobenius_recipes_redetected():
    recipes = frobenius_recipes()
    assert len(recipes) >= 20
    for r in recipes:
        G = build(r)
        L = lattice_of(G)
        F = frobenius_decomposition(G, L)
        assert F is not None, r.name
        assert (F.kernel.order - 1) % F.complement.order == 0


def test_load_groups_examples():
    (S3,) = loads_groups("S3; 3; (0 1 2); (0 1)")
    assert S3.order == 6 and S3.name == "S3"
    (C1,) = loads_groups("C1; 1;")
    assert C1.order == 1
    text = "# comment\n\nS3; 3; (0 1 2); (0 1)   # trailing\nZ4; 4; (0 1 2 3)\n"
    assert [G.order for G in load_groups(io.StringIO(text))] == [6, 4]


@pytest.mark.parametrize(
    "text, line",
    [
        ("S3; 3; (0 1 2); (0 1", 1),
        ("ok; 2; (0 1)\nbad; x; (0 1)", 2),
        ("\n\nnoseparator", 3),
        ("big; 4; (0 5)", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GroupParseError) as exc:
        loads_groups(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_order_cap():
    with pytest.raises(GroupParseError, match="too large"):
        loads_groups("S7; 7; (0 1 2 3 4 5 6); (0 1)")


def test_load_from_path(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("A4; 4; (0 1 2); (0 1)(2 3)\n", encoding="utf-8")
    assert [G.order for G in load_groups(p)] == [12]
    assert [G.order for G in load_groups(str(p))] == [12]


def test_default_corpus(corpus):
    assert len(corpus) >= 60
    names = [G.name for G in corpus]
    assert len(names) == len(set(names))
    assert names.count("S3") == 1
    assert all(G.order <= 512 for G in corpus)
    for required in ("S4", "A4", "A5", "Q8", "Q16", "Q32", "Z5:Z4", "Z7:Z3", "Z2^2:Z3", "D6"):
        assert required in names
    assert {f"Z{q}:Z2" for q in (3, 5, 7, 11)} <= set(names)
    assert {f"Q8xZ{m}" for m in (3, 5, 7, 9)} <= set(names)
    assert {f"D{n}" for n in range(3, 13)} <= set(names)
    assert sum(1 for n in names if n.startswith("Ord")) == 24


def test_default_corpus_filter_and_files(tmp_path):
    small = default_corpus(max_order=6)
    assert small and all(G.order <= 6 for G in small)
    p = tmp_path / "extra.txt"
    p.write_text("Extra; 5; (0 1 2 3 4); (0 1)\n")
    extra = default_corpus(max_order=6, files=[p])
    assert extra[-1].name == "Extra" and extra[-1].order == 120


def test_corpus_is_deterministic():
    a = default_corpus(max_order=30)
    b = default_corpus(max_order=30)
    assert [G.name for G in a] == [G.name for G in b]
    assert all(np.array_equal(x.mul, y.mul) for x, y in zip(a, b))
