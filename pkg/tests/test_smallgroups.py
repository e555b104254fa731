import numpy as np
import pytest

from oracles import canonical_form, groups_by_extension
from tigroups.corpus import build, cyclic, dihedral, direct_product, generalized_quaternion
from tigroups.group import check_associativity
from tigroups.smallgroups import are_isomorphic, enumerate_all_of_order, find_isomorphism
from tigroups.structure import is_cyclic
from tigroups.subgroups import whole_group

# isomorphism class counts for orders 1..12, confirmed by the extension oracle
FROZEN_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]


@pytest.fixture(scope="module")
def enumerated():
    return {n: enumerate_all_of_order(n) for n in range(1, 13)}


@pytest.fixture(scope="module")
def oracle():
    return groups_by_extension(12)


def test_counts_frozen(enumerated):
    assert [len(enumerated[n]) for n in range(1, 13)] == FROZEN_COUNTS


def test_counts_match_oracle(enumerated, oracle):
    assert [len(oracle[n]) for n in range(1, 13)] == FROZEN_COUNTS
    for n in range(1, 13):
        ours = sorted(canonical_form(G.mul) for G in enumerated[n])
        theirs = sorted(canonical_form(T) for T in oracle[n])
        assert ours == theirs, n


def test_pairwise_non_isomorphic(enumerated):
    for n, groups in enumerated.items():
        for i, G in enumerate(groups):
            assert check_associativity(G)
            for H in groups[i + 1 :]:
                assert not are_isomorphic(G, H)


def test_names_and_cyclic_first(enumerated):
    for n, groups in enumerated.items():
        assert [G.name for G in groups] == [f"Ord{n}#{k}" for k in range(1, len(groups) + 1)]
        assert is_cyclic(whole_group(groups[0]))
        assert sum(is_cyclic(whole_group(G)) for G in groups) == 1


def test_known_groups_appear(enumerated):
    for recipe in (dihedral(4), generalized_quaternion(8), direct_product(cyclic(2), cyclic(4))):
        K = build(recipe)
        assert sum(are_isomorphic(K, G) for G in enumerated[8]) == 1


def test_isomorphism_map_is_homomorphism():
    A = build(dihedral(6))
    B = build(direct_product(cyclic(2), dihedral(3)))
    phi = np.array(find_isomorphism(A, B))
    assert np.array_equal(phi[A.mul], B.mul[phi[:, None], phi[None, :]])
    assert find_isomorphism(build(cyclic(12)), build(dihedral(6))) is None


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_all_of_order(13)
    with pytest.raises(ValueError):
        enumerate_all_of_order(0)
