from math import factorial

import pytest

from galaudit.cycletypes import (
    canonical_permutation,
    format_type,
    is_maximal_cyclic_type,
    is_rational_type,
    non_power_pairwise,
    parse_type,
    partitions,
    type_order,
    type_power,
    type_powers,
    type_sign,
    type_size,
)
from galaudit.groups import GroupDescriptor, generates_maximal_cyclic, materialize
from galaudit.perms import cycle_type, perm_order, perm_power, sign


def test_partition_counts():
    for n, count in [(1, 1), (5, 7), (8, 22), (10, 42)]:
        assert len(partitions(n)) == count


def test_sizes_sum_to_factorial():
    for n in range(1, 9):
        assert sum(type_size(t) for t in partitions(n)) == factorial(n)


def test_type_arithmetic_matches_permutations():
    # cycle-type power/order/sign agree with literal permutation arithmetic
    for n in range(2, 8):
        for t in partitions(n):
            rep = canonical_permutation(t)
            assert cycle_type(rep) == t
            assert perm_order(rep) == type_order(t)
            assert sign(rep) == type_sign(t)
            for k in range(1, type_order(t) + 1):
                assert cycle_type(perm_power(rep, k)) == type_power(t, k)


def test_type_size_matches_class_size():
    G = materialize(GroupDescriptor.symmetric(5))
    for C in G.conjugacy_classes():
        assert type_size(cycle_type(C.representative)) == C.size


def test_all_symmetric_types_rational():
    for n in range(1, 10):
        assert all(is_rational_type(t) for t in partitions(n))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_maximal_cyclic_oracle_matches_brute_force(self_n=None, n=None):
    n = n or self_n
    G = materialize(GroupDescriptor.symmetric(n))
    for C in G.conjugacy_classes():
        t = cycle_type(C.representative)
        assert is_maximal_cyclic_type(t) == generates_maximal_cyclic(
            G, C.representative
        ), (n, t)


def test_non_power_pairwise():
    assert non_power_pairwise([(6,), (4, 1, 1), (3, 2, 1)])
    # a transposition class is a power of the (3,2)-class in S_5
    assert not non_power_pairwise([(3, 2), (2, 1, 1, 1)])
    assert (2, 1, 1, 1) in type_powers((3, 2))


def test_format_parse():
    assert format_type((6, 1, 1)) == "[1^2 6^1]"
    assert format_type((3, 3, 2)) == "[2^1 3^2]"
    assert parse_type("[1^1 2^1 3^2]") == (3, 3, 2, 1)
    assert parse_type("[8^1]") == (8,)
