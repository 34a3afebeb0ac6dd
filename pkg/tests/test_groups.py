import pytest

from galaudit.config import DEFAULT_LIMITS
from galaudit.errors import InvalidChain, InvalidDescriptor, NotNormal, OrderTooLarge
from galaudit.groups import (
    GroupDescriptor,
    PermGroup,
    abelian_invariants,
    class_power,
    closure_of,
    conjugacy_classes,
    fiber_power,
    generates_maximal_cyclic,
    is_dihedral,
    is_isomorphic,
    is_normal,
    materialize,
    materialize_psl2,
    merge_abelian_chains,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)
from galaudit.perms import from_cycles, perm_order, perm_power, sign

from helpers import (
    heisenberg27,
    oracle_conjugacy_partition,
    oracle_count_gl_matrices,
    oracle_is_maximal_cyclic,
    oracle_normal_subgroups,
)

D = GroupDescriptor


def sub(G, gens):
    return tuple(sorted(closure_of(G.degree, gens, G.order() + 1)))


class TestMaterialize:
    @pytest.mark.parametrize(
        "desc,order",
        [
            (D.abelian([2]), 2),
            (D.abelian([2, 4, 8]), 64),
            (D.dihedral(1), 2),
            (D.dihedral(2), 4),
            (D.dihedral(15), 30),
            (D.symmetric(1), 1),
            (D.symmetric(5), 120),
            (D.alternating(4), 12),
            (D.alternating(6), 360),
            (D.gl(2, 4), 180),
            (D.product(D.abelian([3]), D.dihedral(4)), 24),
        ],
    )
    def test_orders(self, desc, order):
        assert materialize(desc).order() == order

    def test_gl23_order_against_matrix_count(self):
        # independent oracle: count invertible matrices over F_3 directly
        assert oracle_count_gl_matrices(2, 3) == 48
        assert materialize(D.gl(2, 3)).order() == 48

    def test_descriptor_validation(self):
        with pytest.raises(InvalidChain):
            D.abelian([4, 2])
        with pytest.raises(InvalidChain):
            D.abelian([1, 2])
        with pytest.raises(InvalidDescriptor):
            D.gl(2, 6)
        with pytest.raises(InvalidDescriptor):
            D.gl(1, 3)

    def test_enumeration_bound(self):
        with pytest.raises(OrderTooLarge):
            materialize(D.symmetric(9))

    def test_json_round_trip(self):
        for desc in [
            D.abelian([2, 6]),
            D.dihedral(7),
            D.gl(2, 5),
            D.product(D.symmetric(3), D.abelian([5])),
            D.perm(3, ["(1 2 3)"]),
        ]:
            assert D.from_json(desc.to_json()) == desc


class TestConjugacyClasses:
    def test_trivial(self):
        G = materialize(D.symmetric(1))
        assert [c.size for c in conjugacy_classes(G)] == [1]

    def test_s3_against_all_pairs_oracle(self):
        G = materialize(D.symmetric(3))
        ours = sorted(c.size for c in conjugacy_classes(G))
        oracle = sorted(len(c) for c in oracle_conjugacy_partition(G))
        assert ours == oracle == [1, 2, 3]

    def test_d4_count(self):
        G = materialize(D.dihedral(4))
        assert len(conjugacy_classes(G)) == 5
        oracle = oracle_conjugacy_partition(G)
        assert len(oracle) == 5

    def test_sizes_sum_to_order(self):
        for desc in [D.dihedral(6), D.symmetric(4), D.gl(2, 3), D.abelian([3, 9])]:
            G = materialize(desc)
            assert sum(c.size for c in conjugacy_classes(G)) == G.order()

    def test_deterministic_ordering(self):
        G = materialize(D.symmetric(4))
        classes = conjugacy_classes(G)
        keys = [(c.element_order, c.size, c.representative) for c in classes]
        assert keys == sorted(keys)


class TestClassPower:
    def test_identity_power(self):
        G = materialize(D.symmetric(4))
        for C in conjugacy_classes(G):
            assert class_power(C, 1, G) is G.class_of(C.representative)
            assert class_power(C, C.element_order, G).element_order == 1

    def test_four_cycle_squared(self):
        G = materialize(D.symmetric(4))
        four = next(c for c in conjugacy_classes(G) if c.element_order == 4)
        sq = class_power(four, 2, G)
        from galaudit.perms import cycle_type

        assert cycle_type(sq.representative) == (2, 2)

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_full_cycle_coprime_powers(self, n):
        G = materialize(
            D.symmetric(n), DEFAULT_LIMITS.with_enumeration(50000)
        )
        C = G.class_of(from_cycles(n, [tuple(range(n))]))
        from math import gcd

        for i in range(1, n):
            if gcd(i, n) == 1:
                assert class_power(C, i, G) is G.class_of(C.representative)

    def test_power_composition_law(self):
        for desc in [D.symmetric(4), D.dihedral(9), D.abelian([4, 4]), D.gl(2, 3)]:
            G = materialize(desc)
            for C in conjugacy_classes(G):
                for i in range(1, 13):
                    for j in range(1, 13):
                        lhs = class_power(class_power(C, i, G), j, G)
                        rhs = class_power(C, i * j, G)
                        assert lhs is rhs


class TestNormalSubgroups:
    def test_s4(self):
        G = materialize(D.symmetric(4))
        assert [len(N) for N in normal_subgroups(G)] == [1, 4, 12, 24]

    def test_a5(self):
        G = materialize(D.alternating(5))
        assert [len(N) for N in normal_subgroups(G)] == [1, 60]

    def test_abelian_all_subgroups(self):
        G = materialize(D.abelian([2, 4]))
        ours = set(normal_subgroups(G))
        oracle = set(oracle_normal_subgroups(G))
        assert ours == oracle
        assert len(ours) == 8  # subgroup count of Z/2 x Z/4

    @pytest.mark.parametrize(
        "desc",
        [
            D.symmetric(4),
            D.dihedral(15),
            D.dihedral(8),
            D.alternating(5),
            D.gl(2, 3),
            D.abelian([2, 2, 2]),
            D.abelian([24]),
            D.product(D.symmetric(3), D.symmetric(3)),
            D.abelian([5, 5]),
        ],
    )
    def test_against_subgroup_scan_oracle(self, desc):
        # spec-level invariant: the full subgroup scan finds nothing extra
        G = materialize(desc)
        assert G.order() <= 200
        assert set(normal_subgroups(G)) == set(oracle_normal_subgroups(G))

    def test_each_result_is_normal(self):
        G = materialize(D.dihedral(12))
        for N in normal_subgroups(G):
            assert is_normal(G, N)


class TestQuotient:
    def test_by_trivial(self):
        G = materialize(D.dihedral(5))
        Q = quotient(G, [G.identity()])
        assert Q.order() == 10 and is_isomorphic(Q, G)

    def test_s4_mod_v4(self):
        G = materialize(D.symmetric(4))
        V4 = next(N for N in normal_subgroups(G) if len(N) == 4)
        Q = quotient(G, V4)
        assert Q.order() == 6
        assert is_isomorphic(Q, materialize(D.symmetric(3)))

    def test_z8_mod_z2(self):
        G = materialize(D.abelian([8]))
        H = sub(G, [perm_power(G.generators[0], 4)])
        Q = quotient(G, H)
        assert abelian_invariants(Q) == (4,)

    def test_not_normal_raises(self):
        G = materialize(D.symmetric(3))
        H = sub(G, [from_cycles(3, [(0, 1)])])
        with pytest.raises(NotNormal):
            quotient(G, H)

    def test_order_multiplicative(self):
        G = materialize(D.dihedral(10))
        for N in normal_subgroups(G):
            assert quotient(G, N).order() * len(N) == G.order()


class TestIsomorphism:
    def test_reflexive(self):
        G = materialize(D.gl(2, 3))
        assert is_isomorphic(G, G)

    def test_z4_vs_klein(self):
        assert not is_isomorphic(
            materialize(D.abelian([4])), materialize(D.abelian([2, 2]))
        )

    def test_dihedral_vs_cyclic(self):
        assert not is_isomorphic(
            materialize(D.dihedral(3)), materialize(D.abelian([6]))
        )

    def test_different_representations(self):
        natural = materialize(D.symmetric(3))
        other = materialize(D.dihedral(3))
        assert is_isomorphic(natural, other)

    def test_psl25_is_a5(self):
        assert is_isomorphic(materialize_psl2(5), materialize(D.alternating(5)))

    def test_order_mismatch(self):
        assert not is_isomorphic(
            materialize(D.symmetric(3)), materialize(D.symmetric(4))
        )


class TestStructure:
    def test_abelian_solvable(self):
        G = materialize(D.abelian([12]))
        assert G.is_solvable()
        assert tuple(sorted(G.center())) == G.elements()
        assert G.derived_subgroup() == (G.identity(),)

    def test_s5_not_solvable(self):
        assert not materialize(D.symmetric(5)).is_solvable()

    def test_gl23_solvable(self):
        assert materialize(D.gl(2, 3)).is_solvable()

    def test_derived_of_s4(self):
        G = materialize(D.symmetric(4))
        derived = G.derived_subgroup()
        assert len(derived) == 12
        assert all(sign(g) == 1 for g in derived)

    def test_center_of_d4(self):
        G = materialize(D.dihedral(4))
        assert len(G.center()) == 2

    def test_center_of_gl25(self):
        G = materialize(D.gl(2, 5))
        assert len(G.center()) == 4

    def test_heisenberg(self):
        G = heisenberg27()
        assert G.order() == 27 and not G.is_abelian() and G.is_solvable()
        assert len(G.center()) == 3
        assert len(G.derived_subgroup()) == 3

    def test_abelian_invariants(self):
        for chain in [(2,), (2, 4), (3, 9), (2, 2, 2), (6, 12), (5, 5)]:
            G = materialize(D.abelian(chain))
            assert abelian_invariants(G) == chain

    def test_merge_chains(self):
        assert merge_abelian_chains((5,), (2,)) == (10,)
        assert merge_abelian_chains((2, 4), (3,)) == (2, 12)
        assert merge_abelian_chains((2,), (2,)) == (2, 2)

    def test_is_dihedral(self):
        assert is_dihedral(materialize(D.dihedral(2))) == 2
        assert is_dihedral(materialize(D.dihedral(7))) == 7
        assert is_dihedral(materialize(D.symmetric(3))) == 3
        assert is_dihedral(materialize(D.abelian([4]))) is None
        assert is_dihedral(materialize(D.abelian([2, 4]))) is None


class TestMaximalCyclic:
    def test_cyclic_generator(self):
        G = materialize(D.abelian([12]))
        assert generates_maximal_cyclic(G, G.generators[0])

    def test_transposition_in_s5(self):
        G = materialize(D.symmetric(5))
        t = from_cycles(5, [(3, 4)])
        # (4 5) is the cube of (1 2 3)(4 5)
        assert perm_power(from_cycles(5, [(0, 1, 2), (3, 4)]), 3) == t
        assert not generates_maximal_cyclic(G, t)

    def test_six_cycle_in_s6(self):
        G = materialize(D.symmetric(6))
        assert generates_maximal_cyclic(G, from_cycles(6, [tuple(range(6))]))

    @pytest.mark.parametrize(
        "desc",
        [D.symmetric(4), D.dihedral(10), D.abelian([2, 4]), D.gl(2, 3), D.alternating(5)],
    )
    def test_against_definitional_oracle(self, desc):
        G = materialize(desc)
        assert G.order() <= 500
        for C in conjugacy_classes(G):
            g = C.representative
            assert generates_maximal_cyclic(G, g) == oracle_is_maximal_cyclic(G, g)


class TestFiberPower:
    def test_exponent_one(self):
        G = materialize(D.symmetric(3))
        A3 = sub(G, [from_cycles(3, [(0, 1, 2)])])
        fp = fiber_power(G, A3, 1)
        assert fp.group.order() == 6
        assert is_isomorphic(fp.group, G)
        assert fp.big_kernel == fp.coordinate_kernels[0] or len(
            fp.coordinate_kernels[0]
        ) == 1

    def test_s3_a3_squared(self):
        G = materialize(D.symmetric(3))
        A3 = sub(G, [from_cycles(3, [(0, 1, 2)])])
        fp = fiber_power(G, A3, 2)
        assert fp.group.order() == 18
        assert all(fp.quotient_checks)

    def test_z4_z2_cubed(self):
        G = materialize(D.abelian([4]))
        H = sub(G, [perm_power(G.generators[0], 2)])
        fp = fiber_power(G, H, 3)
        assert fp.group.order() == 16
        Q = quotient(fp.group, fp.big_kernel)
        assert abelian_invariants(Q) == (2,)

    def test_invariants(self):
        G = materialize(D.symmetric(4))
        V4 = next(N for N in normal_subgroups(G) if len(N) == 4)
        fp = fiber_power(G, V4, 2)
        assert fp.group.order() == 24 * 4
        assert is_normal(fp.group, fp.big_kernel)
        for Ni in fp.coordinate_kernels:
            assert is_normal(fp.group, Ni)
            assert set(Ni) <= set(fp.big_kernel)

    def test_kernel_must_be_normal(self):
        G = materialize(D.symmetric(3))
        H = sub(G, [from_cycles(3, [(0, 1)])])
        with pytest.raises(NotNormal):
            fiber_power(G, H, 2)

    def test_too_large(self):
        G = materialize(D.symmetric(4))
        A4 = next(N for N in normal_subgroups(G) if len(N) == 12)
        # order would be 24 * 12**3 = 41472 > 10000
        with pytest.raises(OrderTooLarge):
            fiber_power(G, A4, 4)


class TestSubgroupAsGroup:
    def test_round_trip(self):
        G = materialize(D.symmetric(4))
        for N in normal_subgroups(G):
            H = subgroup_as_group(G, N)
            assert H.order() == len(N)
            assert H.element_set() == frozenset(N)
