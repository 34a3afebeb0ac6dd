import pytest

from galaudit.perms import (
    compose,
    conjugate,
    cycle_type,
    cycles,
    format_cycles,
    from_cycles,
    identity,
    inverse,
    parse_perm,
    perm_order,
    perm_power,
    sign,
    to_images,
)


def test_compose_convention():
    # compose(p, q) applies q first
    p = (1, 0, 2)
    q = (0, 2, 1)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))


def test_inverse():
    p = from_cycles(5, [(0, 1, 2), (3, 4)])
    assert compose(p, inverse(p)) == identity(5)
    assert compose(inverse(p), p) == identity(5)


def test_conjugate():
    p = from_cycles(4, [(0, 1)])
    g = from_cycles(4, [(0, 2)])
    assert conjugate(p, g) == compose(compose(g, p), inverse(g))


def test_power_and_order():
    p = from_cycles(6, [(0, 1, 2), (3, 4)])
    assert perm_order(p) == 6
    assert perm_power(p, 6) == identity(6)
    assert perm_power(p, 3) == from_cycles(6, [(3, 4)])
    assert perm_power(p, -1) == inverse(p)
    acc = identity(6)
    for k in range(1, 13):
        acc = compose(acc, p)
        assert perm_power(p, k) == acc


def test_cycle_type_and_sign():
    p = from_cycles(6, [(0, 1, 2, 3)])
    assert cycle_type(p) == (4, 1, 1)
    assert sign(p) == -1
    assert sign(identity(4)) == 1
    assert sign(from_cycles(4, [(0, 1), (2, 3)])) == 1


def test_cycles_canonical():
    p = from_cycles(6, [(3, 4), (0, 1, 2)])
    assert cycles(p) == [(0, 1, 2), (3, 4)]


def test_parse_images_and_cycles():
    assert parse_perm([2, 1, 4, 3], 4) == (1, 0, 3, 2)
    assert parse_perm("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_perm("()", 3) == identity(3)
    with pytest.raises(ValueError):
        parse_perm([1, 1, 2], 3)
    with pytest.raises(ValueError):
        parse_perm("(1 5)", 4)


def test_format_round_trip():
    p = from_cycles(5, [(0, 3), (1, 2, 4)])
    assert parse_perm(format_cycles(p), 5) == p
    assert to_images(p) == [4, 3, 2, 1, 5]
