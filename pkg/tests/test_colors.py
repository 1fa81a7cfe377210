"""Oracle and property tests for groups, bicharacters, parity, and permutation scalars."""

import random

import pytest

from colorenv.colors import (
    AbelianGroup,
    Bicharacter,
    Color,
    check_skew,
    chi_eval,
    enumerate_bicharacters,
    parity,
    perm_scalar,
)
from colorenv.errors import ElementGroupMismatch, GroupTooLarge, SizeMismatch
from colorenv.scalars import CycScalar, root_of_unity


def test_group_basics():
    g = AbelianGroup([2, 3])
    assert g.order == 6 and g.exponent == 6 and g.rank == 2
    assert g.element((5, 7)) == (1, 1)
    assert g.add((1, 2), (1, 2)) == (0, 1)
    assert g.neg((1, 2)) == (1, 1)
    assert len(list(g.elements())) == 6


def test_element_mismatch():
    g = AbelianGroup([2, 3])
    with pytest.raises(ElementGroupMismatch):
        g.element((1,))
    with pytest.raises(ElementGroupMismatch):
        g.add((1, 5), (0, 0))


def test_trivial_color_chi_is_one():
    c = Color.trivial([4])
    for a in c.group.elements():
        for b in c.group.elements():
            assert chi_eval(c, a, b) == 1


def test_super_color_chi():
    c = Color.super_color()
    assert chi_eval(c, (1,), (1,)) == -1
    assert chi_eval(c, (1,), (0,)) == 1
    assert parity(c, (1,)) == -1
    assert parity(c, (0,)) == 1


def test_z3xz3_example():
    # E scaled to zeta_6 exponents (2, -2): chi((1,0),(0,1)) = zeta_6^2 = zeta_3.
    g = AbelianGroup([3, 3])
    b = Bicharacter(g, [[0, 2], [-2, 0]], N=6)
    c = Color(g, b)
    assert chi_eval(c, (1, 0), (0, 1)) == root_of_unity(6, 2)
    # brute-force bimultiplicativity and skew-symmetry over all 81 pairs
    for a in g.elements():
        for bb in g.elements():
            assert chi_eval(c, a, bb) * chi_eval(c, bb, a) == 1
            for cc in g.elements():
                assert chi_eval(c, g.add(a, bb), cc) == chi_eval(c, a, cc) * chi_eval(c, bb, cc)


def test_z6_even_odd_parity():
    g = AbelianGroup([6])
    c = Color(g, Bicharacter(g, [[3]], N=6))
    assert parity(c, (3,)) == -1
    assert parity(c, (2,)) == 1
    for a in g.elements():
        for b in g.elements():
            want = -1 if (a[0] * b[0]) % 2 else 1
            assert chi_eval(c, a, b) == want


def test_check_skew():
    g2 = AbelianGroup([2])
    assert check_skew(Bicharacter(g2, [[0]]))
    assert check_skew(Bicharacter(g2, [[1]], N=2))
    g3 = AbelianGroup([3])
    assert not check_skew(Bicharacter(g3, [[2]], N=3))


def test_bichar_well_definedness_enforced():
    g = AbelianGroup([2])
    with pytest.raises(ValueError):
        Bicharacter(g, [[1]], N=4)  # 2*1 != 0 mod 4


def test_enumerate_skew_odd_cyclic():
    for n in (3, 5, 7):
        found = enumerate_bicharacters(AbelianGroup([n]), skew_only=True)
        assert len(found) == 1
        assert all(v == 0 for v in found[0].value_table())


def test_enumerate_skew_even_cyclic():
    for n in (2, 4, 6, 8):
        found = enumerate_bicharacters(AbelianGroup([n]), skew_only=True)
        assert len(found) == 2  # trivial and even-odd


def test_enumerate_total_count_equals_n():
    for n in range(1, 9):
        found = enumerate_bicharacters(AbelianGroup([n]), skew_only=False)
        assert len(found) == n


def test_enumerate_z4_total_is_4():
    assert len(enumerate_bicharacters(AbelianGroup([4]))) == 4


def test_enumerate_bound():
    with pytest.raises(GroupTooLarge):
        enumerate_bicharacters(AbelianGroup([65]))


def test_enumerated_skew_have_sign_parities():
    for moduli in ([4], [2, 2], [6], [3, 3]):
        g = AbelianGroup(moduli)
        for b in enumerate_bicharacters(g, skew_only=True):
            c = Color(g, b)
            for el in g.elements():
                assert parity(c, el) in (+1, -1)


def test_perm_scalar_identity():
    c = Color.super_color()
    assert perm_scalar(c, [(1,), (1,)], (0, 1)) == 1


def test_perm_scalar_super_transposition():
    c = Color.super_color()
    assert perm_scalar(c, [(1,), (1,)], (1, 0)) == -1
    assert perm_scalar(c, [(1,), (0,)], (1, 0)) == 1


def test_perm_scalar_super_three_cycle():
    c = Color.super_color()
    # two adjacent transpositions: (-1) * (-1) = +1
    assert perm_scalar(c, [(1,), (1,), (1,)], (1, 2, 0)) == 1


def test_perm_scalar_size_mismatch():
    with pytest.raises(SizeMismatch):
        perm_scalar(Color.super_color(), [(1,)], (0, 1))


def _apply_perm(degrees, sigma):
    # left action: slot i receives the factor from original position sigma^-1(i)
    n = len(sigma)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    return [degrees[inv[i]] for i in range(n)]


def _compose(sigma, tau):
    return tuple(sigma[tau[i]] for i in range(len(sigma)))


def _random_color(rng):
    g = AbelianGroup([3, 3])
    return Color(g, Bicharacter(g, [[0, 2], [-2, 0]], N=6))


def test_perm_scalar_decomposition_independence():
    # walk to sigma by a random sequence of adjacent swaps; scalar must match
    rng = random.Random(4242)
    c = _random_color(rng)
    for _ in range(60):
        n = rng.randint(2, 5)
        degrees = [c.group.element((rng.randint(0, 2), rng.randint(0, 2))) for _ in range(n)]
        walk_sigma = tuple(range(n))
        scalar_exp = 0
        order = list(range(n))  # order[i] = original position at slot i
        for _ in range(rng.randint(1, 12)):
            p = rng.randint(0, n - 2)
            a, b = order[p], order[p + 1]
            scalar_exp += c.chi.value_exponent(degrees[a], degrees[b])
            order[p], order[p + 1] = b, a
        sigma = [0] * n
        for slot, orig in enumerate(order):
            sigma[orig] = slot
        got = perm_scalar(c, degrees, tuple(sigma))
        assert got == root_of_unity(c.N, scalar_exp)


def test_perm_scalar_cocycle():
    rng = random.Random(11)
    c = _random_color(rng)
    for _ in range(60):
        n = rng.randint(2, 5)
        degrees = [c.group.element((rng.randint(0, 2), rng.randint(0, 2))) for _ in range(n)]
        sigma = list(range(n))
        tau = list(range(n))
        rng.shuffle(sigma)
        rng.shuffle(tau)
        sigma, tau = tuple(sigma), tuple(tau)
        lhs = perm_scalar(c, degrees, _compose(sigma, tau))
        rhs = perm_scalar(c, degrees, tau) * perm_scalar(c, _apply_perm(degrees, tau), sigma)
        assert lhs == rhs
