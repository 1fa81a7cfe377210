"""Tests for graded bases, vectors, maps, braiding, and exact row reduction."""

import random
from fractions import Fraction

import pytest

from colorenv.colors import AbelianGroup, Bicharacter, Color
from colorenv.errors import BasisMismatch, ColorMismatch, DimensionMismatch
from colorenv.linalg import (
    GradedBasis,
    GradedMap,
    GradedVector,
    RowSpace,
    braid,
    kernel_basis,
    rref_insert,
    solve_membership,
    tensor_basis,
)
from colorenv.scalars import CycScalar, root_of_unity


def _super():
    return Color.super_color()


def _z3_color():
    # Z_3 x Z_3 with the symplectic exponent matrix: chi((1,0),(0,1)) = zeta_3
    g = AbelianGroup([3, 3])
    return Color(g, Bicharacter(g, [[0, 2], [-2, 0]], N=6))


def test_basis_unique_names():
    c = _super()
    with pytest.raises(AssertionError):
        GradedBasis(c, [("x", (0,)), ("x", (1,))])


def test_vector_arithmetic_drops_zeros():
    c = _super()
    b = GradedBasis(c, [("x", (0,)), ("y", (1,))])
    v = b.unit(0) + b.unit(1)
    w = v - b.unit(1)
    assert w.coords == {0: c.one()}
    assert not (w - b.unit(0))


def test_vector_basis_mismatch():
    c = _super()
    b1 = GradedBasis(c, [("x", (0,))])
    b2 = GradedBasis(c, [("y", (0,))])
    with pytest.raises(BasisMismatch):
        b1.unit(0) + b2.unit(0)


def test_tensor_basis_dims_and_degrees():
    c = _z3_color()
    a = GradedBasis(c, [("a0", (0, 0)), ("a1", (1, 0))])
    b = GradedBasis(c, [("b0", (0, 0)), ("b1", (1, 0)), ("b2", (2, 0))])
    t = tensor_basis(a, b)
    assert len(t) == 6
    assert t.degree(t.index("a1(x)b2")) == (0, 0)  # 1 + 2 = 0 in Z_3


def test_tensor_color_mismatch():
    a = GradedBasis(_super(), [("x", (1,))])
    b = GradedBasis(_z3_color(), [("y", (1, 0))])
    with pytest.raises(ColorMismatch):
        tensor_basis(a, b)


def test_super_tensor_odd_odd_is_even():
    c = _super()
    a = GradedBasis(c, [("u", (1,))])
    t = tensor_basis(a, a)
    assert t.degree(0) == (0,)


def test_braid_trivial_color_transposes():
    c = Color.trivial([1])
    a = GradedBasis(c, [("a1", (0,)), ("a2", (0,))])
    b = GradedBasis(c, [("b1", (0,))])
    m = braid(a, b)
    src = tensor_basis(a, b)
    tgt = tensor_basis(b, a)
    img = m.apply(src.unit(src.index("a2(x)b1")))
    assert img == tgt.unit(tgt.index("b1(x)a2"))


def test_braid_super_odd_odd_sign():
    c = _super()
    a = GradedBasis(c, [("u", (1,))])
    b = GradedBasis(c, [("v", (1,))])
    m = braid(a, b)
    src = tensor_basis(a, b)
    tgt = tensor_basis(b, a)
    assert m.apply(src.unit(0)) == tgt.unit(0).scaled(c.scalar(-1))


def test_braid_symmetry_round_trip():
    c = _z3_color()
    rng = random.Random(5)
    a = GradedBasis(c, [("a%d" % i, (rng.randint(0, 2), rng.randint(0, 2))) for i in range(3)])
    b = GradedBasis(c, [("b%d" % i, (rng.randint(0, 2), rng.randint(0, 2))) for i in range(3)])
    round_trip = braid(b, a).compose(braid(a, b))
    src = tensor_basis(a, b)
    for i in range(len(src)):
        assert round_trip.apply(src.unit(i)) == src.unit(i)


def test_braid_hexagon_compatibility():
    # braid of (A(x)B) with C equals the composite of factor braids
    c = _z3_color()
    rng = random.Random(17)
    degs = [(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(3)]
    chi = lambda x, y: c.chi.chi(x, y)
    for da in degs:
        for db in degs:
            for dc in degs:
                lhs = chi(c.group.add(da, db), dc)
                rhs = chi(da, dc) * chi(db, dc)
                assert lhs == rhs


def test_graded_map_degree_violation_is_hard_error():
    c = _super()
    b = GradedBasis(c, [("x", (0,)), ("u", (1,))])
    with pytest.raises(ValueError):
        GradedMap(b, b, [b.unit(1), b.unit(1)])


def test_rref_insert_duplicate():
    rs = RowSpace(3, 1)
    one = CycScalar.one(1)
    zero = CycScalar.zero(1)
    rs, r1 = rref_insert(rs, [one, zero, zero])
    rs, r2 = rref_insert(rs, [one, zero, zero])
    assert any(r1) and not any(r2)
    assert rs.rank == 1


def test_rref_insert_rank_two():
    rs = RowSpace(3, 1)
    one = CycScalar.one(1)
    zero = CycScalar.zero(1)
    rref_insert(rs, [one, one, zero])
    rref_insert(rs, [zero, one, zero])
    assert rs.rank == 2
    # RREF: pivot rows are e1 and e2
    assert rs.rows[0] == [one, zero, zero]


def test_rref_rank_bound_random():
    rng = random.Random(23)
    for _ in range(10):
        rs = RowSpace(3, 3)
        for _ in range(4):
            row = [
                CycScalar(3, [Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))])
                for _ in range(3)
            ]
            rs.insert(row)
        assert rs.rank <= 3


def test_rref_deterministic_under_insertion_order():
    rng = random.Random(31)
    rows = []
    for _ in range(5):
        rows.append([
            CycScalar(4, [Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))])
            for _ in range(4)
        ])
    reference = None
    for _ in range(6):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        rs = RowSpace(4, 4)
        for r in shuffled:
            rs.insert(r)
        snapshot = tuple(tuple(row) for row in rs.rows)
        if reference is None:
            reference = snapshot
        assert snapshot == reference


def test_solve_membership_exact_reconstruction():
    rs = RowSpace(4, 1)
    one = CycScalar.one(1)
    zero = CycScalar.zero(1)
    two = CycScalar.from_rational(1, 2)
    rs.insert([one, two, zero, zero])
    rs.insert([zero, zero, one, one])
    v = [two, two * two, two, two]
    coords = solve_membership(rs, v)
    assert coords is not None
    recon = [zero] * 4
    for c, row in zip(coords, rs.rows):
        for k in range(4):
            recon[k] = recon[k] + c * row[k]
    assert recon == v


def test_solve_membership_zero_vector():
    rs = RowSpace(2, 1)
    rs.insert([CycScalar.one(1), CycScalar.zero(1)])
    coords = solve_membership(rs, [CycScalar.zero(1)] * 2)
    assert coords is not None and not any(coords)


def test_solve_membership_outside_span():
    rs = RowSpace(2, 1)
    rs.insert([CycScalar.one(1), CycScalar.zero(1)])
    assert solve_membership(rs, [CycScalar.zero(1), CycScalar.one(1)]) is None


def test_solve_membership_matches_dense_solve_random():
    rng = random.Random(77)
    one = CycScalar.one(1)
    for _ in range(15):
        dim = 4
        rows = []
        for _ in range(2):
            rows.append([CycScalar.from_rational(1, rng.randint(-3, 3)) for _ in range(dim)])
        rs = RowSpace(dim, 1)
        for r in rows:
            rs.insert(r)
        # random combination of the original rows must be a member
        c1, c2 = rng.randint(-3, 3), rng.randint(-3, 3)
        v = [rows[0][k] * c1 + rows[1][k] * c2 for k in range(dim)]
        assert solve_membership(rs, v) is not None


def test_kernel_basis_simple():
    # x + y = 0 in Q^2: kernel is span{(-1, 1)} after normalization convention
    one = CycScalar.one(1)
    rows = [[one, one]]
    ker = kernel_basis(rows, 2, 1)
    assert len(ker) == 1
    v = ker[0]
    assert v[0] + v[1] == CycScalar.zero(1)


def test_dimension_mismatch():
    rs = RowSpace(3, 1)
    with pytest.raises(DimensionMismatch):
        rs.insert([CycScalar.one(1)] * 2)
