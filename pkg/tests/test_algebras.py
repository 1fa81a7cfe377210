"""Structure-constant algebras, identity checkers, nucleus, Grassmann, envelope."""

import json
import random

import pytest

from colorenv.algebras import (
    ColorAlgebra,
    EnvelopedAlgebra,
    GrassmannAlgebra,
    associator,
    bracket_chi,
    cayley_dickson_table,
    check_color_alternative,
    check_color_antisymmetry,
    check_color_jacobi,
    check_malcev_color,
    color_nucleus,
    envelope,
    grassmann_mul,
    identity_transfer_check,
    m7_algebra,
    minus_algebra,
    octonion_algebra,
    product,
    sedenion_algebra,
    span_subalgebra,
)
from colorenv.colors import AbelianGroup, Bicharacter, Color, chi_eval
from colorenv.errors import BasisMismatch, Truncated
from colorenv.fixtures import (
    abelian_algebra,
    m7_mutations,
    rw22_algebra,
    sl2_algebra,
    super2_algebra,
)
from colorenv.linalg import GradedBasis
from colorenv.scalars import CycScalar


def _mat2() -> ColorAlgebra:
    """2x2 matrix units over the trivial color: associative."""
    color = Color.trivial()
    names = [f"E{i}{j}" for i in (1, 2) for j in (1, 2)]
    basis = GradedBasis(color, [(n, (0,)) for n in names])
    prod = {}
    for i1 in (1, 2):
        for j1 in (1, 2):
            for i2 in (1, 2):
                for j2 in (1, 2):
                    if j1 == i2:
                        prod[(f"E{i1}{j1}", f"E{i2}{j2}")] = {f"E{i1}{j2}": 1}
    return ColorAlgebra.from_table(basis, prod)


def _jordan2() -> ColorAlgebra:
    """Commutative two-dimensional algebra: b0 * b1 = b1 * b0 = b0."""
    color = Color.trivial()
    basis = GradedBasis(color, [("b0", (0,)), ("b1", (0,))])
    return ColorAlgebra.from_table(
        basis, {("b0", "b1"): {"b0": 1}, ("b1", "b0"): {"b0": 1}}
    )


def _odd_square() -> ColorAlgebra:
    """Super color, u odd with u*u = a: antisymmetry holds since chi(u,u) = -1."""
    color = Color.super_color()
    basis = GradedBasis(color, [("a", (0,)), ("u", (1,))])
    return ColorAlgebra.from_table(basis, {("u", "u"): {"a": 1}})


def _nonalt3() -> ColorAlgebra:
    """Trivial color, x*x = y and x*y = z: not alternative at x."""
    color = Color.trivial()
    basis = GradedBasis(color, [("x", (0,)), ("y", (0,)), ("z", (0,))])
    return ColorAlgebra.from_table(basis, {("x", "x"): {"y": 1}, ("x", "y"): {"z": 1}})


def _unit(a, name):
    return a.basis.unit(a.basis.index(name))


# -- construction -----------------------------------------------------------


def test_grading_compatibility_enforced():
    color = Color.trivial((2,))
    basis = GradedBasis(color, [("a", (0,)), ("u", (1,))])
    bad = {(0, 0): basis.unit(1)}  # a*a would land in degree 1
    with pytest.raises(ValueError):
        ColorAlgebra(basis, bad)


def test_structure_constant_basis_mismatch():
    sl2 = sl2_algebra()
    other = GradedBasis(Color.trivial(), [("q", (0,))])
    with pytest.raises(BasisMismatch):
        ColorAlgebra(sl2.basis, {(0, 0): other.unit(0)})


# -- product / bracket / associator -----------------------------------------


def test_product_zero_absorbs():
    sl2 = sl2_algebra()
    e = _unit(sl2, "e")
    assert product(sl2, e, sl2.basis.zero()) == sl2.basis.zero()


def test_product_sl2_table_readback():
    sl2 = sl2_algebra()
    assert product(sl2, _unit(sl2, "e"), _unit(sl2, "f")) == _unit(sl2, "h")


def test_product_octonion_e1_e2():
    o = octonion_algebra()
    assert product(o, _unit(o, "e1"), _unit(o, "e2")) == _unit(o, "e3")


def test_product_basis_mismatch():
    sl2, m7 = sl2_algebra(), m7_algebra()
    with pytest.raises(BasisMismatch):
        product(sl2, _unit(sl2, "e"), _unit(m7, "e1"))


def test_bracket_commutative_vanishes():
    j = _jordan2()
    for n1 in ("b0", "b1"):
        for n2 in ("b0", "b1"):
            assert not bracket_chi(j, _unit(j, n1), _unit(j, n2))


def test_bracket_odd_square_doubles():
    a = _odd_square()
    u = _unit(a, "u")
    # chi(u, u) = -1, so [u,u] = u*u + u*u
    assert bracket_chi(a, u, u) == _unit(a, "a").scaled(CycScalar.from_rational(2, 2))


def test_bracket_matrix_commutator():
    m = _mat2()
    got = bracket_chi(m, _unit(m, "E12"), _unit(m, "E21"))
    assert got == _unit(m, "E11") - _unit(m, "E22")


def test_bracket_bilinear_expansion():
    sl2 = sl2_algebra()
    e, f, h = (_unit(sl2, n) for n in "efh")
    assert bracket_chi(sl2, e + h, f) == bracket_chi(sl2, e, f) + bracket_chi(sl2, h, f)


def test_associator_associative_zero():
    m = _mat2()
    b = m.basis
    for i in range(4):
        for j in range(4):
            for k in range(4):
                assert not associator(m, b.unit(i), b.unit(j), b.unit(k))


def test_associator_octonions_nonzero():
    o = octonion_algebra()
    got = associator(o, _unit(o, "e1"), _unit(o, "e2"), _unit(o, "e4"))
    assert got == _unit(o, "e7").scaled(CycScalar.from_rational(2, 2))


def test_associator_idempotent():
    m = _mat2()
    e11 = _unit(m, "E11")
    assert not associator(m, e11, e11, e11)


# -- identity checkers -------------------------------------------------------


def test_antisymmetry_sl2_passes():
    rep = check_color_antisymmetry(sl2_algebra())
    assert rep.passed and rep.tested == 9 and rep.violated == 0


def test_antisymmetry_symmetric_product_fails():
    rep = check_color_antisymmetry(_jordan2())
    assert not rep.passed
    assert rep.violations[0]["where"] == ("b0", "b1")


def test_antisymmetry_odd_square_passes():
    assert check_color_antisymmetry(_odd_square()).passed


def test_jacobi_sl2_passes():
    assert check_color_jacobi(sl2_algebra()).passed


def test_jacobi_m7_fails():
    rep = check_color_jacobi(m7_algebra())
    assert not rep.passed and rep.tested == 343


def test_jacobi_abelian_passes():
    assert check_color_jacobi(abelian_algebra(3)).passed


def test_malcev_lie_color_algebras_pass():
    for a in (sl2_algebra(), super2_algebra(), rw22_algebra()):
        rep = check_malcev_color(a)
        assert rep.passed


def test_malcev_m7_passes():
    rep = check_malcev_color(m7_algebra())
    assert rep.passed and rep.tested == 7 * 7 + 7**4


def test_malcev_mutated_m7_fails():
    muts = m7_mutations(2)
    assert not check_malcev_color(muts[0]).passed
    # the second mutation keeps antisymmetry but still breaks the identity
    assert check_color_antisymmetry(muts[1]).passed
    assert not check_malcev_color(muts[1]).passed


def test_alternative_octonions_pass():
    assert check_color_alternative(octonion_algebra()).passed


def test_alternative_associative_passes():
    assert check_color_alternative(_mat2()).passed


def test_alternative_sedenions_fail():
    rep = check_color_alternative(sedenion_algebra())
    assert not rep.passed
    assert rep.tested == 2 * 16**3
    assert len(rep.violations) == 10  # capped, with the true count preserved
    assert rep.violated > 10


def test_report_round_trip_deterministic():
    a, b = check_malcev_color(m7_mutations(1)[0]), check_malcev_color(m7_mutations(1)[0])
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)
    assert "FAIL" in a.to_text()


# -- nucleus and minus algebra ----------------------------------------------


def test_nucleus_associative_whole_space():
    m = _mat2()
    assert len(color_nucleus(m)) == 4


def test_nucleus_octonions_whole_space():
    assert len(color_nucleus(octonion_algebra())) == 8


def test_nucleus_nonalternative_is_smaller():
    a = _nonalt3()
    nuc = color_nucleus(a)
    assert len(nuc) == 2
    names = {a.basis.name(next(iter(v.coords))) for v in nuc}
    assert names == {"y", "z"}


def test_nucleus_vectors_satisfy_conditions():
    # independent re-check of the defining conditions, for two examples
    for a in (_nonalt3(), octonion_algebra()):
        c = a.color
        b = a.basis
        for x in color_nucleus(a):
            dx = x.degree()
            assert dx is not None
            for y in range(len(b)):
                for z in range(len(b)):
                    vy, vz = b.unit(y), b.unit(z)
                    mid = associator(a, vy, x, vz)
                    assert not (
                        associator(a, x, vy, vz)
                        + mid.scaled(chi_eval(c, dx, b.degree(y)))
                    )
                    assert not (
                        associator(a, vy, vz, x)
                        + mid.scaled(chi_eval(c, b.degree(z), dx))
                    )


def test_minus_associative_is_malcev():
    assert check_malcev_color(minus_algebra(_mat2())).passed


def test_minus_abelian_fixed():
    a = abelian_algebra(2)
    assert not minus_algebra(a).sc


def test_octonion_nucleus_bracket_span_is_malcev():
    o = octonion_algebra()
    sub = span_subalgebra(o, color_nucleus(o), use_bracket=True)
    assert sub.dim() == 8
    assert check_malcev_color(sub).passed


def test_span_subalgebra_rejects_dependent():
    sl2 = sl2_algebra()
    e = _unit(sl2, "e")
    with pytest.raises(ValueError):
        span_subalgebra(sl2, [e, e.scaled(CycScalar.from_rational(4, 3))])


def test_span_subalgebra_rejects_unclosed():
    sl2 = sl2_algebra()
    with pytest.raises(ValueError):
        span_subalgebra(sl2, [_unit(sl2, "e"), _unit(sl2, "f")], use_bracket=True)


# -- Grassmann ---------------------------------------------------------------


def test_grassmann_super_dimensions_binomial():
    g = GrassmannAlgebra(Color.super_color(), [((1,), i) for i in range(4)], 4)
    by_len = {}
    for m in g.monomials():
        by_len[len(m)] = by_len.get(len(m), 0) + 1
    assert [by_len.get(k, 0) for k in range(5)] == [1, 4, 6, 4, 1]


def test_grassmann_odd_square_zero():
    g = GrassmannAlgebra(Color.super_color(), [((1,), 0)], 4)
    assert grassmann_mul(g, (((1,), 0),), (((1,), 0),)) is None


def test_grassmann_swap_sign():
    g = GrassmannAlgebra(Color.super_color(), [((1,), 0), ((1,), 1)], 4)
    x1, x2 = ((1,), 0), ((1,), 1)
    s, m = grassmann_mul(g, (x1,), (x2,))
    assert s == CycScalar.one(2) and m == (x1, x2)
    s, m = grassmann_mul(g, (x2,), (x1,))
    assert s == -CycScalar.one(2) and m == (x1, x2)


def test_grassmann_trivial_color_merges_plainly():
    color = Color.trivial((3,))
    g = GrassmannAlgebra(color, [((1,), 0), ((2,), 0)], 5)
    a, b = ((1,), 0), ((2,), 0)
    s, m = grassmann_mul(g, (b, b), (a,))
    assert s == CycScalar.one(color.N) and m == (a, b, b)


def test_grassmann_truncation_signalled():
    g = GrassmannAlgebra(Color.trivial((2,)), [((1,), 0)], 2)
    x = ((1,), 0)
    with pytest.raises(Truncated):
        grassmann_mul(g, (x, x), (x,))


def test_grassmann_rejects_identity_degree_generator():
    with pytest.raises(ValueError):
        GrassmannAlgebra(Color.trivial((2,)), [((0,), 0)], 2)


def _random_monomial(rng, g, max_len):
    m = []
    for _ in range(rng.randrange(max_len + 1)):
        m.append(g.gens[rng.randrange(len(g.gens))])
    m.sort()
    # drop odd repeats so the monomial itself is legal
    out = []
    for gid in m:
        if out and out[-1] == gid and g.gen_parity(gid) == -1:
            continue
        out.append(gid)
    return tuple(out)


def _mul_chain(g, *mons):
    s = CycScalar.one(g.color.N)
    acc = ()
    for m in mons:
        r = grassmann_mul(g, acc, m)
        if r is None:
            return None
        s2, acc = r
        s = s * s2
    return s, acc


@pytest.mark.parametrize(
    "color,degs",
    [
        (Color.super_color(), [(1,)]),
        (
            Color(
                AbelianGroup((2, 2)),
                Bicharacter(AbelianGroup((2, 2)), [[0, 1], [1, 0]]),
            ),
            [(0, 1), (1, 0), (1, 1)],
        ),
    ],
)
def test_grassmann_commutativity_and_associativity(color, degs):
    g = GrassmannAlgebra(color, [(d, i) for d in degs for i in range(2)], 6)
    rng = random.Random(5)
    for _ in range(60):
        m1 = _random_monomial(rng, g, 2)
        m2 = _random_monomial(rng, g, 2)
        r12 = grassmann_mul(g, m1, m2)
        r21 = grassmann_mul(g, m2, m1)
        assert (r12 is None) == (r21 is None)
        if r12 is not None:
            s12, mm = r12
            s21, mm2 = r21
            assert mm == mm2
            d1 = g.monomial_degree(m1)
            d2 = g.monomial_degree(m2)
            # x y = chi(|y|, |x|) y x
            assert s12 == chi_eval(color, d2, d1) * s21
        m3 = _random_monomial(rng, g, 2)
        left = _mul_chain(g, m1, m2, m3)
        right = (
            None
            if (r := grassmann_mul(g, m2, m3)) is None
            else None
            if (q := grassmann_mul(g, m1, r[1])) is None
            else (r[0] * q[0], q[1])
        )
        assert left == right


# -- envelope ----------------------------------------------------------------


def test_envelope_m7_pair_count():
    env = envelope(m7_algebra(), 1, 2)
    assert len(env.pairs) == 28
    # no pair uses the empty monomial: every basis degree is non-identity
    assert all(m for m, _ in env.pairs)


def test_envelope_trivial_braiding_is_polynomial_bookkeeping():
    m7 = m7_algebra()
    env = envelope(m7, 1, 2)
    group = m7.color.group
    b = m7.basis
    for i in range(len(b)):
        for j in range(len(b)):
            mi = ((group.neg(b.degree(i)), 0),)
            mj = ((group.neg(b.degree(j)), 0),)
            got = env.product(env.element(mi, i), env.element(mj, j))
            prod = m7.sc.get((i, j))
            if prod is None:
                assert not got
                continue
            merged = tuple(sorted(mi + mj))
            want = env.basis.zero()
            for k, c in prod.coords.items():
                want = want + env.element(merged, k, c)
            assert got == want


def test_envelope_super_odd_pairs_exist():
    su = super2_algebra()
    env = envelope(su, 4, 4)
    u = su.basis.index("u")
    assert (((((1,), 0),), u)) in env.pairs
    assert ((), su.basis.index("a")) in env.pairs


def test_envelope_color_mismatch():
    gr = GrassmannAlgebra(Color.super_color(), [((1,), 0)], 4)
    with pytest.raises(ValueError):
        EnvelopedAlgebra(sl2_algebra(), gr)


# -- identity transfer -------------------------------------------------------


def test_transfer_sl2():
    for ident in ("malcev", "jacobi"):
        rep = identity_transfer_check(sl2_algebra(), ident, 4, 4)
        assert rep.passed and rep.params["agrees_with_direct"]


def test_transfer_super2_and_rw22_malcev():
    for a in (super2_algebra(), rw22_algebra()):
        rep = identity_transfer_check(a, "malcev", 4, 4)
        assert rep.passed and rep.params["agrees_with_direct"]


def test_transfer_m7_malcev_passes():
    rep = identity_transfer_check(m7_algebra(), "malcev", 4, 4)
    assert rep.passed and rep.params["direct_passed"] and rep.params["agrees_with_direct"]


def test_transfer_m7_jacobi_fails_both():
    rep = identity_transfer_check(m7_algebra(), "jacobi", 4, 4)
    assert not rep.passed
    assert not rep.params["direct_passed"]
    assert rep.params["agrees_with_direct"]


def test_transfer_octonions_alternative():
    rep = identity_transfer_check(octonion_algebra(), "alternative", 4, 4)
    assert rep.passed and rep.params["agrees_with_direct"]


def test_transfer_mutations_agree():
    for mu in m7_mutations(2):
        rep = identity_transfer_check(mu, "malcev", 4, 4)
        assert not rep.passed
        assert rep.params["agrees_with_direct"]


def test_transfer_rank_and_trunc_guards():
    with pytest.raises(ValueError):
        identity_transfer_check(sl2_algebra(), "malcev", 3, 4)
    with pytest.raises(Truncated):
        identity_transfer_check(sl2_algebra(), "malcev", 4, 3)


# -- Cayley-Dickson oracle ---------------------------------------------------


def test_cayley_dickson_quaternions():
    t = cayley_dickson_table(2)
    assert t[(1, 2)] == (3, 1)
    assert t[(2, 1)] == (3, -1)
    assert t[(1, 1)] == (0, -1)
    assert t[(0, 3)] == (3, 1)


def test_cayley_dickson_xor_indexing():
    t = cayley_dickson_table(3)
    for (i, j), (k, s) in t.items():
        assert k == i ^ j
        assert s in (1, -1)


def test_m7_anticommutes_on_units():
    m7 = m7_algebra()
    b = m7.basis
    for i in range(7):
        for j in range(7):
            lhs = product(m7, b.unit(i), b.unit(j))
            rhs = product(m7, b.unit(j), b.unit(i))
            assert lhs == -rhs
