import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ, QQ_I

from lctspin.errors import ConventionMismatch, DimensionMismatch
from lctspin.weyl import (
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    CommutationConvention,
    ExactScalar,
    OperatorPoly,
    WeylPoly,
    commutator,
    symmetric_split,
    symmetrize,
)

CONV2 = CommutationConvention.minus_i_eta((1, -1))


def letter(name: str, conv: CommutationConvention) -> WeylPoly:
    kind, mu = name[0], int(name[1:])
    return WeylPoly.x(mu, conv) if kind == "x" else WeylPoly.p(mu, conv)


words = st.lists(st.sampled_from(["x0", "x1", "p0", "p1"]), max_size=2)
polys = st.lists(st.tuples(st.integers(-3, 3), words), min_size=1, max_size=3)


def build(terms, conv=CONV2) -> WeylPoly:
    total = WeylPoly.zero(conv)
    for coef, word in terms:
        prod = WeylPoly.const(1, conv)
        for name in word:
            prod = prod * letter(name, conv)
        total = total + prod.scale(coef)
    return total


# ──────────────── scalars ──────────────── #


def test_sqrt2_arithmetic():
    assert SQRT2 * SQRT2 == 2
    assert INV_SQRT2 * SQRT2 == ONE
    assert ONE / SQRT2 == INV_SQRT2
    assert I * I == -1


def test_scalar_debug_strings():
    assert ExactScalar.of(0, 1).to_debug_string() == "i"
    assert ExactScalar.of(0, -1).to_debug_string() == "-i"
    assert ExactScalar.of(QQ(3, 2), 0, QQ(1, 2), 0).to_debug_string() == "(3/2 + 1/2√2)"
    assert ExactScalar().to_debug_string() == "0"


def test_coerce_rejects_non_gaussian_complex():
    with pytest.raises(ValueError):
        ExactScalar.coerce(0.5 + 0j)


# ──────────────── commutation ──────────────── #


@pytest.mark.parametrize("factory, sign", [(CommutationConvention.minus_i_eta, -1), (CommutationConvention.plus_i_eta, 1)])
def test_canonical_commutator(factory, sign):
    conv = factory((1, -1))
    for mu in range(2):
        for nu in range(2):
            comm = commutator(WeylPoly.p(mu, conv), WeylPoly.x(nu, conv))
            expected = sign * (1, -1)[mu] if mu == nu else 0
            assert comm == WeylPoly.const(ExactScalar.of(0, expected), conv)


def test_x_and_p_families_commute_among_themselves():
    for a, b in (("x0", "x1"), ("p0", "p1")):
        assert commutator(letter(a, CONV2), letter(b, CONV2)).is_zero()


def test_normal_order_of_p_x_squared():
    conv = CommutationConvention.minus_i_eta((1,))
    p, x = WeylPoly.p(0, conv), WeylPoly.x(0, conv)
    # p x² = x² p + 2c x with c = -i
    assert p * x * x == x * x * p + x.scale(ExactScalar.of(0, -2))


def test_mixing_conventions_raises():
    a = CommutationConvention.minus_i_eta((1,))
    b = CommutationConvention.plus_i_eta((1,))
    with pytest.raises(ConventionMismatch):
        WeylPoly.x(0, a) * WeylPoly.p(0, b)


@settings(deadline=None, max_examples=40)
@given(polys, polys, polys)
def test_product_is_associative(f, g, h):
    f, g, h = build(f), build(g), build(h)
    assert (f * g) * h == f * (g * h)


@settings(deadline=None, max_examples=40)
@given(polys, polys, polys)
def test_jacobi_identity(f, g, h):
    f, g, h = build(f), build(g), build(h)
    total = commutator(f, commutator(g, h)) + commutator(g, commutator(h, f)) + commutator(h, commutator(f, g))
    assert total.is_zero()


@settings(deadline=None, max_examples=40)
@given(polys, polys)
def test_commutator_lowers_degree(f, g):
    f, g = build(f), build(g)
    comm = commutator(f, g)
    assert comm.degree() <= max(f.degree() + g.degree() - 2, -1)


# ──────────────── symmetric ordering ──────────────── #


def test_symmetrize_xp():
    conv = CommutationConvention.minus_i_eta((1,))
    xp = WeylPoly.x(0, conv) * WeylPoly.p(0, conv)
    sym = symmetrize(xp)
    assert sym.homogeneous(2) == xp
    assert sym.constant_term() == ExactScalar(QQ_I(0, QQ(-1, 2)))


@settings(deadline=None, max_examples=30)
@given(polys)
def test_symmetric_split_reassembles(f):
    F = OperatorPoly.scalar(build(f))
    top, rest = symmetric_split(F, 2)
    assert top + rest == F
    assert top.degree() <= 2


# ──────────────── operator matrices ──────────────── #


def test_sigma3_squares_to_identity():
    conv = CommutationConvention.minus_i_eta((1,))
    s3 = OperatorPoly.from_constant(np.diag([1, -1]).astype(complex), conv)
    assert s3 @ s3 == OperatorPoly.identity(2, conv)


def test_kron_dimension_and_blocks():
    conv = CommutationConvention.minus_i_eta((1,))
    f = WeylPoly.x(0, conv)
    F = OperatorPoly.kron([[0, 1], [1, 0]], OperatorPoly.scalar(f))
    assert F.dim == 2
    assert F.entry(0, 1) == f
    assert F.entry(0, 0).is_zero()


def test_witness_format():
    conv = CommutationConvention.minus_i_eta((1,))
    f = WeylPoly.p(0, conv).scale(-I) + WeylPoly.const(2, conv)
    assert OperatorPoly.scalar(f).witness() == "[0,0]: -i·p0 + 2"
    assert OperatorPoly.zeros(3, conv).witness() is None


def test_dimension_mismatch():
    conv = CommutationConvention.minus_i_eta((1,))
    with pytest.raises(DimensionMismatch):
        OperatorPoly.identity(2, conv) + OperatorPoly.identity(3, conv)
    with pytest.raises(DimensionMismatch):
        OperatorPoly.from_constant([[1, 0]], conv)


def test_one_dimensional_rewrite_rule():
    conv = CommutationConvention.minus_i_eta((1,))
    x, p = WeylPoly.x(0, conv), WeylPoly.p(0, conv)
    assert p * x == x * p + WeylPoly.const(ExactScalar.of(0, -1), conv)
    assert commutator(x, p) == WeylPoly.const(I, conv)
    assert commutator(p * p, x) == p.scale(ExactScalar.of(0, -2))
