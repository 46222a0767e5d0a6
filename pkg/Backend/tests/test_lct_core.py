import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from lctspin.config import Signature
from lctspin.errors import ConstraintViolation, DimensionMismatch
from lctspin.lct_core import (
    OrthoGenerator,
    add_params,
    group_element,
    lie_membership_report,
    ortho_defect,
    ortho_generator,
    random_params,
    scale_params,
    sl_generator,
    sl_membership_defect,
    special_orthogonal_element,
    symplectic_defect,
    unit_direction,
    validate_params,
    zero_params,
)
from lctspin.utils.exact import diag
from lctspin.utils.sampling import make_rng

SIGS = [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1), Signature(plus=2, minus=1)]


def test_trace_lambda_violation_message(e1):
    with pytest.raises(ConstraintViolation) as err:
        validate_params([[0]], [[0]], [[0]], [[5]], e1)
    assert str(err.value) == "trace(lambda) != 0 (witness 5)"


def test_theta_must_be_eta_symmetric(e2):
    with pytest.raises(ConstraintViolation) as err:
        validate_params([[0, 1], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], e2)
    assert err.value.constraint == "theta^T = eta theta eta"


@pytest.mark.parametrize("a, valid", [(-1, True), (1, False), (0, False)])
def test_theta_under_lorentzian_metric(lorentz2, a, valid):
    zero = [[0, 0], [0, 0]]
    theta = [[0, 1], [a, 0]]
    if valid:
        assert validate_params(theta, zero, zero, zero, lorentz2).theta.to_dok() == {
            (0, 1): QQ(1),
            (1, 0): QQ(-1),
        }
    else:
        with pytest.raises(ConstraintViolation):
            validate_params(theta, zero, zero, zero, lorentz2)


def test_lambda_must_be_eta_antisymmetric(lorentz2):
    zero = [[0, 0], [0, 0]]
    # antisymmetric in the Euclidean sense, which is not eta-antisymmetric for eta = (1, -1)
    with pytest.raises(ConstraintViolation) as err:
        validate_params(zero, zero, zero, [[0, 1], [-1, 0]], lorentz2)
    assert err.value.constraint == "lambda^T = -eta lambda eta"


def test_shape_mismatch(e2):
    with pytest.raises(DimensionMismatch):
        validate_params([[0]], [[0]], [[0]], [[0]], e2)


def test_theta_quarter_gives_a_rotation(e1):
    params = validate_params([["1/4"]], [[0]], [[0]], [[0]], e1)
    g = group_element(params).mat
    c, s = math.cos(0.25), math.sin(0.25)
    assert np.allclose(g, [[c, -s], [s, c]], atol=1e-14)


def test_zero_params_give_identities(e2):
    params = zero_params(e2)
    assert params.is_zero()
    assert np.allclose(group_element(params).mat, np.eye(4))
    o = special_orthogonal_element(ortho_generator(params))
    assert np.allclose(o.mat, np.eye(8))
    assert o.det == pytest.approx(1.0)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1), st.sampled_from(SIGS))
def test_exact_lie_memberships(seed, sig):
    params = random_params(make_rng(seed), sig)
    assert sl_membership_defect(params) == 0
    assert ortho_defect(ortho_generator(params)) == 0


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 2**32 - 1), st.sampled_from(SIGS))
def test_group_elements(seed, sig):
    params = random_params(make_rng(seed), sig)
    assert symplectic_defect(group_element(params), sig) < 1e-10
    o = special_orthogonal_element(ortho_generator(params))
    assert o.group_residual < 1e-10
    assert abs(o.det - 1.0) < 1e-8


def test_random_params_respect_entry_range(rng, e2):
    params = random_params(rng, e2)
    for kind in ("theta", "phi", "mu", "lambda"):
        for v in params.part(kind).to_dok().values():
            assert -1 <= v <= 1
            assert (v * 16).denominator == 1


def test_no_lambda_at_n1(rng, e1):
    assert random_params(rng, e1).lam.is_zero_matrix
    with pytest.raises(DimensionMismatch):
        unit_direction("lambda", e1)


def test_lambda_direction(lorentz2):
    lam = unit_direction("lambda", lorentz2).lam.to_dok()
    assert lam == {(0, 1): QQ(1), (1, 0): QQ(1)}


def test_parameter_arithmetic(rng, e2, e1):
    a = random_params(rng, e2)
    assert scale_params(a, 0).is_zero()
    assert add_params(a, scale_params(a, -1)).is_zero()
    with pytest.raises(DimensionMismatch):
        add_params(a, zero_params(e1))


def test_inverse_and_homomorphism(e1):
    d = unit_direction("theta", e1)
    g1 = group_element(scale_params(d, QQ(3, 8))).mat
    g2 = group_element(scale_params(d, QQ(-5, 8))).mat
    g12 = group_element(add_params(scale_params(d, QQ(3, 8)), scale_params(d, QQ(-5, 8)))).mat
    assert np.max(np.abs(g1 @ g2 - g12)) < 1e-12


def test_lie_membership_suite(rng):
    report = lie_membership_report(12, [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)], rng)
    assert report.passed
    assert report.suite == "lie-membership"


def test_generator_blocks(e1):
    zero = [[0]]
    a = sl_generator(validate_params(zero, zero, [["3/8"]], zero, e1))
    assert a.to_dok() == {(0, 0): QQ(3, 8), (1, 1): QQ(-3, 8)}
    x = ortho_generator(unit_direction("theta", e1)).mat.to_dok()
    assert x == {(0, 1): QQ(-1), (1, 0): QQ(1), (2, 3): QQ(1), (3, 2): QQ(-1)}


def test_defects_detect_non_members(e1):
    assert symplectic_defect(np.diag([2.0, 2.0]), e1) == 3.0
    assert ortho_defect(OrthoGenerator(mat=diag([1, 1, 1, 1]), sig=e1)) == 2
