import math

import numpy as np
import pytest
from sympy import QQ, QQ_I

from lctspin.clifford import label_lct_generators
from lctspin.config import Signature
from lctspin.errors import AmbiguousConvention, DimensionMismatch, SizeLimit
from lctspin.lct_core import random_params, scale_params, unit_direction, validate_params, zero_params
from lctspin.spin_rep import (
    SpinConvention,
    apply_spinor,
    bivector_coordinates,
    bundle_export,
    composition_sign,
    convention_probe,
    double_cover_report,
    first_order_cover_defect,
    first_order_report,
    first_order_scaling,
    lambda_factor_oracle,
    resolve_spin_convention,
    rho,
    spin_generator,
)

SIGS = [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)]


def test_resolved_convention(e1):
    conv = resolve_spin_convention(e1)
    assert conv == SpinConvention(sign=1, mu_variant="difference", lambda_factor="1/4")
    assert conv.adjoint_direction == "S P S^-1"
    assert conv.factor() == QQ(1, 4)


def test_probe_has_a_single_consistent_candidate(e1):
    probe = convention_probe(1, e1)
    assert len(probe.candidates) == 4
    assert [c["tag"] for c in probe.candidates if c["passed"]] == ["sign=+1,mu=difference"]


def test_theta_only_draws_leave_the_mu_form_open(e1):
    with pytest.raises(AmbiguousConvention) as err:
        convention_probe(1, e1, params=[scale_params(unit_direction("theta", e1), QQ(1, 3))])
    assert "sign=+1,mu=difference" in str(err.value)
    assert "sign=+1,mu=sum" in str(err.value)


@pytest.mark.parametrize("sig", [Signature.euclidean(1), Signature.euclidean(2)])
def test_spin_convention_does_not_depend_on_the_seed(sig):
    assert resolve_spin_convention(sig, 0) == resolve_spin_convention(sig, 11)
    passing = [
        [c["tag"] for c in convention_probe(sig.n, sig, seed=seed).candidates if c["passed"]] for seed in (1, 2024)
    ]
    assert passing[0] == passing[1] == ["sign=+1,mu=difference"]


def test_spin_resolution_respects_the_generator_cap():
    sig = Signature.euclidean(4)
    with pytest.raises(SizeLimit):
        convention_probe(4, sig)
    with pytest.raises(SizeLimit):
        resolve_spin_convention(sig)


def test_lambda_factor_oracle(e2):
    outcome = lambda_factor_oracle(e2, 1, "difference")
    assert outcome.winner == "1/4"
    printed = next(c for c in outcome.candidates if c["printed"])
    assert printed["tag"] == "1/2" and not printed["passed"]


def test_lambda_factor_needs_two_dimensions(e1):
    with pytest.raises(DimensionMismatch):
        lambda_factor_oracle(e1, 1, "difference")


@pytest.mark.parametrize("sig", SIGS)
def test_first_order_cover_is_exact(rng, sig):
    lg = label_lct_generators(sig.n, sig)
    conv = resolve_spin_convention(sig)
    for _ in range(4):
        assert first_order_cover_defect(random_params(rng, sig), lg, conv) == 0


def test_lambda_direction_cover(lorentz2):
    lg = label_lct_generators(2, lorentz2)
    assert first_order_cover_defect(unit_direction("lambda", lorentz2), lg) == 0


def test_wrong_sign_breaks_the_cover(e1):
    lg = label_lct_generators(1, e1)
    flipped = SpinConvention(sign=-1, mu_variant="difference")
    assert first_order_cover_defect(unit_direction("theta", e1), lg, flipped) != 0


def test_theta_direction_bivectors(e1):
    lg = label_lct_generators(1, e1)
    coords, exact = bivector_coordinates(spin_generator(unit_direction("theta", e1), lg), lg)
    assert exact
    assert coords == {"a+^0 b+^0": QQ_I(QQ(1, 2), 0), "b-^0 a-^0": QQ_I(QQ(1, 2), 0)}


def test_generator_signature_mismatch(e1, e2):
    with pytest.raises(DimensionMismatch):
        spin_generator(zero_params(e2), label_lct_generators(1, e1))


@pytest.mark.parametrize("sig", SIGS)
def test_rho_residuals(rng, sig):
    bundle = rho(scale_params(random_params(rng, sig), QQ(1, 2)))
    r = bundle.residuals
    assert r["symplectic"] < 1e-10
    assert r["ortho_defect"] == "0"
    assert abs(r["det_O"] - 1) < 1e-8
    assert abs(r["det_S"] - 1) < 1e-8
    assert r["inverse"] < 1e-10
    assert r["double_cover"] < 1e-8


def test_zero_params_give_identity_spinor(e2):
    bundle = rho(zero_params(e2))
    assert np.allclose(bundle.S, np.eye(bundle.lg.dim))
    psi = np.arange(bundle.lg.dim, dtype=complex)
    assert np.allclose(apply_spinor(bundle, psi), psi)


def test_apply_spinor_checks_length(e1):
    bundle = rho(zero_params(e1))
    with pytest.raises(DimensionMismatch):
        apply_spinor(bundle, np.ones(3))


def test_truncation_defect_is_second_order(e1):
    lg = label_lct_generators(1, e1)
    slope, defects = first_order_scaling(unit_direction("theta", e1), lg)
    assert slope >= 1.9
    assert defects == sorted(defects)


def test_scaling_rejects_zero_params(e1):
    with pytest.raises(ValueError):
        first_order_scaling(zero_params(e1), label_lct_generators(1, e1))


def test_composition_along_one_direction(e1):
    lg = label_lct_generators(1, e1)
    d = unit_direction("theta", e1)
    s = composition_sign(scale_params(d, QQ(3, 8)), scale_params(d, QQ(7, 8)), lg)
    assert min(abs(s - 1), abs(s + 1)) < 1e-10


def test_bundle_export(e1):
    params = validate_params([["1/4"]], [[0]], [[0]], [[0]], e1)
    out = bundle_export(rho(params))
    assert out["basis"] == ["a+^0", "b+^0", "b-^0", "a-^0"]
    assert out["adjoint_direction"] == "S P S^-1"
    assert float(out["g"][0][0]) == pytest.approx(math.cos(0.25))
    assert out["residuals"]["ortho_defect"] == "0"


def test_spin_suites(rng):
    assert first_order_report(6, rng, SIGS).passed
    report = double_cover_report(4, rng, SIGS[:2])
    assert report.passed
    assert len(report.data["scaling_defects"]) == 5
