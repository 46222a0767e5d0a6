import pytest

from lctspin.clifford import label_lct_generators
from lctspin.config import Signature
from lctspin.errors import DimensionMismatch, SizeLimit
from lctspin.invariant_lab import (
    build_P,
    build_U,
    constant_invariance_check,
    invariant_commutator,
    nd_invariant_probe,
    quartic_invariant,
    square_decomposition,
    square_report,
    theta_operator,
    u_algebra_report,
    u_form_check,
)
from lctspin.lct_core import random_params, unit_direction
from lctspin.weyl import CommutationConvention, commutator


def test_P_shape(c1, e1):
    P = build_P(1, e1, c1)
    assert P.dim == 8
    assert P.terms == 4
    assert P.op.degree() == 1


def test_symbolic_size_guard():
    sig = Signature.euclidean(3)
    with pytest.raises(SizeLimit):
        build_P(3, sig, CommutationConvention.minus_i_eta(sig.eta))


def test_one_dimensional_u_table(e1):
    u = build_U(1, e1)
    assert u.report.passed
    assert len(u.table) == 16
    omitted = [line for line in u.report.lines if line.note == "omitted from the printed table"]
    assert len(omitted) == 2


def test_named_u_operators_only_at_n1(e1, e2):
    assert not build_U(1, e1).named("plus").is_zero_matrix
    with pytest.raises(DimensionMismatch):
        build_U(2, e2).named("plus")


@pytest.mark.parametrize("sig", [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)])
def test_theta_in_u_operator_form(rng, sig):
    lg = label_lct_generators(sig.n, sig)
    for _ in range(3):
        ok, witness = u_form_check(random_params(rng, sig), lg)
        assert ok, witness


@pytest.mark.parametrize("factory, sign", [(CommutationConvention.minus_i_eta, -1), (CommutationConvention.plus_i_eta, 1)])
def test_square_decomposition(e1, factory, sign):
    decomposition = square_decomposition(build_P(1, e1, factory((1,))))
    assert decomposition.passed
    assert decomposition.report.data["constant_sign"] == sign
    assert decomposition.D.degree() == 2
    assert decomposition.constant.degree() <= 0


def test_printed_dispersion_form_is_recorded_as_failing(c1, e1):
    report = square_decomposition(build_P(1, e1, c1)).report
    line = report.line("printed: D with U+, U- as anticommutators and Ux = 1/2 (a+a- + b+b-) s3")
    assert line.informational
    assert not line.passed


def test_constant_commutes_with_theta(c1, e1):
    P = build_P(1, e1, c1)
    decomposition = square_decomposition(P)
    for kind in ("theta", "phi", "mu"):
        ok, witness = constant_invariance_check(P, unit_direction(kind, e1), decomposition)
        assert ok, witness


def test_quartic_invariant_commutes_with_theta(c1, e1):
    P = build_P(1, e1, c1)
    Q = quartic_invariant(P)
    assert Q.degree() == 4
    theta = theta_operator(unit_direction("theta", e1), P)
    assert commutator(theta, Q).is_zero()
    assert not commutator(theta, P.op @ P.op).is_zero()


def test_invariant_commutator(c1, rng):
    report = invariant_commutator(c1, rng=rng, draws=3)
    assert report.passed
    assert report.suite == "invariant[minus_i_eta]"
    for kind in ("theta", "phi", "mu"):
        assert report.data["degrees"][kind]["P^4"] == 2


def test_invariant_needs_n1():
    with pytest.raises(DimensionMismatch):
        invariant_commutator(CommutationConvention.minus_i_eta((1, 1)))


def test_probe_needs_n2(c1, e1):
    with pytest.raises(DimensionMismatch):
        nd_invariant_probe(1, e1, c1)


def test_suites(c1, e1, rng):
    assert square_report("minus_i_eta", [e1]).passed
    report = u_algebra_report([e1, Signature.euclidean(2)], rng, draws=2)
    assert report.passed
    assert len(report.data["table"]) == 16


@pytest.mark.slow
def test_two_dimensional_probe_is_exploratory(e2):
    report = nd_invariant_probe(2, e2, CommutationConvention.minus_i_eta(e2.eta), directions=("theta", "lambda"))
    assert report.exploratory
    assert report.passed
    assert set(report.data["degrees"]) == {"theta", "lambda"}
    assert isinstance(report.data["candidates"], list)


@pytest.mark.slow
def test_two_dimensional_square(lorentz2):
    assert square_report("minus_i_eta", [lorentz2]).passed
