import numpy as np
import pytest

from lctspin.config import Signature
from lctspin.errors import SizeLimit
from lctspin.lct_core import random_params, unit_direction
from lctspin.phase_ops import (
    build_dispersion,
    build_reduced,
    consistency_report,
    convention_oracle_1d,
    convention_oracle_nd,
    dispersion_symmetry_snapshot,
    infinitesimal_consistency,
    product_table_1d,
    product_table_nd,
    sigma_matrices,
)
from lctspin.weyl import CommutationConvention, OperatorPoly


def test_sigma3_is_diagonal():
    _, _, s3 = sigma_matrices()
    assert np.array_equal(s3, np.diag([1, -1]))


def test_one_dimensional_oracle_picks_minus_i_eta():
    outcome = convention_oracle_1d()
    assert outcome.winner == "minus_i_eta"
    tags = {c["tag"]: c for c in outcome.candidates}
    assert tags["minus_i_eta"]["failing_lines"] == []
    assert tags["plus_i_eta"]["failing_lines"]


def test_one_dimensional_table_depends_on_convention(c1):
    assert product_table_1d(c1).passed
    assert not product_table_1d(CommutationConvention.plus_i_eta((1,))).passed
    assert product_table_1d(c1).suite == "product-1d[minus_i_eta]"


@pytest.mark.parametrize("sig", [Signature.euclidean(2), Signature(plus=1, minus=1)])
def test_indexed_table_under_the_resolved_convention(sig):
    report = product_table_nd(2, sig, CommutationConvention.minus_i_eta(sig.eta))
    assert report.passed
    assert report.data["convention"] == "minus_i_eta"
    assert any(line.informational for line in report.lines)


def test_indexed_table_reduces_to_the_one_dimensional_table(c1, e1):
    indexed = product_table_nd(1, e1, c1)
    assert indexed.passed
    one_d = product_table_1d(c1)
    counterparts = indexed.data["one_dimensional_counterparts"]
    checked = [line for line in one_d.lines if not line.informational]
    assert sorted(counterparts) == sorted(line.id for line in checked)
    for line in checked:
        assert counterparts[line.id] == line.passed, line.id


def test_indexed_table_records_counterparts_only_at_n1(e2):
    report = product_table_nd(2, e2, CommutationConvention.minus_i_eta(e2.eta))
    assert "one_dimensional_counterparts" not in report.data


def test_literal_eta_terms_assume_plus_i_eta(e2):
    outcome = convention_oracle_nd(2, e2)
    assert outcome.winner == "plus_i_eta"


def test_product_table_size_guard():
    sig = Signature.euclidean(4)
    with pytest.raises(SizeLimit):
        product_table_nd(4, sig, CommutationConvention.minus_i_eta(sig.eta))


def test_p_plus_anticommutes_with_x_minus(c1, e1):
    q = build_reduced(1, e1, c1)
    pp, xm = q.pplus[0], q.xminus[0]
    assert (pp @ xm + xm @ pp).is_zero()
    assert len(q.as_vector()) == 4


def test_dispersion_symmetry(e2):
    conv = CommutationConvention.minus_i_eta(e2.eta)
    report = dispersion_symmetry_snapshot(2, e2, conv)
    assert report.passed
    assert set(report.data["snapshot"]) == {"zx_01 - zx_10"}
    z = build_dispersion(2, e2, conv)
    assert z.poly("zplus", 0, 1) == z.poly("zplus", 1, 0)


@pytest.mark.parametrize("sig", [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)])
def test_first_order_consistency(rng, sig):
    conv = CommutationConvention.minus_i_eta(sig.eta)
    for _ in range(3):
        assert infinitesimal_consistency(random_params(rng, sig), conv).passed


def test_consistency_holds_along_lambda(lorentz2):
    conv = CommutationConvention.minus_i_eta(lorentz2.eta)
    assert infinitesimal_consistency(unit_direction("lambda", lorentz2), conv).passed


def test_consistency_suite(rng):
    report = consistency_report(6, rng, [Signature.euclidean(1), Signature.euclidean(2)], "minus_i_eta")
    assert report.passed
    assert report.lines[0].note == "3/3 draws"


def test_identity_operator_helper(c1):
    assert OperatorPoly.identity(2, c1) @ OperatorPoly.identity(2, c1) == OperatorPoly.identity(2, c1)
