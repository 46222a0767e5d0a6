import json

import pytest
from pydantic import ValidationError
from sympy import QQ

from lctspin.config import EXPLORATORY_SUITES, SUITE_NAMES, RunConfig, Signature
from lctspin.errors import (
    AmbiguousConvention,
    ConstraintViolation,
    InputError,
    LabError,
    NoConsistentConvention,
    SizeLimit,
)
from lctspin.reports import AggregateReport, OracleOutcome, VerificationReport
from lctspin.utils.exact import qq, qq_str, rational_matrix, trace
from lctspin.utils.serialize import ParamsFile, decimal, dump_json


# ──────────────── config ──────────────── #


def test_all_expands_to_every_non_exploratory_suite():
    config = RunConfig(subcommand="verify", suites=["all"])
    assert config.suites == list(SUITE_NAMES)
    assert not set(EXPLORATORY_SUITES) & set(config.suites)


def test_comma_lists_are_split_and_deduplicated():
    config = RunConfig(subcommand="verify", suites=["clifford-1d,product-1d", "clifford-1d"])
    assert config.suites == ["clifford-1d", "product-1d"]


def test_unknown_suite_is_rejected():
    with pytest.raises(ValidationError, match="bogus"):
        RunConfig(subcommand="verify", suites=["bogus"])


def test_signature_must_match_n():
    assert RunConfig(subcommand="tables", n=2, sig="1,1").signature == Signature(plus=1, minus=1)
    with pytest.raises(ValidationError):
        RunConfig(subcommand="tables", n=1, sig="1,1")


def test_default_signature_is_euclidean():
    assert RunConfig(subcommand="tables", n=3).signature.eta == (1, 1, 1)


def test_signature_parse():
    sig = Signature.parse("2,1")
    assert sig.n == 3
    assert sig.eta == (1, 1, -1)
    assert sig.tag == "2,1"
    with pytest.raises(ValueError):
        Signature.parse("3")
    with pytest.raises(ValidationError):
        Signature(plus=0, minus=0)


def test_tol_overrides_residual_thresholds_only():
    tol = RunConfig(subcommand="verify", tol=1e-3).tolerances
    assert tol.symplectic == 1e-3
    assert tol.double_cover(2) == 1e-3
    assert tol.min_slope == 1.9


# ──────────────── errors ──────────────── #


def test_exit_codes():
    assert LabError.exit_code == 1
    assert InputError.exit_code == 2
    assert ConstraintViolation("trace(lambda) = 0", "5").exit_code == 2
    assert SizeLimit("x", 2, 3).exit_code == 3


def test_constraint_violation_names_the_failed_relation():
    err = ConstraintViolation("trace(lambda) = 0", "5")
    assert str(err) == "trace(lambda) != 0 (witness 5)"
    assert err.constraint == "trace(lambda) = 0"


# ──────────────── reports ──────────────── #


def test_informational_lines_never_gate():
    report = VerificationReport(suite="demo")
    report.add("holds", True, "ignored witness")
    report.add("printed form", False, "w", informational=True)
    assert report.passed
    assert report.failures() == []
    assert report.line("holds").witness is None
    assert report.summary() == "demo: 1/1 passed, 1 informational"


def test_failed_line_keeps_witness_and_json_uses_pass_key():
    report = VerificationReport(suite="demo")
    report.add("broken", False, "max-abs 2")
    payload = report.to_json_dict()
    assert payload["pass"] is False
    assert payload["lines"] == [{"id": "broken", "pass": False, "witness": "max-abs 2", "informational": False}]


def test_exploratory_report_always_passes():
    report = VerificationReport(suite="probe", exploratory=True)
    report.add("no candidate", False, "w")
    assert report.passed
    assert report.to_json_dict()["exploratory"] is True


def test_extend_prefixes_ids():
    inner = VerificationReport(suite="inner")
    inner.add("a", True)
    outer = VerificationReport(suite="outer")
    outer.extend(inner, prefix="(sig 1,0) ")
    assert [l.id for l in outer.lines] == ["(sig 1,0) a"]


def test_aggregate_report():
    ok = VerificationReport(suite="one")
    ok.add("a", True)
    bad = VerificationReport(suite="two")
    bad.add("b", False, "w")
    agg = AggregateReport(n=1, signature="1,0", seed=0, reports=[ok, bad])
    assert not agg.passed
    payload = agg.to_json_dict()
    assert [s["suite"] for s in payload["suites"]] == ["one", "two"]
    assert AggregateReport(n=1, signature="1,0", seed=0).summary() == "no suites"


def test_oracle_needs_exactly_one_winner():
    one = [{"tag": "a", "passed": True}, {"tag": "b", "passed": False}]
    assert OracleOutcome.decide("o", one).winner == "a"
    with pytest.raises(NoConsistentConvention) as none:
        OracleOutcome.decide("o", [{"tag": "a", "passed": False}])
    assert none.value.candidates == [{"tag": "a", "passed": False}]
    with pytest.raises(AmbiguousConvention):
        OracleOutcome.decide("o", [{"tag": "a", "passed": True}, {"tag": "b", "passed": True}])


# ──────────────── utils ──────────────── #


def test_rational_parsing():
    assert qq("3/4") == QQ(3, 4)
    assert qq(" -2 ") == QQ(-2)
    assert qq_str(QQ(-3, 4)) == "-3/4"
    assert qq_str(QQ(6, 3)) == "2"
    with pytest.raises(ValueError):
        qq("1/0")
    with pytest.raises(ValueError):
        qq(True)


def test_trace_of_rational_matrix():
    m = rational_matrix([["1/2", 0], [3, "-1/2"]])
    assert trace(m) == 0


def test_decimal_uses_17_significant_digits():
    assert decimal(0.1) == "0.10000000000000001"
    assert decimal(-0.0) == "0"
    assert decimal(1.0) == "1"


def test_dump_json_is_sorted_with_trailing_newline():
    assert dump_json({"b": 1, "a": "θ"}) == '{\n  "a": "θ",\n  "b": 1\n}\n'


def test_params_file_lambda_alias_and_defaults():
    pf = ParamsFile.model_validate_json(
        json.dumps({"signature": {"plus": 1, "minus": 1}, "lambda": [[0, 1], [1, 0]]})
    )
    theta, phi, mu, lam = pf.matrices(2)
    assert theta == [[0, 0], [0, 0]]
    assert lam == [[0, 1], [1, 0]]


def test_params_file_rejects_non_rational_entries():
    with pytest.raises(ValidationError):
        ParamsFile.model_validate_json('{"signature": {"plus": 1}, "theta": [["one"]]}')
