import pytest

pytest.importorskip("langgraph")

from lctspin.config import RunConfig
from lctspin.errors import SizeLimit
from lctspin.pipeline import VerifyPipeline, run


def verify(**kwargs) -> RunConfig:
    return RunConfig(subcommand="verify", **kwargs)


def test_selected_suites_run_in_order():
    aggregate = run(verify(suites=["clifford-1d", "product-1d"]))
    assert aggregate.passed
    assert [r.suite for r in aggregate.reports] == ["clifford-1d", "product-1d"]
    assert aggregate.conventions["commutator"] == "minus_i_eta"
    assert aggregate.conventions["adjoint_direction"] == "S P S^-1"


def test_module_suite_ids_become_line_prefixes():
    aggregate = run(verify(suites=["product-1d"]))
    report = aggregate.reports[0]
    assert all(line.id.startswith("product-1d[minus_i_eta]: ") for line in report.lines)


def test_nothing_selected_goes_straight_to_finalize():
    final = VerifyPipeline().graph.invoke({"config": verify()})
    aggregate = final["aggregate"]
    assert aggregate.reports == []
    assert aggregate.conventions == {}
    assert [a["stage"] for a in final["activity"]] == ["init", "finalize"]


def test_matrix_suites_refuse_large_n():
    with pytest.raises(SizeLimit):
        run(verify(n=4, suites=["lie-membership"]))


def test_large_n_still_runs_fixed_size_suites():
    aggregate = run(verify(n=4, suites=["clifford-1d"]))
    assert aggregate.passed
    assert aggregate.conventions["spin_signature"] == "1,0"


def test_runs_are_deterministic():
    config = verify(suites=["lie-membership"], seed=3)
    first = run(config).to_json_dict()
    second = run(config).to_json_dict()
    assert first == second


def test_indexed_products_cover_n1():
    aggregate = run(verify(suites=["product-nd"]))
    assert aggregate.passed
    assert any(line.id.startswith("(sig 1,0) ") for line in aggregate.reports[0].lines)
