import json
import logging
import math

import pytest

from lctspin.cli import main
from lctspin.logger import logger
from lctspin.reports import VerificationReport


@pytest.fixture(autouse=True)
def _restore_level():
    yield
    logger.set_level(logging.WARNING)


def write_params(tmp_path, payload) -> str:
    path = tmp_path / "params.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_unknown_suite_is_an_input_error():
    assert main(["verify", "--suite", "bogus", "--quiet"]) == 2


def test_argparse_errors_exit_2():
    assert main(["generate"]) == 2
    assert main(["nonsense"]) == 2


def test_signature_must_match_n():
    assert main(["tables", "--n", "1", "--sig", "1,1", "--quiet"]) == 2


def test_verify_without_suites():
    assert main(["verify", "--quiet"]) == 2


def test_verify_writes_report(tmp_path):
    pytest.importorskip("langgraph")
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "clifford-1d", "--out", str(out), "--quiet"]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["pass"] is True
    assert payload["suites"][0]["suite"] == "clifford-1d"


def _failing_report(*args, **kwargs):
    report = VerificationReport(suite="product-1d")
    report.add("[p+, x-] = -4i z+ sigma3 - i", False, "i")
    return report


def test_failed_identity_exits_1(monkeypatch):
    pytest.importorskip("langgraph")
    import lctspin.pipeline as pipeline

    monkeypatch.setattr(pipeline, "product_table_1d", _failing_report)
    assert main(["verify", "--suite", "clifford-1d,product-1d", "--quiet"]) == 1


def test_failed_table_exits_1(monkeypatch, capsys):
    import lctspin.cli as cli

    monkeypatch.setattr(cli, "comm_table_check", _failing_report)
    assert main(["tables", "--quiet"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["tables"][0]["lines"][0]["pass"] is False


@pytest.mark.slow
def test_verify_output_is_byte_identical(capsys):
    pytest.importorskip("langgraph")
    argv = ["verify", "--suite", "all", "--n", "1", "--seed", "7", "--quiet"]
    codes, outputs = [], []
    for _ in range(2):
        codes.append(main(argv))
        outputs.append(capsys.readouterr().out.encode("utf-8"))
    assert codes[0] == codes[1]
    assert outputs[0] and outputs[0] == outputs[1]


def test_generate_rotation(tmp_path, capsys):
    path = write_params(tmp_path, {"signature": {"plus": 1}, "theta": [["1/4"]]})
    assert main(["generate", "--params", path, "--quiet"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert float(payload["g"][0][0]) == pytest.approx(math.cos(0.25))
    assert payload["params"]["theta"] == [["1/4"]]
    assert len(payload["S"]) == 4


def test_generate_rejects_traceful_lambda(tmp_path):
    path = write_params(
        tmp_path, {"signature": {"plus": 2}, "lambda": [[1, 0], [0, 0]]}
    )
    assert main(["generate", "--params", path, "--quiet"]) == 2


def test_generate_checks_sig_against_file(tmp_path):
    path = write_params(tmp_path, {"signature": {"plus": 1}})
    assert main(["generate", "--params", path, "--n", "2", "--sig", "1,1", "--quiet"]) == 2


def test_generate_missing_file(tmp_path):
    assert main(["generate", "--params", str(tmp_path / "nope.json"), "--quiet"]) == 2


def test_generate_malformed_file(tmp_path):
    path = tmp_path / "params.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["generate", "--params", str(path), "--quiet"]) == 2


def test_conventions(capsys):
    assert main(["conventions", "--quiet"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["commutator_1d"]["candidates"]) == 2
    assert payload["commutator_1d"]["winner"] == "minus_i_eta"


def test_tables(capsys):
    assert main(["tables", "--quiet"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["basis"] == ["a+^0", "b+^0", "b-^0", "a-^0"]
    assert payload["generators"]["dim"] == 4
    assert len(payload["tables"]) == 2
    assert len(payload["u_table"]) == 16


def test_tables_size_limit():
    assert main(["tables", "--n", "4", "--quiet"]) == 3


def test_invariant_single_direction(capsys):
    assert main(["invariant", "--direction", "theta", "--quiet"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is True


def test_invariant_lambda_needs_the_probe():
    assert main(["invariant", "--direction", "lambda", "--quiet"]) == 2


def test_generate_passes_unsafe_size_to_spin_resolution(tmp_path, monkeypatch):
    import lctspin.cli as cli

    seen = {}
    real = cli.resolve_spin_convention

    def recording(sig, seed=0, *, unsafe_size=False):
        seen["unsafe_size"] = unsafe_size
        return real(sig, seed)

    monkeypatch.setattr(cli, "resolve_spin_convention", recording)
    path = write_params(tmp_path, {"signature": {"plus": 1}, "mu": [["1/8"]]})
    assert main(["generate", "--params", path, "--unsafe-size", "--quiet"]) == 0
    assert seen == {"unsafe_size": True}
