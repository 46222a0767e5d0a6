from lctspin.logger import check_row, check_tally, logger
from lctspin.reports import VerificationReport


def sample_report() -> VerificationReport:
    report = VerificationReport(suite="product-1d[minus_i_eta]")
    report.add("[p+, x+] = 4i z- sigma3", True)
    report.add("[x-, p-] = 4i z- sigma3", True)
    report.add("[p+, x-] = -4i z+ sigma3 - i", False, "2i")
    report.add("printed middle expression", False, "i", informational=True)
    return report


def test_tally_counts_gating_checks_only():
    assert check_tally(sample_report()) == (
        "2/3 checks passed, 1 informational; first failure: [p+, x-] = -4i z+ sigma3 - i"
    )


def test_tally_of_a_clean_exploratory_report():
    report = VerificationReport(suite="nd-probe-n2", exploratory=True)
    report.add("[theta, P^2] != 0", True)
    assert check_tally(report) == "1/1 checks passed (exploratory)"


def test_rows_mark_each_check():
    rows = [check_row(line).plain for line in sample_report().lines]
    assert rows[0] == "ok   [p+, x+] = 4i z- sigma3"
    assert rows[2] == "FAIL [p+, x-] = -4i z+ sigma3 - i  witness=2i"
    assert rows[3] == "info printed middle expression  witness=i"


def test_messages_carry_category_and_text():
    message = logger._format_message("CONVENTION", "spin = sign=+1")
    assert "[CONVENTION]" in message
    assert "spin = sign=+1" in message
