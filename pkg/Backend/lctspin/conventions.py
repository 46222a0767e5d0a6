"""
Every convention the lab has to pick, with the evidence for each pick.

Nothing is assumed: each entry comes from an oracle that tries all candidates and
needs exactly one to pass. The ledger also collects the printed forms that only
hold after a reading or a correction (`errata`).
"""

from __future__ import annotations

from typing import Any, Dict, List

from pydantic import BaseModel, Field

from lctspin.clifford import comm_table_check, duplicate_beta_line_check, label_lct_generators
from lctspin.config import SIZE_CAPS, Signature
from lctspin.invariant_lab import build_P, square_decomposition
from lctspin.logger import log_lab_util, log_suite_execution, logger
from lctspin.phase_ops import convention_oracle_1d, convention_oracle_nd, product_table_1d, product_table_nd
from lctspin.reports import OracleOutcome, VerificationReport
from lctspin.spin_rep import SpinProbe, convention_probe, lambda_factor_oracle
from lctspin.weyl import CommutationConvention


class ConventionLedger(BaseModel):
    n: int
    signature: str
    seed: int
    commutator_1d: OracleOutcome
    commutator_nd: OracleOutcome
    nd_reconciliation: Dict[str, Any] = Field(default_factory=dict)
    spin: SpinProbe
    lambda_factor: OracleOutcome
    clifford_beta_line: Dict[str, Any] = Field(default_factory=dict)
    square_constant: Dict[str, Any] = Field(default_factory=dict)
    errata: List[Dict[str, Any]] = Field(default_factory=list)

    @property
    def commutator_tag(self) -> str:
        return self.commutator_1d.winner

    def summary(self) -> str:
        return (
            f"[p,x] {self.commutator_tag}; spin sign {self.spin.sign:+d} mu={self.spin.mu_variant}; "
            f"lambda factor {self.lambda_factor.winner}; {len(self.errata)} errata"
        )

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def conventions_block(self) -> Dict[str, Any]:
        """The short form embedded in every `verify` report."""
        return {
            "commutator": self.commutator_tag,
            "spin_sign": self.spin.sign,
            "mu_variant": self.spin.mu_variant,
            "adjoint_direction": self.spin.adjoint_direction,
            "lambda_factor": self.lambda_factor.winner,
            "square_constant_sign": self.square_constant.get("sign"),
        }


def _errata_from(report: VerificationReport, source: str) -> List[Dict[str, Any]]:
    """Informational printed-form lines that do not hold."""
    out = []
    for line in report.lines:
        if line.informational and not line.passed:
            entry = {"source": source, "line": line.id}
            if line.note:
                entry["note"] = line.note
            if line.witness:
                entry["witness"] = line.witness
            out.append(entry)
    return out


def _nd_shape(n: int, sig: Signature) -> Signature:
    """The signature the N-D oracles run at: `sig` itself when 2 <= N <= the product cap."""
    if 2 <= n <= SIZE_CAPS["product"]:
        return sig
    return Signature.euclidean(2)


@log_suite_execution
def build_ledger(n: int, sig: Signature, seed: int = 0) -> ConventionLedger:
    """Run every oracle; an oracle with zero or several passing candidates raises ConventionError."""
    errata: List[Dict[str, Any]] = []

    c1 = convention_oracle_1d()
    logger.log_convention("commutator", c1.winner, {"passing": c1.passing()})
    c1_conv = CommutationConvention.from_tag(c1.winner, (1,))
    errata += _errata_from(product_table_1d(c1_conv), "product-1d")

    nd_sig = _nd_shape(n, sig)
    cnd = convention_oracle_nd(nd_sig.n, nd_sig)
    nd_table = product_table_nd(nd_sig.n, nd_sig, CommutationConvention.from_tag(c1.winner, nd_sig.eta))
    reconciliation = {
        "signature": nd_sig.tag,
        "literal_eta_convention": cnd.winner,
        "reconciled_with": c1.winner,
        "reconciled_pass": nd_table.passed,
        "zcross_readings": nd_table.data.get("zcross_readings", {}),
    }
    errata += _errata_from(nd_table, "product-nd")

    spin = convention_probe(sig.n, sig, seed=seed)
    logger.log_convention("spin", f"sign={spin.sign:+d}, mu={spin.mu_variant}", {"adjoint": spin.adjoint_direction})
    if spin.mu_variant != "sum":
        errata.append({"source": "spin", "line": "mu term with alpha+alpha- + beta+beta-", "note": "printed multi-index form"})

    lam_sig = sig if sig.n >= 2 else Signature.euclidean(2)
    lam = lambda_factor_oracle(lam_sig, spin.sign, spin.mu_variant, seed=seed)
    logger.log_convention("lambda_factor", lam.winner)
    printed_lam = next((c for c in lam.candidates if c.get("printed")), None)
    if printed_lam is not None and not printed_lam["passed"]:
        errata.append(
            {"source": "spin", "line": f"lambda factor {printed_lam['tag']}", "note": f"oracle picks {lam.winner}"}
        )

    lg = label_lct_generators(sig.n, sig)
    beta = duplicate_beta_line_check(lg)
    if not beta["printed_literal_pass"]:
        errata.append(
            {"source": "clifford", "line": "second beta+ metric line", "note": "holds when read as the beta- line"}
        )
    table = comm_table_check(lg)
    for line in table.printed_failures():
        entry = {"source": table.suite, "line": line.id}
        if line.note:
            entry["note"] = line.note
        errata.append(entry)

    sq_sig = sig if sig.n <= SIZE_CAPS["symbolic"] else Signature.euclidean(1)
    square = square_decomposition(build_P(sq_sig.n, sq_sig, CommutationConvention.from_tag(c1.winner, sq_sig.eta)))
    square_constant = {
        "signature": sq_sig.tag,
        "sign": square.report.data.get("constant_sign"),
        "note": "the constant equals the printed multi-index constant times the convention sign",
    }
    errata += _errata_from(square.report, "square")
    log_lab_util(f"ledger: {len(errata)} errata recorded", title="LEDGER")

    return ConventionLedger(
        n=n,
        signature=sig.tag,
        seed=seed,
        commutator_1d=c1,
        commutator_nd=cnd,
        nd_reconciliation=reconciliation,
        spin=spin,
        lambda_factor=lam,
        clifford_beta_line=beta,
        square_constant=square_constant,
        errata=errata,
    )
