from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from lctspin.errors import AmbiguousConvention, NoConsistentConvention


class VerificationLine(BaseModel):
    """One checked identity. Informational lines record printed forms and never gate a suite."""

    model_config = ConfigDict(populate_by_name=True)

    id: str
    passed: bool = Field(..., alias="pass")
    witness: Optional[str] = None
    note: Optional[str] = None
    informational: bool = False


class VerificationReport(BaseModel):
    suite: str
    lines: List[VerificationLine] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)
    exploratory: bool = False

    def add(
        self,
        line_id: str,
        passed: bool,
        witness: Optional[str] = None,
        *,
        note: Optional[str] = None,
        informational: bool = False,
    ) -> VerificationLine:
        line = VerificationLine(
            id=line_id,
            passed=bool(passed),
            witness=None if passed else witness,
            note=note,
            informational=informational,
        )
        self.lines.append(line)
        return line

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for line in other.lines:
            self.lines.append(line.model_copy(update={"id": f"{prefix}{line.id}"}))

    @property
    def passed(self) -> bool:
        if self.exploratory:
            return True
        return all(line.passed for line in self.lines if not line.informational)

    def failures(self) -> List[VerificationLine]:
        return [l for l in self.lines if not l.passed and not l.informational]

    def line(self, line_id: str) -> VerificationLine:
        for l in self.lines:
            if l.id == line_id:
                return l
        raise KeyError(line_id)

    def summary(self) -> str:
        normal = [l for l in self.lines if not l.informational]
        ok = sum(1 for l in normal if l.passed)
        info = len(self.lines) - len(normal)
        return f"{self.suite}: {ok}/{len(normal)} passed, {info} informational"

    def to_json_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "suite": self.suite,
            "pass": self.passed,
            "lines": [l.model_dump(by_alias=True, exclude_none=True) for l in self.lines],
        }
        if self.data:
            out["data"] = self.data
        if self.exploratory:
            out["exploratory"] = True
        return out


class CommLine(VerificationLine):
    printed_pass: bool = True


class CommTableReport(VerificationReport):
    """Commutator table results: `passed` is the derived identity, `printed_pass` the printed RHS."""

    lines: List[CommLine] = Field(default_factory=list)

    def add_comm(
        self,
        line_id: str,
        passed: bool,
        printed_pass: bool,
        witness: Optional[str] = None,
        note: Optional[str] = None,
    ) -> CommLine:
        line = CommLine(
            id=line_id,
            passed=bool(passed),
            printed_pass=bool(printed_pass),
            witness=None if passed else witness,
            note=note,
        )
        self.lines.append(line)
        return line

    def printed_failures(self) -> List[CommLine]:
        return [l for l in self.lines if not l.printed_pass]


class AggregateReport(BaseModel):
    """What `verify` writes: one report per suite plus the conventions they ran under."""

    n: int
    signature: str
    seed: int
    conventions: Dict[str, Any] = Field(default_factory=dict)
    reports: List[VerificationReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def summary(self) -> str:
        return "; ".join(r.summary() for r in self.reports) or "no suites"

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "signature": self.signature,
            "seed": self.seed,
            "pass": self.passed,
            "conventions": self.conventions,
            "suites": [r.to_json_dict() for r in self.reports],
        }


class OracleOutcome(BaseModel):
    """Every candidate an oracle tried, with its evidence, and the unique winner if there is one."""

    oracle: str
    winner: Optional[str] = None
    candidates: List[Dict[str, Any]] = Field(default_factory=list)

    def passing(self) -> List[str]:
        return [c["tag"] for c in self.candidates if c.get("passed")]

    @classmethod
    def decide(cls, oracle: str, candidates: List[Dict[str, Any]], detail: Optional[str] = None) -> "OracleOutcome":
        """Exactly one candidate must pass; otherwise raise with the full evidence attached."""
        passing = [c["tag"] for c in candidates if c.get("passed")]
        if not passing:
            raise NoConsistentConvention(oracle, candidates, detail)
        if len(passing) > 1:
            raise AmbiguousConvention(oracle, candidates, detail)
        return cls(oracle=oracle, winner=passing[0], candidates=candidates)
