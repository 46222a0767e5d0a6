from __future__ import annotations

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Ordered registry; `all` expands to every suite except the exploratory probe.
SUITE_NAMES: Tuple[str, ...] = (
    "clifford-relations",
    "clifford-1d",
    "clifford-nd",
    "lie-membership",
    "product-1d",
    "product-nd",
    "consistency",
    "spin-first-order",
    "double-cover",
    "square",
    "u-algebra",
    "invariant",
)
EXPLORATORY_SUITES: Tuple[str, ...] = ("nd-probe",)

MAX_GENERATORS = 12
# symbolic: quartic P-expansions and the N-D product table; matrix: exponentials and Clifford tables
SIZE_CAPS = {"symbolic": 2, "product": 3, "matrix": 3}

LIE_DRAWS = 200
CONSISTENCY_DRAWS = 100
FIRST_ORDER_DRAWS = 100
DOUBLE_COVER_DRAWS = 25
INVARIANT_MIXED_DRAWS = 10
PROBE_DRAWS = 3

# random parameter entries are k / SAMPLE_DENOMINATOR with |k| <= SAMPLE_DENOMINATOR
SAMPLE_DENOMINATOR = 8

KAPPA_GRID: Tuple[Tuple[int, int], ...] = (
    (-8, 1), (-6, 1), (-4, 1), (-2, 1), (-1, 1), (-1, 2),
    (0, 1), (1, 2), (1, 1), (2, 1), (4, 1), (6, 1), (8, 1),
)
LAMBDA_FACTOR_CANDIDATES: Tuple[Tuple[int, int], ...] = ((1, 2), (1, 4), (1, 1), (-1, 2), (-1, 4))
SCALING_TS: Tuple[float, ...] = (1e-3, 1.778e-3, 3.162e-3, 5.623e-3, 1e-2)


class Signature(BaseModel):
    """Metric signature (N+, N-); eta = diag(+1 x plus, -1 x minus)."""

    model_config = ConfigDict(frozen=True)

    plus: int = Field(..., ge=0, description="count of +1 metric entries")
    minus: int = Field(0, ge=0, description="count of -1 metric entries")

    @model_validator(mode="after")
    def _nonempty(self):
        if self.plus + self.minus < 1:
            raise ValueError("signature must have N = plus + minus >= 1")
        return self

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse the CLI form "P,M"."""
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 2:
            raise ValueError(f"signature must look like P,M; got {text!r}")
        return cls(plus=int(parts[0]), minus=int(parts[1]))

    @classmethod
    def euclidean(cls, n: int) -> "Signature":
        return cls(plus=n, minus=0)

    @property
    def n(self) -> int:
        return self.plus + self.minus

    @property
    def eta(self) -> Tuple[int, ...]:
        return (1,) * self.plus + (-1,) * self.minus

    @property
    def tag(self) -> str:
        return f"{self.plus},{self.minus}"


class Tolerances(BaseModel):
    """Numeric thresholds; exact checks never consult these."""

    model_config = ConfigDict(frozen=True)

    symplectic: float = Field(1e-10, gt=0)
    ortho_group: float = Field(1e-10, gt=0)
    det: float = Field(1e-8, gt=0)
    double_cover_1d: float = Field(1e-8, gt=0)
    double_cover_nd: float = Field(1e-7, gt=0)
    inverse: float = Field(1e-12, gt=0)
    composition: float = Field(1e-8, gt=0)
    homomorphism: float = Field(1e-9, gt=0)
    min_slope: float = Field(1.9, gt=0)

    def double_cover(self, n: int) -> float:
        return self.double_cover_1d if n == 1 else self.double_cover_nd

    def overridden(self, tol: Optional[float]) -> "Tolerances":
        """Replace every residual threshold with `tol` (the slope bound is not a residual)."""
        if tol is None:
            return self
        keep = {"min_slope": self.min_slope}
        fields = {k: tol for k in type(self).model_fields if k not in keep}
        return Tolerances(**fields, **keep)


DEFAULT_TOLERANCES = Tolerances()


class RunConfig(BaseModel):
    """Everything a CLI invocation needs; built once, before any computation."""

    model_config = ConfigDict(frozen=True)

    subcommand: Literal["generate", "verify", "conventions", "tables", "invariant"]
    params_file: Optional[Path] = None
    n: int = Field(1, ge=1, description="dimension N of the LCT")
    sig: Optional[Signature] = None
    suites: List[str] = Field(default_factory=list)
    seed: int = Field(0, ge=0)
    tol: Optional[float] = Field(None, gt=0)
    out: Optional[Path] = None
    unsafe_size: bool = False
    quiet: bool = False
    direction: Optional[Literal["theta", "phi", "mu", "lambda", "all"]] = "all"
    probe: bool = False

    @field_validator("sig", mode="before")
    @classmethod
    def parse_sig(cls, v):
        if v is None or isinstance(v, (Signature, dict)):
            return v
        return Signature.parse(v)

    @field_validator("suites", mode="before")
    @classmethod
    def expand_suites(cls, v):
        if v is None:
            return []
        if isinstance(v, str):
            v = [v]
        names: List[str] = []
        for chunk in v:
            names.extend(s.strip() for s in str(chunk).split(",") if s.strip())
        known = set(SUITE_NAMES) | set(EXPLORATORY_SUITES) | {"all"}
        unknown = [s for s in names if s not in known]
        if unknown:
            raise ValueError(f"unknown suite name(s): {', '.join(unknown)}")
        expanded: List[str] = []
        for s in names:
            for item in (SUITE_NAMES if s == "all" else (s,)):
                if item not in expanded:
                    expanded.append(item)
        return expanded

    @model_validator(mode="after")
    def check_signature(self):
        if self.sig is not None and self.sig.n != self.n:
            raise ValueError(
                f"signature {self.sig.tag} has N = {self.sig.n} but --n is {self.n}"
            )
        return self

    @property
    def signature(self) -> Signature:
        return self.sig or Signature.euclidean(self.n)

    @property
    def tolerances(self) -> Tolerances:
        return DEFAULT_TOLERANCES.overridden(self.tol)
