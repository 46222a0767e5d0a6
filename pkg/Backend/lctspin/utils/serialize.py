from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from lctspin.utils.exact import qq

Entry = Union[str, int]


def decimal(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    value = float(x)
    if value == 0.0:
        value = 0.0  # drop the sign of -0.0
    return format(value, ".17g")


def real_rows(arr: np.ndarray) -> List[List[str]]:
    arr = np.asarray(arr)
    if np.iscomplexobj(arr):
        arr = arr.real
    return [[decimal(v) for v in row] for row in arr]


def complex_rows(arr: np.ndarray) -> List[List[List[str]]]:
    arr = np.asarray(arr, dtype=complex)
    return [[[decimal(v.real), decimal(v.imag)] for v in row] for row in arr]


def gaussian_integer_rows(arr: np.ndarray) -> List[List[List[int]]]:
    arr = np.asarray(arr, dtype=complex)
    return [[[int(round(v.real)), int(round(v.imag))] for v in row] for row in arr]


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(payload: Any, out: Optional[Path]) -> str:
    text = dump_json(payload)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text


class SignatureSpec(BaseModel):
    plus: int = Field(..., ge=0)
    minus: int = Field(0, ge=0)


class ParamsFile(BaseModel):
    """
    On-disk LCT parameters:
    {"signature": {"plus": P, "minus": M}, "theta": [["num/den", ...], ...], ...}
    Missing matrices default to zero.
    """

    model_config = ConfigDict(populate_by_name=True)

    signature: SignatureSpec
    theta: Optional[List[List[Entry]]] = None
    phi: Optional[List[List[Entry]]] = None
    mu: Optional[List[List[Entry]]] = None
    lambda_: Optional[List[List[Entry]]] = Field(None, alias="lambda")

    @field_validator("theta", "phi", "mu", "lambda_")
    @classmethod
    def entries_are_rational(cls, v):
        if v is None:
            return v
        for row in v:
            for entry in row:
                qq(entry)
        return v

    @classmethod
    def load(cls, path: Path) -> "ParamsFile":
        text = Path(path).read_text(encoding="utf-8")
        return cls.model_validate_json(text)

    def matrices(self, n: int) -> Sequence[List[List[Entry]]]:
        zero = [[0] * n for _ in range(n)]
        return tuple(m if m is not None else zero for m in (self.theta, self.phi, self.mu, self.lambda_))
