"""Exact matrix helpers on top of sympy's DomainMatrix.

All matrices built here are sparse (SDM) so that `matmul`, `add` and `sub`
never need a format conversion. Rationals live in QQ, Gaussian rationals in QQ_I.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

RationalLike = Union[int, str, Fraction, "QQ.dtype"]


def qq(value: RationalLike):
    """Parse an int, a Fraction, a QQ element or a "num/den" string into QQ."""
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return QQ(int(num), int(den))
        return QQ(int(text))
    raise ValueError(f"not a rational: {value!r}")


def qq_str(value) -> str:
    """QQ element as "num/den" (or "num" when integral)."""
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def gaussian(re, im=0):
    return QQ_I(qq(re), qq(im))


def from_dok(dok: Dict[Tuple[int, int], object], shape: Tuple[int, int], domain) -> DomainMatrix:
    clean = {k: v for k, v in dok.items() if v}
    return DomainMatrix.from_dok(clean, shape, domain)


def rational_matrix(rows: Sequence[Sequence[RationalLike]]) -> DomainMatrix:
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    dok = {}
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError("ragged matrix rows")
        for j, v in enumerate(row):
            dok[(i, j)] = qq(v)
    return from_dok(dok, (n_rows, n_cols), QQ)


def zeros(n: int, domain=QQ, m: int = None) -> DomainMatrix:
    return DomainMatrix.zeros((n, n if m is None else m), domain)


def eye(n: int, domain=QQ) -> DomainMatrix:
    return DomainMatrix.eye(n, domain)


def diag(values: Iterable[RationalLike], domain=QQ) -> DomainMatrix:
    vals = list(values)
    conv = (lambda v: qq(v)) if domain == QQ else (lambda v: QQ_I(qq(v), 0))
    return from_dok({(i, i): conv(v) for i, v in enumerate(vals)}, (len(vals), len(vals)), domain)


def block_matrix(blocks: Sequence[Sequence[DomainMatrix]]) -> DomainMatrix:
    """Assemble equally sized square blocks into one sparse matrix."""
    k = blocks[0][0].shape[0]
    domain = blocks[0][0].domain
    dok = {}
    for bi, row in enumerate(blocks):
        for bj, block in enumerate(row):
            for (i, j), v in block.to_dok().items():
                dok[(bi * k + i, bj * k + j)] = v
    size = k * len(blocks)
    return from_dok(dok, (size, k * len(blocks[0])), domain)


def sub_block(m: DomainMatrix, bi: int, bj: int, k: int) -> DomainMatrix:
    dok = {}
    for (i, j), v in m.to_dok().items():
        if bi * k <= i < (bi + 1) * k and bj * k <= j < (bj + 1) * k:
            dok[(i - bi * k, j - bj * k)] = v
    return from_dok(dok, (k, k), m.domain)


def to_gaussian(m: DomainMatrix) -> DomainMatrix:
    return m.convert_to(QQ_I)


def trace(m: DomainMatrix):
    total = m.domain.zero
    for (i, j), v in m.to_dok().items():
        if i == j:
            total += v
    return total


def max_abs_entry(m: DomainMatrix):
    """Exact max-abs entry; for Gaussian entries the max of |Re| and |Im|."""
    best = QQ(0)
    for v in m.to_dok().values():
        if m.domain == QQ_I:
            cand = max(abs(v.x), abs(v.y))
        else:
            cand = abs(v)
        if cand > best:
            best = cand
    return best


def first_nonzero(m: DomainMatrix):
    """(i, j, value) of the lexicographically first nonzero entry, or None."""
    items = sorted((k, v) for k, v in m.to_dok().items() if v)
    if not items:
        return None
    (i, j), v = items[0]
    return i, j, v


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and a.sub(b).is_zero_matrix


def to_numpy(m: DomainMatrix) -> np.ndarray:
    """Float (QQ) or complex (QQ_I) numpy copy."""
    rows, cols = m.shape
    if m.domain == QQ_I:
        out = np.zeros((rows, cols), dtype=complex)
        for (i, j), v in m.to_dok().items():
            out[i, j] = complex(float(v.x), float(v.y))
        return out
    out = np.zeros((rows, cols), dtype=float)
    for (i, j), v in m.to_dok().items():
        out[i, j] = float(v)
    return out


def from_gaussian_integers(arr: np.ndarray) -> DomainMatrix:
    """Exact copy of a numpy array whose entries are Gaussian integers."""
    dok = {}
    rows, cols = arr.shape
    for i in range(rows):
        for j in range(cols):
            z = arr[i, j]
            if z != 0:
                re, im = int(round(z.real)), int(round(z.imag))
                if re != z.real or im != z.imag:
                    raise ValueError(f"entry ({i},{j}) = {z} is not a Gaussian integer")
                dok[(i, j)] = QQ_I(re, im)
    return from_dok(dok, (rows, cols), QQ_I)


def to_string_rows(m: DomainMatrix) -> List[List[str]]:
    """Exact "num/den" strings (QQ only)."""
    rows, cols = m.shape
    dok = m.to_dok()
    return [[qq_str(dok.get((i, j), QQ(0))) for j in range(cols)] for i in range(rows)]


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Exact Kronecker product; both factors must share a domain."""
    ra, ca = a.shape
    rb, cb = b.shape
    bdok = b.to_dok()
    dok = {}
    for (i, j), v in a.to_dok().items():
        for (k, l), w in bdok.items():
            dok[(i * rb + k, j * cb + l)] = v * w
    return from_dok(dok, (ra * rb, ca * cb), a.domain)
