from __future__ import annotations

from typing import Dict, Iterable, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from lctspin.config import SAMPLE_DENOMINATOR
from lctspin.utils.exact import from_dok

PARAM_KINDS = ("theta", "phi", "mu", "lambda")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational_matrix(
    rng: np.random.Generator, n: int, denominator: int = SAMPLE_DENOMINATOR
) -> DomainMatrix:
    ks = rng.integers(-denominator, denominator + 1, size=(n, n))
    dok = {(i, j): QQ(int(ks[i, j]), denominator) for i in range(n) for j in range(n)}
    return from_dok(dok, (n, n), QQ)


def eta_conjugate_transpose(m: DomainMatrix, eta: Sequence[int]) -> DomainMatrix:
    """eta M^T eta, computed entrywise."""
    n = m.shape[0]
    dok = {(j, i): v * eta[i] * eta[j] for (i, j), v in m.to_dok().items()}
    return from_dok(dok, (n, n), QQ)


def constrained_parts(
    rng: np.random.Generator,
    eta: Sequence[int],
    kinds: Iterable[str] = PARAM_KINDS,
    denominator: int = SAMPLE_DENOMINATOR,
) -> Dict[str, DomainMatrix]:
    """
    Draw theta, phi, mu (eta-symmetric) and lambda (eta-antisymmetric, hence traceless)
    by projecting uniform rational matrices. Entries stay in [-1, 1].
    Kinds not requested come back as zero matrices.
    """
    n = len(eta)
    wanted = set(kinds)
    half = QQ(1, 2)
    parts: Dict[str, DomainMatrix] = {}
    for kind in PARAM_KINDS:
        if kind not in wanted:
            parts[kind] = DomainMatrix.zeros((n, n), QQ)
            continue
        m = random_rational_matrix(rng, n, denominator)
        mt = eta_conjugate_transpose(m, eta)
        combo = m.sub(mt) if kind == "lambda" else m.add(mt)
        parts[kind] = combo.scalarmul(half)
    return parts


def random_scalar(rng: np.random.Generator, denominator: int = SAMPLE_DENOMINATOR, nonzero: bool = True):
    while True:
        k = int(rng.integers(-denominator, denominator + 1))
        if k or not nonzero:
            return QQ(k, denominator)

