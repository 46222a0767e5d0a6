"""
LCT parameters, the symplectic group element g = exp(A) and the pseudo-orthogonal generator X.

Row-vector convention throughout: (p' x') = (p x) g and (p⁺ x⁻ x⁺ p⁻)' = (p⁺ x⁻ x⁺ p⁻)(I + X).
With [q_i, q_j] = c·K_ij for q = (p, x), the commutators are preserved iff gᵀKg = K,
K = [[0, η], [−η, 0]]; at the algebra level AᵀK + KA = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from lctspin.config import Signature, Tolerances, DEFAULT_TOLERANCES
from lctspin.errors import ConstraintViolation, DimensionMismatch, ExpDivergence
from lctspin.logger import log_suite_execution
from lctspin.reports import VerificationReport
from lctspin.utils.exact import (
    block_matrix,
    diag,
    from_dok,
    max_abs_entry,
    qq,
    qq_str,
    rational_matrix,
    to_numpy,
    to_string_rows,
    trace,
    zeros,
)
from lctspin.utils.sampling import PARAM_KINDS, constrained_parts

__all__ = [
    "Signature",
    "LctParams",
    "GroupElement",
    "OrthoGenerator",
    "PseudoOrthogonalElement",
    "metric",
    "invariant_form",
    "ortho_metric",
    "validate_params",
    "zero_params",
    "params_from_file",
    "sl_generator",
    "sl_membership_defect",
    "expm_checked",
    "group_element",
    "symplectic_defect",
    "ortho_generator",
    "ortho_defect",
    "special_orthogonal_element",
    "unit_direction",
    "scale_params",
    "add_params",
    "random_params",
    "lie_membership_report",
]

MatrixLike = Union[DomainMatrix, Sequence[Sequence[object]]]


class LctParams(BaseModel):
    """θ, φ, μ, λ as exact N×N rational matrices; only `validate_params` should build one."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: DomainMatrix
    phi: DomainMatrix
    mu: DomainMatrix
    lam: DomainMatrix
    sig: Signature

    @property
    def n(self) -> int:
        return self.sig.n

    def part(self, kind: str) -> DomainMatrix:
        return self.lam if kind == "lambda" else getattr(self, kind)

    def is_zero(self) -> bool:
        return all(self.part(k).is_zero_matrix for k in PARAM_KINDS)

    def to_json_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"signature": {"plus": self.sig.plus, "minus": self.sig.minus}}
        for kind in PARAM_KINDS:
            out[kind] = to_string_rows(self.part(kind))
        return out


@dataclass(frozen=True, eq=False)
class GroupElement:
    mat: np.ndarray
    n: int

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(Π, Ξ, Θ, Λ) with g = [[Π, Ξ], [Θ, Λ]]."""
        n = self.n
        m = self.mat
        return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]


@dataclass(frozen=True, eq=False)
class OrthoGenerator:
    mat: DomainMatrix
    sig: Signature


@dataclass(frozen=True, eq=False)
class PseudoOrthogonalElement:
    mat: np.ndarray
    group_residual: float
    det: float


# ──────────────── Metrics ──────────────── #


def metric(sig: Signature) -> DomainMatrix:
    return diag(sig.eta)


def invariant_form(sig: Signature) -> DomainMatrix:
    eta = metric(sig)
    z = zeros(sig.n)
    return block_matrix([[z, eta], [eta.neg(), z]])


def ortho_metric(sig: Signature) -> DomainMatrix:
    eta = sig.eta
    return diag(tuple(eta) + tuple(eta) + tuple(-e for e in eta) + tuple(-e for e in eta))


# ──────────────── Parameters ──────────────── #


def _as_matrix(m: MatrixLike, n: int, name: str) -> DomainMatrix:
    if isinstance(m, DomainMatrix):
        mat = m if m.domain == QQ else m.convert_to(QQ)
    else:
        try:
            mat = rational_matrix(m)
        except (ValueError, IndexError) as e:
            raise DimensionMismatch(f"{name}: {e}") from e
    if mat.shape != (n, n):
        raise DimensionMismatch(f"{name} must be {n}x{n}, got {mat.shape[0]}x{mat.shape[1]}")
    return mat


def validate_params(
    theta: MatrixLike, phi: MatrixLike, mu: MatrixLike, lam: MatrixLike, sig: Signature
) -> LctParams:
    """
    Check θᵀ = ηθη, φᵀ = ηφη, μᵀ = ημη, trace(λ) = 0 and λᵀ = −ηλη, in that order.
    The first failure raises ConstraintViolation with the max-abs entry of the residual.
    """
    n = sig.n
    mats = {
        "theta": _as_matrix(theta, n, "theta"),
        "phi": _as_matrix(phi, n, "phi"),
        "mu": _as_matrix(mu, n, "mu"),
        "lambda": _as_matrix(lam, n, "lambda"),
    }
    eta = sig.eta
    for kind in ("theta", "phi", "mu"):
        m = mats[kind]
        residual = m.transpose().sub(_eta_sandwich(m, eta))
        if not residual.is_zero_matrix:
            raise ConstraintViolation(f"{kind}^T = eta {kind} eta", qq_str(max_abs_entry(residual)))
    lam_m = mats["lambda"]
    tr = trace(lam_m)
    if tr:
        raise ConstraintViolation("trace(lambda) = 0", qq_str(abs(tr)))
    residual = lam_m.transpose().add(_eta_sandwich(lam_m, eta))
    if not residual.is_zero_matrix:
        raise ConstraintViolation("lambda^T = -eta lambda eta", qq_str(max_abs_entry(residual)))
    return LctParams(theta=mats["theta"], phi=mats["phi"], mu=mats["mu"], lam=lam_m, sig=sig)


def _eta_sandwich(m: DomainMatrix, eta: Sequence[int]) -> DomainMatrix:
    """η M η entrywise."""
    n = m.shape[0]
    return from_dok({(i, j): v * eta[i] * eta[j] for (i, j), v in m.to_dok().items()}, (n, n), QQ)


def zero_params(sig: Signature) -> LctParams:
    z = zeros(sig.n)
    return LctParams(theta=z, phi=z, mu=z, lam=z, sig=sig)


def params_from_file(pf) -> LctParams:
    """Build checked params from a `utils.serialize.ParamsFile`."""
    sig = Signature(plus=pf.signature.plus, minus=pf.signature.minus)
    theta, phi, mu, lam = pf.matrices(sig.n)
    return validate_params(theta, phi, mu, lam, sig)


# ──────────────── Symplectic side ──────────────── #


def sl_generator(params: LctParams) -> DomainMatrix:
    """A = [[λ+μ, φ−θ], [φ+θ, λ−μ]]."""
    th, ph, m, lam = params.theta, params.phi, params.mu, params.lam
    return block_matrix([[lam.add(m), ph.sub(th)], [ph.add(th), lam.sub(m)]])


def sl_membership_defect(params: LctParams):
    a = sl_generator(params)
    k = invariant_form(params.sig)
    return max_abs_entry(a.transpose().matmul(k).add(k.matmul(a)))


def expm_checked(m) -> np.ndarray:
    """scipy's scaling-and-squaring Padé exponential, with a finiteness check."""
    arr = to_numpy(m) if isinstance(m, DomainMatrix) else np.asarray(m)
    out = scipy.linalg.expm(arr)
    if not np.all(np.isfinite(out)):
        raise ExpDivergence(f"matrix exponential of a {arr.shape[0]}x{arr.shape[1]} matrix is not finite")
    return out


def group_element(params: LctParams) -> GroupElement:
    return GroupElement(mat=expm_checked(sl_generator(params)), n=params.n)


def symplectic_defect(g: Union[GroupElement, np.ndarray], sig: Signature) -> float:
    """max-abs entry of gᵀKg − K."""
    mat = g.mat if isinstance(g, GroupElement) else np.asarray(g)
    k = to_numpy(invariant_form(sig))
    if mat.shape != k.shape:
        raise DimensionMismatch(f"g is {mat.shape}, expected {k.shape}")
    return float(np.max(np.abs(mat.T @ k @ mat - k)))


# ──────────────── Pseudo-orthogonal side ──────────────── #


def ortho_generator(params: LctParams) -> OrthoGenerator:
    """X = [[λ,−θ,φ,μ],[θ,λ,−μ,φ],[φ,−μ,λ,θ],[μ,φ,−θ,λ]] acting on rows (p⁺, x⁻, x⁺, p⁻)."""
    th, ph, m, lam = params.theta, params.phi, params.mu, params.lam
    mat = block_matrix(
        [
            [lam, th.neg(), ph, m],
            [th, lam, m.neg(), ph],
            [ph, m.neg(), lam, th],
            [m, ph, th.neg(), lam],
        ]
    )
    return OrthoGenerator(mat=mat, sig=params.sig)


def ortho_defect(x: OrthoGenerator):
    """Exact max-abs entry of XG + GXᵀ."""
    g = ortho_metric(x.sig)
    if x.mat.shape != g.shape:
        raise DimensionMismatch(f"X is {x.mat.shape}, expected {g.shape}")
    xg = x.mat.matmul(g)
    return max_abs_entry(xg.add(xg.transpose()))


def special_orthogonal_element(x: OrthoGenerator) -> PseudoOrthogonalElement:
    o = expm_checked(x.mat)
    g = to_numpy(ortho_metric(x.sig))
    residual = float(np.max(np.abs(o.T @ g @ o - g)))
    return PseudoOrthogonalElement(mat=o, group_residual=residual, det=float(np.linalg.det(o)))


# ──────────────── Parameter arithmetic ──────────────── #


def unit_direction(kind: str, sig: Signature) -> LctParams:
    """One-parameter directions: θ, φ, μ = I_N; λ = [[0, 1], [−η₀η₁, 0]] in the top corner (N ≥ 2)."""
    n = sig.n
    z = zeros(n)
    parts = {k: z for k in PARAM_KINDS}
    if kind in ("theta", "phi", "mu"):
        parts[kind] = diag([1] * n)
    elif kind == "lambda":
        if n < 2:
            raise DimensionMismatch("a nonzero lambda needs N >= 2")
        eta = sig.eta
        parts["lambda"] = from_dok({(0, 1): QQ(1), (1, 0): QQ(-eta[0] * eta[1])}, (n, n), QQ)
    else:
        raise ValueError(f"unknown direction {kind!r}")
    return validate_params(parts["theta"], parts["phi"], parts["mu"], parts["lambda"], sig)


def _rational(t) -> object:
    if isinstance(t, float):
        f = Fraction(t)
        return QQ(f.numerator, f.denominator)
    return qq(t)


def scale_params(params: LctParams, t) -> LctParams:
    """t·params, exact; floats are taken at their exact binary value."""
    s = _rational(t)
    scaled = {k: params.part(k).scalarmul(s) for k in PARAM_KINDS}
    return LctParams(
        theta=scaled["theta"], phi=scaled["phi"], mu=scaled["mu"], lam=scaled["lambda"], sig=params.sig
    )


def add_params(a: LctParams, b: LctParams) -> LctParams:
    if a.sig != b.sig:
        raise DimensionMismatch(f"signatures differ: {a.sig.tag} vs {b.sig.tag}")
    summed = {k: a.part(k).add(b.part(k)) for k in PARAM_KINDS}
    return LctParams(
        theta=summed["theta"], phi=summed["phi"], mu=summed["mu"], lam=summed["lambda"], sig=a.sig
    )


def random_params(rng: np.random.Generator, sig: Signature, kinds: Iterable[str] = PARAM_KINDS) -> LctParams:
    """Random constrained params with entries k/8; λ is only drawn for N ≥ 2."""
    kinds = [k for k in kinds if k != "lambda" or sig.n >= 2]
    parts = constrained_parts(rng, sig.eta, kinds)
    return validate_params(parts["theta"], parts["phi"], parts["mu"], parts["lambda"], sig)


# ──────────────── Suite ──────────────── #


@log_suite_execution
def lie_membership_report(
    draws: int,
    sigs: Sequence[Signature],
    rng: np.random.Generator,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """
    Round-robin over `sigs`: exact AᵀK + KA = 0 and XG + GXᵀ = 0, numeric gᵀKg = K,
    OᵀGO = G and det O = 1, plus g(A)g(−A) = I and the 1-D θ homomorphism.
    """
    report = VerificationReport(suite="lie-membership")
    stats: Dict[str, Dict[str, object]] = {
        s.tag: {"draws": 0, "sl": QQ(0), "ortho": QQ(0), "symp": 0.0, "group": 0.0, "det": 0.0, "inverse": 0.0}
        for s in sigs
    }
    for k in range(draws):
        sig = sigs[k % len(sigs)]
        params = random_params(rng, sig)
        st = stats[sig.tag]
        st["draws"] += 1
        st["sl"] = max(st["sl"], sl_membership_defect(params))
        x = ortho_generator(params)
        st["ortho"] = max(st["ortho"], ortho_defect(x))
        g = group_element(params)
        st["symp"] = max(st["symp"], symplectic_defect(g, sig))
        o = special_orthogonal_element(x)
        st["group"] = max(st["group"], o.group_residual)
        st["det"] = max(st["det"], abs(o.det - 1.0))
        g_inv = group_element(scale_params(params, -1))
        st["inverse"] = max(st["inverse"], float(np.max(np.abs(g.mat @ g_inv.mat - np.eye(2 * sig.n)))))

    for tag, st in stats.items():
        suffix = f" (sig {tag}, {st['draws']} draws)"
        report.add("A^T K + K A = 0" + suffix, st["sl"] == 0, f"max-abs {qq_str(st['sl'])}")
        report.add("X G + G X^T = 0" + suffix, st["ortho"] == 0, f"max-abs {qq_str(st['ortho'])}")
        report.add("g^T K g = K" + suffix, st["symp"] < tol.symplectic, f"max-abs {st['symp']:.3e}")
        report.add("O^T G O = G" + suffix, st["group"] < tol.ortho_group, f"max-abs {st['group']:.3e}")
        report.add("det O = 1" + suffix, st["det"] < tol.det, f"|det O - 1| = {st['det']:.3e}")
        report.add("g(A) g(-A) = I" + suffix, st["inverse"] < tol.homomorphism, f"max-abs {st['inverse']:.3e}")

    sig1 = Signature.euclidean(1)
    t1, t2 = rng.integers(-8, 9, size=2)
    d1 = scale_params(unit_direction("theta", sig1), QQ(int(t1), 8))
    d2 = scale_params(unit_direction("theta", sig1), QQ(int(t2), 8))
    lhs = group_element(d1).mat @ group_element(d2).mat
    rhs = group_element(add_params(d1, d2)).mat
    hom = float(np.max(np.abs(lhs - rhs)))
    report.add("g(theta1) g(theta2) = g(theta1 + theta2)", hom < tol.symplectic, f"max-abs {hom:.3e}")
    return report
