"""
The operator P in Clifford ⊗ σ ⊗ Weyl, its square, the U-operator algebra and
the quartic invariant Q = P⁴ + 4(𝕀⊗σ³)P².

Matrix ordering is kron(Clifford, σ): dimension 8 at N=1 and 32 at N=2.
Everything here is exact; there are no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from lctspin.clifford import FAMILIES, LctGenerators, label_lct_generators, volume_element
from lctspin.config import INVARIANT_MIXED_DRAWS, KAPPA_GRID, SIZE_CAPS, Signature
from lctspin.errors import DimensionMismatch, SizeLimit
from lctspin.lct_core import LctParams, random_params, unit_direction
from lctspin.logger import log_lab_util, log_suite_execution
from lctspin.phase_ops import QUADRUPLE_FAMILIES, build_dispersion, build_reduced
from lctspin.reports import VerificationReport
from lctspin.spin_rep import SpinConvention, resolve_spin_convention, spin_generator
from lctspin.utils.exact import diag, eye, first_nonzero, from_gaussian_integers, kron, zeros
from lctspin.weyl import (
    CommutationConvention,
    ExactScalar,
    OperatorPoly,
    WeylPoly,
    commutator,
    symmetric_split,
)

A, B, C, D = FAMILIES
U_KINDS: Tuple[str, ...] = ("plus", "minus", "cross", "lam", "zero")
U_SYMBOLS: Dict[str, str] = {"plus": "U+", "minus": "U-", "cross": "Ux", "zero": "U0"}

_HALF = QQ_I(QQ(1, 2), 0)
_QUARTER = QQ_I(QQ(1, 4), 0)


def _sigma3() -> DomainMatrix:
    return diag([1, -1], QQ_I)


def _eye2() -> DomainMatrix:
    return eye(2, QQ_I)


def _g(v) -> object:
    return QQ_I(v, 0)


# ──────────────── P ──────────────── #


@dataclass(frozen=True, eq=False)
class POperator:
    op: OperatorPoly
    lg: LctGenerators
    conv: CommutationConvention
    terms: int

    @property
    def n(self) -> int:
        return self.lg.n

    @property
    def sig(self) -> Signature:
        return self.lg.sig

    @property
    def dim(self) -> int:
        return self.op.dim


def _guard_symbolic(n: int, unsafe_size: bool) -> None:
    cap = SIZE_CAPS["symbolic"]
    if n > cap and not unsafe_size:
        raise SizeLimit("quartic pipeline", cap, n)


def build_P(
    n: int,
    sig: Signature,
    c: CommutationConvention,
    *,
    symbols: Optional[Tuple[Sequence[WeylPoly], Sequence[WeylPoly]]] = None,
    unsafe_size: bool = False,
) -> POperator:
    """P = Σ_μ (α₊^μ ⊗ p⁺_μ + β₊^μ ⊗ x⁻_μ + β₋^μ ⊗ x⁺_μ + α₋^μ ⊗ p⁻_μ)."""
    _guard_symbolic(n, unsafe_size)
    lg = label_lct_generators(n, sig)
    q = build_reduced(n, sig, c, symbols)
    op = OperatorPoly.zeros(2 * lg.dim, c)
    terms = 0
    for cliff, quad in zip(FAMILIES, QUADRUPLE_FAMILIES):
        for mu in range(n):
            op = op + OperatorPoly.kron(lg.exact(cliff, mu), q.family(quad)[mu])
            terms += 1
    return POperator(op=op, lg=lg, conv=c, terms=terms)


# ──────────────── U-operators ──────────────── #


@dataclass(frozen=True, eq=False)
class UOperators:
    """
    Indexed families U^{μν} (Clifford bivector combination ⊗ σ³) plus ε ⊗ I₂.
    `table` and `report` are only filled at N=1.
    """

    lg: LctGenerators
    plus: Dict[Tuple[int, int], DomainMatrix]
    minus: Dict[Tuple[int, int], DomainMatrix]
    cross: Dict[Tuple[int, int], DomainMatrix]
    lam: Dict[Tuple[int, int], DomainMatrix]
    zero: Dict[Tuple[int, int], DomainMatrix]
    epsilon: DomainMatrix
    table: Dict[str, str] = field(default_factory=dict)
    report: Optional[VerificationReport] = None

    @property
    def n(self) -> int:
        return self.lg.n

    def family(self, kind: str) -> Dict[Tuple[int, int], DomainMatrix]:
        return getattr(self, kind)

    def named(self, kind: str) -> DomainMatrix:
        """The N=1 operators U₊, U₋, U_×, U₀."""
        if self.n != 1:
            raise DimensionMismatch("named U-operators exist only at N = 1")
        return self.family(kind)[(0, 0)]

    def as_operator(self, kind: str, mu: int, nu: int, conv: CommutationConvention) -> OperatorPoly:
        return OperatorPoly.from_constant(self.family(kind)[(mu, nu)], conv)


def _bivector_combo(lg: LctGenerators, terms, mu: int, nu: int) -> DomainMatrix:
    """Σ sign·F^a G^b over `terms` = ((sign, F, a_is_mu, G, b_is_mu), ...)."""
    acc = zeros(lg.dim, QQ_I)
    for sign, f1, first_mu, f2, second_mu in terms:
        i1 = mu if first_mu else nu
        i2 = mu if second_mu else nu
        term = lg.exact(f1, i1).matmul(lg.exact(f2, i2))
        acc = acc.add(term) if sign > 0 else acc.sub(term)
    return acc


# (coefficient, terms) with terms as in _bivector_combo
_U_DEFS = {
    "plus": (_HALF, ((1, A, True, B, False), (1, C, True, D, False))),
    "minus": (_HALF, ((1, A, True, C, False), (1, B, True, D, False))),
    "cross": (_HALF, ((1, A, True, D, False), (-1, B, True, C, False))),
    "lam": (_QUARTER, ((1, A, True, A, False), (1, B, True, B, False), (-1, C, True, C, False), (-1, D, True, D, False))),
    "zero": (_HALF, ((1, A, True, B, False), (-1, C, False, D, True))),
}

# Printed multi-index forms: U₊ and U₋ are written as anticommutators, U_× with a plus sign.
_PRINTED_U_DEFS = {
    "plus": (_HALF, ((1, A, True, B, False), (1, B, False, A, True))),
    "minus": (_HALF, ((1, A, True, C, False), (1, C, False, A, True))),
    "cross": (_HALF, ((1, A, True, D, False), (1, B, False, C, True))),
}


def _u_family(lg: LctGenerators, defs, kind: str) -> Dict[Tuple[int, int], DomainMatrix]:
    coef, terms = defs[kind]
    s3 = _sigma3()
    return {
        (mu, nu): kron(_bivector_combo(lg, terms, mu, nu).scalarmul(coef), s3)
        for mu, nu in product(range(lg.n), repeat=2)
    }


def _full_constants(lg: LctGenerators) -> Tuple[DomainMatrix, DomainMatrix]:
    """(𝕀 ⊗ I₂, 𝕀 ⊗ σ³) on the full space."""
    cliff_eye = eye(lg.dim, QQ_I)
    return kron(cliff_eye, _eye2()), kron(cliff_eye, _sigma3())


# (line id, left, right, rhs builder)
_PRINTED_TABLE: List[Tuple[str, str, str, Callable[[Dict[str, DomainMatrix]], DomainMatrix]]] = [
    ("U+ U+ = 1/2 (eps - I)", "plus", "plus", lambda m: m["eps"].sub(m["one"]).scalarmul(_HALF)),
    ("U- U- = -1/2 (eps - I)", "minus", "minus", lambda m: m["one"].sub(m["eps"]).scalarmul(_HALF)),
    ("Ux Ux = -1/2 (eps - I)", "cross", "cross", lambda m: m["one"].sub(m["eps"]).scalarmul(_HALF)),
    ("U0 U0 = -1/2 (eps + I)", "zero", "zero", lambda m: m["eps"].add(m["one"]).scalarmul(-_HALF)),
    ("U+ U- = (I x sigma3) Ux", "plus", "minus", lambda m: m["s3"].matmul(m["cross"])),
    ("U- U+ = -(I x sigma3) Ux", "minus", "plus", lambda m: m["s3"].matmul(m["cross"]).neg()),
    ("U- Ux = -(I x sigma3) U+", "minus", "cross", lambda m: m["s3"].matmul(m["plus"]).neg()),
    ("Ux U- = (I x sigma3) U+", "cross", "minus", lambda m: m["s3"].matmul(m["plus"])),
    ("Ux U+ = (I x sigma3) U-", "cross", "plus", lambda m: m["s3"].matmul(m["minus"])),
    ("U+ Ux = -(I x sigma3) U-", "plus", "cross", lambda m: m["s3"].matmul(m["minus"]).neg()),
    ("U+ U0 = 0", "plus", "zero", lambda m: m["null"]),
    ("U0 U+ = 0", "zero", "plus", lambda m: m["null"]),
    ("U- U0 = 0", "minus", "zero", lambda m: m["null"]),
    ("U0 U- = 0", "zero", "minus", lambda m: m["null"]),
]
_OMITTED = (("cross", "zero"), ("zero", "cross"))


def _matrix_witness(m: DomainMatrix) -> Optional[str]:
    hit = first_nonzero(m)
    if hit is None:
        return None
    i, j, v = hit
    return f"[{i},{j}] = {v}"


def _u_table_report(u: UOperators) -> Tuple[Dict[str, str], VerificationReport]:
    report = VerificationReport(suite="u-algebra-n1")
    one, s3 = _full_constants(u.lg)
    mats = {kind: u.named(kind) for kind in U_SYMBOLS}
    mats.update({"eps": u.epsilon, "one": one, "s3": s3, "null": zeros(one.shape[0], QQ_I)})
    table: Dict[str, str] = {}
    for line_id, left, right, rhs in _PRINTED_TABLE:
        diff = mats[left].matmul(mats[right]).sub(rhs(mats))
        report.add(line_id, diff.is_zero_matrix, _matrix_witness(diff))
        table[f"{U_SYMBOLS[left]} {U_SYMBOLS[right]}"] = line_id
    report.add(
        "U+ U0 = 0 (second printed occurrence)",
        mats["plus"].matmul(mats["zero"]).is_zero_matrix,
        note="the table repeats this line where Ux U0 is expected",
        informational=True,
    )
    for left, right in _OMITTED:
        prod = mats[left].matmul(mats[right])
        line_id = f"{U_SYMBOLS[left]} {U_SYMBOLS[right]} = 0"
        report.add(line_id, prod.is_zero_matrix, _matrix_witness(prod), note="omitted from the printed table")
        table[f"{U_SYMBOLS[left]} {U_SYMBOLS[right]}"] = "omitted"

    eps = u.epsilon
    report.add("eps^2 = I", eps.matmul(eps).sub(one).is_zero_matrix, _matrix_witness(eps.matmul(eps).sub(one)))
    for kind, symbol in U_SYMBOLS.items():
        comm = eps.matmul(mats[kind]).sub(mats[kind].matmul(eps))
        report.add(f"[eps, {symbol}] = 0", comm.is_zero_matrix, _matrix_witness(comm))
    report.data["table"] = table
    return table, report


@lru_cache(maxsize=None)
def build_U(n: int, sig: Signature) -> UOperators:
    """U₊, U₋, U_×, U_λ, U₀ for every (μ, ν); at N=1 the full 16-product table is checked."""
    lg = label_lct_generators(n, sig)
    families = {kind: _u_family(lg, _U_DEFS, kind) for kind in U_KINDS}
    epsilon = kron(from_gaussian_integers(volume_element(lg)), _eye2())
    u = UOperators(lg=lg, epsilon=epsilon, **families)
    if n == 1:
        table, report = _u_table_report(u)
        u.table.update(table)
        object.__setattr__(u, "report", report)
    return u


def u_form_check(
    params: LctParams, lg: LctGenerators, conv: Optional[SpinConvention] = None
) -> Tuple[bool, Optional[str]]:
    """ϑ ⊗ I₂ = Σ((ηθ)U₊ − (ηφ)U₋ − (ηm)U_× + (ηλ)ᵀU_λ)(𝕀 ⊗ σ³), times the ϑ sign."""
    conv = conv or resolve_spin_convention(params.sig)
    u = build_U(lg.n, lg.sig)
    eta = lg.sig.eta
    _, s3 = _full_constants(lg)
    acc = zeros(2 * lg.dim, QQ_I)
    for kind, part, sign, transposed in (
        ("plus", "theta", 1, False),
        ("minus", "phi", -1, False),
        ("cross", "mu", -1, False),
        ("lam", "lambda", 1, True),
    ):
        for (mu, nu), v in params.part(kind=part).to_dok().items():
            if not v:
                continue
            weight = v * eta[mu] * sign * conv.sign
            key = (nu, mu) if transposed else (mu, nu)
            acc = acc.add(u.family(kind)[key].scalarmul(_g(weight)))
    rhs = acc.matmul(s3)
    lhs = kron(spin_generator(params, lg, conv).mat, _eye2())
    diff = lhs.sub(rhs)
    return diff.is_zero_matrix, _matrix_witness(diff)


# ──────────────── P² ──────────────── #


@dataclass(frozen=True, eq=False)
class SquareDecomposition:
    square: OperatorPoly
    D: OperatorPoly
    constant: OperatorPoly
    report: VerificationReport

    @property
    def passed(self) -> bool:
        return self.report.passed

    def summary(self) -> str:
        return self.report.summary()


def _weyl_sum(terms: Sequence[Tuple[DomainMatrix, WeylPoly]], dim: int, conv: CommutationConvention) -> OperatorPoly:
    acc = OperatorPoly.zeros(dim, conv)
    for mat, f in terms:
        if mat.is_zero_matrix or f.is_zero():
            continue
        acc = acc + OperatorPoly.kron(mat, OperatorPoly.scalar(f))
    return acc


def reconstructed_D(P: POperator, u: UOperators) -> OperatorPoly:
    """−8i Σ_{μν}[U₊z⁺ − U₋z⁻ + U_×·zs − U_λ·za]."""
    z = build_dispersion(P.n, P.sig, P.conv)
    terms = []
    for mu, nu in product(range(P.n), repeat=2):
        terms.append((u.plus[(mu, nu)], z.poly("zplus", mu, nu)))
        terms.append((u.minus[(mu, nu)].neg(), z.poly("zminus", mu, nu)))
        terms.append((u.cross[(mu, nu)], z.poly("zcross_sym", mu, nu)))
        terms.append((u.lam[(mu, nu)].neg(), z.poly("zcross_anti", mu, nu)))
    return _weyl_sum(terms, P.dim, P.conv).scale(ExactScalar.of(0, -8))


def printed_D(P: POperator) -> OperatorPoly:
    """The multi-index D with the U₊, U₋, U_× families exactly as printed; U_λ as reconstructed."""
    lg = P.lg
    z = build_dispersion(P.n, P.sig, P.conv)
    printed = {kind: _u_family(lg, _PRINTED_U_DEFS, kind) for kind in _PRINTED_U_DEFS}
    lam = _u_family(lg, _U_DEFS, "lam")
    terms = []
    for mu, nu in product(range(P.n), repeat=2):
        terms.append((printed["plus"][(mu, nu)], z.poly("zplus", mu, nu)))
        terms.append((printed["minus"][(mu, nu)].neg(), z.poly("zminus", mu, nu)))
        terms.append((printed["cross"][(mu, nu)], z.poly("zcross_sym", mu, nu)))
        terms.append((lam[(mu, nu)].neg(), z.poly("zcross_anti", mu, nu)))
    return _weyl_sum(terms, P.dim, P.conv).scale(ExactScalar.of(0, -8))


def printed_constant_nd(P: POperator, u: UOperators) -> DomainMatrix:
    """−2(𝕀⊗σ³)(N𝕀⊗I₂ − i η_{μν}U₀^{μν}), as printed."""
    one, s3 = _full_constants(P.lg)
    eta = P.sig.eta
    inner = one.scalarmul(_g(P.n))
    for mu in range(P.n):
        inner = inner.sub(u.zero[(mu, mu)].scalarmul(QQ_I(0, eta[mu])))
    return s3.matmul(inner).scalarmul(_g(-2))


def _one_dim_lines(report: VerificationReport, P: POperator, D_part: OperatorPoly, const: OperatorPoly, u: UOperators):
    lg, conv = P.lg, P.conv
    c = conv.c(0, 0)
    one, s3 = _full_constants(lg)
    ab = kron(lg.exact(A, 0).matmul(lg.exact(B, 0)), _eye2())
    cd = kron(lg.exact(C, 0).matmul(lg.exact(D, 0)), _eye2())

    def const_line(line_id: str, expected: DomainMatrix, informational: bool = False, note=None):
        diff = const - OperatorPoly.from_constant(expected, conv)
        report.add(line_id, diff.is_zero(), diff.witness(), informational=informational, note=note)

    # 2icσ³ + c(α₊β₊ − β₋α₋); the printed forms take c = −i
    general = s3.scalarmul(QQ_I(0, 2) * c).add(ab.sub(cd).scalarmul(c))
    const_line("constant = 2 sigma3 - i (a+b+ - b-a-) with -i read as c", general)
    u0 = u.named("zero")
    const_line(
        "constant = 2 (I x sigma3)(I x I2 - i U0) with -i read as c",
        s3.matmul(one.scalarmul(QQ_I(0, 1) * c).add(u0.scalarmul(c))).scalarmul(_g(2)),
    )
    const_line(
        "printed: constant = 2 I x sigma3 - i (a+b+ - b-a-) x I2",
        s3.scalarmul(_g(2)).sub(ab.sub(cd).scalarmul(QQ_I(0, 1))),
        informational=True,
        note="literal form; holds for minus_i_eta",
    )
    const_line(
        "printed: constant = 2 (I x sigma3)(I x I2 - i U0)",
        s3.matmul(one.sub(u0.scalarmul(QQ_I(0, 1)))).scalarmul(_g(2)),
        informational=True,
    )

    z = build_dispersion(1, P.sig, conv)
    zp, zm, zx = z.poly("zplus", 0, 0), z.poly("zminus", 0, 0), z.poly("zcross", 0, 0)

    def cliff(f1, f2):
        return lg.exact(f1, 0).matmul(lg.exact(f2, 0))

    s3_small = _sigma3()
    d_315 = _weyl_sum(
        [
            (kron(cliff(A, B).add(cliff(C, D)), s3_small), zp),
            (kron(cliff(A, C).add(cliff(B, D)), s3_small).neg(), zm),
            (kron(cliff(A, D).sub(cliff(B, C)), s3_small), zx),
        ],
        P.dim,
        conv,
    ).scale(ExactScalar.of(0, -4))
    diff = D_part - d_315
    report.add("D = -4i[(a+b+ + b-a-) s3 z+ - (a+b- + b+a-) s3 z- + (a+a- - b+b-) s3 zx]", diff.is_zero(), diff.witness())
    d_317 = _weyl_sum(
        [(u.named("plus"), zp), (u.named("minus").neg(), zm), (u.named("cross"), zx)], P.dim, conv
    ).scale(ExactScalar.of(0, -8))
    diff = D_part - d_317
    report.add("D = -8i[U+ z+ - U- z- + Ux zx]", diff.is_zero(), diff.witness())


@log_suite_execution
def square_decomposition(P: POperator) -> SquareDecomposition:
    """
    P² split into its symmetric-ordered quadratic part D and a constant remainder.
    D is compared with the dispersion-operator forms, the constant with the printed ones.
    """
    report = VerificationReport(suite=f"square-n{P.n}[{P.conv.tag}]")
    square = P.op @ P.op
    D_part, const = symmetric_split(square, 2)
    report.add("P^2 has Weyl degree 2", square.degree() == 2, f"degree {square.degree()}")
    report.add("P^2 - D is symbol free", const.degree() <= 0, const.witness())

    u = build_U(P.n, P.sig)
    if P.n == 1:
        _one_dim_lines(report, P, D_part, const, u)

    diff = D_part - reconstructed_D(P, u)
    report.add("D = -8i sum[U+ z+ - U- z- + Ux zs - Ulam za]", diff.is_zero(), diff.witness())
    diff = D_part - printed_D(P)
    report.add(
        "printed: D with U+, U- as anticommutators and Ux = 1/2 (a+a- + b+b-) s3",
        diff.is_zero(),
        diff.witness(),
        informational=True,
        note="the printed U+ and U- vanish identically",
    )

    printed = printed_constant_nd(P, u)
    sign = P.conv.sign
    diff = const - OperatorPoly.from_constant(printed.scalarmul(_g(sign)), P.conv)
    report.add(
        "constant = s * (-2 (I x sigma3)(N I x I2 - i eta U0)), s the convention sign",
        diff.is_zero(),
        diff.witness(),
        note=f"s = {sign:+d}",
    )
    diff = const - OperatorPoly.from_constant(printed, P.conv)
    report.add(
        "printed: constant = -2 (I x sigma3)(N I x I2 - i eta U0)",
        diff.is_zero(),
        diff.witness(),
        informational=True,
        note="literal form; holds for plus_i_eta",
    )
    report.data["constant_sign"] = sign
    report.data["convention"] = P.conv.tag
    return SquareDecomposition(square=square, D=D_part, constant=const, report=report)


# ──────────────── Invariant ──────────────── #


def theta_operator(params: LctParams, P: POperator, conv: Optional[SpinConvention] = None) -> OperatorPoly:
    """ϑ ⊗ I₂ as a constant operator on P's space."""
    theta = spin_generator(params, P.lg, conv).mat
    return OperatorPoly.from_constant(kron(theta, _eye2()), P.conv)


def constant_invariance_check(
    P: POperator, params: LctParams, decomposition: Optional[SquareDecomposition] = None,
    conv: Optional[SpinConvention] = None,
) -> Tuple[bool, Optional[str]]:
    """[ϑ ⊗ I₂, P² − D] = 0."""
    decomposition = decomposition or square_decomposition(P)
    comm = commutator(theta_operator(params, P, conv), decomposition.constant)
    return comm.is_zero(), comm.witness()


def _sigma3_operator(P: POperator) -> OperatorPoly:
    _, s3 = _full_constants(P.lg)
    return OperatorPoly.from_constant(s3, P.conv)


def quartic_invariant(P: POperator, square: Optional[OperatorPoly] = None) -> OperatorPoly:
    """Q = P⁴ + 4(𝕀⊗σ³)P², with P⁴ formed as (P²)²."""
    square = square if square is not None else P.op @ P.op
    return square @ square + (_sigma3_operator(P) @ square).scale(4)


@log_suite_execution
def invariant_commutator(
    c: CommutationConvention,
    directions: Sequence[str] = ("theta", "phi", "mu"),
    rng: Optional[np.random.Generator] = None,
    draws: int = INVARIANT_MIXED_DRAWS,
    spin_conv: Optional[SpinConvention] = None,
) -> VerificationReport:
    """
    At N=1: [ϑ ⊗ I₂, Q] = 0 exactly for each one-parameter direction and for random
    λ-free parameters, while P² itself is not invariant.
    """
    sig = Signature.euclidean(1)
    if c.n != 1:
        raise DimensionMismatch("the quartic invariant is checked at N = 1")
    spin_conv = spin_conv or resolve_spin_convention(sig)
    report = VerificationReport(suite=f"invariant[{c.tag}]")
    P = build_P(1, sig, c)
    decomposition = square_decomposition(P)
    square = decomposition.square
    quartic = square @ square
    Q = quartic + (_sigma3_operator(P) @ square).scale(4)

    degrees: Dict[str, Dict[str, int]] = {}
    square_moves = []
    for kind in directions:
        params = unit_direction(kind, sig)
        theta = theta_operator(params, P, spin_conv)
        comm_q = commutator(theta, Q)
        report.add(f"[theta_{kind} x I2, Q] = 0", comm_q.is_zero(), comm_q.witness())
        comm2 = commutator(theta, square)
        comm4 = commutator(theta, quartic)
        square_moves.append((kind, comm2))
        degrees[kind] = {"P^2": comm2.degree(), "P^4": comm4.degree()}
        for k, comm in ((2, comm2), (4, comm4)):
            report.add(f"deg [theta_{kind}, P^{k}] <= {k}", comm.degree() <= k, f"degree {comm.degree()}")
        report.add(
            f"deg [theta_{kind}, P^4] = 2",
            comm4.degree() == 2,
            f"degree {comm4.degree()}",
            informational=True,
            note="the quartic part cancels: it multiplies a central element",
        )
        ok, witness = constant_invariance_check(P, params, decomposition, spin_conv)
        report.add(f"[theta_{kind} x I2, P^2 - D] = 0", ok, witness)

    moving = [kind for kind, comm in square_moves if not comm.is_zero()]
    report.add(
        "P^2 is not invariant: [theta, P^2] != 0 for some direction",
        bool(moving),
        "every direction commutes with P^2",
        note=f"nonzero for {', '.join(moving) or 'none'}",
    )

    rng = rng if rng is not None else np.random.default_rng(0)
    worst = None
    for _ in range(draws):
        comm = commutator(theta_operator(random_params(rng, sig), P, spin_conv), Q)
        if not comm.is_zero():
            worst = comm.witness()
            break
    report.add(f"[theta(params) x I2, Q] = 0 on {draws} random draws", worst is None, worst)

    comm = commutator(_sigma3_operator(P), Q)
    report.add("[I x sigma3, Q] = 0", comm.is_zero(), comm.witness())
    report.data["degrees"] = degrees
    report.data["spin_convention"] = spin_conv.tag
    return report


@log_suite_execution
def nd_invariant_probe(
    n: int,
    sig: Signature,
    c: CommutationConvention,
    directions: Sequence[str] = ("theta", "phi", "mu", "lambda"),
    kappa_grid: Sequence[Tuple[int, int]] = KAPPA_GRID,
    *,
    unsafe_size: bool = False,
    spin_conv: Optional[SpinConvention] = None,
) -> VerificationReport:
    """
    Exploratory: [ϑ_dir, P²], [ϑ_dir, P⁴] and P⁴ + κ(𝕀⊗σ³)P² over a rational κ grid.
    An empty candidate list is a valid outcome.
    """
    if n < 2:
        raise DimensionMismatch("the N-D probe needs N >= 2; N = 1 is the invariant suite")
    _guard_symbolic(n, unsafe_size)
    spin_conv = spin_conv or resolve_spin_convention(sig, unsafe_size=unsafe_size)
    report = VerificationReport(suite=f"nd-probe-n{n}", exploratory=True)
    P = build_P(n, sig, c, unsafe_size=unsafe_size)
    square = P.op @ P.op
    log_lab_util(f"nd-probe: P^2 has {square.nnz()} nonzero entries; forming P^4")
    quartic = square @ square
    s3 = _sigma3_operator(P)

    comms: Dict[str, Tuple[OperatorPoly, OperatorPoly]] = {}
    degrees: Dict[str, Dict[str, int]] = {}
    for kind in directions:
        theta = theta_operator(unit_direction(kind, sig), P, spin_conv)
        comm2, comm4 = commutator(theta, square), commutator(theta, quartic)
        comms[kind] = (comm2, comm4)
        degrees[kind] = {"P^2": comm2.degree(), "P^4": comm4.degree()}
        report.add(f"[theta_{kind}, P^2] = 0", comm2.is_zero(), comm2.witness())
        report.add(f"[theta_{kind}, P^4] = 0", comm4.is_zero(), comm4.witness())

    candidates: List[str] = []
    for num, den in kappa_grid:
        kappa = ExactScalar(QQ_I(QQ(num, den), 0))
        label = f"{num}/{den}" if den != 1 else str(num)
        failing = None
        for kind, (comm2, comm4) in comms.items():
            total = comm4 + (s3 @ comm2).scale(kappa)
            if not total.is_zero():
                failing = f"{kind}: {total.witness()}"
                break
        report.add(f"[theta, P^4 + {label} (I x sigma3) P^2] = 0 for all directions", failing is None, failing)
        if failing is None:
            candidates.append(label)
    report.data.update({"candidates": candidates, "degrees": degrees, "directions": list(directions)})
    return report


# ──────────────── Suites ──────────────── #


@log_suite_execution
def square_report(conv_tag: str, sigs: Sequence[Signature], *, unsafe_size: bool = False) -> VerificationReport:
    report = VerificationReport(suite="square")
    for sig in sigs:
        c = CommutationConvention.from_tag(conv_tag, sig.eta)
        decomposition = square_decomposition(build_P(sig.n, sig, c, unsafe_size=unsafe_size))
        report.extend(decomposition.report, prefix=f"(sig {sig.tag}) ")
        report.data[sig.tag] = decomposition.report.data
    return report


@log_suite_execution
def u_algebra_report(
    sigs: Sequence[Signature], rng: np.random.Generator, draws: int = INVARIANT_MIXED_DRAWS
) -> VerificationReport:
    report = VerificationReport(suite="u-algebra")
    u1 = build_U(1, Signature.euclidean(1))
    report.extend(u1.report)
    report.data["table"] = dict(u1.table)
    for sig in sigs:
        lg = label_lct_generators(sig.n, sig)
        conv = resolve_spin_convention(sig)
        failing = None
        for _ in range(draws):
            ok, witness = u_form_check(random_params(rng, sig), lg, conv)
            if not ok:
                failing = witness
                break
        report.add(f"theta x I2 = U-operator form (sig {sig.tag}, {draws} draws)", failing is None, failing)
    return report
