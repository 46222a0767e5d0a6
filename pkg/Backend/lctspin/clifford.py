"""
Explicit Clifford generators and the α±/β± labeling used by the spin construction.

Generators come from the Jordan–Wigner ladder on ⌈n/2⌉ qubits, so every entry
is in {0, ±1, ±i} and complex128 products are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from lctspin.config import MAX_GENERATORS, Signature
from lctspin.errors import DimensionMismatch, SizeLimit
from lctspin.logger import log_suite_execution
from lctspin.reports import CommTableReport, VerificationReport
from lctspin.utils.exact import from_gaussian_integers
from lctspin.utils.serialize import gaussian_integer_rows

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Frozen basis order: Γ = (α₊^0.., β₊^0.., β₋^0.., α₋^0..), paired with (p⁺, x⁻, x⁺, p⁻).
FAMILIES: Tuple[str, ...] = ("alpha_plus", "beta_plus", "beta_minus", "alpha_minus")
FAMILY_SYMBOLS: Dict[str, str] = {
    "alpha_plus": "a+",
    "beta_plus": "b+",
    "beta_minus": "b-",
    "alpha_minus": "a-",
}
# F^mu F^nu + F^nu F^mu = 2 · FAMILY_METRIC[F] · eta^{mu nu}
FAMILY_METRIC: Dict[str, int] = {
    "alpha_plus": 1,
    "beta_plus": 1,
    "beta_minus": -1,
    "alpha_minus": -1,
}


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    p: int
    q: int
    dim: int
    gens: Tuple[np.ndarray, ...]
    metric: Tuple[int, ...]

    @cached_property
    def exact(self) -> Tuple[DomainMatrix, ...]:
        return tuple(from_gaussian_integers(g) for g in self.gens)

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)


def _kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def build_generators(p: int, q: int, *, unsafe_size: bool = False) -> GeneratorSet:
    """Generators of C(p, q): the Euclidean ladder for p+q, last q multiplied by i."""
    n = p + q
    if p < 0 or q < 0 or n < 1:
        raise DimensionMismatch(f"C({p},{q}) needs p, q >= 0 and p + q >= 1")
    if n > MAX_GENERATORS and not unsafe_size:
        raise SizeLimit("clifford generators", MAX_GENERATORS, n)

    m = (n + 1) // 2
    gens: List[np.ndarray] = []
    for k in range(m):
        for pauli in (_X, _Y):
            factors = [_Z] * k + [pauli] + [_I2] * (m - k - 1)
            gens.append(_kron_all(factors))
    gens = gens[:n]
    gens = [g if a < p else 1j * g for a, g in enumerate(gens)]
    return GeneratorSet(
        p=p,
        q=q,
        dim=2 ** m,
        gens=tuple(gens),
        metric=(1,) * p + (-1,) * q,
    )


def _max_abs(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return int(max(np.abs(m.real).max(), np.abs(m.imag).max()))


def relation_defect(gens: GeneratorSet) -> int:
    """Max-abs entry over all pairs of Γ_aΓ_b + Γ_bΓ_a − 2·metric_ab·I (exact)."""
    eye = gens.identity()
    worst = 0
    for a, ga in enumerate(gens.gens):
        for b in range(a, len(gens.gens)):
            gb = gens.gens[b]
            target = 2 * gens.metric[a] * eye if a == b else 0
            worst = max(worst, _max_abs(ga @ gb + gb @ ga - target))
    return worst


@dataclass(frozen=True, eq=False)
class LctGenerators:
    sig: Signature
    raw: GeneratorSet
    alpha_plus: Tuple[np.ndarray, ...]
    beta_plus: Tuple[np.ndarray, ...]
    beta_minus: Tuple[np.ndarray, ...]
    alpha_minus: Tuple[np.ndarray, ...]
    raw_index: Dict[str, Tuple[int, ...]]

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def dim(self) -> int:
        return self.raw.dim

    def family(self, name: str) -> Tuple[np.ndarray, ...]:
        return getattr(self, name)

    def basis(self) -> List[np.ndarray]:
        return [g for name in FAMILIES for g in self.family(name)]

    def basis_labels(self) -> List[str]:
        return [f"{FAMILY_SYMBOLS[name]}^{mu}" for name in FAMILIES for mu in range(self.n)]

    @cached_property
    def exact_basis(self) -> Tuple[DomainMatrix, ...]:
        return tuple(from_gaussian_integers(g) for g in self.basis())

    def exact(self, name: str, mu: int) -> DomainMatrix:
        return self.exact_basis[FAMILIES.index(name) * self.n + mu]

    def basis_metric(self) -> Tuple[int, ...]:
        eta = self.sig.eta
        return tuple(FAMILY_METRIC[name] * eta[mu] for name in FAMILIES for mu in range(self.n))

    def as_generator_set(self) -> GeneratorSet:
        metric = self.basis_metric()
        return GeneratorSet(
            p=sum(1 for s in metric if s > 0),
            q=sum(1 for s in metric if s < 0),
            dim=self.dim,
            gens=tuple(self.basis()),
            metric=metric,
        )

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)


@lru_cache(maxsize=None)
def label_lct_generators(n: int, sig: Signature, *, unsafe_size: bool = False) -> LctGenerators:
    """
    Split C(2N, 2N) into the four families. For spacelike μ, α₊^μ and β₊^μ take
    +1-square generators and β₋^μ, α₋^μ take −1-square ones; timelike μ swaps.
    Within each pool the lowest unused raw index is taken first.
    """
    if n != sig.n:
        raise DimensionMismatch(f"N = {n} does not match signature {sig.tag}")
    raw = build_generators(2 * n, 2 * n, unsafe_size=unsafe_size)
    pools = {1: list(range(2 * n)), -1: list(range(2 * n, 4 * n))}
    chosen: Dict[str, List[int]] = {name: [] for name in FAMILIES}
    for name in FAMILIES:
        for mu in range(n):
            square = FAMILY_METRIC[name] * sig.eta[mu]
            chosen[name].append(pools[square].pop(0))
    return LctGenerators(
        sig=sig,
        raw=raw,
        raw_index={k: tuple(v) for k, v in chosen.items()},
        **{name: tuple(raw.gens[i] for i in chosen[name]) for name in FAMILIES},
    )


def volume_element(lg: LctGenerators) -> np.ndarray:
    """Ordered product of all basis generators; ε = α₊β₊β₋α₋ at N=1."""
    return reduce(np.matmul, lg.basis())


def bivectors(lg: LctGenerators) -> List[Tuple[Tuple[int, int], np.ndarray]]:
    basis = lg.basis()
    return [((a, b), basis[a] @ basis[b]) for a in range(len(basis)) for b in range(a + 1, len(basis))]


def volume_report(lg: LctGenerators) -> VerificationReport:
    report = VerificationReport(suite=f"volume-element-n{lg.n}")
    eps = volume_element(lg)
    eye = lg.identity()
    d = _max_abs(eps @ eps - eye)
    report.add("eps^2 = I", d == 0, f"max-abs {d}")
    labels = lg.basis_labels()
    worst, where = 0, None
    for (a, b), biv in bivectors(lg):
        d = _max_abs(eps @ biv - biv @ eps)
        if d > worst:
            worst, where = d, f"{labels[a]} {labels[b]}"
    report.add("[eps, bivector] = 0", worst == 0, f"max-abs {worst} at {where}")
    return report


def duplicate_beta_line_check(lg: LctGenerators) -> Dict[str, bool]:
    """The second β₊ metric line read literally (−2η) versus as the β₋ line."""
    eye = lg.identity()
    eta = lg.sig.eta
    literal, as_beta_minus = True, True
    for mu, nu in product(range(lg.n), repeat=2):
        target = -2 * (eta[mu] if mu == nu else 0) * eye
        bp = lg.beta_plus[mu] @ lg.beta_plus[nu] + lg.beta_plus[nu] @ lg.beta_plus[mu]
        bm = lg.beta_minus[mu] @ lg.beta_minus[nu] + lg.beta_minus[nu] @ lg.beta_minus[mu]
        literal &= _max_abs(bp - target) == 0
        as_beta_minus &= _max_abs(bm - target) == 0
    return {"printed_literal_pass": literal, "beta_minus_reading_pass": as_beta_minus}


# ──────────────── Commutator tables ──────────────── #

A, B, C, D = FAMILIES

# [X Y, Z] printed right-hand sides at N=1, rows in printed order: (coef, family) or None for 0.
TABLE_1D: Tuple[Tuple[Tuple[str, str], Dict[str, Optional[Tuple[int, str]]]], ...] = (
    ((A, B), {A: (-2, B), B: (2, A), C: None, D: None}),
    ((A, C), {A: (-2, C), B: None, C: (-2, A), D: None}),
    ((A, D), {A: (-2, D), B: None, C: None, D: (-2, A)}),
    ((B, D), {A: None, B: (-2, D), C: None, D: (-2, B)}),
    ((B, C), {A: None, B: (-2, C), C: (-2, B), D: None}),
    ((C, D), {A: None, B: None, C: (2, D), D: (-2, C)}),
)

# General N, printed: (coef, eta index pair, family, free index) or None; "mr" = eta^{mu rho}, "nr" = eta^{nu rho}.
TABLE_ND: Tuple[Tuple[Tuple[str, str], Dict[str, Optional[Tuple[int, str, str, str]]]], ...] = (
    ((A, A), {A: (2, "nr", A, "mu"), B: None, C: None, D: None}),
    ((B, B), {A: None, B: (2, "nr", B, "mu"), C: None, D: None}),
    ((C, C), {A: None, B: None, C: (-2, "nr", C, "mu"), D: None}),
    ((D, D), {A: None, B: None, C: None, D: (-2, "nr", D, "mu")}),
    ((A, D), {A: (-2, "mr", D, "nu"), B: None, C: None, D: (2, "nr", A, "mu")}),
    ((A, B), {A: (-2, "mr", B, "nu"), B: (2, "nr", A, "mu"), C: None, D: None}),
    ((A, C), {A: (-2, "mr", C, "nu"), B: None, C: (-2, "nr", A, "mu"), D: None}),
    ((B, C), {A: None, B: (-2, "mr", B, "nu"), C: (-2, "nr", B, "mu"), D: None}),
    ((B, D), {A: None, B: (2, "mr", D, "nu"), C: None, D: (-2, "nr", B, "mu")}),
    ((C, D), {A: None, D: (-2, "nr", C, "mu"), C: (2, "mr", D, "nu"), B: None}),
)


def _derived_rhs(lg: LctGenerators, x: str, y: str, z: str, mu: int, nu: int, rho: int) -> np.ndarray:
    """[X^μ Y^ν, Z^ρ] = 2 g(Y^ν, Z^ρ) X^μ − 2 g(X^μ, Z^ρ) Y^ν."""
    eta = lg.sig.eta
    out = np.zeros((lg.dim, lg.dim), dtype=complex)
    if y == z and nu == rho:
        out += 2 * FAMILY_METRIC[y] * eta[nu] * lg.family(x)[mu]
    if x == z and mu == rho:
        out -= 2 * FAMILY_METRIC[x] * eta[mu] * lg.family(y)[nu]
    return out


def _printed_rhs_nd(lg: LctGenerators, entry, mu: int, nu: int, rho: int) -> np.ndarray:
    out = np.zeros((lg.dim, lg.dim), dtype=complex)
    if entry is None:
        return out
    coef, pair, family, free = entry
    first = mu if pair == "mr" else nu
    if first != rho:
        return out
    idx = mu if free == "mu" else nu
    return coef * lg.sig.eta[rho] * lg.family(family)[idx]


def _line_id_1d(x: str, y: str, z: str, entry) -> str:
    rhs = "0" if entry is None else f"{entry[0]:+d} {FAMILY_SYMBOLS[entry[1]]}"
    return f"[{FAMILY_SYMBOLS[x]}{FAMILY_SYMBOLS[y]}, {FAMILY_SYMBOLS[z]}] = {rhs}"


def _line_id_nd(x: str, y: str, z: str, entry) -> str:
    lhs = f"[{FAMILY_SYMBOLS[x]}^mu {FAMILY_SYMBOLS[y]}^nu, {FAMILY_SYMBOLS[z]}^rho]"
    if entry is None:
        return f"{lhs} = 0"
    coef, pair, family, free = entry
    idx = "mu rho" if pair == "mr" else "nu rho"
    return f"{lhs} = {coef:+d} eta^{{{idx}}} {FAMILY_SYMBOLS[family]}^{free}"


@log_suite_execution
def comm_table_check(lg: LctGenerators, table: Optional[str] = None) -> CommTableReport:
    """
    Evaluate the bivector/generator commutator table by exact matrix arithmetic.

    table="1d" checks the 24 printed N=1 lines; table="nd" checks the 40
    indexed lines over all (μ, ν, ρ). Default: "1d" at N=1, "nd" otherwise.
    A line passes when the derived identity holds; `printed_pass` says whether
    the printed right-hand side holds as well.
    """
    table = table or ("1d" if lg.n == 1 else "nd")
    if table == "1d" and lg.n != 1:
        raise DimensionMismatch("the one-dimensional table needs N = 1")
    report = CommTableReport(suite=f"clifford-{table}-n{lg.n}")
    report.data["signature"] = lg.sig.tag

    if table == "1d":
        for (x, y), targets in TABLE_1D:
            biv = lg.family(x)[0] @ lg.family(y)[0]
            for z in FAMILIES:
                entry = targets[z]
                gz = lg.family(z)[0]
                lhs = biv @ gz - gz @ biv
                derived = _derived_rhs(lg, x, y, z, 0, 0, 0)
                printed = np.zeros_like(lhs) if entry is None else entry[0] * lg.family(entry[1])[0]
                d_derived = _max_abs(lhs - derived)
                d_printed = _max_abs(lhs - printed)
                report.add_comm(
                    _line_id_1d(x, y, z, entry),
                    passed=d_derived == 0,
                    printed_pass=d_printed == 0,
                    witness=f"max-abs {d_derived}",
                )
        return report

    n = lg.n
    for (x, y), targets in TABLE_ND:
        for z in FAMILIES:
            entry = targets[z]
            worst_derived, worst_triple = 0, None
            printed_fail: List[str] = []
            for mu, nu, rho in product(range(n), repeat=3):
                biv = lg.family(x)[mu] @ lg.family(y)[nu]
                gz = lg.family(z)[rho]
                lhs = biv @ gz - gz @ biv
                d_derived = _max_abs(lhs - _derived_rhs(lg, x, y, z, mu, nu, rho))
                if d_derived > worst_derived:
                    worst_derived, worst_triple = d_derived, (mu, nu, rho)
                if _max_abs(lhs - _printed_rhs_nd(lg, entry, mu, nu, rho)):
                    printed_fail.append(f"({mu},{nu},{rho})")
            note = None
            if printed_fail:
                note = "printed form fails at (mu,nu,rho) in " + " ".join(printed_fail)
            report.add_comm(
                _line_id_nd(x, y, z, entry),
                passed=worst_derived == 0,
                printed_pass=not printed_fail,
                witness=f"max-abs {worst_derived} at (mu,nu,rho)={worst_triple}",
                note=note,
            )
    return report


def generators_dump(gens: GeneratorSet) -> Dict[str, object]:
    return {
        "p": gens.p,
        "q": gens.q,
        "dim": gens.dim,
        "metric": list(gens.metric),
        "generators": [gaussian_integer_rows(g) for g in gens.gens],
    }


def relations_report(shapes: Sequence[Tuple[int, int]], *, unsafe_size: bool = False) -> VerificationReport:
    report = VerificationReport(suite="clifford-relations")
    for p, q in shapes:
        gs = build_generators(p, q, unsafe_size=unsafe_size)
        d = relation_defect(gs)
        report.add(f"C({p},{q}) relation defect = 0", d == 0, f"max-abs {d}")
    return report
