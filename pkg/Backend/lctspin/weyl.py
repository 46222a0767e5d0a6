"""
Exact noncommutative kernel.

Polynomials in the symbols p_mu, x_mu are kept in normal order (all x before
all p, indices ascending) with coefficients in Q(i)[sqrt 2]. The commutation
constant [p_mu, x_nu] = c_{mu nu} is part of every value, and mixing values
with different constants raises ConventionMismatch.

Debug format (stable, used for failure witnesses):
    "(3/2 + 1/2√2 i)·x0^2 p1 + -i·p0 + 2"
terms sorted by descending degree, the zero polynomial prints as "0".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from lctspin.errors import ConventionMismatch, DimensionMismatch
from lctspin.utils.exact import qq_str

_GZERO = QQ_I(0, 0)
_GONE = QQ_I(1, 0)


# ──────────────── Scalars ──────────────── #


class ExactScalar:
    """a + b·√2 with a, b Gaussian rationals."""

    __slots__ = ("a", "b")

    def __init__(self, a=_GZERO, b=_GZERO):
        self.a = a
        self.b = b

    @classmethod
    def of(cls, re=0, im=0, re2=0, im2=0) -> "ExactScalar":
        return cls(QQ_I(re, im), QQ_I(re2, im2))

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (complex, np.complexfloating)):
            re, im = int(round(value.real)), int(round(value.imag))
            if re != value.real or im != value.imag:
                raise ValueError(f"{value} is not a Gaussian integer")
            return cls(QQ_I(re, im))
        if isinstance(value, QQ_I.dtype):
            return cls(value)
        return cls(QQ_I(value, 0))

    def __add__(self, other):
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        o = ExactScalar.coerce(other)
        if not self.b and not o.b:
            return ExactScalar(self.a * o.a)
        return ExactScalar(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def scale_gaussian(self, z) -> "ExactScalar":
        if not self.b:
            return ExactScalar(self.a * z)
        return ExactScalar(self.a * z, self.b * z)

    def __neg__(self):
        return ExactScalar(-self.a, -self.b)

    def conjugate_sqrt2(self) -> "ExactScalar":
        return ExactScalar(self.a, -self.b)

    def norm(self):
        """(a + b√2)(a − b√2) = a² − 2b², a Gaussian rational."""
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = ExactScalar.coerce(other)
        if not o:
            raise ZeroDivisionError("division by exact zero")
        inv_norm = _GONE / o.norm()
        num = self * o.conjugate_sqrt2()
        return ExactScalar(num.a * inv_norm, num.b * inv_norm)

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except Exception:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def to_complex(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.a.x) + r2 * float(self.b.x), float(self.a.y) + r2 * float(self.b.y))

    def is_unit(self) -> bool:
        return self.a == _GONE and not self.b

    def to_debug_string(self) -> str:
        parts = []
        for value, suffix in ((self.a.x, ""), (self.a.y, " i"), (self.b.x, "√2"), (self.b.y, "√2 i")):
            if not value:
                continue
            mag = abs(value)
            if suffix and mag == 1:
                body = suffix.lstrip()
            else:
                body = f"{qq_str(mag)}{suffix}"
            parts.append((value < 0, body))
        if not parts:
            return "0"
        neg, body = parts[0]
        text = f"-{body}" if neg else body
        for neg, body in parts[1:]:
            text += f" - {body}" if neg else f" + {body}"
        return f"({text})" if len(parts) > 1 else text

    __str__ = to_debug_string

    def __repr__(self):
        return f"ExactScalar({self.to_debug_string()})"


ZERO = ExactScalar()
ONE = ExactScalar(_GONE)
I = ExactScalar.of(0, 1)
SQRT2 = ExactScalar.of(0, 0, 1, 0)
INV_SQRT2 = ExactScalar(_GZERO, QQ_I(QQ(1, 2), 0))

Scalar = Union[ExactScalar, int, "QQ.dtype", "QQ_I.dtype"]


# ──────────────── Conventions ──────────────── #


@dataclass(frozen=True)
class CommutationConvention:
    """[p_mu, x_nu] = sign · i · eta_{mu nu}."""

    eta: Tuple[int, ...]
    sign: int
    tag: str
    _cmat: Tuple[Tuple[object, ...], ...] = field(default=(), compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.eta)
        cmat = tuple(
            tuple(QQ_I(0, self.sign * self.eta[mu]) if mu == nu else _GZERO for nu in range(n))
            for mu in range(n)
        )
        object.__setattr__(self, "_cmat", cmat)

    @property
    def n(self) -> int:
        return len(self.eta)

    def c(self, mu: int, nu: int):
        return self._cmat[mu][nu]

    @classmethod
    def minus_i_eta(cls, eta: Sequence[int]) -> "CommutationConvention":
        return cls(tuple(eta), -1, "minus_i_eta")

    @classmethod
    def plus_i_eta(cls, eta: Sequence[int]) -> "CommutationConvention":
        return cls(tuple(eta), 1, "plus_i_eta")

    @classmethod
    def candidates(cls, eta: Sequence[int]) -> Tuple["CommutationConvention", "CommutationConvention"]:
        return cls.minus_i_eta(eta), cls.plus_i_eta(eta)

    @classmethod
    def from_tag(cls, tag: str, eta: Sequence[int]) -> "CommutationConvention":
        if tag == "minus_i_eta":
            return cls.minus_i_eta(eta)
        if tag == "plus_i_eta":
            return cls.plus_i_eta(eta)
        raise ValueError(f"unknown convention tag {tag!r}")


# ──────────────── Monomials ──────────────── #


class WeylMonomial(NamedTuple):
    xexp: Tuple[int, ...]
    pexp: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.xexp) + sum(self.pexp)

    @classmethod
    def one(cls, n: int) -> "WeylMonomial":
        return cls((0,) * n, (0,) * n)

    def sort_key(self):
        return (-self.degree, tuple(-e for e in self.xexp), tuple(-e for e in self.pexp))

    def to_debug_string(self) -> str:
        tokens = []
        for sym, exps in (("x", self.xexp), ("p", self.pexp)):
            for mu, e in enumerate(exps):
                if e == 1:
                    tokens.append(f"{sym}{mu}")
                elif e > 1:
                    tokens.append(f"{sym}{mu}^{e}")
        return " ".join(tokens) if tokens else "1"


def _bump(exps: Tuple[int, ...], mu: int, delta: int) -> Tuple[int, ...]:
    lst = list(exps)
    lst[mu] += delta
    return tuple(lst)


@lru_cache(maxsize=None)
def _monomial_product(m1: WeylMonomial, m2: WeylMonomial, conv: CommutationConvention):
    """
    Normal-ordered m1·m2 as ((monomial, gaussian coefficient or None for 1), ...).

    p_mu x^c p^d = x^c p^(d + e_mu) + sum_nu c_{mu nu} c_nu x^(c - e_nu) p^d
    """
    if not any(m1.pexp) or not any(m2.xexp):
        xs = tuple(a + b for a, b in zip(m1.xexp, m2.xexp))
        ps = tuple(a + b for a, b in zip(m1.pexp, m2.pexp))
        return ((WeylMonomial(xs, ps), None),)

    terms: Dict[WeylMonomial, object] = {m2: _GONE}
    n = conv.n
    for mu in range(n):
        for _ in range(m1.pexp[mu]):
            nxt: Dict[WeylMonomial, object] = {}
            for mono, coef in terms.items():
                moved = WeylMonomial(mono.xexp, _bump(mono.pexp, mu, 1))
                nxt[moved] = nxt.get(moved, _GZERO) + coef
                for nu in range(n):
                    cmunu = conv.c(mu, nu)
                    if not cmunu or not mono.xexp[nu]:
                        continue
                    lowered = WeylMonomial(_bump(mono.xexp, nu, -1), mono.pexp)
                    nxt[lowered] = nxt.get(lowered, _GZERO) + coef * cmunu * mono.xexp[nu]
            terms = {m: c for m, c in nxt.items() if c}

    out = []
    for mono, coef in terms.items():
        xs = tuple(a + b for a, b in zip(m1.xexp, mono.xexp))
        out.append((WeylMonomial(xs, mono.pexp), None if coef == _GONE else coef))
    return tuple(out)


def _accumulate(acc: Dict[WeylMonomial, ExactScalar], f_terms, g_terms, conv) -> None:
    for m1, c1 in f_terms.items():
        for m2, c2 in g_terms.items():
            c12 = c1 * c2
            for mono, k in _monomial_product(m1, m2, conv):
                val = c12 if k is None else c12.scale_gaussian(k)
                prev = acc.get(mono)
                acc[mono] = val if prev is None else prev + val


# ──────────────── Polynomials ──────────────── #


class WeylPoly:
    """Sparse normal-ordered polynomial; no zero coefficient is ever stored."""

    __slots__ = ("terms", "conv")

    def __init__(self, terms: Dict[WeylMonomial, ExactScalar], conv: CommutationConvention):
        self.terms = terms
        self.conv = conv

    @classmethod
    def from_terms(cls, terms: Dict[WeylMonomial, Scalar], conv: CommutationConvention) -> "WeylPoly":
        clean = {}
        for mono, c in terms.items():
            c = ExactScalar.coerce(c)
            if c:
                clean[mono] = c
        return cls(clean, conv)

    @classmethod
    def zero(cls, conv: CommutationConvention) -> "WeylPoly":
        return cls({}, conv)

    @classmethod
    def const(cls, value: Scalar, conv: CommutationConvention) -> "WeylPoly":
        return cls.from_terms({WeylMonomial.one(conv.n): value}, conv)

    @classmethod
    def x(cls, mu: int, conv: CommutationConvention) -> "WeylPoly":
        n = conv.n
        return cls({WeylMonomial(_bump((0,) * n, mu, 1), (0,) * n): ONE}, conv)

    @classmethod
    def p(cls, mu: int, conv: CommutationConvention) -> "WeylPoly":
        n = conv.n
        return cls({WeylMonomial((0,) * n, _bump((0,) * n, mu, 1)): ONE}, conv)

    def _check(self, other: "WeylPoly"):
        if self.conv != other.conv:
            raise ConventionMismatch(self.conv.tag, other.conv.tag)

    def __add__(self, other: "WeylPoly") -> "WeylPoly":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            prev = out.get(mono)
            out[mono] = c if prev is None else prev + c
        return WeylPoly({m: c for m, c in out.items() if c}, self.conv)

    def __neg__(self) -> "WeylPoly":
        return WeylPoly({m: -c for m, c in self.terms.items()}, self.conv)

    def __sub__(self, other: "WeylPoly") -> "WeylPoly":
        return self + (-other)

    def scale(self, s: Scalar) -> "WeylPoly":
        s = ExactScalar.coerce(s)
        if not s:
            return WeylPoly.zero(self.conv)
        if s.is_unit():
            return self
        return WeylPoly({m: c * s for m, c in self.terms.items()}, self.conv)

    def __mul__(self, other):
        if not isinstance(other, WeylPoly):
            return self.scale(other)
        self._check(other)
        acc: Dict[WeylMonomial, ExactScalar] = {}
        _accumulate(acc, self.terms, other.terms, self.conv)
        return WeylPoly({m: c for m, c in acc.items() if c}, self.conv)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, WeylPoly):
            return NotImplemented
        return self.conv == other.conv and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def homogeneous(self, k: int) -> "WeylPoly":
        return WeylPoly({m: c for m, c in self.terms.items() if m.degree == k}, self.conv)

    def constant_term(self) -> ExactScalar:
        return self.terms.get(WeylMonomial.one(self.conv.n), ZERO)

    def to_debug_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=WeylMonomial.sort_key):
            coef = self.terms[mono]
            if mono.degree == 0:
                parts.append(coef.to_debug_string())
            elif coef.is_unit():
                parts.append(mono.to_debug_string())
            else:
                parts.append(f"{coef.to_debug_string()}·{mono.to_debug_string()}")
        return " + ".join(parts)

    __str__ = to_debug_string

    def __repr__(self):
        return f"WeylPoly({self.to_debug_string()}; {self.conv.tag})"


# ──────────────── Matrices over the Weyl ring ──────────────── #


def _constant_entries(matrix) -> Tuple[int, Dict[Tuple[int, int], ExactScalar]]:
    """Square constant matrix (numpy Gaussian integers, DomainMatrix, or nested lists) as a dict."""
    if isinstance(matrix, DomainMatrix):
        rows, cols = matrix.shape
        entries = {k: ExactScalar.coerce(v) for k, v in matrix.to_dok().items() if v}
    elif isinstance(matrix, np.ndarray):
        rows, cols = matrix.shape
        entries = {}
        for i in range(rows):
            for j in range(cols):
                if matrix[i, j] != 0:
                    entries[(i, j)] = ExactScalar.coerce(complex(matrix[i, j]))
    else:
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        entries = {}
        for i, row in enumerate(matrix):
            for j, v in enumerate(row):
                v = ExactScalar.coerce(v)
                if v:
                    entries[(i, j)] = v
    if rows != cols:
        raise DimensionMismatch(f"constant coefficient matrix must be square, got {rows}x{cols}")
    return rows, entries


class OperatorPoly:
    """Sparse dim×dim matrix with WeylPoly entries sharing one convention."""

    __slots__ = ("dim", "rows", "conv")

    def __init__(self, dim: int, rows: Dict[int, Dict[int, WeylPoly]], conv: CommutationConvention):
        self.dim = dim
        self.rows = rows
        self.conv = conv

    @classmethod
    def zeros(cls, dim: int, conv: CommutationConvention) -> "OperatorPoly":
        return cls(dim, {}, conv)

    @classmethod
    def identity(cls, dim: int, conv: CommutationConvention) -> "OperatorPoly":
        one = WeylPoly.const(1, conv)
        return cls(dim, {i: {i: one} for i in range(dim)}, conv)

    @classmethod
    def scalar(cls, f: WeylPoly) -> "OperatorPoly":
        return cls(1, {0: {0: f}} if not f.is_zero() else {}, f.conv)

    @classmethod
    def from_constant(cls, matrix, conv: CommutationConvention) -> "OperatorPoly":
        dim, entries = _constant_entries(matrix)
        rows: Dict[int, Dict[int, WeylPoly]] = {}
        one = WeylMonomial.one(conv.n)
        for (i, j), v in entries.items():
            rows.setdefault(i, {})[j] = WeylPoly({one: v}, conv)
        return cls(dim, rows, conv)

    @classmethod
    def kron(cls, matrix, F: "OperatorPoly") -> "OperatorPoly":
        """constant ⊗ F, block (i, j) = matrix[i, j] · F."""
        k, entries = _constant_entries(matrix)
        d = F.dim
        rows: Dict[int, Dict[int, WeylPoly]] = {}
        for (i, j), v in entries.items():
            for a, frow in F.rows.items():
                target = rows.setdefault(i * d + a, {})
                for b, f in frow.items():
                    target[j * d + b] = f.scale(v)
        return cls(k * d, rows, F.conv)

    def _check(self, other: "OperatorPoly"):
        if self.conv != other.conv:
            raise ConventionMismatch(self.conv.tag, other.conv.tag)
        if self.dim != other.dim:
            raise DimensionMismatch(f"operator dimensions differ: {self.dim} vs {other.dim}")

    def entry(self, i: int, j: int) -> WeylPoly:
        return self.rows.get(i, {}).get(j) or WeylPoly.zero(self.conv)

    def items(self) -> Iterable[Tuple[Tuple[int, int], WeylPoly]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def map_entries(self, fn) -> "OperatorPoly":
        rows: Dict[int, Dict[int, WeylPoly]] = {}
        for i, row in self.rows.items():
            new_row = {}
            for j, f in row.items():
                g = fn(f)
                if not g.is_zero():
                    new_row[j] = g
            if new_row:
                rows[i] = new_row
        return OperatorPoly(self.dim, rows, self.conv)

    def __add__(self, other: "OperatorPoly") -> "OperatorPoly":
        self._check(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, orow in other.rows.items():
            row = rows.setdefault(i, {})
            for j, g in orow.items():
                f = row.get(j)
                s = g if f is None else f + g
                if s.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = s
            if not row:
                rows.pop(i)
        return OperatorPoly(self.dim, rows, self.conv)

    def __neg__(self) -> "OperatorPoly":
        return self.map_entries(lambda f: -f)

    def __sub__(self, other: "OperatorPoly") -> "OperatorPoly":
        return self + (-other)

    def scale(self, s: Scalar) -> "OperatorPoly":
        s = ExactScalar.coerce(s)
        return self.map_entries(lambda f: f.scale(s))

    def mat_mul(self, other: "OperatorPoly") -> "OperatorPoly":
        self._check(other)
        conv = self.conv
        out: Dict[int, Dict[int, WeylPoly]] = {}
        for i, frow in self.rows.items():
            acc_row: Dict[int, Dict[WeylMonomial, ExactScalar]] = {}
            for k, f in frow.items():
                grow = other.rows.get(k)
                if not grow:
                    continue
                for j, g in grow.items():
                    _accumulate(acc_row.setdefault(j, {}), f.terms, g.terms, conv)
            row = {}
            for j, acc in acc_row.items():
                terms = {m: c for m, c in acc.items() if c}
                if terms:
                    row[j] = WeylPoly(terms, conv)
            if row:
                out[i] = row
        return OperatorPoly(self.dim, out, conv)

    __matmul__ = mat_mul

    def __eq__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self.dim == other.dim and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def degree(self) -> int:
        return max((f.degree() for _, f in self.items()), default=-1)

    def homogeneous(self, k: int) -> "OperatorPoly":
        return self.map_entries(lambda f: f.homogeneous(k))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def witness(self) -> Optional[str]:
        """First nonzero entry in debug format, or None for the zero matrix."""
        for (i, j), f in self.items():
            extra = self.nnz() - 1
            tail = f"; {extra} more nonzero entries" if extra else ""
            return f"[{i},{j}]: {f.to_debug_string()}{tail}"
        return None

    def __repr__(self):
        return f"OperatorPoly(dim={self.dim}, nnz={self.nnz()}, conv={self.conv.tag})"


# ──────────────── Symmetric (Weyl) ordering ──────────────── #


@lru_cache(maxsize=None)
def symmetrize_monomial(mono: WeylMonomial, conv: CommutationConvention) -> WeylPoly:
    """Average of the normal-ordered products over every distinct ordering of the letters."""
    word: List[Tuple[str, int]] = []
    for mu, e in enumerate(mono.xexp):
        word.extend([("x", mu)] * e)
    for mu, e in enumerate(mono.pexp):
        word.extend([("p", mu)] * e)
    if len(word) <= 1:
        return WeylPoly({mono: ONE}, conv)
    total = WeylPoly.zero(conv)
    count = 0
    for perm in multiset_permutations(word):
        prod = WeylPoly.const(1, conv)
        for sym, mu in perm:
            prod = prod * (WeylPoly.x(mu, conv) if sym == "x" else WeylPoly.p(mu, conv))
        total = total + prod
        count += 1
    return total.scale(ExactScalar(QQ_I(QQ(1, count), 0)))


def symmetrize(f: WeylPoly) -> WeylPoly:
    """Read f's normal-ordered monomials as symmetric-ordered ones."""
    total = WeylPoly.zero(f.conv)
    for mono, c in f.terms.items():
        total = total + symmetrize_monomial(mono, f.conv).scale(c)
    return total


def symmetric_split(F: OperatorPoly, k: int) -> Tuple[OperatorPoly, OperatorPoly]:
    """(symmetric-ordered degree-k part, remainder) with F = part + remainder exactly."""
    top = F.map_entries(lambda f: symmetrize(f.homogeneous(k)))
    return top, F - top


# ──────────────── Module-level operations ──────────────── #


def mul(f: WeylPoly, g: WeylPoly) -> WeylPoly:
    return f * g


def commutator(f, g):
    """[f, g] for WeylPoly or OperatorPoly operands."""
    if isinstance(f, OperatorPoly):
        return f.mat_mul(g) - g.mat_mul(f)
    return f * g - g * f


def mat_mul(F: OperatorPoly, G: OperatorPoly) -> OperatorPoly:
    return F.mat_mul(G)


def is_zero(F) -> bool:
    return F.is_zero()


def clear_caches() -> None:
    _monomial_product.cache_clear()
    symmetrize_monomial.cache_clear()
