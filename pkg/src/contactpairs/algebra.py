"""Exact scalar arithmetic and exact linear algebra.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), sparse
multivariate polynomials over them, and canonical rational functions.  The
linear solvers work over the rational-function field and never touch floats,
so "equals zero" always means identically zero.

The monomial order is graded lexicographic (grlex) everywhere; rational
functions are kept in canonical form (numerator and denominator coprime,
denominator monic under grlex).  All values are immutable after construction
and all operations are pure, so everything here is safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Rational = Fraction

Exponents = tuple[int, ...]

__all__ = [
    "Rational",
    "Poly",
    "RatFun",
    "RfMatrix",
    "LinearSolution",
    "solve_linear_exact",
    "kernel_basis",
    "generic_rank",
    "poly_gcd",
    "ExactDivisionError",
    "InconsistentSystemError",
    "SingularMatrixError",
]


class ExactDivisionError(ArithmeticError):
    """A polynomial division that was expected to be exact left a remainder."""


class InconsistentSystemError(ValueError):
    """A·x = b has no solution over the rational-function field."""


class SingularMatrixError(ArithmeticError):
    """Exact inverse requested for a matrix with identically-zero determinant."""


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps an exponent tuple (one entry per variable) to a nonzero
    coefficient; the zero polynomial stores no terms.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction] | None = None):
        self.nvars = int(nvars)
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                key = tuple(int(e) for e in exps)
                if len(key) != self.nvars:
                    raise ValueError(
                        f"exponent tuple {key} has length {len(key)}, expected {self.nvars}"
                    )
                if any(e < 0 for e in key):
                    raise ValueError(f"negative exponent in {key}")
                c = _as_fraction(coeff)
                if c:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[(0,) * self.nvars]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (exponents, coefficient) under grlex; undefined for zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def _scaled(self, factor: Fraction) -> "Poly":
        if not factor:
            return Poly(self.nvars)
        return Poly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live over different variable sets")
            return other
        return Poly.const(self.nvars, other)

    @staticmethod
    def _compatible(other) -> bool:
        return isinstance(other, (Poly, int, Fraction))

    def __add__(self, other) -> "Poly":
        if not self._compatible(other):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._scaled(Fraction(-1))

    def __sub__(self, other) -> "Poly":
        if not self._compatible(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        if not self._compatible(other):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if not self._compatible(other):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self._scaled(_as_fraction(other))
        other = self._coerce(other)
        terms: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(key, Fraction(0)) + ca * cb
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Poly":
        if power < 0:
            raise ValueError("negative powers require RatFun")
        result = Poly.const(self.nvars, 1)
        base = self
        k = power
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, var: int) -> "Poly":
        terms: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            if e[var]:
                key = tuple(x - 1 if i == var else x for i, x in enumerate(e))
                terms[key] = terms.get(key, Fraction(0)) + c * e[var]
        return Poly(self.nvars, terms)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            value = c
            for x, k in zip(pt, e):
                if k:
                    value *= x**k
            total += value
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.terms!r})"

    def __str__(self) -> str:
        return format_poly(self, tuple(f"x{i+1}" for i in range(self.nvars)))


def format_poly(p: Poly, names: Sequence[str]) -> str:
    """Render a polynomial so that it re-parses under the fixture grammar."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for exps in sorted(p.terms, key=_grlex_key, reverse=True):
        coeff = p.terms[exps]
        factors = [
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(names, exps)
            if k
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# polynomial gcd (primitive PRS over the integers, one variable at a time)
# ---------------------------------------------------------------------------


def _integer_content(p: Poly) -> int:
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, abs(c.numerator))
    return g


def _den_cleared(p: Poly) -> Poly:
    """Scale by the lcm of coefficient denominators; result has integer coefficients."""
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return p._scaled(Fraction(lcm)) if lcm != 1 else p


def _positive_lc(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p if p.leading()[1] > 0 else -p


def _main_var(a: Poly, b: Poly) -> int | None:
    for var in range(a.nvars - 1, -1, -1):
        for poly in (a, b):
            if any(e[var] for e in poly.terms):
                return var
    return None


def _degree_in(p: Poly, var: int) -> int:
    if p.is_zero():
        return -1
    return max(e[var] for e in p.terms)


def _coeffs_in(p: Poly, var: int) -> dict[int, Poly]:
    """View p as univariate in ``var``: degree -> coefficient polynomial."""
    out: dict[int, dict[Exponents, Fraction]] = {}
    for e, c in p.terms.items():
        d = e[var]
        key = tuple(0 if i == var else x for i, x in enumerate(e))
        out.setdefault(d, {})[key] = c
    return {d: Poly(p.nvars, terms) for d, terms in out.items()}

def _lead_in(p: Poly, var: int) -> Poly:
    d = _degree_in(p, var)
    terms = {
        tuple(0 if i == var else x for i, x in enumerate(e)): c
        for e, c in p.terms.items()
        if e[var] == d
    }
    return Poly(p.nvars, terms)


def _shift_in(p: Poly, var: int, k: int) -> Poly:
    """Multiply by var**k."""
    if k == 0 or p.is_zero():
        return p
    return Poly(
        p.nvars,
        {tuple(x + k if i == var else x for i, x in enumerate(e)): c for e, c in p.terms.items()},
    )


def _pseudo_rem(f: Poly, s: Poly, var: int) -> Poly:
    """Pseudo-remainder of f by s in ``var`` (scale factors are irrelevant
    because callers immediately strip content)."""
    ds = _degree_in(s, var)
    lcs = _lead_in(s, var)
    r = f
    while not r.is_zero() and _degree_in(r, var) >= ds:
        dr = _degree_in(r, var)
        lcr = _lead_in(r, var)
        r = lcs * r - _shift_in(lcr * s, var, dr - ds)
    return r


def _primitive_in(p: Poly, var: int) -> Poly:
    """Strip the content of p viewed as univariate in ``var``; sign-normalized."""
    if p.is_zero():
        return p
    coeffs = list(_coeffs_in(p, var).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        content = _gcd_int(content, c)
        if content.is_constant() and content.constant_value() == 1:
            break
    if content.is_constant() and content.constant_value() == 1:
        return _positive_lc(p)
    return _positive_lc(divexact(p, content))


def _content_in(p: Poly, var: int) -> Poly:
    coeffs = list(_coeffs_in(p, var).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        content = _gcd_int(content, c)
    return _positive_lc(content)


def _gcd_int(a: Poly, b: Poly) -> Poly:
    """Gcd of integer-coefficient polynomials (content included, sign-normalized)."""
    if a.is_zero():
        return _positive_lc(b)
    if b.is_zero():
        return _positive_lc(a)
    if a.is_constant():
        return Poly.const(a.nvars, math.gcd(abs(a.constant_value().numerator), _integer_content(b)))
    if b.is_constant():
        return Poly.const(a.nvars, math.gcd(abs(b.constant_value().numerator), _integer_content(a)))
    var = _main_var(a, b)
    if var is None:  # unreachable: non-constant polys mention some variable
        raise AssertionError("no main variable for non-constant polynomials")
    cont = _gcd_int(_content_in(a, var), _content_in(b, var))
    f = _primitive_in(a, var)
    s = _primitive_in(b, var)
    if _degree_in(f, var) < _degree_in(s, var):
        f, s = s, f
    while not s.is_zero() and _degree_in(s, var) > 0:
        r = _pseudo_rem(f, s, var)
        f, s = s, (_primitive_in(r, var) if not r.is_zero() else r)
    if s.is_zero():
        g_pp = f
    else:
        g_pp = Poly.const(a.nvars, 1)
    return _positive_lc(cont * g_pp)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Polynomial gcd, sign-normalized.

    For integer-coefficient inputs this is the full gcd over the integers
    (numeric content included); rational coefficients are cleared first, so
    over the rationals the result is a gcd up to a unit, which is all the
    canonical form of :class:`RatFun` needs.
    """
    if a.nvars != b.nvars:
        raise ValueError("polynomials live over different variable sets")
    if a.is_zero():
        return _positive_lc(_den_cleared(b))
    if b.is_zero():
        return _positive_lc(_den_cleared(a))
    return _gcd_int(_den_cleared(a), _den_cleared(b))


def divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises :class:`ExactDivisionError` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if b.is_constant():
        return a._scaled(1 / b.constant_value())
    quotient = Poly.zero(a.nvars)
    r = a
    b_exps, b_coeff = b.leading()
    while not r.is_zero():
        r_exps, r_coeff = r.leading()
        q_exps = tuple(x - y for x, y in zip(r_exps, b_exps))
        if any(e < 0 for e in q_exps):
            raise ExactDivisionError(f"{b} does not divide {a}")
        t = Poly(a.nvars, {q_exps: r_coeff / b_coeff})
        quotient = quotient + t
        r = r - t * b
    return quotient


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatFun:
    """Rational function in canonical form.

    Canonical means: gcd(num, den) is constant, the denominator is monic under
    grlex, and the zero function is stored as 0/1.  Equality is therefore
    structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.nvars, 1)
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator over different variable sets")
        if den.is_zero():
            raise ZeroDivisionError("identically-zero denominator")
        if num.is_zero():
            num = Poly.zero(num.nvars)
            den = Poly.const(num.nvars, 1)
        elif den.is_constant():
            num = num._scaled(1 / den.constant_value())
            den = Poly.const(num.nvars, 1)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = divexact(num, g)
                den = divexact(den, g)
            if den.is_constant():
                num = num._scaled(1 / den.constant_value())
                den = Poly.const(num.nvars, 1)
            else:
                lc = den.leading()[1]
                if lc != 1:
                    num = num._scaled(1 / lc)
                    den = den._scaled(1 / lc)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def const(cls, nvars: int, value) -> "RatFun":
        return cls(Poly.const(nvars, value))

    @classmethod
    def zero(cls, nvars: int) -> "RatFun":
        return cls(Poly.zero(nvars))

    @classmethod
    def one(cls, nvars: int) -> "RatFun":
        return cls(Poly.const(nvars, 1))

    @classmethod
    def variable(cls, nvars: int, index: int) -> "RatFun":
        return cls(Poly.variable(nvars, index))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def degree_size(self) -> int:
        """Pivot-selection weight: combined numerator/denominator degree."""
        return max(self.num.total_degree(), 0) + max(self.den.total_degree(), 0)

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.nvars != self.nvars:
                raise ValueError("rational functions over different variable sets")
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        return RatFun.const(self.nvars, other)

    @staticmethod
    def _compatible(other) -> bool:
        return isinstance(other, (RatFun, Poly, int, Fraction))

    def __add__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        other = self._coerce(other)
        if self.den.is_constant() and other.den.is_constant():
            return RatFun(self.num + other.num)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        other = self._coerce(other)
        if self.den.is_constant() and other.den.is_constant():
            return RatFun(self.num * other.num)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFun":
        if not self._compatible(other):
            return NotImplemented
        return self._coerce(other) / self

    def __pow__(self, power: int) -> "RatFun":
        if power < 0:
            return RatFun(self.den, self.num) ** (-power)
        return RatFun(self.num**power, self.den**power)

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def diff(self, var: int) -> "RatFun":
        if self.den.is_constant():
            return RatFun(self.num.diff(var), self.den)
        return RatFun(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def eval(self, point: Sequence) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {tuple(point)}")
        return self.num.eval(point) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return self.format(tuple(f"x{i+1}" for i in range(self.nvars)))

    def format(self, names: Sequence[str]) -> str:
        if self.den.is_constant():
            return format_poly(self.num, names)
        return f"({format_poly(self.num, names)})/({format_poly(self.den, names)})"


# ---------------------------------------------------------------------------
# matrices over the rational-function field
# ---------------------------------------------------------------------------


class RfMatrix:
    """Dense matrix with RatFun entries (immutable)."""

    __slots__ = ("nvars", "rows", "cols", "entries")

    def __init__(self, nvars: int, entries: Sequence[Sequence]):
        self.nvars = int(nvars)
        coerced: list[tuple[RatFun, ...]] = []
        width = None
        for row in entries:
            r = tuple(self._coerce_entry(x) for x in row)
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ValueError("ragged matrix rows")
            coerced.append(r)
        self.rows = len(coerced)
        self.cols = width if width is not None else 0
        self.entries = tuple(coerced)

    def _coerce_entry(self, x) -> RatFun:
        if isinstance(x, RatFun):
            if x.nvars != self.nvars:
                raise ValueError("entry over wrong variable set")
            return x
        if isinstance(x, Poly):
            return RatFun(x)
        return RatFun.const(self.nvars, x)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "RfMatrix":
        return cls(nvars, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, nvars: int) -> "RfMatrix":
        return cls(nvars, [[0] * cols for _ in range(rows)])

    def at(self, i: int, j: int) -> RatFun:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[RatFun, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[RatFun, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "RfMatrix":
        return RfMatrix(self.nvars, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: "RfMatrix") -> "RfMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = RatFun.zero(self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    s = s + a * b
                row.append(s)
            out.append(row)
        return RfMatrix(self.nvars, out)

    def __add__(self, other: "RfMatrix") -> "RfMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return RfMatrix(
            self.nvars,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "RfMatrix") -> "RfMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix subtraction")
        return RfMatrix(
            self.nvars,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __neg__(self) -> "RfMatrix":
        return self.scaled(-1)

    def scaled(self, factor) -> "RfMatrix":
        f = self._coerce_entry(factor)
        return RfMatrix(
            self.nvars,
            [[self.entries[i][j] * f for j in range(self.cols)] for i in range(self.rows)],
        )

    def apply(self, vector: Sequence[RatFun]) -> tuple[RatFun, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = RatFun.zero(self.nvars)
            for j, v in enumerate(vector):
                a = self.entries[i][j]
                if a.is_zero() or (isinstance(v, RatFun) and v.is_zero()):
                    continue
                s = s + a * v
            out.append(s)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def eval_at(self, point: Sequence) -> list[list[Fraction]]:
        return [[e.eval(point) for e in row] for row in self.entries]

    def det(self) -> RatFun:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return RatFun.one(self.nvars)
        cleared, scale = _cleared_rows(self)
        rank, det_poly, sign = _bareiss(cleared, self.nvars, want_det=True)
        if rank < self.rows or det_poly is None:
            return RatFun.zero(self.nvars)
        return RatFun(det_poly._scaled(Fraction(sign)), Poly.const(self.nvars, 1)) / scale

    def inverse(self) -> "RfMatrix":
        """Exact inverse via the adjugate and determinant."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        d = self.det()
        if d.is_zero():
            raise SingularMatrixError("matrix is singular over the function field")
        n = self.rows
        if n == 1:
            return RfMatrix(self.nvars, [[d.inverse()]])
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.entries[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                cof = RfMatrix(self.nvars, minor).det()
                if (i + j) % 2:
                    cof = -cof
                adj[j][i] = cof / d
        return RfMatrix(self.nvars, adj)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RfMatrix):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.entries))

    def __repr__(self) -> str:
        return f"RfMatrix({self.rows}x{self.cols}, nvars={self.nvars})"


def _cleared_rows(matrix: RfMatrix) -> tuple[list[list[Poly]], RatFun]:
    """Clear denominators row by row.  Returns polynomial rows and the RatFun
    by which the determinant of the cleared matrix exceeds the original."""
    nvars = matrix.nvars
    scale = RatFun.one(nvars)
    out: list[list[Poly]] = []
    for row in matrix.entries:
        lcm = Poly.const(nvars, 1)
        for e in row:
            if e.den.is_constant():
                continue
            g = poly_gcd(lcm, e.den)
            lcm = divexact(lcm * e.den, g)
        out.append([divexact(e.num * lcm, e.den) if not e.is_zero() else Poly.zero(nvars) for e in row])
        scale = scale * RatFun(lcm)
    return out, scale


def _bareiss(
    mat: list[list[Poly]], nvars: int, want_det: bool = False
) -> tuple[int, Poly | None, int]:
    """Fraction-free Gaussian elimination (Bareiss).  Returns (rank, det, sign);
    det is only meaningful for square input at full rank.  Pivots are chosen
    by lowest total degree, ties broken by column index."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    prev = Poly.const(nvars, 1)
    sign = 1
    r = 0
    while r < min(rows, cols):
        best = None
        for j in range(r, cols):
            for i in range(r, rows):
                e = mat[i][j]
                if not e.is_zero():
                    key = (e.total_degree(), j, i)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            mat[pi], mat[r] = mat[r], mat[pi]
            sign = -sign
        if pj != r:
            for row in mat:
                row[pj], row[r] = row[r], row[pj]
            sign = -sign
        pivot = mat[r][r]
        for i in range(r + 1, rows):
            head = mat[i][r]
            for j in range(r + 1, cols):
                mat[i][j] = divexact(mat[i][j] * pivot - head * mat[r][j], prev)
            mat[i][r] = Poly.zero(nvars)
        prev = pivot
        r += 1
    det = mat[rows - 1][cols - 1] if (want_det and rows == cols and r == rows and rows > 0) else None
    return r, det, sign


def generic_rank(matrix: RfMatrix) -> int:
    """Rank over the rational-function field (fraction-free elimination)."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    cleared, _ = _cleared_rows(matrix)
    rank, _, _ = _bareiss(cleared, matrix.nvars)
    return rank


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[RatFun, ...]
    kernel: tuple[tuple[RatFun, ...], ...]


def _rref(
    rows: list[list[RatFun]], rhs: list[RatFun] | None, nvars: int
) -> tuple[list[list[RatFun]], list[RatFun] | None, list[tuple[int, int]]]:
    """Reduced row echelon form over the function field.  Pivots are chosen by
    lowest combined num/den degree, ties broken by column then row index."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[tuple[int, int]] = []
    used_cols: set[int] = set()
    r = 0
    while r < m:
        best = None
        for j in range(n):
            if j in used_cols:
                continue
            for i in range(r, m):
                e = rows[i][j]
                if not e.is_zero():
                    key = (e.degree_size(), j, i)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        rows[pi], rows[r] = rows[r], rows[pi]
        if rhs is not None:
            rhs[pi], rhs[r] = rhs[r], rhs[pi]
        inv = rows[r][pj].inverse()
        rows[r] = [e * inv for e in rows[r]]
        if rhs is not None:
            rhs[r] = rhs[r] * inv
        for i in range(m):
            if i == r:
                continue
            factor = rows[i][pj]
            if factor.is_zero():
                continue
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
            if rhs is not None:
                rhs[i] = rhs[i] - factor * rhs[r]
        pivots.append((r, pj))
        used_cols.add(pj)
        r += 1
    return rows, rhs, pivots


def _kernel_from_rref(
    rows: list[list[RatFun]], pivots: list[tuple[int, int]], n: int, nvars: int
) -> list[tuple[RatFun, ...]]:
    pivot_cols = {c for _, c in pivots}
    kernel = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = [RatFun.zero(nvars) for _ in range(n)]
        v[free] = RatFun.one(nvars)
        for r, c in pivots:
            v[c] = -rows[r][free]
        kernel.append(tuple(v))
    return kernel


def solve_linear_exact(matrix: RfMatrix, rhs: Sequence) -> LinearSolution:
    """Solve A·x = b exactly over the rational-function field.

    Returns a particular solution together with a kernel basis; raises
    :class:`InconsistentSystemError` when no solution exists.
    """
    if len(rhs) != matrix.rows:
        raise ValueError(f"rhs length {len(rhs)} does not match {matrix.rows} rows")
    nvars = matrix.nvars
    rows = [list(matrix.row(i)) for i in range(matrix.rows)]
    b = [matrix._coerce_entry(x) for x in rhs]
    rows, b, pivots = _rref(rows, b, nvars)
    rank = len(pivots)
    for i in range(rank, matrix.rows):
        if not b[i].is_zero():
            raise InconsistentSystemError(
                f"row {i} reduces to 0 = {b[i]}; system has no solution"
            )
    particular = [RatFun.zero(nvars) for _ in range(matrix.cols)]
    for r, c in pivots:
        particular[c] = b[r]
    kernel = _kernel_from_rref(rows, pivots, matrix.cols, nvars)
    return LinearSolution(tuple(particular), tuple(kernel))


def clear_denominators(vector: Sequence[RatFun]) -> list[Poly]:
    """Scale a RatFun vector to a primitive polynomial vector."""
    if not vector:
        return []
    nvars = vector[0].nvars
    lcm = Poly.const(nvars, 1)
    for e in vector:
        if e.den.is_constant():
            continue
        g = poly_gcd(lcm, e.den)
        lcm = divexact(lcm * e.den, g)
    polys = [
        divexact(e.num * lcm, e.den) if not e.is_zero() else Poly.zero(nvars) for e in vector
    ]
    # one common integer scale for the whole vector, then strip the shared content
    den_lcm = 1
    for p in polys:
        for c in p.terms.values():
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    if den_lcm != 1:
        polys = [p._scaled(Fraction(den_lcm)) for p in polys]
    content: Poly | None = None
    for p in polys:
        if p.is_zero():
            continue
        content = p if content is None else _gcd_int(content, p)
        if content.is_constant() and content.constant_value() == 1:
            content = None
            break
    if content is not None and not (content.is_constant() and content.constant_value() == 1):
        polys = [divexact(p, content) if not p.is_zero() else p for p in polys]
    return polys


def kernel_basis(matrix: RfMatrix) -> list[list[Poly]]:
    """Null-space basis with denominators cleared to primitive polynomial vectors."""
    if matrix.cols == 0:
        return []
    nvars = matrix.nvars
    if matrix.rows == 0:
        basis = []
        for j in range(matrix.cols):
            v = [Poly.zero(nvars) for _ in range(matrix.cols)]
            v[j] = Poly.const(nvars, 1)
            basis.append(v)
        return basis
    rows = [list(matrix.row(i)) for i in range(matrix.rows)]
    rows, _, pivots = _rref(rows, None, nvars)
    kernel = _kernel_from_rref(rows, pivots, matrix.cols, nvars)
    return [clear_denominators(v) for v in kernel]
