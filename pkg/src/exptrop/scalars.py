"""Exact scalar arithmetic over Q, Q(sqrt(d)) and Q(i, sqrt(d)).

All polyhedral and linear-algebra kernels in this package run on these
scalars, so comparisons must be decided exactly: an ExactReal a + b*sqrt(d)
is ordered by rational arithmetic on a^2, b^2 and d, never through floats.
One square-free d is fixed per value; values with different nontrivial d's
cannot be combined.

Instances whose data is not expressible in such a field fall back to plain
Python float/complex scalars; the helpers at the bottom of this module
(`rsign`, `riszero`, `as_float`, ...) dispatch on type so the kernels can
run on either representation.  Float comparisons use a global tolerance of
1e-9 and every downstream decision made this way is flagged "numeric".
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction
from functools import lru_cache

NUMERIC_TOL = 1e-9

_SQRT_PREC_BITS = 120


class FieldError(ValueError):
    """Raised on invalid field operations (mixed radicands, division by zero)."""


def _is_square_free(d: int) -> bool:
    if d < 0:
        return False
    if d in (0, 1):
        return True
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@lru_cache(maxsize=None)
def _sqrt_as_fraction(d: int) -> Fraction:
    # sqrt(d) to ~2^-120, good enough that float(a + b*r) rounds correctly
    # for desk-scale a, b.
    return Fraction(math.isqrt(d << (2 * _SQRT_PREC_BITS)), 1 << _SQRT_PREC_BITS)


class ExactReal:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    `d` must be square-free; for d in {0, 1} the value is normalized to a
    pure rational (b folded into a).  Equality is structural after
    normalization, and the ordering is the ordering of the real numbers,
    decided exactly.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if not _is_square_free(d):
            raise FieldError(f"radicand {d} is not square-free")
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        if d == 0 or b == 0:
            b, d = Fraction(0), 0
        self.a = a
        self.b = b
        self.d = d

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def of(x) -> "ExactReal":
        if isinstance(x, ExactReal):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactReal(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactReal")

    def _join(self, other: "ExactReal") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise FieldError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")

    # -- arithmetic -------------------------------------------------------
    # Non-coercible operands yield NotImplemented so that ExactComplex's
    # reflected operators can take over.

    def __add__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        other = ExactReal.of(other)
        d = self._join(other)
        return ExactReal(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        return self + (-ExactReal.of(other))

    def __rsub__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        return ExactReal.of(other) - self

    def __mul__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        other = ExactReal.of(other)
        d = self._join(other)
        return ExactReal(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero ExactReal")
        # 1/(a + b sqrt(d)) = (a - b sqrt(d)) / (a^2 - b^2 d)
        n = self.a * self.a - self.b * self.b * self.d
        return ExactReal(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        return self * ExactReal.of(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        return ExactReal.of(other) * self.inverse()

    def galois_conjugate(self) -> "ExactReal":
        return ExactReal(self.a, -self.b, self.d)

    # -- ordering ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), in {-1, 0, 1}."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lead = a * a - b * b * d
        if lead == 0:
            return 0  # unreachable for square-free d >= 2, kept for safety
        if a > 0:
            return 1 if lead > 0 else -1
        return -1 if lead > 0 else 1

    def __eq__(self, other):
        try:
            other = ExactReal.of(other)
        except (TypeError, FieldError):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - ExactReal.of(other)).sign() < 0

    def __le__(self, other):
        return (self - ExactReal.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - ExactReal.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - ExactReal.of(other)).sign() >= 0

    # -- embedding --------------------------------------------------------

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.a + self.b * _sqrt_as_fraction(self.d))

    def __repr__(self):
        if self.b == 0:
            return f"ExactReal({self.a})"
        return f"ExactReal({self.a} + {self.b}*sqrt({self.d}))"

    def __str__(self):
        return format_scalar(self)


class ExactComplex:
    """Element of Q(i, sqrt(d)): an ExactReal pair (re, im)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = ExactReal.of(re)
        self.im = ExactReal.of(im)
        self.re._join(self.im)  # validate shared radicand

    @staticmethod
    def of(x) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, (int, Fraction, ExactReal)):
            return ExactComplex(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactComplex")

    _COERCIBLE = (int, Fraction)  # plus ExactReal/ExactComplex, checked below

    @staticmethod
    def _can(other) -> bool:
        return isinstance(other, (ExactComplex, ExactReal, int, Fraction))

    def __add__(self, other):
        if not self._can(other):
            return NotImplemented
        other = ExactComplex.of(other)
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        if not self._can(other):
            return NotImplemented
        return self + (-ExactComplex.of(other))

    def __rsub__(self, other):
        if not self._can(other):
            return NotImplemented
        return ExactComplex.of(other) - self

    def __mul__(self, other):
        if not self._can(other):
            return NotImplemented
        other = ExactComplex.of(other)
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def inverse(self) -> "ExactComplex":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero ExactComplex")
        n = (self.re * self.re + self.im * self.im).inverse()
        return ExactComplex(self.re * n, -self.im * n)

    def __truediv__(self, other):
        if not self._can(other):
            return NotImplemented
        return self * ExactComplex.of(other).inverse()

    def __rtruediv__(self, other):
        if not self._can(other):
            return NotImplemented
        return ExactComplex.of(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __eq__(self, other):
        try:
            other = ExactComplex.of(other)
        except (TypeError, FieldError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I_UNIT = ExactComplex(0, 1)


def sqrt_of(d: int) -> ExactReal:
    return ExactReal(0, 1, d)


def field_arith(a: ExactComplex, b: ExactComplex, op: str) -> ExactComplex:
    """Exact field operation; `op` in {add, sub, mul, div}."""
    a, b = ExactComplex.of(a), ExactComplex.of(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("field_arith: division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def compare_real(a: ExactReal, b: ExactReal) -> str:
    """Exact three-way comparison, one of 'lt', 'eq', 'gt'."""
    s = (ExactReal.of(a) - ExactReal.of(b)).sign()
    return ("lt", "eq", "gt")[s + 1]


def to_float(a) -> complex:
    """Nearest double embedding of an exact complex scalar (per part)."""
    a = ExactComplex.of(a)
    return complex(a)


# ---------------------------------------------------------------------------
# Scalar literals: "p/q", "p/q+r/s*sqrt(d)", with optional "*i" factors.
# ---------------------------------------------------------------------------

_FACTOR = _re.compile(r"(?:(\d+(?:/\d+)?)|sqrt\((\d+)\)|(i))$")


def parse_scalar(text: str, d: int | None = None) -> ExactComplex:
    """Parse a scalar literal into an ExactComplex.

    The grammar is sums of terms; a term is a '*'-joined product of an
    optional rational "p" or "p/q", an optional "sqrt(D)" and an optional
    "i".  If `d` is given, any sqrt radicand must equal it.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    # split into signed terms
    terms = []
    pos = 0
    cur_sign = 1
    if s[0] in "+-":
        cur_sign = -1 if s[0] == "-" else 1
        pos = 1
    start = pos
    depth = 0
    while pos <= len(s):
        if pos == len(s) or (s[pos] in "+-" and depth == 0):
            if pos == start:
                raise ValueError(f"malformed scalar literal {text!r}")
            terms.append((cur_sign, s[start:pos]))
            if pos < len(s):
                cur_sign = -1 if s[pos] == "-" else 1
                start = pos + 1
        elif s[pos] == "(":
            depth += 1
        elif s[pos] == ")":
            depth -= 1
        pos += 1

    total = ExactComplex(0)
    for sign, term in terms:
        coeff = Fraction(sign)
        radicand = 0
        has_i = False
        for factor in term.split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in scalar literal {text!r}")
            if m.group(1) is not None:
                coeff *= Fraction(m.group(1))
            elif m.group(2) is not None:
                if radicand:
                    raise ValueError(f"repeated sqrt in term {term!r}")
                radicand = int(m.group(2))
                if d is not None and radicand not in (0, 1, d):
                    raise FieldError(
                        f"radicand {radicand} differs from declared irrational {d}"
                    )
            else:
                if has_i:
                    raise ValueError(f"repeated i in term {term!r}")
                has_i = True
        part = (
            ExactReal(0, coeff, radicand) if radicand else ExactReal(coeff)
        )
        total = total + (ExactComplex(0, part) if has_i else ExactComplex(part))
    return total


def _format_real(x: ExactReal, suffix: str = "") -> list[str]:
    out = []
    if x.a != 0:
        out.append(f"{x.a}{suffix}")
    if x.b != 0:
        out.append(f"{x.b}*sqrt({x.d}){suffix}")
    return out


def format_scalar(x) -> str:
    """Literal form accepted back by parse_scalar."""
    if isinstance(x, ExactReal):
        x = ExactComplex(x)
    x = ExactComplex.of(x)
    parts = _format_real(x.re) + _format_real(x.im, "*i")
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += p if p.startswith("-") else "+" + p
    return text


# ---------------------------------------------------------------------------
# Type-dispatching helpers so kernels run on exact or float scalars alike.
# ---------------------------------------------------------------------------


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, ExactReal, ExactComplex))


def rsign(x, tol: float = NUMERIC_TOL) -> int:
    """Sign of a real scalar: exact for field elements, tolerant for floats."""
    if isinstance(x, ExactReal):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if abs(x) <= tol:
        return 0
    return 1 if x > 0 else -1


def riszero(x, tol: float = NUMERIC_TOL) -> bool:
    return rsign(x, tol) == 0


def ciszero(x, tol: float = NUMERIC_TOL) -> bool:
    if isinstance(x, ExactComplex):
        return x.is_zero()
    if isinstance(x, complex):
        return abs(x) <= tol
    return riszero(x, tol)


def as_float(x) -> float:
    if isinstance(x, ExactReal):
        return float(x)
    if isinstance(x, ExactComplex):
        if not x.im.is_zero():
            raise ValueError("as_float on a non-real scalar")
        return float(x.re)
    return float(x)


def as_complex(x) -> complex:
    if isinstance(x, (ExactReal, Fraction, int, float)):
        return complex(as_float(x))
    return complex(x)


def conj_of(x):
    if isinstance(x, ExactComplex):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def re_of(x):
    if isinstance(x, ExactComplex):
        return x.re
    if isinstance(x, complex):
        return x.real
    return x


def im_of(x):
    if isinstance(x, ExactComplex):
        return x.im
    if isinstance(x, complex):
        return x.imag
    if isinstance(x, float):
        return 0.0
    return Fraction(0)
