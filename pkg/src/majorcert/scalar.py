"""Certified scalars.

A :class:`Scalar` is either an exact :class:`~fractions.Fraction` or a lazily
evaluated real number that can be enclosed in an interval at any requested
precision.  Enclosures are computed with MPFR directed rounding (lower ends
rounded toward -inf, upper ends toward +inf), so a comparison that separates
two enclosures is a statement about the real numbers themselves.

Positive algebraic values of the form ``q ** (1/k)`` with ``q`` rational are
additionally tracked as radicals.  Products, quotients and rational powers of
radicals stay radicals (within a size budget), and two radicals are compared
exactly by integer exponentiation instead of by intervals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Callable, Iterable, Iterator, Optional, Union

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import DomainError, UsageError

__all__ = [
    "DEFAULT_POLICY",
    "ComparisonVerdict",
    "Enclosure",
    "Order",
    "PrecisionPolicy",
    "Scalar",
    "as_rational",
    "as_scalar",
    "compare",
    "format_rational",
    "log_scalar",
    "parse_rational",
    "pow_scalar",
    "root_compare",
]

GUARD_BITS = 16
RADICAL_BIT_BUDGET = 1 << 17
RADICAL_INDEX_LIMIT = 1 << 15
COMPARE_BIT_BUDGET = 1 << 21
_SIMPLIFY_BIT_LIMIT = 4096

RationalLike = Union[int, Fraction, str]


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer or a finite decimal string into a Fraction."""
    if not isinstance(text, str):
        raise UsageError(f"expected a rational string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}") from exc


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, gmpy2 rationals and rational strings.

    Floats are refused: their binary value is rarely the number the caller
    meant, and every quantity here is a rational grid point.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (type(mpq(0)), type(gmpy2.mpz(0)))) or isinstance(value, _RationalABC):
        return Fraction(int(value.numerator), int(value.denominator))
    raise UsageError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"numerator/denominator"`` in decimal digits."""
    return f"{q.numerator}/{q.denominator}"


def _bitlen(q: Fraction) -> int:
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


# ---------------------------------------------------------------------------
# precision policy and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionPolicy:
    """Precision schedule for certified comparisons.

    Enclosures start at ``start_bits`` significand bits (plus guard bits) and
    the precision doubles until the compared enclosures separate or
    ``max_bits`` is exceeded.
    """

    start_bits: int = 64
    max_bits: int = 4096

    def __post_init__(self):
        if self.start_bits < 2 or self.max_bits < self.start_bits:
            raise UsageError(
                f"invalid precision policy start={self.start_bits} max={self.max_bits}"
            )

    def schedule(self) -> Iterator[int]:
        bits = self.start_bits
        while bits <= self.max_bits:
            yield bits
            bits *= 2

    def to_json(self) -> dict:
        return {"start_bits": self.start_bits, "max_bits": self.max_bits}


DEFAULT_POLICY = PrecisionPolicy()


class Order(enum.Enum):
    CERTAINLY_LESS = "CertainlyLess"
    CERTAINLY_GREATER = "CertainlyGreater"
    EXACTLY_EQUAL = "ExactlyEqual"
    TIE_WITHIN_TOLERANCE = "TieWithinTolerance"


_REL_ACCEPTS = {
    "<": {Order.CERTAINLY_LESS},
    "<=": {Order.CERTAINLY_LESS, Order.EXACTLY_EQUAL},
    ">": {Order.CERTAINLY_GREATER},
    ">=": {Order.CERTAINLY_GREATER, Order.EXACTLY_EQUAL},
    "==": {Order.EXACTLY_EQUAL},
}


@dataclass(frozen=True)
class ComparisonVerdict:
    kind: Order
    residual_width: Optional[Fraction] = None
    bits: Optional[int] = None

    @property
    def conclusive(self) -> bool:
        return self.kind is not Order.TIE_WITHIN_TOLERANCE

    @property
    def sign(self) -> Optional[int]:
        return {
            Order.CERTAINLY_LESS: -1,
            Order.EXACTLY_EQUAL: 0,
            Order.CERTAINLY_GREATER: 1,
        }.get(self.kind)

    def satisfies(self, relation: str) -> Optional[bool]:
        """Whether the certified order proves ``lhs <relation> rhs``.

        Returns None for an unresolved tie.  A tie never proves anything, but
        it does not refute a non-strict relation either.
        """
        if relation not in _REL_ACCEPTS:
            raise UsageError(f"unknown relation {relation!r}")
        if self.kind is Order.TIE_WITHIN_TOLERANCE:
            return None
        return self.kind in _REL_ACCEPTS[relation]

    def flipped(self) -> "ComparisonVerdict":
        swap = {
            Order.CERTAINLY_LESS: Order.CERTAINLY_GREATER,
            Order.CERTAINLY_GREATER: Order.CERTAINLY_LESS,
        }
        return ComparisonVerdict(swap.get(self.kind, self.kind), self.residual_width, self.bits)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.residual_width is not None:
            out["residual_width"] = format_rational(self.residual_width)
        return out

    def __str__(self):
        return self.kind.value


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _ctx(prec: int, up: bool):
    return gmpy2.context(
        precision=prec, round=gmpy2.RoundUp if up else gmpy2.RoundDown
    )


def _working(bits: int) -> int:
    return bits + GUARD_BITS


def _to_mpfr(q: Fraction, prec: int, up: bool) -> mpfr:
    return mpfr(mpq(q.numerator, q.denominator), prec, _ctx(prec, up))


def _directed_decimal(x: mpfr, digits: int, up: bool) -> str:
    """Scientific decimal string with ``digits`` significant digits, rounded outward."""
    v = Fraction(*x.as_integer_ratio())
    if v == 0:
        return "0"
    sign = "-" if v < 0 else ""
    mag = abs(v)
    # round the magnitude toward -inf (lower ends) or +inf (upper ends)
    away = up if v > 0 else not up
    e10 = len(str(mag.numerator)) - len(str(mag.denominator))
    if mag < Fraction(10) ** e10:
        e10 -= 1
    scaled = mag * Fraction(10) ** (digits - 1 - e10)
    m = -((-scaled.numerator) // scaled.denominator) if away else scaled.numerator // scaled.denominator
    if m >= 10 ** digits:
        m //= 10
        e10 += 1
        if away and Fraction(m) * Fraction(10) ** (e10 - digits + 1) < mag:
            m += 1
    text = str(m)
    mantissa = text[0] + ("." + text[1:] if len(text) > 1 else "")
    return f"{sign}{mantissa}e{e10:+d}"


class _Unresolved(ArithmeticError):
    """Raised inside an evaluation when the current precision cannot proceed."""


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` with dyadic endpoints containing a real value."""

    lo: mpfr
    hi: mpfr
    bits: int

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def from_rational(cls, q: Fraction, bits: int) -> "Enclosure":
        prec = _working(bits)
        return cls(_to_mpfr(q, prec, False), _to_mpfr(q, prec, True), bits)

    @property
    def width(self) -> Fraction:
        return Fraction(*self.hi.as_integer_ratio()) - Fraction(*self.lo.as_integer_ratio())

    def contains(self, q: Fraction) -> bool:
        return Fraction(*self.lo.as_integer_ratio()) <= q <= Fraction(*self.hi.as_integer_ratio())

    def midpoint(self) -> Fraction:
        return (Fraction(*self.lo.as_integer_ratio()) + Fraction(*self.hi.as_integer_ratio())) / 2

    def _digits(self) -> int:
        return int(self.bits * 0.30103) + 3

    @cached_property
    def _decimal_ends(self) -> tuple:
        d = self._digits()
        return _directed_decimal(self.lo, d, up=False), _directed_decimal(self.hi, d, up=True)

    def to_json(self) -> dict:
        lo, hi = self._decimal_ends
        return {"lo": lo, "hi": hi, "bits": self.bits}

    def certified_digits(self) -> str:
        """Longest decimal prefix shared by both ends (``"…"`` marks the cut)."""
        lo, hi = self._decimal_ends
        if lo == hi:
            return lo
        lo_m, _, lo_e = lo.partition("e")
        hi_m, _, hi_e = hi.partition("e")
        if lo_e != hi_e:
            return f"[{lo}, {hi}]"
        common = []
        for a, b in zip(lo_m, hi_m):
            if a != b:
                break
            common.append(a)
        text = "".join(common) + "…"
        return text + (f"e{lo_e}" if lo_e != "+0" else "")

    def __repr__(self):
        return f"Enclosure([{self.lo}, {self.hi}], bits={self.bits})"


def _iv_add(a: Enclosure, b: Enclosure, bits: int) -> Enclosure:
    prec = _working(bits)
    return Enclosure(_ctx(prec, False).add(a.lo, b.lo), _ctx(prec, True).add(a.hi, b.hi), bits)


def _iv_sum(items, bits: int) -> Enclosure:
    prec = _working(bits)
    los = [e.lo for e in items]
    his = [e.hi for e in items]
    return Enclosure(_ctx(prec, False).fsum(los), _ctx(prec, True).fsum(his), bits)


def _iv_sub(a: Enclosure, b: Enclosure, bits: int) -> Enclosure:
    prec = _working(bits)
    return Enclosure(_ctx(prec, False).sub(a.lo, b.hi), _ctx(prec, True).sub(a.hi, b.lo), bits)


def _iv_neg(a: Enclosure, bits: int) -> Enclosure:
    prec = _working(bits)
    return Enclosure(_ctx(prec, False).minus(a.hi), _ctx(prec, True).minus(a.lo), bits)


def _iv_mul(a: Enclosure, b: Enclosure, bits: int) -> Enclosure:
    prec = _working(bits)
    if a.lo >= 0 and b.lo >= 0:
        return Enclosure(_ctx(prec, False).mul(a.lo, b.lo), _ctx(prec, True).mul(a.hi, b.hi), bits)
    down, up = _ctx(prec, False), _ctx(prec, True)
    pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)]
    return Enclosure(min(down.mul(x, y) for x, y in pairs), max(up.mul(x, y) for x, y in pairs), bits)


def _iv_div(a: Enclosure, b: Enclosure, bits: int) -> Enclosure:
    if b.lo <= 0 <= b.hi:
        raise _Unresolved("divisor enclosure contains zero")
    prec = _working(bits)
    down, up = _ctx(prec, False), _ctx(prec, True)
    if a.lo >= 0 and b.lo > 0:
        return Enclosure(down.div(a.lo, b.hi), up.div(a.hi, b.lo), bits)
    pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)]
    return Enclosure(min(down.div(x, y) for x, y in pairs), max(up.div(x, y) for x, y in pairs), bits)


def _iv_pow_positive(a: Enclosure, num: int, den: int, bits: int) -> Enclosure:
    """``a ** (num/den)`` for an enclosure with positive lower end."""
    if not a.lo > 0:
        raise _Unresolved("power base enclosure is not positive")
    prec = _working(bits)
    down, up = _ctx(prec, False), _ctx(prec, True)

    def lower(x, m):
        v = down.pow(x, m) if m != 1 else x
        return down.rootn(v, den) if den != 1 else v

    def upper(x, m):
        v = up.pow(x, m) if m != 1 else x
        return up.rootn(v, den) if den != 1 else v

    if num >= 0:
        return Enclosure(lower(a.lo, num), upper(a.hi, num), bits)
    m = -num
    return Enclosure(down.div(1, upper(a.hi, m)), up.div(1, lower(a.lo, m)), bits)


def _iv_pow_int(a: Enclosure, k: int, bits: int) -> Enclosure:
    if a.lo > 0:
        return _iv_pow_positive(a, k, 1, bits)
    if k < 0:
        return _iv_div(Enclosure.from_rational(Fraction(1), bits), _iv_pow_int(a, -k, bits), bits)
    out = Enclosure.from_rational(Fraction(1), bits)
    for _ in range(k):
        out = _iv_mul(out, a, bits)
    return out


def _radical_enclosure(radicand: Fraction, index: int, bits: int) -> Enclosure:
    prec = _working(bits)
    lo = _to_mpfr(radicand, prec, False)
    hi = _to_mpfr(radicand, prec, True)
    if index == 1:
        return Enclosure(lo, hi, bits)
    return Enclosure(_ctx(prec, False).rootn(lo, index), _ctx(prec, True).rootn(hi, index), bits)


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    if _bitlen(q) > _SIMPLIFY_BIT_LIMIT or k > _SIMPLIFY_BIT_LIMIT:
        return None
    rn, ok_n = gmpy2.iroot(gmpy2.mpz(q.numerator), k)
    if not ok_n:
        return None
    rd, ok_d = gmpy2.iroot(gmpy2.mpz(q.denominator), k)
    if not ok_d:
        return None
    return Fraction(int(rn), int(rd))


class Scalar:
    """A real number known exactly or through refinable enclosures.

    Instances are immutable.  Arithmetic with ints, Fractions or other
    Scalars returns a new Scalar; exact operands stay exact under ``+ - * /``
    and integer powers.
    """

    __slots__ = ("exact", "radical", "_fn", "_cache")

    def __init__(self, exact=None, radical=None, fn=None):
        self.exact: Optional[Fraction] = exact
        self.radical: Optional[tuple] = radical
        self._fn: Optional[Callable[[int], Enclosure]] = fn
        self._cache: dict = {}

    # construction ---------------------------------------------------------

    @classmethod
    def of(cls, value: RationalLike) -> "Scalar":
        return cls(exact=as_rational(value))

    @classmethod
    def lazy(cls, fn: Callable[[int], Enclosure]) -> "Scalar":
        """Wrap an evaluator ``bits -> Enclosure``; results are cached per precision."""
        return cls(fn=fn)

    @classmethod
    def from_radical(cls, radicand: Fraction, index: int) -> "Scalar":
        """The positive real ``radicand ** (1/index)``."""
        radicand = as_rational(radicand)
        if radicand <= 0:
            raise DomainError("radicand must be positive")
        if index < 1:
            raise DomainError("root index must be a positive integer")
        if index == 1:
            return cls(exact=radicand)
        root = _exact_root(radicand, index)
        if root is not None:
            return cls(exact=root)
        return cls(radical=(radicand, index))

    @classmethod
    def sum(cls, items: Iterable) -> "Scalar":
        """Sum in a single evaluation node (exact when every term is exact)."""
        terms = [as_scalar(t) for t in items]
        if not terms:
            return cls(exact=Fraction(0))
        if all(t.exact is not None for t in terms):
            return cls(exact=sum((t.exact for t in terms), Fraction(0)))
        exact_part = sum((t.exact for t in terms if t.exact is not None), Fraction(0))
        rest = [t for t in terms if t.exact is None]
        if len(rest) == 1 and not exact_part:
            return rest[0]

        def fn(bits):
            encs = [t.enclose(bits) for t in rest]
            if exact_part:
                encs.append(Enclosure.from_rational(exact_part, bits))
            return _iv_sum(encs, bits)

        return cls(fn=fn)

    # inspection -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def radical_form(self) -> Optional[tuple]:
        """``(radicand, index)`` when the value is a positive rational root."""
        if self.radical is not None:
            return self.radical
        if self.exact is not None and self.exact > 0:
            return (self.exact, 1)
        return None

    def enclose(self, bits: int) -> Enclosure:
        cached = self._cache.get(bits)
        if cached is not None:
            return cached
        if self.exact is not None:
            enc = Enclosure.from_rational(self.exact, bits)
        elif self.radical is not None:
            enc = _radical_enclosure(self.radical[0], self.radical[1], bits)
        else:
            enc = self._fn(bits)
        self._cache[bits] = enc
        return enc

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits):
        if self.exact is not None:
            return format_rational(self.exact)
        return self.enclose(bits).to_json()

    def describe(self, bits: int = DEFAULT_POLICY.start_bits) -> str:
        if self.exact is not None:
            return format_rational(self.exact) if self.exact.denominator != 1 else str(self.exact.numerator)
        return self.enclose(bits).certified_digits()

    def __repr__(self):
        if self.exact is not None:
            return f"Scalar({format_rational(self.exact)})"
        if self.radical is not None:
            q, k = self.radical
            if _bitlen(q) < 200:
                return f"Scalar(({format_rational(q)})^(1/{k}))"
        return f"Scalar(~{self.describe()})"

    # arithmetic -----------------------------------------------------------

    def _binary(self, other, exact_op, iv_op):
        other = as_scalar(other)
        if self.exact is not None and other.exact is not None:
            return Scalar(exact=exact_op(self.exact, other.exact))
        a, b = self, other
        return Scalar(fn=lambda bits: iv_op(a.enclose(bits), b.enclose(bits), bits))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y, _iv_add)

    def __radd__(self, other):
        return as_scalar(other).__add__(self)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y, _iv_sub)

    def __rsub__(self, other):
        return as_scalar(other).__sub__(self)

    def __neg__(self):
        if self.exact is not None:
            return Scalar(exact=-self.exact)
        a = self
        return Scalar(fn=lambda bits: _iv_neg(a.enclose(bits), bits))

    def __mul__(self, other):
        other = as_scalar(other)
        combined = _combine_radicals(self, other, 1)
        if combined is not None:
            return combined
        return self._binary(other, lambda x, y: x * y, _iv_mul)

    def __rmul__(self, other):
        return as_scalar(other).__mul__(self)

    def __truediv__(self, other):
        other = as_scalar(other)
        if other.exact == 0:
            raise ZeroDivisionError("division by exact zero")
        combined = _combine_radicals(self, other, -1)
        if combined is not None:
            return combined
        return self._binary(other, lambda x, y: x / y, _iv_div)

    def __rtruediv__(self, other):
        return as_scalar(other).__truediv__(self)

    def __pow__(self, exponent):
        e = as_rational(exponent)
        num, den = e.numerator, e.denominator
        if self.exact is not None:
            if den == 1:
                if self.exact == 0 and num < 0:
                    raise ZeroDivisionError("zero to a negative power")
                return Scalar(exact=self.exact ** num)
            return pow_scalar(self.exact, e)
        form = self.radical_form()
        if form is not None:
            q, k = form
            if abs(num) * _bitlen(q) <= RADICAL_BIT_BUDGET and k * den <= RADICAL_INDEX_LIMIT:
                g = gcd(abs(num), k * den)
                return Scalar.from_radical(q ** (num // g), (k * den) // g)
        a = self
        if den == 1:
            return Scalar(fn=lambda bits: _iv_pow_int(a.enclose(bits), num, bits))
        return Scalar(fn=lambda bits: _iv_pow_positive(a.enclose(bits), num, den, bits))


def _combine_radicals(a: Scalar, b: Scalar, sign: int) -> Optional[Scalar]:
    """Exact radical for ``a * b**sign`` when both are radicals, else None."""
    if a.exact is not None and b.exact is not None:
        return None
    fa, fb = a.radical_form(), b.radical_form()
    if fa is None or fb is None:
        return None
    (qa, ka), (qb, kb) = fa, fb
    index = lcm(ka, kb)
    ea, eb = index // ka, index // kb
    if index > RADICAL_INDEX_LIMIT or ea * _bitlen(qa) + eb * _bitlen(qb) > RADICAL_BIT_BUDGET:
        return None
    return Scalar.from_radical(qa ** ea * qb ** (sign * eb), index)


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    return Scalar(exact=as_rational(value))


def pow_scalar(base, exponent) -> Scalar:
    """``base ** exponent`` for a positive rational base and rational exponent.

    Integer exponents give exact rationals; otherwise the result is the
    radical ``(base**p) ** (1/q)`` for ``exponent = p/q``.
    """
    base = as_rational(base)
    exponent = as_rational(exponent)
    if base <= 0:
        raise DomainError(f"pow_scalar requires a positive base, got {base}")
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return Scalar(exact=base ** p)
    return Scalar.from_radical(base ** p, q)


def log_scalar(value) -> Scalar:
    """Natural logarithm of a positive rational, as an enclosure."""
    x = as_rational(value)
    if x <= 0:
        raise DomainError("log of a nonpositive number")
    if x == 1:
        return Scalar(exact=Fraction(0))

    def fn(bits):
        prec = _working(bits)
        down, up = _ctx(prec, False), _ctx(prec, True)
        return Enclosure(down.log(_to_mpfr(x, prec, False)), up.log(_to_mpfr(x, prec, True)), bits)

    return Scalar(fn=fn)


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

def _cmp_fractions(a: Fraction, b: Fraction) -> ComparisonVerdict:
    if a < b:
        return ComparisonVerdict(Order.CERTAINLY_LESS)
    if a > b:
        return ComparisonVerdict(Order.CERTAINLY_GREATER)
    return ComparisonVerdict(Order.EXACTLY_EQUAL)


def _radical_powers(a, p, b, q):
    """Return ``(a**(L/p), b**(L/q))`` with ``L = lcm(p, q)``, or None if too large."""
    index = lcm(p, q)
    ea, eb = index // p, index // q
    if ea * _bitlen(a) > COMPARE_BIT_BUDGET or eb * _bitlen(b) > COMPARE_BIT_BUDGET:
        return None
    return a ** ea, b ** eb


def root_compare(a, p: int, b, q: int) -> ComparisonVerdict:
    """Decide ``a**(1/p)`` against ``b**(1/q)`` in integer arithmetic."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise DomainError("root_compare requires positive radicands")
    if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
        raise DomainError("root indices must be positive integers")
    index = lcm(p, q)
    return _cmp_fractions(a ** (index // p), b ** (index // q))


def compare(a, b, policy: PrecisionPolicy = DEFAULT_POLICY) -> ComparisonVerdict:
    """Certified order of two scalars.

    Exact and radical operands are decided exactly.  Otherwise both sides are
    enclosed at increasing precision until the enclosures are disjoint; if
    that never happens the result is a tie carrying the final width of the
    enclosure of ``a - b``.
    """
    a, b = as_scalar(a), as_scalar(b)
    if a is b:
        return ComparisonVerdict(Order.EXACTLY_EQUAL)
    if a.exact is not None and b.exact is not None:
        return _cmp_fractions(a.exact, b.exact)
    fa, fb = a.radical_form(), b.radical_form()
    if fa is not None and fb is not None:
        powers = _radical_powers(fa[0], fa[1], fb[0], fb[1])
        if powers is not None:
            return _cmp_fractions(*powers)
    width = None
    bits = None
    for bits in policy.schedule():
        try:
            ea, eb = a.enclose(bits), b.enclose(bits)
        except _Unresolved:
            continue
        if ea.hi < eb.lo:
            return ComparisonVerdict(Order.CERTAINLY_LESS, bits=bits)
        if ea.lo > eb.hi:
            return ComparisonVerdict(Order.CERTAINLY_GREATER, bits=bits)
        width = ea.width + eb.width
    return ComparisonVerdict(Order.TIE_WITHIN_TOLERANCE, residual_width=width, bits=bits)
