"""Rational parameter grids."""
from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .scalar import as_rational, parse_rational


def rational_range(lo, hi, step) -> list:
    """Inclusive arithmetic progression ``lo, lo+step, ..., <= hi`` of Fractions."""
    lo, hi, step = as_rational(lo), as_rational(hi), as_rational(step)
    if step <= 0:
        raise UsageError("grid step must be positive")
    if hi < lo:
        raise UsageError("grid upper end lies below its lower end")
    count = int((hi - lo) // step)
    return [lo + k * step for k in range(count + 1)]


def parse_grid(text: str) -> list:
    """Parse ``lo:hi:step`` (or a single rational) into a list of Fractions."""
    parts = text.split(":")
    if len(parts) == 1:
        return [parse_rational(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"grid must look like lo:hi:step, got {text!r}")
    return rational_range(*(parse_rational(p) for p in parts))


def parse_int_range(text: str) -> list:
    """Parse ``k`` or an inclusive ``lo:hi`` integer range."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError as exc:
        raise UsageError(f"malformed integer range {text!r}") from exc
    if len(parts) == 1:
        return parts
    if len(parts) == 2 and parts[0] <= parts[1]:
        return list(range(parts[0], parts[1] + 1))
    raise UsageError(f"integer range must look like lo:hi, got {text!r}")


def default_power_grid() -> list:
    """Exponents ``-10, -39/4, ..., 10`` without the trivially satisfied 0 and 1."""
    return [p for p in rational_range(-10, 10, Fraction(1, 4)) if p not in (0, 1)]
