# core/sparse.py
"""Helpers for sparse exact-rational coefficient maps (key -> Fraction, no zeros)."""

from fractions import Fraction
from typing import Dict, Hashable, Iterable, Mapping, Tuple

from .errors import FormatError

Coeffs = Dict[Hashable, Fraction]


def add_into(acc: dict, key, value) -> None:
    """acc[key] += value, dropping the key when the sum vanishes."""
    if not value:
        return
    total = acc.get(key, 0) + value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def canonical(items: Iterable[Tuple[Hashable, object]]) -> dict:
    """Build a canonical map from (key, coeff) pairs, summing repeated keys."""
    acc: dict = {}
    for key, value in items:
        add_into(acc, key, Fraction(value))
    return acc


def scaled(coeffs: Mapping, factor) -> dict:
    factor = Fraction(factor)
    if not factor:
        return {}
    return {k: v * factor for k, v in coeffs.items()}


def combine(left: Mapping, right: Mapping, sign: int = 1) -> dict:
    out = dict(left)
    for k, v in right.items():
        add_into(out, k, v if sign > 0 else -v)
    return out


def l1(coeffs: Mapping) -> Fraction:
    return sum((abs(v) for v in coeffs.values()), Fraction(0))


def format_fraction(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"expected a rational string 'num/den', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from exc


def format_key(key: Tuple[int, ...]) -> str:
    return "(" + ",".join(str(i) for i in key) + ")"


def parse_key(text: str) -> Tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise FormatError(f"tuple key must look like '(i,j,k)', got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(part) for part in inner.split(","))
    except ValueError as exc:
        raise FormatError(f"bad tuple key {text!r}") from exc
