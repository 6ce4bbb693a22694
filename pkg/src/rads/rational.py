"""Exact rational values and their wire encoding.

All scoring math runs on `fractions.Fraction` so worked results like
2.1875 or 37.1875 reproduce exactly instead of within float tolerance.
On the wire a rational is a string: a plain decimal ("0.75", "65") when
the value terminates in base 10, otherwise "p/q" ("19/7"). Both forms
are exact and round-trip losslessly.
"""

from __future__ import annotations

import re
from fractions import Fraction

# decimal ("20", "-0.75") or fraction ("19/7") literals
_RATIONAL_RE = re.compile(r"^-?(\d+(\.\d+)?|\d+/[1-9]\d*)$")


def parse_rational(raw: str | int) -> Fraction:
    """Parse a wire rational. Raises ValueError on anything else."""
    if isinstance(raw, bool):
        raise ValueError(f"not a rational: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str) or not _RATIONAL_RE.match(raw):
        raise ValueError(f"not a rational: {raw!r}")
    return Fraction(raw)


def is_terminating(value: Fraction) -> bool:
    """True when the value has a finite base-10 expansion."""
    den = value.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def format_rational(value: Fraction) -> str:
    """Canonical wire form: shortest exact decimal, else "p/q"."""
    if value.denominator == 1:
        return str(value.numerator)
    if not is_terminating(value):
        return f"{value.numerator}/{value.denominator}"
    # scale to an integer over a power of ten, then place the point
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    out = f"{text[:-digits]}.{text[-digits:]}".rstrip("0").rstrip(".")
    return "-" + out if value < 0 else out


def format_fixed(value: Fraction, places: int = 4) -> str:
    """Render with exactly `places` decimals (half-up), for table output."""
    scale = 10**places
    sign = "-" if value < 0 else ""
    scaled = (abs(value) * scale + Fraction(1, 2)).__floor__()
    text = str(scaled).rjust(places + 1, "0")
    return f"{sign}{text[:-places]}.{text[-places:]}"


def is_four_decimal(value: Fraction) -> bool:
    """True when the value is representable as k/10000."""
    return (value * 10000).denominator == 1
