"""String measures and compressed string representations."""

from fractions import Fraction

from . import _core
from ._core import (
    CycleError,
    LimitError,
    OverflowError,
    ParseError,
    ValidityError,
    b_bruteforce,
    complexity_profile,
    convert,
    decode,
    delta_sep_system,
    describe,
    gamma_bruteforce,
    is_attractor,
    lz76_parse,
    string_complexity,
    thue_morse_system,
    z,
)

__all__ = [
    "CycleError",
    "LimitError",
    "OverflowError",
    "ParseError",
    "ValidityError",
    "b_bruteforce",
    "complexity_profile",
    "convert",
    "decode",
    "delta",
    "delta_sep_system",
    "delta_vs_ell",
    "describe",
    "gamma_bruteforce",
    "is_attractor",
    "lz76_parse",
    "string_complexity",
    "thue_morse_system",
    "thue_morse_z",
    "z",
]


def delta(w: str) -> Fraction:
    return Fraction(*_core.delta(w))


def _rows(rows):
    for row in rows:
        row["delta"] = Fraction(*row["delta"])
    return rows


def delta_vs_ell(d_min: int, d_max: int, timing: bool = False):
    return _rows(_core.delta_vs_ell(d_min, d_max, timing))


def thue_morse_z(k_min: int, k_max: int, timing: bool = False):
    return _rows(_core.thue_morse_z(k_min, k_max, timing))
