"""Kodaira singular fiber types and their numerical invariants.

For every type the table records the Euler number of the fiber, the order
of the local monodromy, the exponent d of the local model z^m = t^d of the
base change that trivializes the monodromy, and the log canonical threshold
of the fiber.  The table is checked for internal consistency on import.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INFINITE = math.inf


class InfiniteMonodromyError(ValueError):
    pass


@dataclass(frozen=True)
class KodairaType:
    """A Kodaira fiber type.  ``n`` is only meaningful for I_n and I_n^*."""

    tag: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ValueError(f"unknown Kodaira tag {self.tag!r}")
        if self.tag in ("I", "Istar") and self.n < 1:
            raise ValueError(f"{self.tag} needs n >= 1")
        if self.tag not in ("I", "Istar") and self.n:
            raise ValueError(f"{self.tag} takes no index")

    @property
    def name(self) -> str:
        if self.tag == "I":
            return f"I{self.n}"
        if self.tag == "Istar":
            return f"I{self.n}*"
        return self.tag.replace("star", "*")

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"KodairaType({self.name})"

    @property
    def has_finite_monodromy(self) -> bool:
        return self.tag not in ("I", "Istar")


_TAGS = ("I0", "I", "II", "III", "IV", "I0star", "Istar", "IIstar", "IIIstar", "IVstar")

I0 = KodairaType("I0")
II = KodairaType("II")
III = KodairaType("III")
IV = KodairaType("IV")
I0star = KodairaType("I0star")
IIstar = KodairaType("IIstar")
IIIstar = KodairaType("IIIstar")
IVstar = KodairaType("IVstar")


def I(n: int) -> KodairaType:  # noqa: E743
    return KodairaType("I", n)


def Istar(n: int) -> KodairaType:
    return KodairaType("Istar", n)


# tag -> (euler, monodromy order, local exponent d, lct); None marks a blank entry
_TABLE: dict[str, tuple[object, object, object, object]] = {
    "I0": (0, 1, 1, Fraction(1)),
    "I": ("n", INFINITE, None, Fraction(1)),
    "II": (2, 6, 1, Fraction(5, 6)),
    "III": (3, 4, 1, Fraction(3, 4)),
    "IV": (4, 3, 1, Fraction(2, 3)),
    "I0star": (6, 2, 1, Fraction(1, 2)),
    "Istar": ("n+6", INFINITE, None, None),
    "IIstar": (10, 6, 5, Fraction(1, 6)),
    "IIIstar": (9, 4, 3, Fraction(1, 4)),
    "IVstar": (8, 3, 2, Fraction(1, 3)),
}

TABLE_COLUMNS = ("I0", "I", "II", "III", "IV", "I0star", "Istar", "IIstar", "IIIstar", "IVstar")
COLUMN_HEADERS = ("I0", "In", "II", "III", "IV", "I0*", "In*", "II*", "III*", "IV*")
ROW_HEADERS = ("Euler characteristic", "Monodromy order m", "d for z^m = t^d", "Log canonical threshold c")

SINGULAR_FINITE_TYPES = (II, III, IV, I0star, IVstar, IIIstar, IIstar)
STAR_TYPES = frozenset({I0star, IIstar, IIIstar, IVstar})
STAR_PAIRS = ((II, IIstar), (III, IIIstar), (IV, IVstar))


def euler_characteristic(t: KodairaType) -> int:
    if t.tag == "I":
        return t.n
    if t.tag == "Istar":
        return t.n + 6
    return _TABLE[t.tag][0]


def monodromy_order(t: KodairaType) -> Union[int, float]:
    """Order of the local monodromy; :data:`INFINITE` for I_n and I_n^*, n >= 1."""
    return _TABLE[t.tag][1]


def local_exponent(t: KodairaType) -> int:
    d = _TABLE[t.tag][2]
    if d is None:
        raise InfiniteMonodromyError(f"infinite monodromy type {t.name}: no local exponent")
    return d


def lct(t: KodairaType) -> Fraction:
    c = _TABLE[t.tag][3]
    if c is None:
        raise InfiniteMonodromyError(f"infinite monodromy type {t.name}: log canonical threshold undefined")
    return c


def is_star_type(t: KodairaType) -> bool:
    return t in STAR_TYPES


_BY_ORDER = {2: frozenset({I0star}), 3: frozenset({IV, IVstar}), 4: frozenset({III, IIIstar}), 6: frozenset({II, IIstar})}


def types_for_monodromy_order(m: int) -> frozenset[KodairaType]:
    """Singular fiber types whose local monodromy has order exactly m."""
    try:
        return _BY_ORDER[m]
    except KeyError:
        raise ValueError(f"invalid monodromy order {m}; expected one of 2, 3, 4, 6") from None


_NAME_RE = re.compile(r"^I(\d+)(\*|star)?$")


def parse_kodaira(text: str) -> KodairaType:
    """Parse names such as ``IV``, ``IV*``, ``IVstar``, ``I0*``, ``I3``."""
    s = text.strip()
    m = _NAME_RE.match(s)
    if m:
        n = int(m.group(1))
        starred = m.group(2) is not None
        if n == 0:
            return I0star if starred else I0
        return Istar(n) if starred else I(n)
    base = s[:-1] if s.endswith("*") else s[:-4] if s.endswith("star") else s
    starred = base != s
    if base in ("II", "III", "IV"):
        return KodairaType(base + ("star" if starred else ""))
    raise ValueError(f"unknown Kodaira type {text!r}")


def table_rows() -> list[list[str]]:
    """Table of attributes as display strings, one row per attribute."""
    rows = []
    for k in range(4):
        row = []
        for tag in TABLE_COLUMNS:
            v = _TABLE[tag][k]
            if v is None:
                row.append("-")
            elif v == INFINITE:
                row.append("inf")
            elif isinstance(v, Fraction):
                row.append(str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}")
            else:
                row.append(str(v))
        rows.append(row)
    return rows


def self_check() -> None:
    """Consistency checks on the constant table; raises AssertionError on failure."""
    for t in SINGULAR_FINITE_TYPES:
        e, m, d, c = euler_characteristic(t), monodromy_order(t), local_exponent(t), lct(t)
        if 1 - c != Fraction(e, 12):
            raise AssertionError(f"{t}: 1 - lct != euler/12")
        if math.gcd(d, m) != 1 or not (1 <= d < m):
            raise AssertionError(f"{t}: bad local model z^{m} = t^{d}")
        if 1 - Fraction(1, m) < 1 - c:
            raise AssertionError(f"{t}: 1 - 1/m < 1 - lct")
        if (c == Fraction(1, m)) != is_star_type(t):
            raise AssertionError(f"{t}: lct = 1/m should hold exactly for star types")
    for t, s in STAR_PAIRS:
        if monodromy_order(t) != monodromy_order(s):
            raise AssertionError(f"{t}/{s}: monodromy orders differ")
        if euler_characteristic(t) + euler_characteristic(s) != 12:
            raise AssertionError(f"{t}/{s}: Euler numbers do not sum to 12")
    for m, types in _BY_ORDER.items():
        if {t for t in SINGULAR_FINITE_TYPES if monodromy_order(t) == m} != set(types):
            raise AssertionError(f"monodromy order {m}: type list inconsistent")


self_check()
