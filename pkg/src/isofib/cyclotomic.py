"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are stored as coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(L)-1), always reduced modulo the L-th cyclotomic
polynomial.  Coefficients are :class:`fractions.Fraction`, so nothing can
overflow or round.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

DEFAULT_CONDUCTOR = 12

Scalar = Union[int, Fraction]


class ConductorMismatchError(ValueError):
    def __init__(self, left: int, right: int) -> None:
        super().__init__(f"conductor mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class NotRationalError(ValueError):
    def __init__(self, value: "Cyclotomic", index: int) -> None:
        super().__init__(
            f"not rational: coefficient of zeta_{value.conductor}^{index} is "
            f"{value.coeffs[index]}"
        )
        self.value = value
        self.index = index


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod_monic(num: list[int], den: tuple[int, ...]) -> tuple[list[int], list[int]]:
    num = list(num)
    dlen = len(den)
    if len(num) < dlen:
        return [0], num
    quot = [0] * (len(num) - dlen + 1)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dlen - 1]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return quot, num[: dlen - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_L, lowest degree first."""
    if L < 1:
        raise ValueError(f"conductor must be >= 1, got {L}")
    num = [-1] + [0] * (L - 1) + [1]
    for d in _divisors(L)[:-1]:
        num, rem = _poly_divmod_monic(num, cyclotomic_polynomial(d))
        if any(rem):
            raise ArithmeticError(f"Phi_{d} does not divide x^{L} - 1")
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(L: int) -> tuple[tuple[int, ...], ...]:
    # row e holds x^e mod Phi_L; long enough for every exponent < L and every product of reduced vectors
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(max(L, 2 * deg - 1)):
        rows.append(tuple(cur))
        if not deg:
            continue
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi)]
    return tuple(rows)


def _reduce(L: int, coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    table = _power_table(L)
    deg = euler_phi(L)
    out = [Fraction(0)] * deg
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if e >= len(table):
            e %= L
        if e < deg:
            out[e] += c
        else:
            for j, t in enumerate(table[e]):
                if t:
                    out[j] += c * t
    return tuple(out)


class Cyclotomic:
    """An element of Q(zeta_L).  Immutable and hashable."""

    __slots__ = ("conductor", "coeffs", "_key", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[Scalar] = ()) -> None:
        if conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {conductor}")
        self.conductor = conductor
        self.coeffs = _reduce(conductor, coeffs)
        self._key = (conductor,) + tuple((c.numerator, c.denominator) for c in self.coeffs)
        self._hash = hash(self._key)

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj.coeffs = coeffs
        obj._key = (conductor,) + tuple((c.numerator, c.denominator) for c in coeffs)
        obj._hash = hash(obj._key)
        return obj

    @classmethod
    def zero(cls, conductor: int = DEFAULT_CONDUCTOR) -> Cyclotomic:
        return cls._raw(conductor, (Fraction(0),) * euler_phi(conductor))

    @classmethod
    def one(cls, conductor: int = DEFAULT_CONDUCTOR) -> Cyclotomic:
        return cls.from_rational(conductor, 1)

    @classmethod
    def from_rational(cls, conductor: int, value: Scalar) -> Cyclotomic:
        deg = euler_phi(conductor)
        return cls._raw(conductor, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    def _coerce(self, other: object) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.conductor != self.conductor:
                raise ConductorMismatchError(self.conductor, other.conductor)
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.conductor, other)
        return None

    def __add__(self, other: object) -> Cyclotomic:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.conductor, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other: object) -> Cyclotomic:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.conductor, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = len(self.coeffs)
        prod = [Fraction(0)] * max(2 * n - 1, 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic._raw(self.conductor, _reduce(self.conductor, prod))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Cyclotomic._raw(self.conductor, tuple(a / other for a in self.coeffs))

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        """Complex conjugation, zeta -> zeta^(L-1)."""
        L = self.conductor
        spread = [Fraction(0)] * L
        for j, c in enumerate(self.coeffs):
            spread[(-j) % L] += c
        return Cyclotomic(L, spread)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, Cyclotomic):
            return self._hash == other._hash and self._key == other._key
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                power = "z" if j == 1 else f"z^{j}"
                terms.append(power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def root_of_unity(L: int, k: int) -> Cyclotomic:
    """zeta_L^k, reduced."""
    if L < 1:
        raise ValueError(f"conductor must be >= 1, got {L}")
    return Cyclotomic(L, _power_table(L)[k % L])


def as_rational(x: Cyclotomic) -> Fraction:
    for j, c in enumerate(x.coeffs[1:], start=1):
        if c:
            raise NotRationalError(x, j)
    return x.coeffs[0]
