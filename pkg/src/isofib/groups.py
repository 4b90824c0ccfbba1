"""Candidate monodromy groups and their natural representations.

Supported groups:

* ``Symmetric(k)``: S_k on the sum-zero hyperplane of C^k (the standard
  representation), in the basis e_i - e_k.
* ``Wreath(m, n)``: mu_m^n x| S_n acting by monomial matrices.
* ``Pauli``: the order-16 subgroup of GL_2(Z[i]) generated by
  diag(i, i), diag(i, -i) and the coordinate swap.
* ``Cyclic(m)``: mu_m acting on C by scalars.
* ``AbelianProduct(m, n)``: mu_m^n acting diagonally (a reducible control).

Elements of the permutation-type groups are pairs (phases, perm) with
``perm[i]`` the image of ``i`` (0-based).  They multiply by the semidirect
law (phi, s)(psi, t) = (phi + s.psi, st) with (s.psi)_i = psi_{s^-1(i)},
which matches the matrix D(phi) P(s).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Optional, Sequence

from .cyclotomic import DEFAULT_CONDUCTOR, Cyclotomic, root_of_unity

SYMMETRIC = "symmetric"
WREATH = "wreath"
PAULI = "pauli"
CYCLIC = "cyclic"
ABELIAN = "abelian"

ALLOWED_ROOT_ORDERS = (2, 3, 4, 6)
DEFAULT_ORDER_CAP = 2_000_000
ORDER_CAP_ENV = "ISOFIB_GROUP_ORDER_CAP"

Matrix = tuple[tuple[Cyclotomic, ...], ...]


class GroupTooLargeError(ValueError):
    def __init__(self, order: int, cap: int) -> None:
        super().__init__(f"group too large: order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


class GroupSpecMismatchError(ValueError):
    pass


def order_cap() -> int:
    raw = os.environ.get(ORDER_CAP_ENV)
    return int(raw) if raw else DEFAULT_ORDER_CAP


@dataclass(frozen=True, order=True)
class GroupSpec:
    kind: str
    m: int = 1
    n: int = 1

    def __post_init__(self) -> None:
        if self.kind == SYMMETRIC:
            if self.n < 2:
                raise ValueError("Symmetric(k) needs k >= 2")
        elif self.kind in (WREATH, CYCLIC, ABELIAN):
            if self.m not in ALLOWED_ROOT_ORDERS:
                raise ValueError(f"root order must be one of {ALLOWED_ROOT_ORDERS}, got {self.m}")
            if self.n < 1:
                raise ValueError("rank must be >= 1")
            if self.kind == CYCLIC and self.n != 1:
                raise ValueError("Cyclic(m) has rank 1")
        elif self.kind == PAULI:
            if (self.m, self.n) != (4, 2):
                raise ValueError("Pauli group is fixed")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    @property
    def rep_dim(self) -> int:
        return self.n - 1 if self.kind == SYMMETRIC else self.n

    @property
    def degree(self) -> int:
        """Number of points the permutation part acts on."""
        return self.n

    @property
    def order(self) -> int:
        if self.kind == SYMMETRIC:
            return factorial(self.n)
        if self.kind == WREATH:
            return self.m**self.n * factorial(self.n)
        if self.kind == PAULI:
            return 16
        return self.m**self.n

    @property
    def conductor(self) -> int:
        return DEFAULT_CONDUCTOR

    def __str__(self) -> str:
        if self.kind == SYMMETRIC:
            return f"sym:{self.n}"
        if self.kind == PAULI:
            return "pauli"
        if self.kind == CYCLIC:
            return f"cyclic:{self.m}"
        return f"{self.kind}:{self.m}:{self.n}"

    @property
    def label(self) -> str:
        if self.kind == SYMMETRIC:
            return f"Symmetric({self.n})"
        if self.kind == WREATH:
            return f"Wreath({self.m}, {self.n})"
        if self.kind == PAULI:
            return "Pauli"
        if self.kind == CYCLIC:
            return f"Cyclic({self.m})"
        return f"AbelianProduct({self.m}, {self.n})"


def Symmetric(k: int) -> GroupSpec:
    return GroupSpec(SYMMETRIC, 1, k)


def Wreath(m: int, n: int) -> GroupSpec:
    return GroupSpec(WREATH, m, n)


def Cyclic(m: int) -> GroupSpec:
    return GroupSpec(CYCLIC, m, 1)


def AbelianProduct(m: int, n: int) -> GroupSpec:
    return GroupSpec(ABELIAN, m, n)


Pauli = GroupSpec(PAULI, 4, 2)


def parse_group(text: str) -> GroupSpec:
    """Parse ``sym:4``, ``wreath:6:3``, ``pauli``, ``cyclic:6``, ``abelian:2:3``."""
    parts = text.strip().lower().split(":")
    try:
        if parts == ["pauli"]:
            return Pauli
        if parts[0] == "sym" and len(parts) == 2:
            return Symmetric(int(parts[1]))
        if parts[0] == "wreath" and len(parts) == 3:
            return Wreath(int(parts[1]), int(parts[2]))
        if parts[0] == "cyclic" and len(parts) == 2:
            return Cyclic(int(parts[1]))
        if parts[0] == "abelian" and len(parts) == 3:
            return AbelianProduct(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"invalid group spec {text!r}: {exc}") from None
    raise ValueError(
        f"invalid group spec {text!r}; expected one of sym:K, wreath:M:N, pauli, cyclic:M, abelian:M:N"
    )


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    perm: tuple[int, ...] = ()
    phases: tuple[int, ...] = ()
    matrix: Optional[Matrix] = field(default=None, compare=True)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __pow__(self, j: int) -> GroupElement:
        return power(self, j)

    def inverse(self) -> GroupElement:
        return inverse(self)

    def is_identity(self) -> bool:
        return self == identity(self.spec)


def _check_same(g: GroupElement, h: GroupElement) -> None:
    if g.spec != h.spec:
        raise GroupSpecMismatchError(f"group spec mismatch: {g.spec} vs {h.spec}")


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Cyclotomic.zero(a[0][0].conductor)) for j in range(n))
        for i in range(n)
    )


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_same(g, h)
    spec = g.spec
    if spec.kind == PAULI:
        return GroupElement(spec, matrix=matmul(g.matrix, h.matrix))
    s = g.perm
    m = spec.m
    if spec.kind == SYMMETRIC:
        phases: tuple[int, ...] = ()
    else:
        # (s.psi)_{s(i)} = psi_i
        moved = [0] * len(h.phases)
        for i, p in enumerate(h.phases):
            moved[s[i]] = p
        phases = tuple((a + b) % m for a, b in zip(g.phases, moved))
    perm = tuple(s[t] for t in h.perm)
    return GroupElement(spec, perm, phases)


@lru_cache(maxsize=None)
def identity(spec: GroupSpec) -> GroupElement:
    if spec.kind == PAULI:
        one, zero = Cyclotomic.one(spec.conductor), Cyclotomic.zero(spec.conductor)
        return GroupElement(spec, matrix=((one, zero), (zero, one)))
    perm = tuple(range(spec.degree))
    phases = () if spec.kind == SYMMETRIC else (0,) * spec.n
    return GroupElement(spec, perm, phases)


def inverse(g: GroupElement) -> GroupElement:
    spec = g.spec
    if spec.kind == PAULI:
        # Pauli elements have finite order dividing 4
        return power(g, 3)
    inv = [0] * len(g.perm)
    for i, t in enumerate(g.perm):
        inv[t] = i
    inv_perm = tuple(inv)
    if spec.kind == SYMMETRIC:
        return GroupElement(spec, inv_perm, ())
    # (phi, s)^-1 = (-(s^-1 . phi), s^-1)
    phases = tuple((-g.phases[g.perm[i]]) % spec.m for i in range(len(g.perm)))
    return GroupElement(spec, inv_perm, phases)


def power(g: GroupElement, j: int) -> GroupElement:
    if j < 0:
        return power(inverse(g), -j)
    result = identity(g.spec)
    base = g
    while j:
        if j & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        j >>= 1
    return result


def _pauli_generators() -> list[GroupElement]:
    L = Pauli.conductor
    i = root_of_unity(L, L // 4)
    one, zero = Cyclotomic.one(L), Cyclotomic.zero(L)
    mats = [
        ((i, zero), (zero, i)),
        ((i, zero), (zero, i * i * i)),
        ((zero, one), (one, zero)),
    ]
    return [GroupElement(Pauli, matrix=m) for m in mats]


def _matrix_key(g: GroupElement) -> tuple:
    return tuple(entry.coeffs for row in g.matrix for entry in row)


@lru_cache(maxsize=None)
def _pauli_elements() -> tuple[GroupElement, ...]:
    gens = _pauli_generators()
    seen = {identity(Pauli)}
    frontier = [identity(Pauli)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(sorted(seen, key=_matrix_key))


def check_order(spec: GroupSpec, cap: Optional[int] = None) -> None:
    cap = order_cap() if cap is None else cap
    if spec.order > cap:
        raise GroupTooLargeError(spec.order, cap)


def enumerate_elements(spec: GroupSpec, cap: Optional[int] = None) -> list[GroupElement]:
    """All elements exactly once, ordered lexicographically by (phases, perm)."""
    check_order(spec, cap)
    if spec.kind == PAULI:
        return list(_pauli_elements())
    perms = list(permutations(range(spec.degree))) if spec.kind in (SYMMETRIC, WREATH) else [tuple(range(spec.n))]
    if spec.kind == SYMMETRIC:
        return [GroupElement(spec, p, ()) for p in perms]
    return [GroupElement(spec, p, ph) for ph in product(range(spec.m), repeat=spec.n) for p in perms]


def _fixed_points(perm: Sequence[int]) -> list[int]:
    return [i for i, t in enumerate(perm) if t == i]


def natural_character(spec: GroupSpec, g: GroupElement) -> Cyclotomic:
    """Trace of g on V, by closed form rather than by building the matrix."""
    L = spec.conductor
    if spec.kind == PAULI:
        return g.matrix[0][0] + g.matrix[1][1]
    if spec.kind == SYMMETRIC:
        return Cyclotomic.from_rational(L, len(_fixed_points(g.perm)) - 1)
    step = L // spec.m
    total = Cyclotomic.zero(L)
    for i in _fixed_points(g.perm):
        total = total + root_of_unity(L, step * g.phases[i])
    return total


def representation_matrix(spec: GroupSpec, g: GroupElement) -> Matrix:
    """The matrix of g acting on V."""
    L = spec.conductor
    zero, one = Cyclotomic.zero(L), Cyclotomic.one(L)
    if spec.kind == PAULI:
        return g.matrix
    if spec.kind == SYMMETRIC:
        # g(e_i - e_k) = (e_g(i) - e_k) - (e_g(k) - e_k), and e_k - e_k = 0
        k = spec.n - 1
        cols = []
        for i in range(k):
            col = [0] * k
            if g.perm[i] != k:
                col[g.perm[i]] += 1
            if g.perm[k] != k:
                col[g.perm[k]] -= 1
            cols.append(col)
        return tuple(tuple(Cyclotomic.from_rational(L, cols[j][i]) for j in range(k)) for i in range(k))
    n = spec.n
    step = L // spec.m
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        j = g.perm[i]
        rows[j][i] = root_of_unity(L, step * g.phases[j])
    return tuple(tuple(r) for r in rows)


def trace(mat: Matrix) -> Cyclotomic:
    total = Cyclotomic.zero(mat[0][0].conductor)
    for i in range(len(mat)):
        total = total + mat[i][i]
    return total




@dataclass(frozen=True)
class Representation:
    spec: GroupSpec

    def matrix(self, g: GroupElement) -> Matrix:
        return representation_matrix(self.spec, g)

    def character(self, g: GroupElement) -> Cyclotomic:
        return natural_character(self.spec, g)

    def spot_check(self, samples: int = 50, seed: int = 0) -> dict[str, bool]:
        """Randomized homomorphism / class-function / trace checks."""
        rng = random.Random(seed)
        elems = enumerate_elements(self.spec)
        homomorphism = class_function = trace_formula = True
        for _ in range(samples):
            g, h = rng.choice(elems), rng.choice(elems)
            if self.matrix(g * h) != matmul(self.matrix(g), self.matrix(h)):
                homomorphism = False
            if self.character(h * g * h.inverse()) != self.character(g):
                class_function = False
            if trace(self.matrix(g)) != self.character(g):
                trace_formula = False
        return {
            "homomorphism": homomorphism,
            "class_function": class_function,
            "trace_formula": trace_formula,
            "identity_dimension": self.character(identity(self.spec)) == self.spec.rep_dim,
        }
