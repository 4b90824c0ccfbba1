"""Exact character calculus for the natural representation V of a group.

Exterior powers are evaluated from power sums p_j(g) = chi(g^j) through
Newton's identities, so no eigenvalue is ever computed.  Inner products are
full sums over the group; terms are bucketed by their (value, value) pair
first, which is the hook where a conjugacy-class reduction would go.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .cyclotomic import Cyclotomic, NotRationalError, as_rational
from .groups import GroupElement, GroupSpec, check_order, enumerate_elements, identity, multiply, natural_character


class NonIntegralMultiplicityError(ArithmeticError):
    """An inner product of characters was not a nonnegative integer."""

    def __init__(self, value: object, detail: str = "") -> None:
        msg = f"non-integral multiplicity: {value}"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.value = value


class GroupTable:
    """Materialized element list with index lookup and power maps."""

    def __init__(self, spec: GroupSpec) -> None:
        self.spec = spec
        self.elements: list[GroupElement] = enumerate_elements(spec)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity_index = self.index[identity(spec)]
        self._power_maps: dict[int, list[int]] = {1: list(range(len(self.elements)))}

    def __len__(self) -> int:
        return len(self.elements)

    def power_map(self, j: int) -> list[int]:
        """Index of g^j for every g, built incrementally from g^(j-1) * g."""
        if j < 1:
            raise ValueError("power maps are defined for j >= 1")
        top = max(self._power_maps)
        while top < j:
            prev = self._power_maps[top]
            elems = self.elements
            self._power_maps[top + 1] = [
                self.index[multiply(elems[prev[i]], g)] for i, g in enumerate(elems)
            ]
            top += 1
        return self._power_maps[j]


@lru_cache(maxsize=None)
def _group_table(spec: GroupSpec) -> GroupTable:
    return GroupTable(spec)


def group_table(spec: GroupSpec) -> GroupTable:
    # the cap is re-read on every call so a cached table cannot bypass it
    check_order(spec)
    return _group_table(spec)


def clear_caches() -> None:
    """Drop cached group tables and characters."""
    for cached in (_group_table, _natural_character_of, _exterior_powers):
        cached.cache_clear()


@dataclass(frozen=True)
class Character:
    spec: GroupSpec
    values: tuple[Cyclotomic, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.values) != self.spec.order:
            raise ValueError("character length does not match group order")

    def _check(self, other: Character) -> None:
        if other.spec != self.spec:
            raise ValueError(f"characters of different groups: {self.spec} vs {other.spec}")

    def __mul__(self, other: Character) -> Character:
        self._check(other)
        return Character(self.spec, tuple(a * b for a, b in zip(self.values, other.values)))

    def __add__(self, other: Character) -> Character:
        self._check(other)
        return Character(self.spec, tuple(a + b for a, b in zip(self.values, other.values)))

    def conjugate(self) -> Character:
        cache: dict[Cyclotomic, Cyclotomic] = {}
        out = []
        for v in self.values:
            if v not in cache:
                cache[v] = v.conjugate()
            out.append(cache[v])
        return Character(self.spec, tuple(out))

    @property
    def degree(self) -> Fraction:
        return as_rational(self.values[group_table(self.spec).identity_index])


def trivial_character(spec: GroupSpec) -> Character:
    check_order(spec)
    one = Cyclotomic.one(spec.conductor)
    return Character(spec, (one,) * spec.order)


@lru_cache(maxsize=None)
def _natural_character_of(spec: GroupSpec) -> Character:
    table = _group_table(spec)
    return Character(spec, tuple(natural_character(spec, g) for g in table.elements))


def natural_character_of(spec: GroupSpec) -> Character:
    check_order(spec)
    return _natural_character_of(spec)


def newton_elementary(power_sums: Sequence[Cyclotomic], conductor: int) -> list[Cyclotomic]:
    """e_0..e_K from p_1..p_K via k e_k = sum_{j=1..k} (-1)^(j-1) e_{k-j} p_j."""
    e = [Cyclotomic.one(conductor)]
    for k in range(1, len(power_sums) + 1):
        acc = Cyclotomic.zero(conductor)
        for j in range(1, k + 1):
            term = e[k - j] * power_sums[j - 1]
            acc = acc + term if j % 2 else acc - term
        e.append(acc / k)
    return e


def exterior_power_character(chi: Character, k: int) -> Character:
    """Character of the k-th exterior power of the representation with character chi."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    spec = chi.spec
    if k == 0:
        return trivial_character(spec)
    table = group_table(spec)
    maps = [table.power_map(j) for j in range(1, k + 1)]
    memo: dict[tuple[Cyclotomic, ...], Cyclotomic] = {}
    out = []
    for i in range(len(table)):
        key = tuple(chi.values[mp[i]] for mp in maps)
        if key not in memo:
            memo[key] = newton_elementary(key, spec.conductor)[k]
        out.append(memo[key])
    return Character(spec, tuple(out))


@lru_cache(maxsize=None)
def _exterior_powers(spec: GroupSpec) -> tuple[Character, ...]:
    chi = _natural_character_of(spec)
    return tuple(exterior_power_character(chi, k) for k in range(spec.rep_dim + 1))


def exterior_powers(spec: GroupSpec) -> tuple[Character, ...]:
    """Characters of the exterior powers of V, for k = 0..dim V."""
    check_order(spec)
    return _exterior_powers(spec)


def _pair_sum(pairs: Sequence[tuple[tuple[Cyclotomic, Cyclotomic], int]]) -> Cyclotomic:
    total = None
    for (a, b), count in pairs:
        term = a * b.conjugate() * count
        total = term if total is None else total + term
    return total


def _chunks(items: list, parts: int) -> list[list]:
    size = -(-len(items) // parts)
    return [items[i : i + size] for i in range(0, len(items), size)]


def character_sum(chi1: Character, chi2: Character, workers: Optional[int] = None) -> Cyclotomic:
    """sum_g chi1(g) * conj(chi2(g)), optionally reduced across worker processes."""
    chi1._check(chi2)
    buckets = sorted(
        Counter(zip(chi1.values, chi2.values)).items(),
        key=lambda kv: (kv[0][0].coeffs, kv[0][1].coeffs),
    )
    zero = Cyclotomic.zero(chi1.spec.conductor)
    if not workers or workers <= 1 or len(buckets) < 2:
        return _pair_sum(buckets) or zero
    parts = _chunks(buckets, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(_pair_sum, parts))
    total = zero
    for p in partials:
        total = total + p
    return total


def inner_product(chi1: Character, chi2: Character, workers: Optional[int] = None) -> int:
    """<chi1, chi2> = |G|^-1 sum_g chi1(g) conj(chi2(g)); must be a nonnegative integer."""
    total = character_sum(chi1, chi2, workers) / chi1.spec.order
    try:
        value = as_rational(total)
    except NotRationalError as exc:
        raise NonIntegralMultiplicityError(total, str(exc)) from None
    if value.denominator != 1 or value < 0:
        raise NonIntegralMultiplicityError(value, f"group {chi1.spec}")
    return int(value)


@dataclass
class FiberLemmaReport:
    spec: GroupSpec
    n: int
    self_products: list[int]
    cross_products: dict[tuple[int, int], int]
    wedge2_invariants: Optional[int]
    passed: bool
    first_violation: Optional[dict]

    def to_dict(self) -> dict:
        return {
            "group": str(self.spec),
            "n": self.n,
            "self_products": self.self_products,
            "cross_products": [
                {"p": p, "q": q, "value": v} for (p, q), v in sorted(self.cross_products.items())
            ],
            "wedge2_invariants": self.wedge2_invariants,
            "passed": self.passed,
            "first_violation": self.first_violation,
        }


def verify_fiber_lemma(spec: GroupSpec, workers: Optional[int] = None) -> FiberLemmaReport:
    """Check that the exterior powers of V are simple, pairwise non-isomorphic,
    and that the second one has no invariants.

    Violations are reported in the order: simplicity (k ascending), then
    the pairs (p, q) with p < q, then the invariant count.
    """
    n = spec.rep_dim
    if n < 1:
        raise ValueError("representation dimension must be >= 1")
    wedges = exterior_powers(spec)
    self_products = [inner_product(w, w, workers) for w in wedges]
    cross = {}
    for p in range(n + 1):
        for q in range(p + 1, n + 1):
            cross[(p, q)] = inner_product(wedges[p], wedges[q], workers)
    wedge2 = inner_product(wedges[2], trivial_character(spec), workers) if n >= 2 else None

    violation = None
    for k, v in enumerate(self_products):
        if v != 1:
            violation = {"check": "simple", "k": k, "value": v}
            break
    if violation is None:
        for (p, q), v in sorted(cross.items()):
            if v != 0:
                violation = {"check": "non_isomorphic", "p": p, "q": q, "value": v}
                break
    if violation is None and wedge2:
        violation = {"check": "wedge2_invariants", "value": wedge2}
    return FiberLemmaReport(spec, n, self_products, cross, wedge2, violation is None, violation)


def invariant_hodge_diamond(spec: GroupSpec) -> list[list[int]]:
    """Entry (p, q) is the dimension of the invariants in the p-th power of V
    tensored with the q-th power of the conjugate of V."""
    wedges = exterior_powers(spec)
    conj = [w.conjugate() for w in wedges]
    triv = trivial_character(spec)
    return [[inner_product(wp * cq, triv) for cq in conj] for wp in wedges]


def invariant_cohomology_profile(spec: GroupSpec, diamond: Optional[list[list[int]]] = None) -> list[int]:
    diamond = invariant_hodge_diamond(spec) if diamond is None else diamond
    n = len(diamond) - 1
    return [
        sum(diamond[p][k - p] for p in range(max(0, k - n), min(k, n) + 1)) for k in range(2 * n + 1)
    ]


def base_compatibility(spec: GroupSpec) -> list[list[int]]:
    """Matrix of Hom_G between exterior powers of V: <wedge^p, wedge^q>."""
    wedges = exterior_powers(spec)
    return [[inner_product(wp, wq) for wq in wedges] for wp in wedges]


def expected_profile(n: int) -> list[int]:
    return [1 if k % 2 == 0 else 0 for k in range(2 * n + 1)]


def is_identity_matrix(mat: list[list[int]]) -> bool:
    return all(v == (1 if i == j else 0) for i, row in enumerate(mat) for j, v in enumerate(row))
