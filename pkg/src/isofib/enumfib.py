"""Singular fiber configurations of isotrivial elliptic K3 surfaces.

For a cyclic intermediate Galois group of order d, every singular fiber has
local monodromy of some order m | d, m >= 2, and the Euler numbers must add
up to 24.  Each configuration determines a cyclic cover of P^1,

    z^d = prod_i (x - p_i)^(a_i),

with one branch point per singular fiber, whose genus and number of
connected components are computed by Riemann-Hurwitz.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .kodaira import (
    KodairaType,
    euler_characteristic,
    is_star_type,
    local_exponent,
    monodromy_order,
    parse_kodaira,
    types_for_monodromy_order,
)

GROUP_ORDERS = (2, 3, 4, 6)
K3_EULER = 24
GOLDEN_TABLES = {3: "table2", 4: "table3", 6: "table4"}


class GoldenDataError(ValueError):
    pass


def _check_group_order(d: int) -> None:
    if d not in GROUP_ORDERS:
        raise ValueError(f"invalid group order {d}; expected one of {GROUP_ORDERS}")


def allowed_types(d: int) -> list[KodairaType]:
    """Fiber types admissible for group order d, sorted by Euler number."""
    _check_group_order(d)
    types = set()
    for m in range(2, d + 1):
        if d % m == 0 and m in GROUP_ORDERS:
            types |= types_for_monodromy_order(m)
    return sorted(types, key=euler_characteristic)


def ramification_exponent(t: KodairaType, d: int) -> int:
    m = monodromy_order(t)
    if not t.has_finite_monodromy or d % m:
        raise ValueError(f"monodromy order does not divide group order: {t} has order {m}, d = {d}")
    a = local_exponent(t) * (d // m)
    if not 1 <= a <= d - 1:
        raise ValueError(f"ramification exponent {a} out of range for d = {d}")
    return a


@dataclass(frozen=True)
class CoverData:
    degree: int
    branch_exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        d = self.degree
        object.__setattr__(self, "branch_exponents", tuple(self.branch_exponents))
        if d < 2:
            raise ValueError("cover degree must be >= 2")
        if any(not 1 <= a <= d - 1 for a in self.branch_exponents):
            raise ValueError(f"branch exponents must lie in [1, {d - 1}]")
        if sum(self.branch_exponents) % d:
            raise ValueError("branch exponents must sum to 0 mod degree (cover unramified at infinity)")

    def ramification_multiset(self) -> list[tuple[int, int]]:
        """(exponent, multiplicity) pairs, exponents ascending."""
        counts: dict[int, int] = {}
        for a in self.branch_exponents:
            counts[a] = counts.get(a, 0) + 1
        return sorted(counts.items())


def component_count(c: CoverData) -> int:
    return reduce(gcd, c.branch_exponents, c.degree)


class NegativeGenusError(ArithmeticError):
    pass


def genus(c: CoverData) -> int:
    """Genus of one connected component of the normalized cyclic cover."""
    d = c.degree
    comps = component_count(c)
    rhs = -2 * (d // comps)
    for a in c.branch_exponents:
        g = gcd(a, d)
        rhs += (g // comps) * (d // g - 1)
    if rhs % 2:
        raise ArithmeticError("odd Riemann-Hurwitz total; corrupted cover data")
    g = rhs // 2 + 1
    if g < 0:
        raise NegativeGenusError(f"negative genus {g} for {c}")
    return g


def format_genus(g: int, components: int) -> str:
    return f"{g} (x{components})" if components > 1 else str(g)


def format_ramification(multiset: Iterable[tuple[int, int]]) -> str:
    return ", ".join(str(a) if k == 1 else f"{a}^{k}" for a, k in multiset)


@dataclass(frozen=True)
class FiberConfig:
    group_order: int
    counts: tuple[tuple[KodairaType, int], ...]
    euler_target: int = K3_EULER

    def __post_init__(self) -> None:
        d = self.group_order
        _check_group_order(d)
        counts = self.counts.items() if isinstance(self.counts, Mapping) else self.counts
        merged: dict[KodairaType, int] = {}
        for t, k in counts:
            if k < 0:
                raise ValueError("fiber counts must be nonnegative")
            if k:
                merged[t] = merged.get(t, 0) + k
        object.__setattr__(
            self, "counts", tuple(sorted(merged.items(), key=lambda tk: euler_characteristic(tk[0])))
        )
        for t, _ in self.counts:
            m = monodromy_order(t)
            if not t.has_finite_monodromy or m < 2 or d % m:
                raise ValueError(f"fiber type {t} not allowed for group order {d}")
        if self.euler_sum != self.euler_target:
            raise ValueError(f"Euler numbers sum to {self.euler_sum}, expected {self.euler_target}")
        if sum(k * ramification_exponent(t, d) for t, k in self.counts) % d:
            raise ValueError("product of local monodromies is not trivial")

    @property
    def euler_sum(self) -> int:
        return sum(k * euler_characteristic(t) for t, k in self.counts)

    @property
    def fiber_count(self) -> int:
        return sum(k for _, k in self.counts)

    def count(self, t: KodairaType) -> int:
        return dict(self.counts).get(t, 0)

    def count_vector(self, axes: Optional[Sequence[KodairaType]] = None) -> tuple[int, ...]:
        axes = allowed_types(self.group_order) if axes is None else axes
        return tuple(self.count(t) for t in axes)

    def fibers(self) -> list[KodairaType]:
        return [t for t, k in self.counts for _ in range(k)]

    def to_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "euler_target": self.euler_target,
            "counts": {t.name: k for t, k in self.counts},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> FiberConfig:
        counts = tuple((parse_kodaira(name), int(k)) for name, k in data["counts"].items())
        return cls(int(data["group_order"]), counts, int(data.get("euler_target", K3_EULER)))

    def __str__(self) -> str:
        parts = [f"{k}x{t.name}" for t, k in self.counts]
        return f"mu{self.group_order}[{', '.join(parts)}]"


def _solutions(weights: Sequence[int], target: int) -> Iterator[tuple[int, ...]]:
    # descending lexicographic order on the count vector
    if not weights:
        if target == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for k in range(target // w, -1, -1):
        for tail in _solutions(rest, target - k * w):
            yield (k,) + tail


def enumerate_configs(d: int, euler_target: int = K3_EULER) -> list[FiberConfig]:
    """All fiber configurations for group order d, ordered descending
    lexicographically on the count vector with axes sorted by Euler number."""
    axes = allowed_types(d)
    weights = [euler_characteristic(t) for t in axes]
    return [
        FiberConfig(d, tuple(zip(axes, vec)), euler_target) for vec in _solutions(weights, euler_target)
    ]


def to_cover(cfg: FiberConfig) -> CoverData:
    d = cfg.group_order
    return CoverData(d, tuple(ramification_exponent(t, d) for t in cfg.fibers()))


def is_type_A(cfg: FiberConfig) -> bool:
    return all(is_star_type(t) for t, _ in cfg.counts)


@dataclass
class ConfigRow:
    """Derived columns of one configuration."""

    row: int
    config: FiberConfig
    cover: CoverData
    genus: int
    components: int
    type_A: bool

    def to_dict(self) -> dict:
        return {
            "row": self.row,
            **self.config.to_dict(),
            "ramification": [list(p) for p in self.cover.ramification_multiset()],
            "genus": self.genus,
            "components": self.components,
            "genus_display": format_genus(self.genus, self.components),
            "type_A": self.type_A,
        }


def classify(d: int, euler_target: int = K3_EULER) -> list[ConfigRow]:
    rows = []
    for i, cfg in enumerate(enumerate_configs(d, euler_target), start=1):
        cover = to_cover(cfg)
        rows.append(ConfigRow(i, cfg, cover, genus(cover), component_count(cover), is_type_A(cfg)))
    return rows


# -- golden tables ---------------------------------------------------------


@dataclass(frozen=True)
class GoldenRow:
    row: int
    counts: tuple[int, ...]
    ramification: tuple[tuple[int, int], ...]
    genus: int
    components: int
    annotation: str
    oracle_genus: int


@dataclass(frozen=True)
class GoldenTable:
    name: str
    group_order: int
    axes: tuple[KodairaType, ...]
    rows: tuple[GoldenRow, ...]


def _golden_source(name: str, golden_path: Optional[Union[str, Path]]) -> str:
    if golden_path is not None:
        try:
            return (Path(golden_path) / f"{name}.json").read_text(encoding="utf-8")
        except OSError as exc:
            raise GoldenDataError(f"cannot read golden file {name}.json: {exc.strerror}") from None
    return resources.files("isofib").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def load_golden(d: int, golden_path: Optional[Union[str, Path]] = None) -> GoldenTable:
    _check_group_order(d)
    if d not in GOLDEN_TABLES:
        raise GoldenDataError(f"no golden table for group order {d}")
    name = GOLDEN_TABLES[d]
    try:
        raw = json.loads(_golden_source(name, golden_path))
        axes = tuple(parse_kodaira(a) for a in raw["axes"])
        rows = tuple(
            GoldenRow(
                int(r["row"]),
                tuple(int(x) for x in r["counts"]),
                tuple((int(a), int(k)) for a, k in r["ramification"]),
                int(r["genus"]),
                int(r["components"]),
                str(r["annotation"]),
                int(r["oracle_genus"]),
            )
            for r in raw["rows"]
        )
        if int(raw["group_order"]) != d:
            raise GoldenDataError(f"{name}: group order {raw['group_order']} != {d}")
        if any(len(r.counts) != len(axes) for r in rows):
            raise GoldenDataError(f"{name}: count vectors do not match axes")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GoldenDataError):
            raise
        raise GoldenDataError(f"malformed golden file {name}: {exc}") from exc
    return GoldenTable(name, d, axes, rows)


def load_known_discrepancies(golden_path: Optional[Union[str, Path]] = None) -> list[dict]:
    return json.loads(_golden_source("known_discrepancies", golden_path))


@dataclass
class FieldCheck:
    field: str
    expected: object
    actual: object

    @property
    def match(self) -> bool:
        return self.expected == self.actual


@dataclass
class RowComparison:
    row: int
    checks: list[FieldCheck] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return all(c.match for c in self.checks)

    def mismatches(self) -> list[FieldCheck]:
        return [c for c in self.checks if not c.match]


@dataclass
class GoldenReport:
    table: str
    group_order: int
    row_count: FieldCheck
    rows: list[RowComparison]

    def matched(self, field_name: str) -> int:
        return sum(1 for r in self.rows for c in r.checks if c.field == field_name and c.match)

    def mismatched_rows(self, field_name: str) -> list[int]:
        return [r.row for r in self.rows for c in r.checks if c.field == field_name and not c.match]

    @property
    def all_match(self) -> bool:
        return self.row_count.match and all(r.match for r in self.rows)


GOLDEN_FIELDS = ("row_order", "counts", "ramification", "components", "genus")


def match_golden(d: int, golden_path: Optional[Union[str, Path]] = None) -> GoldenReport:
    """Compare the computed classification with the printed table.

    Printed rows are paired with computed configurations by their fiber
    counts; ``row_order`` records whether the printed row number equals the
    position in the enumeration.  The printed genus is compared as printed:
    disagreements are reported, never corrected.
    """
    golden = load_golden(d, golden_path)
    computed = classify(d)
    by_counts = {c.config.count_vector(golden.axes): c for c in computed}
    comparisons = []
    for g in golden.rows:
        c = by_counts.pop(g.counts, None)
        actual = {
            "row_order": c.row if c else None,
            "counts": c.config.count_vector(golden.axes) if c else None,
            "ramification": tuple(c.cover.ramification_multiset()) if c else None,
            "components": c.components if c else None,
            "genus": c.genus if c else None,
        }
        expected = {
            "row_order": g.row,
            "counts": g.counts,
            "ramification": g.ramification,
            "components": g.components,
            "genus": g.genus,
        }
        comparisons.append(RowComparison(g.row, [FieldCheck(f, expected[f], actual[f]) for f in GOLDEN_FIELDS]))
    for c in by_counts.values():
        # enumerated but not printed
        comparisons.append(
            RowComparison(
                c.row,
                [FieldCheck("counts", None, c.config.count_vector(golden.axes))],
            )
        )
    return GoldenReport(golden.name, d, FieldCheck("row_count", len(golden.rows), len(computed)), comparisons)
