"""Canonical bundle formula checks and type A/B bookkeeping on P^n bases.

An isotrivial K-trivial fibration over P^n satisfies
K_B + D_pi ~ 0 with D_pi = sum_i (1 - c_i) D_i, so on P^n
sum_i (1 - c_i) deg D_i = n + 1.  The quotient divisor
D_q = sum_i (1 - 1/m_i) D_i dominates D_pi, with equality exactly for
type A fibrations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import groups as G
from .enumfib import FiberConfig
from .groups import GroupSpec
from .kodaira import I0star, InfiniteMonodromyError, KodairaType, lct, monodromy_order

log = logging.getLogger(__name__)


class LctUndefinedError(ValueError):
    pass


class MissingMonodromyError(ValueError):
    pass


class NotClassifiedError(ValueError):
    pass


@dataclass(frozen=True)
class DiscriminantComponent:
    """One component D_i of the discriminant.

    ``source`` is either a Kodaira type (the general fiber over D_i) or an
    explicit rational coefficient of D_i in D_pi, i.e. 1 - c_i.
    """

    source: Union[KodairaType, Fraction]
    degree: int
    monodromy_index: Optional[int] = None

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("component degree must be positive")
        if isinstance(self.source, KodairaType):
            if self.monodromy_index is None and self.source.has_finite_monodromy:
                object.__setattr__(self, "monodromy_index", monodromy_order(self.source))
        else:
            coef = Fraction(self.source)
            if not 0 <= coef <= 1:
                raise ValueError(f"explicit coefficient {coef} outside [0, 1]")
            object.__setattr__(self, "source", coef)

    @property
    def pi_coefficient(self) -> Fraction:
        """Coefficient 1 - c_i of this component in D_pi."""
        if isinstance(self.source, Fraction):
            return self.source
        if not self.source.has_finite_monodromy:
            raise LctUndefinedError(
                f"lct undefined for {self.source.name}; supply an explicit coefficient"
            )
        try:
            return 1 - lct(self.source)
        except InfiniteMonodromyError as exc:
            raise LctUndefinedError(str(exc)) from None

    @property
    def q_coefficient(self) -> Fraction:
        """Coefficient 1 - 1/m_i of this component in D_q."""
        if self.monodromy_index is None:
            raise MissingMonodromyError(f"missing monodromy index for component {self.label}")
        return 1 - Fraction(1, self.monodromy_index)

    @property
    def label(self) -> str:
        return self.source.name if isinstance(self.source, KodairaType) else f"coef {self.source}"


@dataclass(frozen=True)
class DiscriminantModel:
    base_dim: int
    components: tuple[DiscriminantComponent, ...]

    def __post_init__(self) -> None:
        if self.base_dim < 1:
            raise ValueError("base dimension must be >= 1")
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def total_degree(self) -> int:
        return sum(c.degree for c in self.components)


def check_canonical_bundle(model: DiscriminantModel) -> Fraction:
    """Residual (n + 1) - sum_i (1 - c_i) deg D_i; zero iff the formula holds."""
    return model.base_dim + 1 - sum(c.pi_coefficient * c.degree for c in model.components)


@dataclass
class ComponentComparison:
    label: str
    q_coefficient: Fraction
    pi_coefficient: Fraction

    @property
    def relation(self) -> str:
        if self.q_coefficient == self.pi_coefficient:
            return "equal"
        return "strict" if self.q_coefficient > self.pi_coefficient else "violated"


@dataclass
class DivisorComparison:
    components: list[ComponentComparison]
    verdict: str
    dominates: bool


def compare_divisors(model: DiscriminantModel) -> DivisorComparison:
    """Compare D_q and D_pi componentwise; type A iff they coincide."""
    comps = [ComponentComparison(c.label, c.q_coefficient, c.pi_coefficient) for c in model.components]
    dominates = all(c.relation != "violated" for c in comps)
    verdict = "A" if all(c.relation == "equal" for c in comps) else "B"
    return DivisorComparison(comps, verdict, dominates)


def discriminant_degree_all_I0star(n: int) -> int:
    """Degree of the reduced discriminant when every general singular fiber is I0*."""
    if n < 1:
        raise ValueError("base dimension must be >= 1")
    degree = (n + 1) / (1 - lct(I0star))
    if degree.denominator != 1:
        raise ArithmeticError("non-integral discriminant degree")
    return int(degree)


def model_from_config(cfg: FiberConfig) -> DiscriminantModel:
    """The P^1 model: one degree-1 component per singular fiber."""
    return DiscriminantModel(1, tuple(DiscriminantComponent(t, 1) for t in cfg.fibers()))


def lift_k3_to_hilb(cfg: FiberConfig, n: int) -> DiscriminantModel:
    """Discriminant of the induced fibration S^[n] -> P^n.

    Each singular fiber contributes a hyperplane with the same fiber type;
    the big diagonal is a degree 2(n-1) hypersurface with general fiber I0*.
    """
    if n < 2:
        raise ValueError("Hilbert scheme lift needs n >= 2")
    comps = [DiscriminantComponent(t, 1) for t in cfg.fibers()]
    comps.append(DiscriminantComponent(I0star, 2 * (n - 1)))
    return DiscriminantModel(n, tuple(comps))


# -- monodromy constraints -------------------------------------------------

J_CLASSES = ("j0", "j1728", "generic")
ENDO_FIELDS = ("Q", "cm_other", "cm_gauss", "cm_eisenstein")

_GLOBAL = {"j0": frozenset({2, 3, 6}), "j1728": frozenset({2, 4}), "generic": frozenset({2})}
_LOCAL = {
    "Q": frozenset({2}),
    "cm_other": frozenset({2}),
    "cm_gauss": frozenset({2, 4}),
    "cm_eisenstein": frozenset({2, 3, 6}),
}


def allowed_global_monodromy(j_class: str) -> frozenset[int]:
    """Possible orders of the (cyclic) global monodromy of an isotrivial elliptic K3."""
    try:
        return _GLOBAL[j_class]
    except KeyError:
        raise ValueError(f"invalid j class {j_class!r}; expected one of {J_CLASSES}") from None


def allowed_local_monodromy(endo: str) -> frozenset[int]:
    """Possible local monodromy indices m_i given the endomorphism field of the fiber's isogeny factor."""
    try:
        return _LOCAL[endo]
    except KeyError:
        raise ValueError(f"invalid endomorphism field {endo!r}; expected one of {ENDO_FIELDS}") from None


# -- type A classification -------------------------------------------------

N1_NOTE = "n = 1: Symmetric(2) = Wreath(2, 1) = Cyclic(2) and Wreath(m, 1) = Cyclic(m); deduplicated"


def type_A_groups(n: int) -> list[GroupSpec]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        log.info(N1_NOTE)
        return [G.Cyclic(m) for m in (2, 3, 4, 6)]
    out = [G.Symmetric(n + 1)] + [G.Wreath(m, n) for m in (2, 3, 4, 6)]
    if n == 2:
        out.append(G.Pauli)
    return out


def admits_symplectic_resolution(spec: GroupSpec) -> bool:
    """Whether the quotient of the abelian variety admits a symplectic resolution.

    Symmetric(n + 1) is counted as admissible because it is the
    generalized Kummer construction.
    """
    if spec.kind in (G.WREATH, G.SYMMETRIC, G.CYCLIC):
        return True
    if spec.kind == G.PAULI:
        return False
    raise NotClassifiedError(f"not classified: {spec.label} is not a type A candidate")


@dataclass
class TypeAVerdict:
    spec: GroupSpec
    label: Optional[str]
    admitted: bool
    reason: str = ""


@dataclass
class TypeAClassification:
    n: int
    candidates: list[TypeAVerdict] = field(default_factory=list)

    @property
    def admitted(self) -> list[TypeAVerdict]:
        return [v for v in self.candidates if v.admitted]

    @property
    def excluded(self) -> list[TypeAVerdict]:
        return [v for v in self.candidates if not v.admitted]


def classify_type_A(n: int) -> TypeAClassification:
    if n < 2:
        raise ValueError("classification needs n >= 2")
    result = TypeAClassification(n)
    for spec in type_A_groups(n):
        if admits_symplectic_resolution(spec):
            label = f"Kum_{n}" if spec.kind == G.SYMMETRIC else f"K3^[{n}]"
            result.candidates.append(TypeAVerdict(spec, label, True))
        else:
            result.candidates.append(TypeAVerdict(spec, None, False, "no symplectic resolution"))
    return result


# -- Kuga-Satake dimensions ------------------------------------------------


def ks_partner_dims(t_dim: int) -> frozenset[int]:
    """Possible dimensions of the Kuga-Satake partner of a K3-type Hodge structure."""
    if t_dim < 2:
        raise ValueError("transcendental dimension must be >= 2")
    r, odd = divmod(t_dim, 2)
    return frozenset({2**r, 2 ** (r + 1)}) if odd else frozenset({2 ** (r - 1), 2**r})


def admissible_transcendental_dims(partner_dim: int = 2) -> frozenset[int]:
    """Dimensions t >= 3 whose Kuga-Satake partner can have the given dimension.

    t = 2 is excluded because such a Hodge structure is always CM.
    """
    found = set()
    t = 3
    while min(ks_partner_dims(t)) <= partner_dim:
        if partner_dim in ks_partner_dims(t):
            found.add(t)
        t += 1
    return frozenset(found)

