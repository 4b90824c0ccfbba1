import logging
from fractions import Fraction

import pytest

from isofib import groups as G
from isofib.canonical import (
    DiscriminantComponent, DiscriminantModel, LctUndefinedError, MissingMonodromyError,
    NotClassifiedError, admissible_transcendental_dims, admits_symplectic_resolution,
    allowed_global_monodromy, allowed_local_monodromy, check_canonical_bundle, classify_type_A,
    compare_divisors, discriminant_degree_all_I0star, lift_k3_to_hilb, model_from_config,
    type_A_groups, ks_partner_dims,
)
from isofib.enumfib import FiberConfig, enumerate_configs, is_type_A
from isofib.kodaira import I, IV, I0star, Istar, SINGULAR_FINITE_TYPES, lct, monodromy_order

ALL_CONFIGS = [c for d in (2, 3, 4, 6) for c in enumerate_configs(d)]


def _model(n, *parts):
    return DiscriminantModel(n, tuple(DiscriminantComponent(t, deg) for t, deg in parts))


def test_cbf_examples():
    assert check_canonical_bundle(_model(1, *[(I0star, 1)] * 4)) == 0
    assert check_canonical_bundle(_model(5, (I0star, 12))) == 0
    assert check_canonical_bundle(_model(1, *[(IV, 1)] * 6)) == 0
    assert check_canonical_bundle(_model(1, *[(IV, 1)] * 5)) == Fraction(1, 3)


def test_cbf_non_isotrivial_explicit_coefficients():
    # 24 I_1 hyperplanes with coefficient 1/12 plus the big diagonal
    for n in range(2, 7):
        model = DiscriminantModel(
            n, (DiscriminantComponent(Fraction(1, 12), 24), DiscriminantComponent(I0star, 2 * (n - 1)))
        )
        assert check_canonical_bundle(model) == 0


def test_cbf_rejects_infinite_monodromy_sources():
    for t in (I(1), Istar(2)):
        with pytest.raises(LctUndefinedError, match="lct undefined"):
            check_canonical_bundle(_model(1, (t, 1)))


def test_component_validation():
    with pytest.raises(ValueError):
        DiscriminantComponent(Fraction(3, 2), 1)
    with pytest.raises(ValueError):
        DiscriminantComponent(IV, 0)
    assert DiscriminantComponent(IV, 1).monodromy_index == 3


def test_compare_divisors_examples():
    rep = compare_divisors(_model(1, (I0star, 1)))
    c = rep.components[0]
    assert (c.q_coefficient, c.pi_coefficient, c.relation) == (Fraction(1, 2), Fraction(1, 2), "equal")
    c = compare_divisors(_model(1, (IV, 1))).components[0]
    assert (c.q_coefficient, c.pi_coefficient, c.relation) == (Fraction(2, 3), Fraction(1, 3), "strict")
    assert compare_divisors(_model(1, *[(I0star, 1)] * 4)).verdict == "A"
    assert compare_divisors(_model(1, *[(IV, 1)] * 6)).verdict == "B"


def test_compare_divisors_missing_index():
    model = DiscriminantModel(1, (DiscriminantComponent(Fraction(1, 2), 4),))
    with pytest.raises(MissingMonodromyError):
        compare_divisors(model)
    model = DiscriminantModel(1, (DiscriminantComponent(Fraction(1, 2), 4, monodromy_index=2),))
    assert compare_divisors(model).verdict == "A"


def test_discriminant_degree():
    assert discriminant_degree_all_I0star(1) == 4
    assert discriminant_degree_all_I0star(5) == 12
    assert discriminant_degree_all_I0star(2) == 6
    for n in range(1, 11):
        assert discriminant_degree_all_I0star(n) == 2 * (n + 1)


def test_lift_examples():
    m = lift_k3_to_hilb(FiberConfig(2, {I0star: 4}), 2)
    assert m.base_dim == 2 and m.total_degree == 6
    assert check_canonical_bundle(m) == 0
    assert check_canonical_bundle(lift_k3_to_hilb(FiberConfig(3, {IV: 6}), 3)) == 0
    with pytest.raises(ValueError):
        lift_k3_to_hilb(FiberConfig(2, {I0star: 4}), 1)


def test_cbf_all_configs_and_lifts():
    assert len(ALL_CONFIGS) == 62
    for cfg in ALL_CONFIGS:
        assert check_canonical_bundle(model_from_config(cfg)) == 0
        for n in range(2, 7):
            assert check_canonical_bundle(lift_k3_to_hilb(cfg, n)) == 0


def test_compare_divisors_agrees_with_type_A():
    for cfg in ALL_CONFIGS:
        rep = compare_divisors(model_from_config(cfg))
        assert rep.dominates
        assert (rep.verdict == "A") == is_type_A(cfg)


def test_dominance_for_every_type():
    for t in SINGULAR_FINITE_TYPES:
        assert 1 - Fraction(1, monodromy_order(t)) >= 1 - lct(t)


def test_monodromy_tables():
    assert allowed_global_monodromy("j0") == {2, 3, 6}
    assert allowed_global_monodromy("j1728") == {2, 4}
    assert allowed_global_monodromy("generic") == {2}
    assert allowed_local_monodromy("Q") == {2}
    assert allowed_local_monodromy("cm_other") == {2}
    assert allowed_local_monodromy("cm_gauss") == {2, 4}
    assert allowed_local_monodromy("cm_eisenstein") == {2, 3, 6}
    with pytest.raises(ValueError):
        allowed_global_monodromy("j5")
    with pytest.raises(ValueError):
        allowed_local_monodromy("R")


def test_local_monodromy_matches_automorphism_orders():
    # subgroup orders >= 2 of mu_4 and mu_6
    assert allowed_local_monodromy("cm_gauss") == {k for k in range(2, 5) if 4 % k == 0}
    assert allowed_local_monodromy("cm_eisenstein") == {k for k in range(2, 7) if 6 % k == 0}


def test_type_A_groups():
    two = type_A_groups(2)
    assert len(two) == 6 and G.Pauli in two
    three = type_A_groups(3)
    assert len(three) == 5 and G.Pauli not in three
    assert three[0] == G.Symmetric(4)


def test_type_A_groups_n1(caplog):
    with caplog.at_level(logging.INFO, logger="isofib.canonical"):
        assert type_A_groups(1) == [G.Cyclic(2), G.Cyclic(3), G.Cyclic(4), G.Cyclic(6)]
    assert "deduplicated" in caplog.text


def test_symplectic_resolution():
    assert admits_symplectic_resolution(G.Pauli) is False
    assert admits_symplectic_resolution(G.Wreath(6, 3)) is True
    assert admits_symplectic_resolution(G.Symmetric(4)) is True
    with pytest.raises(NotClassifiedError):
        admits_symplectic_resolution(G.AbelianProduct(2, 2))


def test_classify_type_A():
    res = classify_type_A(2)
    labels = sorted((v.label, str(v.spec)) for v in res.admitted)
    assert labels == [("K3^[2]", "wreath:2:2"), ("K3^[2]", "wreath:3:2"), ("K3^[2]", "wreath:4:2"),
                      ("K3^[2]", "wreath:6:2"), ("Kum_2", "sym:3")]
    assert [(v.spec, v.reason) for v in res.excluded] == [(G.Pauli, "no symplectic resolution")]
    for n in range(3, 8):
        res = classify_type_A(n)
        assert len(res.admitted) == 5 and not res.excluded
        assert all(v.spec != G.Pauli for v in res.candidates)
    assert {v.label for v in classify_type_A(5).admitted} == {"Kum_5", "K3^[5]"}
    with pytest.raises(ValueError):
        classify_type_A(1)


def test_ks_dims():
    assert ks_partner_dims(5) == {4, 8}
    assert ks_partner_dims(3) == {2, 4}
    assert ks_partner_dims(4) == {2, 4}
    assert ks_partner_dims(2) == {1, 2}
    assert admissible_transcendental_dims() == {3, 4}
    for t in range(2, 30):
        a, b = sorted(ks_partner_dims(t))
        assert b == 2 * a and a & (a - 1) == 0
    with pytest.raises(ValueError):
        ks_partner_dims(1)
