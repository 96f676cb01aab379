from __future__ import annotations

from math import gcd

import pytest

from gtpairs.atlas import construct, direct_product
from gtpairs.gbar import (
    build_gbar,
    delta_images,
    dihedral_closed_form,
    double_coset_survey,
    evaluate_endo,
    gt1_order,
    gt_full_order,
    theta_images,
)
from gtpairs.permcore import (
    EnumerationCapError,
    compose,
    conjugate,
    generates,
    identity_perm,
    inverse,
)

_CACHE: dict = {}


def _gbar(spec: str):
    """Build the model group for a spec once and reuse it."""
    if spec not in _CACHE:
        _CACHE[spec] = build_gbar(construct(spec))
    return _CACHE[spec]


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_model_orders_known_groups() -> None:
    cases = [("cyclic:5", 25, 6), ("dihedral:5", 500, 3), ("dihedral:3", 108, 3)]
    for spec, order, r in cases:
        gbar = _gbar(spec)
        assert gbar.order == order
        assert gbar.r == r


def test_dihedral_model_order_formula() -> None:
    for n in [3, 5, 7]:
        gbar = _gbar(f"dihedral:{n}")
        assert gbar.order == 4 * n**3
        assert gbar.r == 3
    for n in [4, 6, 8]:
        gbar = _gbar(f"dihedral:{n}")
        assert gbar.order == 4 * (n // 2) ** 3
        assert gbar.r == 3


def test_window_projections_cover_base() -> None:
    gbar = _gbar("dihedral:5")
    d = gbar.base_degree
    for w in range(gbar.r):
        xs = tuple(gbar.x[w * d + i] - w * d for i in range(d))
        ys = tuple(gbar.y[w * d + i] - w * d for i in range(d))
        assert generates([xs, ys], d, gbar.base_order)


def test_model_order_divides_power() -> None:
    for spec in ["cyclic:5", "dihedral:3", "dihedral:5", "quaternion8"]:
        gbar = _gbar(spec)
        assert gbar.base_order**gbar.r % gbar.order == 0


def test_word_reevaluation_reproduces_elements() -> None:
    """Substituting the generators for themselves must return each element."""
    from gtpairs.gbar import EndoImages

    for spec in ["cyclic:5", "dihedral:3"]:
        gbar = _gbar(spec)
        ident = EndoImages(x_image=gbar.x, y_image=gbar.y)
        for e in gbar.table.elements:
            assert evaluate_endo(gbar, ident, e) == e


def test_theta_swaps_generators() -> None:
    gbar = _gbar("dihedral:5")
    theta = theta_images(gbar)
    assert evaluate_endo(gbar, theta, gbar.x) == gbar.y
    assert evaluate_endo(gbar, theta, gbar.y) == gbar.x


def test_delta_on_generators() -> None:
    gbar = _gbar("dihedral:5")
    delta = delta_images(gbar)
    expected = compose(inverse(gbar.y), inverse(gbar.x))
    assert evaluate_endo(gbar, delta, gbar.x) == expected
    assert evaluate_endo(gbar, delta, gbar.y) == gbar.y


def test_delta_squared_is_conjugation() -> None:
    """Applying the product-inverting map twice conjugates x by y."""
    for spec in ["dihedral:3", "dihedral:5", "quaternion8"]:
        gbar = _gbar(spec)
        delta = delta_images(gbar)
        once = evaluate_endo(gbar, delta, gbar.x)
        twice = evaluate_endo(gbar, delta, once)
        assert twice == conjugate(gbar.x, gbar.y)


def test_double_cosets_partition_model() -> None:
    for spec in ["dihedral:3", "dihedral:4", "cyclic:6"]:
        gbar = _gbar(spec)
        reps = double_coset_survey(gbar)
        assert sum(rep.coset_size for rep in reps) == gbar.order


def test_survey_sorted_by_word() -> None:
    gbar = _gbar("dihedral:3")
    reps = double_coset_survey(gbar)
    keys = [(len(rep.word), rep.word) for rep in reps]
    assert keys == sorted(keys)
    assert reps[0].word == ()
    assert reps[0].element == identity_perm(gbar.degree)
    assert reps[0].survives


def test_survey_flags_failing_cosets() -> None:
    reps = double_coset_survey(_gbar("dihedral:3"))
    assert any(not rep.survives for rep in reps)
    for rep in reps:
        if rep.survives:
            assert rep.generates_model and rep.theta_ok and rep.delta_ok


def test_survivor_counts_dihedral_subset() -> None:
    for n in [3, 4, 5, 6, 8, 12]:
        count, survivors = gt1_order(construct(f"dihedral:{n}"))
        assert count == dihedral_closed_form(n)
        assert len(survivors) == count
        assert survivors[0].word == ()


def test_quaternion_count_trivial() -> None:
    count, survivors = gt1_order(construct("quaternion8"))
    assert count == 1
    assert survivors[0].element == identity_perm(_gbar("quaternion8").degree)


def test_two_group_counts_are_powers_of_two() -> None:
    for spec in ["dihedral:4", "dihedral:8", "quaternion8"]:
        count, _ = gt1_order(construct(spec))
        assert count & (count - 1) == 0


def test_cyclic_full_counts_subset() -> None:
    for n in [2, 3, 4, 6, 8, 12]:
        group = construct(f"cyclic:{n}")
        assert gt_full_order(group) == _phi(n)
        count, _ = gt1_order(group)
        assert count == 1


def test_trivial_group_counts() -> None:
    group = construct("cyclic:1")
    count, _ = gt1_order(group)
    assert count == 1
    assert gt_full_order(group) == 1


def test_coprime_product_multiplicative() -> None:
    group = direct_product(construct("cyclic:3"), construct("dihedral:4"))
    gbar = build_gbar(group)
    assert gbar.order == 288
    count, _ = gt1_order(group)
    assert count == 1


def test_closed_form_values() -> None:
    assert dihedral_closed_form(9) == 2
    assert dihedral_closed_form(12) == 1
    assert dihedral_closed_form(10) == 2
    assert [dihedral_closed_form(n) for n in range(3, 16)] == [
        2, 1, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2,
    ]
    with pytest.raises(ValueError):
        dihedral_closed_form(2)


def test_model_cap_error_names_flag() -> None:
    with pytest.raises(EnumerationCapError) as err:
        build_gbar(construct("dihedral:9"), cap=100)
    assert "--cap" in str(err.value)
