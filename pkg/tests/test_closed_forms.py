import pytest
from hypothesis import given, settings, strategies as st

from stirlab.closed_forms import (
    REGISTRY,
    check_form,
    engine_value,
    eval_assoc_recursion,
    eval_closed_form,
    eval_cycle_type_sum,
    get_form,
    iter_check_points,
    list_forms,
)
from stirlab.errors import InvalidParameterError, NonIntegralError, OutOfRangeError, UnknownIdError
from stirlab.sequences import Family, FamilySpec, bulk_value

ACTIVE = [f for f in list_forms() if not f.quarantine]


@pytest.mark.parametrize("form", ACTIVE, ids=lambda f: f.id)
def test_active_forms_match_engine(form):
    assert check_form(form, 80) == []


@pytest.mark.parametrize("form_id", ["assoc3_k3", "assoc3_k4"])
def test_quarantined_forms_are_a_fixed_multiple(form_id):
    # documented in the quarantine note: 3x and 12x the engine value
    factor = {"assoc3_k3": 3, "assoc3_k4": 12}[form_id]
    form = get_form(form_id)
    assert form.quarantine
    for n, params in iter_check_points(form, 60):
        assert eval_closed_form(form_id, n) == factor * engine_value(form_id, n)


def test_examples():
    assert eval_closed_form("stirling2_k3", 6) == 90
    assert eval_closed_form("restbell_shift1", m=4) == 51
    assert eval_closed_form("restfact_shift1", 3) == 18
    assert eval_closed_form("rstirling_rp0", 3, r=2) == 8
    assert eval_assoc_recursion(6, 3, 2) == 15
    assert eval_assoc_recursion(8, 2, 4) == 35
    assert eval_cycle_type_sum(4, 2) == 10


@given(st.integers(1, 40), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_cycle_type_sum_matches_recurrence(n, m):
    assert eval_cycle_type_sum(n, m) == bulk_value(FamilySpec(Family.RESTRICTED_FACTORIAL, m), n)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 60))
@settings(max_examples=60, deadline=None)
def test_assoc_recursion_matches_triangle(k, m, extra):
    from stirlab.triangles import TriangleKind, triangle_value

    n = k * m + extra
    assert eval_assoc_recursion(n, k, m) == triangle_value(TriangleKind.associated2(m), n, k)


def test_validity_ranges_enforced():
    with pytest.raises(OutOfRangeError):
        eval_closed_form("assoc2_k2", 3)
    with pytest.raises(OutOfRangeError):
        eval_closed_form("restbell_small", 5, m=3)
    with pytest.raises(OutOfRangeError):
        eval_cycle_type_sum(81, 3)
    with pytest.raises(OutOfRangeError):
        eval_assoc_recursion(5, 3, 2)


def test_parameter_errors():
    with pytest.raises(InvalidParameterError):
        eval_closed_form("rstirling_rp0", 3)
    with pytest.raises(InvalidParameterError):
        eval_closed_form("stirling2_k2", 3, m=2)
    with pytest.raises(InvalidParameterError):
        eval_closed_form("restbell_shift1")
    with pytest.raises(UnknownIdError):
        get_form("nope")


def test_fractional_results_are_rejected():
    from dataclasses import replace
    from fractions import Fraction

    import stirlab.closed_forms as cf

    bad = replace(get_form("stirling2_k2"), id="half", expression=lambda n: Fraction(n, 2))
    REGISTRY["half"] = bad
    try:
        assert eval_closed_form("half", 4) == 2
        with pytest.raises(NonIntegralError):
            eval_closed_form("half", 3)
    finally:
        del cf.REGISTRY["half"]


def test_registry_serializes():
    for f in list_forms():
        d = f.to_dict()
        assert d["id"] == f.id and d["validity"]
