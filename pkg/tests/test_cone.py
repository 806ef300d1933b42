import math

import pytest

from betapoly.cone import (
    ConeParams,
    check_corollary_18,
    check_efron,
    check_identity_17,
    check_thm13,
    expected_faces_cone,
    expected_solid_angle,
)
from betapoly.results import Form


def test_params_validation():
    with pytest.raises(ValueError):
        ConeParams(n=2, d=2)
    with pytest.raises(ValueError):
        ConeParams(n=5, d=2, k=3)


def test_planar_cone_has_two_rays():
    assert expected_faces_cone(ConeParams(5, 1, 1), "B_side").value == pytest.approx(2.0, rel=1e-13)


@pytest.mark.parametrize("d", range(1, 7))
def test_simplicial_cone(d):
    for k in range(1, d + 1):
        for form in (Form.B_SIDE, Form.A_SIDE):
            assert expected_faces_cone(ConeParams(d + 1, d, k), form).value == pytest.approx(math.comb(d + 1, k), rel=1e-12)


def test_closed_form_edges():
    want = 6 * (math.pi ** 2 - 4) / math.pi ** 2
    for form in Form:
        v = expected_faces_cone(ConeParams(4, 2, 1), form).value
        if form.is_complement:
            v = 4 - v
        assert v == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_four_forms_agree(d):
    for n in range(d + 1, 11):
        for k in range(1, d + 1):
            p = ConeParams(n, d, k)
            v = {f: expected_faces_cone(p, f).value for f in Form}
            c = math.comb(n, k)
            assert v[Form.B_SIDE] == pytest.approx(v[Form.A_SIDE], rel=1e-10)
            assert v[Form.B_SIDE] + v[Form.COMPLEMENT_B_SIDE] == pytest.approx(c, rel=1e-10)
            assert v[Form.A_SIDE] + v[Form.COMPLEMENT_A_SIDE] == pytest.approx(c, rel=1e-10)
            assert 0 < v[Form.B_SIDE] <= c * (1 + 1e-12)


def test_form_aliases_and_summands():
    r = expected_faces_cone(ConeParams(6, 3, 2), "ca")
    assert r.form is Form.COMPLEMENT_A_SIDE
    assert sum(v for _, v in r.summands) == pytest.approx(r.value)


@pytest.mark.parametrize("n, want", [(3, 0.25), (9, 0.4)])
def test_solid_angle_d1(n, want):
    assert expected_solid_angle(ConeParams(n, 1)).value == pytest.approx(want, rel=1e-12)


def test_solid_angle_forms():
    p = ConeParams(6, 3)
    v = {f: expected_solid_angle(p, f).value for f in Form}
    assert v[Form.A_SIDE] == pytest.approx(v[Form.B_SIDE], rel=1e-10)
    assert v[Form.A_SIDE] + v[Form.COMPLEMENT_A_SIDE] == pytest.approx(0.5, rel=1e-12)
    assert 0 < v[Form.A_SIDE] < 0.5


def test_reaction_identities():
    assert check_thm13(5, 3, 2).worst <= 1e-10
    assert tuple(check_thm13(2, 1, 2)) == (0.0, 0.0)
    assert check_thm13(2, 1, 1)[1] == 0.0


@pytest.mark.parametrize("n, k, want", [(4, 2, math.pi ** 2 / 2), (3, 2, math.pi), (2, 1, math.pi)])
def test_parity_sums(n, k, want):
    chk = check_identity_17(n, k)
    assert chk.worst <= 1e-12
    assert chk.sides[0][1] == pytest.approx(want)


def test_boundary_sum_identity():
    assert check_corollary_18(2, 1).sides[0][1] == pytest.approx(math.pi)
    assert check_corollary_18(3, 4).worst <= 1e-12
    probe = check_corollary_18(2, 0)
    assert probe.expected_failure
    assert probe.sides[0][0] == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("n, d", [(3, 1), (4, 2), (5, 3), (8, 4), (6, 5)])
def test_efron(n, d):
    assert check_efron(n, d).worst <= 1e-10
