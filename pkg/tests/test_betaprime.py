import math

import pytest

from betapoly.betaprime import BetaPrimeParams, check_cor34, check_prop32, check_thm32, expected_faces_beta_prime
from betapoly.cone import ConeParams, expected_faces_cone
from betapoly.errors import DomainNotRepresentable
from betapoly.results import Form


def test_params():
    assert BetaPrimeParams(5, 2, 2.0).alpha == 2.0
    with pytest.raises(ValueError):
        BetaPrimeParams(5, 2, 1.0)


def test_simplex():
    assert expected_faces_beta_prime(BetaPrimeParams(4, 3, 3.0, 2)).value == pytest.approx(6, abs=1e-9)


def test_alpha_k_guard():
    with pytest.raises(DomainNotRepresentable):
        expected_faces_beta_prime(BetaPrimeParams(5, 2, 1.1, 1))


def test_rational_values_at_alpha_two():
    # E f_0 for d = 2, beta = 2 is rational: 4 at n = 5 and 30/7 at n = 6
    assert expected_faces_beta_prime(BetaPrimeParams(5, 2, 2.0, 1)).value == pytest.approx(4.0, rel=1e-12)
    assert expected_faces_beta_prime(BetaPrimeParams(6, 2, 2.0, 1)).value == pytest.approx(30 / 7, rel=1e-12)


def test_segment():
    # d = 1: a segment always has two endpoints
    for n in range(2, 8):
        assert expected_faces_beta_prime(BetaPrimeParams(n, 1, 1.5, 1)).value == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("d, beta", [(2, 1.75), (2, 2.5), (3, 3.0), (3, 2.25)])
def test_four_forms(d, beta):
    for n in range(d + 1, 9):
        for k in range(1, d + 1):
            p = BetaPrimeParams(n, d, beta, k)
            if p.alpha * k <= 1:
                continue
            c = math.comb(n, k)
            v = {f: expected_faces_beta_prime(p, f).value for f in Form}
            assert v[Form.A_SIDE] == pytest.approx(v[Form.B_SIDE], rel=1e-9)
            assert v[Form.A_SIDE] + v[Form.COMPLEMENT_A_SIDE] == pytest.approx(c, rel=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_alpha_one_matches_cone(d):
    for n in range(d + 1, 9):
        for k in range(2, d + 1):
            bp = expected_faces_beta_prime(BetaPrimeParams(n, d, (d + 1) / 2, k)).value
            assert bp == pytest.approx(expected_faces_cone(ConeParams(n, d, k)).value, rel=1e-11)


def test_identities():
    assert check_thm32(6, 4, 2, 3.0).worst <= 1e-10
    assert tuple(check_thm32(5, 5, 6, 3.0)) == (0.0, 0.0)
    assert check_prop32(5, 3, 2.0).worst <= 1e-10
    assert check_prop32(4, 3, 4.0).worst <= 1e-10
    assert check_cor34(4, 2, 3.0).worst <= 1e-10
    assert check_cor34(3, 2, 2.0).worst <= 1e-10


def test_prop32_closed_form():
    chk = check_prop32(6, 2, 2.0)
    assert chk.sides[0][1] == pytest.approx(16 / 3, rel=1e-14)


def test_integer_two_over_alpha_cancels_gamma_pole():
    # alpha = 0.5 makes 1/Gamma(m + 1 - 4) vanish for m = 3 while the
    # partner kernel carries Gamma(0); the product must stay finite
    assert check_thm32(5, 3, 3, 0.5).worst <= 1e-10
    assert check_prop32(6, 3, 0.5).worst <= 1e-10
