import json
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from peis.dirichlet import enumerate_characters, teichmuller_character, trivial_character
from peis.errors import PoleError, PreconditionError
from peis.exact import bernoulli_number, stabilized_zeta, zeta_at_one_minus
from peis.iwasawa import lambda_mu_invariants
from peis.lfunctions import (
    branch_element,
    default_regularizer,
    interpolated_branch,
    inverse_trivial_branch,
    kummer_classical_check,
    lp_interpolation,
    lp_interpolation_exact,
    lp_measure_route,
    regularity_scan,
    zeta_star,
)
from peis.padic import PadicInt, PadicNumber

w5 = teichmuller_character(5)
w7 = teichmuller_character(7)


def embed(x, p=5, N=20):
    return PadicInt.from_rational(x, p, N)


# interpolation route

def test_interpolation_examples():
    assert lp_interpolation_exact(2, w5**2, 5) == Fraction(1, 3)
    assert lp_interpolation(2, w5**2, 5) == embed(Fraction(1, 3))
    assert lp_interpolation(6, w5**6, 5) == embed(Fraction(781, 63))


def test_interpolation_n1_odd_branch_vanishes():
    # omega is odd, so its branch of L_p is identically 0
    assert lp_interpolation(1, w5, 5).is_zero()
    # the value that is = 2 mod 5 lives on the even branch omega^2
    v = lp_interpolation(1, w5**2, 5)
    assert v.residue % 5 == 2
    assert v.residue % 5 == lp_interpolation(2, w5**2, 5).residue % 5


def test_interpolation_trivial_branch():
    # L_p(1-n, 1) for n = 0 mod p-1 is the stabilized zeta value
    assert lp_interpolation_exact(4, trivial_character(), 5) == stabilized_zeta(4, 5)


def test_wild_character_rejected():
    chi = [c for c in enumerate_characters(25) if c.order == 5][0]
    with pytest.raises(PreconditionError):
        lp_interpolation(2, chi, 5)


def test_default_regularizer():
    assert default_regularizer(5) == 2
    assert default_regularizer(7) == 3
    c = default_regularizer(5, 2)
    assert math.gcd(c, 10) == 1
    # primitive root mod p^2
    assert sympy.n_order(c, 25) == 20


# measure route

def test_measure_route_examples():
    a = lp_measure_route(-1, w5**2, 5, level=8)
    assert a.agreement(embed(Fraction(1, 3))) >= 7
    b = lp_measure_route(-5, w5**2, 5, level=8)
    assert b.agreement(embed(Fraction(781, 63))) >= 7


def test_measure_route_pole_on_trivial_branch():
    # 1 - <c>^(1-s) vanishes at s = 1, the pole of the p-adic zeta function
    with pytest.raises(PoleError):
        lp_measure_route(1, trivial_character(1), 5, level=4, d=1)
    v = lp_measure_route(-3, trivial_character(1), 5, level=8, d=1)
    assert v.agreement(PadicNumber.from_rational(stabilized_zeta(4, 5), 5, 20)) >= 6


@pytest.mark.parametrize("j", [2])
def test_dual_route_p5(j):
    chi = w5**j
    for n in range(1, 9):
        a = lp_measure_route(1 - n, chi, 5, level=8)
        b = lp_interpolation(n, chi, 5)
        assert a.agreement(b) >= 6


def test_measure_route_imprimitive_modulus():
    # chi = omega^2 viewed mod 10: the measure on (Z/10 p^n)^x drops the Euler factor at 2
    chi = (w5**2).induce(10)
    for n in (2, 3, 4):
        a = lp_measure_route(1 - n, chi, 5, level=5)
        psi = w5 ** (2 - n)
        b = lp_interpolation(n, w5**2, 5) * (1 - psi.padic(2, 5, 20) * 2 ** (n - 1))
        assert a.agreement(b) >= 6


def test_dual_route_conductor_21():
    # chi_{-3} omega is even, tame at p = 7 and has conductor 21 (d = 3)
    q = [c for c in enumerate_characters(3) if c.order == 2][0]
    chi = q * w7
    assert chi.conductor() == 21 and chi.is_even()
    for n in range(1, 5):
        a = lp_measure_route(1 - n, chi, 7, level=5)
        assert a.agreement(lp_interpolation(n, chi, 7)) >= 6
    # n = 1 is a trivial zero: chi omega^-1 (7) = 1
    assert lp_interpolation(1, chi, 7).is_zero()


def test_measure_route_padic_argument():
    s = PadicInt(5, 20, -1)
    assert lp_measure_route(s, w5**2, 5, level=6) == lp_measure_route(-1, w5**2, 5, level=6)


# branch elements

def test_branch_element_matches_measure_route():
    br = branch_element(w5**2, 5, N=20, M=12, level=8)
    assert br.factor.is_unit()
    chi_c = (w5**2).padic(2, 5, 20)
    assert br.factor.coeffs[0] % 5 == (1 - chi_c.residue) % 5
    for s in range(0, 14):
        a = br.evaluate(-s)
        b = lp_measure_route(-s, w5**2, 5, level=8)
        assert a.agreement(b) >= br.numerator.N - 1


def test_branch_element_is_lambda_element():
    br = branch_element(w5**2, 5, N=20, M=12, level=8)
    L = br.element()
    assert L.p == 5 and L.M == 12
    assert json.loads(json.dumps(br.to_json()))["pseudo_measure"] is False


def test_trivial_branch_returns_pair():
    br = branch_element(trivial_character(1), 5, N=20, M=8, level=5, d=1)
    assert br.is_pseudo_measure
    with pytest.raises(PoleError):
        br.element()
    assert not br.factor.is_unit()


def test_interpolated_branch_matches_measure_branch():
    f = interpolated_branch(2, 5, 20, 12)
    br = branch_element(w5**2, 5, N=20, M=12, level=8)
    g = br.element()
    # f is read at gamma^(1-s) - 1, the measure branch at gamma^(-s) - 1
    from peis.iwasawa import evaluate_at_character, weight_point
    for s in range(-6, 2):
        a = evaluate_at_character(f, weight_point(1 - s, 5, 20))
        b = evaluate_at_character(g, weight_point(-s, 5, 20))
        assert a.agreement(b) >= g.N - 1


# zeta*

def test_zeta_star_examples():
    assert zeta_star(-1, 2) == embed(Fraction(1, 3))
    assert zeta_star(-5, 2) == embed(Fraction(781, 63))
    assert Fraction(1, 3) - Fraction(781, 63) == Fraction(-760, 63)
    assert embed(Fraction(781, 63)).residue % 5 == 2


@pytest.mark.parametrize("p, u", [(5, 2), (7, 2), (7, 4), (11, 6)])
def test_zeta_star_exact_on_branch(p, u):
    for t in range(0, 4):
        k = u + (p - 1) * t
        assert zeta_star(1 - k, u, p, 16) == PadicInt.from_rational(stabilized_zeta(k, p), p, 16)


def test_zeta_star_limit_sequence():
    target = embed(stabilized_zeta(2, 5))
    agree = []
    for i in range(0, 5):
        k = 2 + 4 * 5**i
        agree.append(PadicNumber.from_rational(zeta_at_one_minus(k), 5, 20).agreement(target))
    assert all(a < b for a, b in zip(agree, agree[1:]))
    assert all(a >= i + 1 for i, a in enumerate(agree))


def test_zeta_star_trivial_branch():
    with pytest.raises(PoleError):
        zeta_star(1, 0, 5)
    for k in (4, 8, 12):
        v = zeta_star(1 - k, 0, 5, 16)
        assert v.agreement(PadicNumber.from_rational(stabilized_zeta(k, 5), 5, 16)) >= 12
    h = inverse_trivial_branch(5, 16, 18)
    assert h.coeffs[0] == 0
    assert lambda_mu_invariants(h) == (0, 1)


def test_zeta_star_rejects_odd_branch():
    with pytest.raises(PreconditionError):
        zeta_star(0, 1, 5)
    with pytest.raises(PreconditionError):
        interpolated_branch(3, 5)


@settings(max_examples=25, deadline=None)
@given(st.integers(-200, 200), st.integers(1, 4))
def test_branch_congruence(s, m):
    a = zeta_star(s, 2, 5, 12)
    b = zeta_star(s + 5**m, 2, 5, 12)
    assert a.agreement(b) >= m + 1


# lambda invariant and regularity

def test_lambda_invariant_p37():
    f = interpolated_branch(32, 37, 5, 4)
    mu, lam = lambda_mu_invariants(f)
    assert mu == 0 and lam >= 1
    assert bernoulli_number(32).numerator % 37 == 0


def test_lambda_invariant_p37_measure_route():
    br = branch_element(teichmuller_character(37) ** 32, 37, N=3, M=3, level=3)
    mu, lam = lambda_mu_invariants(br.element())
    assert mu == 0 and lam >= 1


def test_lambda_zero_for_regular_branch():
    assert lambda_mu_invariants(interpolated_branch(2, 5, 10, 6)) == (0, 0)


# Kummer congruences

def test_kummer_examples():
    cert = kummer_classical_check(5, 1, 2, 6)
    assert cert.holds and cert.valuation == 1
    assert cert.difference == Fraction(-760, 63)
    assert kummer_classical_check(5, 2, 2, 22).holds
    with pytest.raises(PreconditionError):
        kummer_classical_check(5, 1, 4, 8)
    with pytest.raises(PreconditionError):
        kummer_classical_check(5, 1, 2, 4)


def test_kummer_json():
    data = kummer_classical_check(7, 1, 2, 8).to_json()
    assert data["holds"] is True and "/" in data["difference"]


def test_regularity_examples():
    assert regularity_scan(5).regular
    assert regularity_scan(37).irregular_indices == (32,)
    assert regularity_scan(691).irregular_indices == (12, 200)


def test_regularity_methods_agree():
    for p in sympy.primerange(5, 160):
        assert regularity_scan(p) == regularity_scan(p, "exact")


def test_irregular_primes_below_160():
    irregular = [p for p in sympy.primerange(5, 160) if not regularity_scan(p).regular]
    assert irregular == [37, 59, 67, 101, 103, 131, 149, 157]
