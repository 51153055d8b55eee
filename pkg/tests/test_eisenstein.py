import json
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from peis.errors import PreconditionError
from peis.exact import stabilized_zeta, zeta_at_one_minus
from peis.eisenstein import (
    QExpansion,
    classical_G,
    constant_term_bound_audit,
    fs_constant_term_audit,
    limit_constant_terms,
    normalized_family_u0,
    p_stabilize,
    padic_G_star,
    serre_eisenstein_measure,
    valuation_report,
    valuation_table_csv,
    weight_congruence_audit,
    weight_image_nonzero,
)
from peis.iwasawa import LambdaElement, lambda_mu_invariants
from peis.lfunctions import zeta_star
from peis.padic import PadicInt, PadicNumber, WeightCharacter, teichmuller


def sigma_star(n, k, p):
    return sum(int(d) ** k for d in sympy.divisors(n) if d % p)


# classical

def test_classical_examples():
    G4 = classical_G(4)
    assert G4[0] == Fraction(1, 240)
    assert [G4[n] for n in (1, 2, 3)] == [1, 9, 28]
    assert classical_G(6)[0] == Fraction(-1, 504)
    for k in range(4, 30, 2):
        assert classical_G(k, 5)[1] == 1


def test_classical_against_sympy():
    for k in (4, 6, 12, 20):
        G = classical_G(k, 60)
        assert all(G[n] == sympy.divisor_sigma(n, k - 1) for n in range(1, 61))
        z = sympy.zeta(1 - k) / 2
        assert G[0] == Fraction(int(z.p), int(z.q))


def test_classical_rejects():
    for k in (2, 5, 0):
        with pytest.raises(PreconditionError):
            classical_G(k)


def test_classical_weight_12_modularity():
    # 691 G_12 - (691/65520 ... ) : G_12 - G_4^3 * c is a cusp form; check via Ramanujan tau
    G4, G6, G12 = classical_G(4, 8), classical_G(6, 8), classical_G(12, 8)
    # Delta = (E_4^3 - E_6^2)/1728 with E_k = G_k / G_k[0]
    E4 = [c / G4[0] for c in G4.coeffs]
    E6 = [c / G6[0] for c in G6.coeffs]

    def mul(a, b):
        return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(len(a))]

    delta = [(x - y) / 1728 for x, y in zip(mul(mul(E4, E4), E4), mul(E6, E6))]
    assert delta[:4] == [0, 1, -24, 252]
    E12 = [c / G12[0] for c in G12.coeffs]
    # E_12 - E_4^3 is a multiple of Delta
    diff = [x - y for x, y in zip(E12, mul(mul(E4, E4), E4))]
    ratio = diff[1] / delta[1]
    assert all(d == ratio * t for d, t in zip(diff, delta))


# p-adic G*

def test_padic_G_star_examples():
    G = padic_G_star((2, 2), 50, 20, 5)
    assert G[0] == PadicInt.from_rational(Fraction(1, 6), 5, 20)
    assert G[0].residue % 5 == 1
    assert G[2] == 3 and G[5] == 1 and G[1] == 1


def test_padic_G_star_integer_weight_6():
    G = padic_G_star(6, 50, 20, 5)
    for n in range(1, 51):
        want = sympy.divisor_sigma(n, 5) - (5**5 * sympy.divisor_sigma(n // 5, 5) if n % 5 == 0 else 0)
        assert G[n] == int(want)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.integers(1, 40))
def test_padic_G_star_sigma_oracle(p, k):
    if k % 2 or k < 2:
        return
    G = padic_G_star(k, 30, 12, p)
    assert all(G[n] == sigma_star(n, k - 1, p) for n in range(1, 31))


def test_stabilization_identity():
    for p in (5, 7):
        for k in (4, 6, 8, 10, 12):
            st_ = p_stabilize(classical_G(k, 50), k, p)
            G = padic_G_star(k, 50, 20, p)
            for n in range(51):
                assert G[n].agreement(PadicNumber.from_rational(st_[n], p, 20)) >= 20 or \
                    (G[n] - PadicNumber.from_rational(st_[n], p, 20)).is_zero()


def test_padic_G_star_odd_branch_and_zero():
    G = padic_G_star((PadicInt(5, 10, 3), 1), 10, 10, 5)
    assert G[0].is_zero()
    with pytest.raises(PreconditionError):
        padic_G_star((0, 0), 10, 10, 5)


def test_padic_G_star_non_integer_weight_constant():
    s = PadicInt(5, 20, 123456789)
    G = padic_G_star((s, 2), 10, 20, 5)
    assert G[0] == zeta_star(1 - s, 2, 5, 20) / 2


# valuations and audits

def test_valuation_examples():
    r = valuation_report(classical_G(4), 5)
    assert r.valuation == -1 and r.index == 0
    zero = QExpansion("padic", tuple(PadicInt(5, 10, 0) for _ in range(5)), {}, 5, 10)
    assert valuation_report(zero).valuation == math.inf
    assert valuation_report(padic_G_star((2, 2), 20, 20, 5)).valuation == 0


def test_weight_audit_examples():
    G4, G8, G24 = classical_G(4), classical_G(8), classical_G(24)
    assert weight_congruence_audit(G4, G8, 4, 8, 5).consistent
    a = weight_congruence_audit(G4, G24, 4, 24, 5)
    assert a.m_observed == 1 and a.required_modulus == 4 and a.consistent
    same = weight_congruence_audit(G4, G4, 4, 4, 5)
    assert same.m_observed == math.inf and same.consistent


def test_weight_audit_detects_wrong_weight_label():
    G4, G24 = classical_G(4), classical_G(24)
    # claiming weights 4 and 6 for a pair congruent mod 5 is flagged
    assert not weight_congruence_audit(G4, G24, 4, 6, 5).consistent


def test_weight_image():
    assert weight_image_nonzero(WeightCharacter(0, 2, 5), 0)
    assert not weight_image_nonzero(WeightCharacter(4, 0, 5), 0)
    assert weight_image_nonzero(WeightCharacter(4, 0, 5), 1)
    assert not weight_image_nonzero(WeightCharacter(20, 0, 5), 1)


def test_constant_term_audit_examples():
    G = padic_G_star((2, 2), 50, 20, 5)
    a = constant_term_bound_audit(G, (2, 2), 0)
    assert a.hypothesis_met and a.holds and a.lhs == 0 and a.rhs == 0
    G4s = padic_G_star(4, 50, 20, 5)
    assert not constant_term_bound_audit(G4s, 4, 0).hypothesis_met
    scaled = G.scale(5)
    b = constant_term_bound_audit(scaled, (2, 2), 0)
    assert b.holds and b.lhs - a.lhs == b.rhs - a.rhs == 1


def test_constant_term_audit_stabilized_weights():
    # u = 0 weights with s = 4 are nonzero in X_2, X_3 ... once 5^m does not divide 4
    G4s = QExpansion("rational", p_stabilize(classical_G(4, 50), 4, 5).coeffs, {}, 5)
    for m in (1, 2, 3):
        a = constant_term_bound_audit(G4s, 4, m)
        assert a.hypothesis_met and a.holds


def test_limit_constant_terms():
    ks, vals, diffs = limit_constant_terms(2, 5, 4)
    assert ks == [2 + 4 * 5**i for i in range(1, 5)]
    assert all(a < b for a, b in zip(diffs, diffs[1:]))
    target = PadicInt.from_rational(stabilized_zeta(2, 5) / 2, 5, 20)
    agree = [PadicNumber.from_rational(v, 5, 20).agreement(target) for v in vals]
    assert all(a < b for a, b in zip(agree, agree[1:]))
    assert vals[0] == zeta_at_one_minus(ks[0]) / 2


# Lambda families

def test_serre_measure_examples():
    F = serre_eisenstein_measure(2, 5, 20, 20, 24)
    assert F[1] == LambdaElement.one(5, F.N, 24)
    assert F[5] == LambdaElement.one(5, F.N, 24)
    # at s = 2 the weight is (2, 2) and a_2 = sigma*_1(2) = 3
    assert F.specialize(2)[2].agreement(PadicInt(5, 20, 3)) >= F.N - 2
    # at s = 1 it is 1 + 2^-1 omega(2)^2 <2> = 1 + omega(2), only = 3 mod 5
    a2 = F.specialize(1)[2]
    assert a2.agreement(1 + teichmuller(2, 5, 20)) >= F.N - 2
    assert a2.residue % 5 == 3 and a2.agreement(PadicInt(5, 20, 3)) == 1


@pytest.mark.parametrize("p, u", [(5, 2), (7, 2), (7, 4)])
def test_specialization_square(p, u):
    N, M = 20, 50
    F = serre_eisenstein_measure(u, p, M, N, N + 4)
    for s in (1, 2, 3, 7):
        spec = F.specialize(s)
        ref = padic_G_star((s, u), M, N, p)
        for n in range(M + 1):
            a, b = spec[n], ref[n]
            d = (b - a) if isinstance(b, PadicNumber) else (a - b)
            assert d.valuation() >= N - 2, (s, n)


def test_specialization_at_padic_weight():
    s = PadicInt(5, 20, 987654321)
    F = serre_eisenstein_measure(2, 5, 12, 20, 24)
    spec = F.specialize(s)
    ref = padic_G_star((s, 2), 12, 20, 5)
    assert all(spec[n].agreement(ref[n]) >= 17 for n in range(13))


def test_serre_measure_rejects_u0():
    with pytest.raises(PreconditionError):
        serre_eisenstein_measure(0, 5)
    with pytest.raises(PreconditionError):
        serre_eisenstein_measure(1, 5)


def test_family_json():
    F = serre_eisenstein_measure(2, 5, 4, 10, 4)
    data = json.loads(json.dumps(F.to_json()))
    assert data["ring"] == "lambda" and data["M_T"] == 4 and len(data["coeffs"]) == 5


def test_normalized_family():
    E = normalized_family_u0(5, 20, 20, 16)
    assert E[0] == LambdaElement.one(5, E.N, 16)
    # a_1 = (zeta*/2)^-1 vanishes at T = 0: the T g(T) shape
    assert E[1].coeffs[0] == 0
    assert lambda_mu_invariants(E[1]) == (0, 1)
    for k in (4, 8):
        spec = E.specialize(k)
        c = 2 / stabilized_zeta(k, 5)
        G = p_stabilize(classical_G(k, 20), k, 5)
        for n in range(1, 21):
            assert spec[n].agreement(PadicInt.from_rational(c * G[n], 5, 20)) >= E.N - 4


def test_fs_audit_certifies_eisenstein_family():
    audit = fs_constant_term_audit(serre_eisenstein_measure(2, 5, 10, 12, 8))
    assert audit.certified and audit.witness is None and audit.precision >= 4


def test_fs_audit_rejects_divided_constant_term():
    F = serre_eisenstein_measure(2, 5, 10, 12, 8)
    audit = fs_constant_term_audit(F, constant_term=lambda k: stabilized_zeta(k, 5) / 10)
    assert not audit.certified
    assert audit.witness["kind"] == "constant-term bound" and audit.witness["v_a0"] == -1


def test_fs_audit_constant_family():
    one = LambdaElement.one(5, 10, 6)
    F = QExpansion("lambda", (one,) * 8, {"u": 2}, 5, 10, 6)
    audit = fs_constant_term_audit(F)
    assert audit.certified


def test_valuation_csv():
    rows = [weight_congruence_audit(classical_G(4), classical_G(k), 4, k, 5).to_json() for k in (8, 24)]
    text = valuation_table_csv(rows, ["k", "k2", "m_observed", "consistent"])
    assert text.splitlines() == ["k,k2,m_observed,consistent", "4,8,0,True", "4,24,1,True"]


def test_fs_audit_normalized_family_uses_first_nonzero_level():
    # u = 0: the weights vanish in X_1, so the bound is read at m = 1 (m = 2 at 5 | k)
    audit = fs_constant_term_audit(normalized_family_u0(5, 10, 12, 6))
    assert audit.certified and audit.weights[0] == 4
