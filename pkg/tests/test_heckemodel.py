import math

import pytest

from gl3voronoi.characters import enumerate_characters, principal_character
from gl3voronoi.heckemodel import (
    CoefficientDomainError,
    euler_product_residual,
    hecke_relation_residual_1,
    hecke_relation_residual_2,
    new_model,
)


def quadratic_mod(p):
    (chi,) = [
        c for c in enumerate_characters(p) if not c.is_principal and c == c.conjugate()
    ]
    return chi


def elementary_symmetric(triple):
    a, b, c = triple.alpha, triple.beta, triple.gamma
    return a + b + c, a * b + b * c + c * a, a * b * c


def test_normalization_and_local_values():
    m = new_model(1, seed=7)
    assert m.coefficient(1, 1) == 1
    e1, e2, e3 = elementary_symmetric(m.satake(2))
    assert abs(m.coefficient(1, 2) - e1) < 1e-14  # degree-one Schur value
    assert abs(m.coefficient(2, 1) - e2) < 1e-14
    assert abs(e3 - 1) < 1e-12
    # A(p,1) A(1,p) - A(p,p) = psi(p)
    v = m.coefficient(2, 1) * m.coefficient(1, 2) - m.coefficient(2, 2)
    assert abs(v - 1) < 1e-13


def test_central_character_constraint():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=5)
    for p in (2, 5, 7, 11):
        _, _, e3 = elementary_symmetric(m.satake(p))
        assert abs(e3 - psi(p)) < 1e-12


def test_determinism():
    psi = quadratic_mod(3)
    a = new_model(3, psi, seed=42)
    b = new_model(3, psi, seed=42)
    assert a.coefficient(35, 18) == b.coefficient(35, 18)
    assert a.satake(7) == b.satake(7)
    assert a.ramified(3, 2) == b.ramified(3, 2)
    c = new_model(3, psi, seed=43)
    assert a.coefficient(35, 18) != c.coefficient(35, 18)


def test_domain_error_on_level_first_index():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=0)
    with pytest.raises(CoefficientDomainError):
        m.coefficient(3, 1)
    with pytest.raises(ValueError):
        m.coefficient(0, 1)


def test_sign_rule_exact():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=1)
    for m1, m2 in ((2, 5), (4, 9), (1, 6)):
        base = m.coefficient(m1, m2)
        assert m.coefficient(-m1, m2) == base
        assert m.coefficient(m1, -m2) == psi.parity * base
        assert m.coefficient(-m1, -m2) == psi.parity * base


def test_multiplicativity():
    psi = [c for c in enumerate_characters(5) if c.is_primitive][0]
    m = new_model(5, psi, seed=3)
    pairs = [((2, 3), (7, 11)), ((4, 9), (7, 1)), ((3, 8), (49, 11)), ((9, 2), (77, 121))]
    for (a, b), (c, d) in pairs:
        lhs = m.coefficient(a * c, b * d)
        rhs = m.coefficient(a, b) * m.coefficient(c, d)
        assert abs(lhs - rhs) < 1e-12
    # indices up to 1e4
    assert abs(m.coefficient(99 * 101, 98 * 103) - m.coefficient(99, 98) * m.coefficient(101, 103)) < 1e-10


def test_hecke_relation_1_examples():
    m = new_model(1, seed=0)
    for p in (2, 3):
        assert hecke_relation_residual_1(m, p, 1, 1) < 1e-14  # both sides A(p,1)
        assert hecke_relation_residual_1(m, p, 1, p) < 1e-12
        assert hecke_relation_residual_1(m, p * p, p, p) < 1e-10


def test_hecke_relation_sweep_with_nebentypus():
    worst = 0.0
    for level in (1, 2, 3, 5):
        for psi in enumerate_characters(level):
            for seed in range(6):
                m = new_model(level, psi, seed=seed)
                for p in (2, 3, 5, 7):
                    if level % p == 0:
                        continue
                    for e in range(1, 4):
                        for e1 in range(4):
                            for e2 in range(4):
                                worst = max(
                                    worst,
                                    hecke_relation_residual_1(m, p**e, p**e1, p**e2),
                                    hecke_relation_residual_2(m, p**e, p**e1, p**e2),
                                )
    assert worst < 1e-10


def test_hecke_relation_2_ramified_m():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=11)
    # m = p^2 with p | N: only (a,b,c) = (p^2,1,1) survives, both sides c_{p,2}
    assert hecke_relation_residual_2(m, 9, 1, 1) < 1e-14
    assert abs(m.coefficient(1, 9) - m.ramified(3, 2)) < 1e-15
    for mm in (3, 9, 6, 18, 45):
        for n1, n2 in ((1, 1), (2, 5), (4, 2)):
            assert hecke_relation_residual_2(m, mm, n1, n2) < 1e-12


def test_relation_preconditions():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=0)
    with pytest.raises(CoefficientDomainError):
        hecke_relation_residual_1(m, 3, 1, 1)
    with pytest.raises(CoefficientDomainError):
        hecke_relation_residual_1(m, 2, 1, 3)
    with pytest.raises(CoefficientDomainError):
        hecke_relation_residual_2(m, 2, 3, 1)


def test_relation_fails_for_corrupted_model():
    m = new_model(1, seed=0).corrupted((1, 2), 1e-3)
    assert hecke_relation_residual_1(m, 2, 1, 2) > 1e-5


def test_adjoint_relation_unitary():
    psi = [c for c in enumerate_characters(5) if c.is_primitive][0]
    m = new_model(5, psi, seed=3)
    for n in range(1, 101):
        if math.gcd(n, 5) != 1:
            continue
        lhs = m.coefficient(n, 1)
        rhs = psi(n) * m.coefficient(1, n).conjugate()
        assert abs(lhs - rhs) < 1e-10, n


def test_adjoint_relation_fails_non_unitary():
    # genuinely fails for non-unitary draws; relations still hold
    m = new_model(1, seed=9, unitary=False)
    bad = max(
        abs(m.coefficient(n, 1) - m.coefficient(1, n).conjugate()) for n in (2, 3, 5)
    )
    assert bad > 1e-6
    assert hecke_relation_residual_1(m, 4, 2, 2) < 1e-10
    assert hecke_relation_residual_2(m, 4, 2, 2) < 1e-10


def test_contragredient():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=4)
    ct = m.contragredient()
    assert ct.coefficient(1, 1) == 1
    for a, b in ((2, 5), (5, 2), (7, 4), (10, 1)):
        lhs = m.coefficient(a, b)
        rhs = psi(a) * psi(b) * ct.coefficient(b, a)
        assert abs(lhs - rhs) < 1e-12
    # at level 1: dual of A(p,1) is A(1,p)
    m1 = new_model(1, seed=4)
    assert abs(m1.contragredient().coefficient(2, 1) - m1.coefficient(1, 2)) < 1e-13
    # double contragredient restores the unramified part
    cc = ct.contragredient()
    for a, b in ((2, 5), (7, 4)):
        assert abs(cc.coefficient(a, b) - m.coefficient(a, b)) < 1e-12
    # the dual satisfies its own relations with the conjugate nebentypus
    for p in (2, 5, 7):
        for e in (1, 2, 3):
            assert hecke_relation_residual_2(ct, p**e, p, p * p) < 1e-10
    # ramified dual data is an independent draw, not the transpose
    assert ct.ramified(3, 1) != m.ramified(3, 1)


def test_zero_ramified_preset():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=0, zero_ramified=True)
    assert m.coefficient(1, 3) == 0
    assert m.coefficient(1, 9) == 0
    assert m.coefficient(1, 2) != 0


def test_euler_product_examples():
    m = new_model(1, seed=1)
    chi = principal_character(5)
    assert euler_product_residual(m, chi, 2.5, 1) == 0          # both sides 1
    assert euler_product_residual(m, chi, 2.5, 2) < 1e-12       # single prime
    assert euler_product_residual(m, chi, 2.5, 300) < 1e-9


def test_euler_product_relation_consistent_sweep():
    for level in (1, 3):
        for psi in enumerate_characters(level):
            m = new_model(level, psi, seed=1)
            for chi in enumerate_characters(5):
                assert euler_product_residual(m, chi, 2.5, 300) < 1e-9


def test_euler_product_alt_form_fails_with_nebentypus():
    psi = quadratic_mod(3)
    m = new_model(3, psi, seed=1)
    chi = enumerate_characters(5)[1]
    good = euler_product_residual(m, chi, 2.5, 60)
    alt = euler_product_residual(m, chi, 2.5, 60, variant="quadratic-psi")
    assert good < 1e-10
    assert alt > 1e-2  # moving psi(p) to the quadratic term is wrong


def test_euler_product_domain():
    m = new_model(1, seed=0)
    with pytest.raises(ValueError):
        euler_product_residual(m, principal_character(5), 1.0, 10)
