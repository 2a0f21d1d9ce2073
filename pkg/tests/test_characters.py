import cmath
import math
from fractions import Fraction

import pytest

from gl3voronoi.arith import euler_phi
from gl3voronoi.characters import (
    enumerate_characters,
    gauss_sum,
    gauss_sum_table,
    generalized_gauss_sum,
    induce,
    multiply,
    primitive_part,
    principal_character,
)


def quadratic_mod(p):
    (chi,) = [
        c for c in enumerate_characters(p) if not c.is_principal and c == c.conjugate()
    ]
    return chi


def test_enumeration_counts():
    assert len(enumerate_characters(1)) == 1
    chars5 = enumerate_characters(5)
    assert len(chars5) == 4
    assert sum(1 for c in chars5 if c.is_primitive) == 3
    assert len(enumerate_characters(8)) == 4
    for q in range(1, 61):
        assert len(set(enumerate_characters(q))) == euler_phi(q)


def test_evaluation_examples():
    principal6 = principal_character(6)
    assert principal6(5) == 1
    for q in (2, 5, 12):
        for chi in enumerate_characters(q):
            assert chi(q) == 0
    chi3 = quadratic_mod(3)
    assert abs(chi3(2) + 1) < 1e-15


def test_complete_multiplicativity():
    for q in (5, 8, 12, 15):
        for chi in enumerate_characters(q):
            vals = chi.values()
            for a in range(q):
                for b in range(q):
                    assert abs(vals[a * b % q] - vals[a] * vals[b]) < 1e-12


def test_orthogonality_both_ways():
    for q in range(1, 61):
        chars = enumerate_characters(q)
        for a in range(2, q):
            if math.gcd(a, q) != 1 or a % q == 1:
                continue
            total = sum(chi(a) for chi in chars)
            assert abs(total) < 1e-9, (q, a)
        for chi in chars:
            if chi.is_principal:
                continue
            total = sum(chi(a) for a in range(q) if math.gcd(a, q) == 1)
            assert abs(total) < 1e-9, (q, chi)


def test_conductor_examples():
    assert principal_character(12).conductor == 1
    chi3 = quadratic_mod(3)
    chi6 = induce(chi3, 6)
    assert chi6.conductor == 3
    for p in (3, 5, 7, 11):
        for chi in enumerate_characters(p):
            if not chi.is_principal:
                assert chi.conductor == p


def test_primitive_part():
    chi3 = quadratic_mod(3)
    chi6 = induce(chi3, 6)
    assert primitive_part(chi6) == chi3
    # evaluation match on the units of 6
    for n in (1, 5):
        assert abs(chi6(n) - chi3(n)) < 1e-15
    assert primitive_part(principal_character(12)).modulus == 1
    for q in (8, 12, 45):
        for chi in enumerate_characters(q):
            star = primitive_part(chi)
            assert star.is_primitive
            assert primitive_part(star) == star  # idempotent
            assert star.conductor == chi.conductor
            for n in range(q):
                if math.gcd(n, q) == 1:
                    assert abs(chi(n) - star(n)) < 1e-12


def test_multiply():
    chi3 = quadratic_mod(3)
    chi4 = quadratic_mod(4)
    prod = multiply(chi3, chi4)
    assert prod.modulus == 12
    assert abs(prod(5) + 1) < 1e-14
    for q in (5, 8):
        for chi in enumerate_characters(q):
            assert multiply(chi, principal_character(q)) == chi
            assert multiply(chi, chi.conjugate()) == principal_character(q)


def test_parity():
    chi3 = quadratic_mod(3)
    assert chi3.parity == -1
    assert principal_character(1).parity == 1
    for q in (5, 8, 12):
        for chi in enumerate_characters(q):
            assert abs(chi(-1) - chi.parity) < 1e-14


def test_gauss_sum_examples():
    assert gauss_sum(principal_character(1)) == 1
    chi3 = quadratic_mod(3)
    assert abs(gauss_sum(chi3) - cmath.sqrt(-3)) < 1e-13  # e(1/3) - e(2/3) = i sqrt 3
    chi5 = quadratic_mod(5)
    assert abs(gauss_sum(chi5) - math.sqrt(5)) < 1e-13


def test_gauss_modulus_primitive():
    for c in range(1, 51):
        for chi in enumerate_characters(c):
            if chi.is_primitive:
                assert abs(abs(gauss_sum(chi)) - math.sqrt(c)) < 1e-9


def test_generalized_gauss_sum_examples():
    chi3 = quadratic_mod(3)
    assert abs(generalized_gauss_sum(chi3, 3, 1) - gauss_sum(chi3)) < 1e-14
    assert abs(generalized_gauss_sum(chi3, 3, 0)) < 1e-14
    chi5 = quadratic_mod(5)
    # four-term enumeration oracle, computed independently
    units10 = [u for u in range(1, 11) if math.gcd(u, 10) == 1]
    oracle = sum(cmath.exp(2j * math.pi * u / 10) * chi5(u) for u in units10)
    val = generalized_gauss_sum(chi5, 10, 1)
    assert abs(val - oracle) < 1e-13
    assert abs(val - (-chi5(2) * gauss_sum(chi5))) < 1e-12
    with pytest.raises(ValueError):
        generalized_gauss_sum(chi5, 12, 1)  # 5 does not divide 12
    # negative shifts reduce mod c
    assert abs(generalized_gauss_sum(chi3, 6, -1) - generalized_gauss_sum(chi3, 6, 5)) == 0


def test_primitive_evaluation_formula():
    # g(chibar, c, m2) = tau(chibar) chi(m2) for primitive chi mod c
    for c in range(2, 41):
        for chi in enumerate_characters(c):
            if not chi.is_primitive:
                continue
            chibar = chi.conjugate()
            tau = gauss_sum(chibar)
            tab = gauss_sum_table(chibar, c)
            for m2 in range(c):
                expected = tau * chi(m2)
                assert abs(tab[m2] - expected) < 1e-9, (c, chi, m2)


def test_gauss_sum_table_matches_pointwise():
    chi5 = quadratic_mod(5)
    for c in (5, 10, 15, 20):
        tab = gauss_sum_table(chi5, c)
        for m in range(c):
            assert abs(tab[m] - generalized_gauss_sum(chi5, c, m)) < 1e-12


def test_exact_angles():
    chi8 = [c for c in enumerate_characters(8) if c.is_primitive][0]
    for n in range(1, 8, 2):
        a = chi8.angle(n)
        assert a is not None and a.denominator in (1, 2)
    assert chi8.angle(2) is None
    assert principal_character(1).angle(0) == Fraction(0)


def test_modulus_one_character():
    one = principal_character(1)
    for n in (-5, 0, 1, 7):
        assert one(n) == 1
