import cmath
import math

import pytest

from gl3voronoi.arith import divisors, mobius, mod_inverse
from gl3voronoi.characters import (
    enumerate_characters,
    gauss_sum,
    multiply,
    principal_character,
)
from gl3voronoi.expsums import (
    KloostermanQuery,
    additive_collapse_residual,
    additive_collapse_sweep,
    char_kloosterman_reduction_residual,
    char_kloosterman_reduction_sweep,
    kloosterman,
    kloosterman_matrix,
    ramanujan_sum,
    reality_symmetry_sweep,
    twisted_multiplicativity_residual,
    weil_bound_sweep,
)


def quadratic_mod(p):
    (chi,) = [
        c for c in enumerate_characters(p) if not c.is_principal and c == c.conjugate()
    ]
    return chi


def test_kloosterman_examples():
    assert kloosterman(1, 1, 1) == 1
    assert abs(kloosterman(1, 1, 3) - (-1)) < 1e-14  # e(2/3) + e(4/3)
    assert abs(kloosterman(2, 1, 3) - 2) < 1e-14  # e(1) + e(2)
    assert KloostermanQuery(2, 1, 3).evaluate() == kloosterman(2, 1, 3)
    with pytest.raises(ValueError):
        kloosterman(1, 1, 0)


def test_kloosterman_matrix_matches_scalar():
    for c in (1, 2, 7, 12):
        mat = kloosterman_matrix(c)
        for a in range(c):
            for b in range(c):
                assert abs(mat[a, b] - kloosterman(a, b, c)) < 1e-11


def test_reality_symmetry_weil():
    max_im, max_asym = reality_symmetry_sweep(60)
    assert max_im < 1e-9 and max_asym < 1e-9
    assert weil_bound_sweep(60) <= 1.0


def test_twisted_multiplicativity_oracle():
    for c1, c2 in ((2, 3), (3, 4), (4, 9), (5, 8)):
        for a in (1, 2, 5):
            for b in (1, 3):
                assert twisted_multiplicativity_residual(a, b, c1, c2) < 1e-10


def test_ramanujan_sum():
    assert abs(ramanujan_sum(5, 0) - 4) < 1e-14
    assert abs(ramanujan_sum(5, 1) - (-1)) < 1e-14  # mobius(5)
    assert abs(ramanujan_sum(4, 2) - (-2)) < 1e-14  # e(1/2) + e(3/2)
    # moebius closed form oracle
    for c in range(1, 40):
        for m in range(-6, 13):
            closed = sum(d * mobius(c // d) for d in divisors(c) if m % d == 0)
            assert abs(ramanujan_sum(c, m) - closed) < 1e-10


def test_reduction_worked_example():
    # c=3, m=1, m1=1, m2=1, quadratic character: both sides equal -3
    chi3 = quadratic_mod(3)
    lhs = chi3(1) * kloosterman(1, 1, 3) + chi3(2).conjugate() * kloosterman(2, 1, 3)
    assert abs(lhs - (-3)) < 1e-13
    tau = gauss_sum(chi3)
    assert abs(tau * tau - (-3)) < 1e-13
    assert char_kloosterman_reduction_residual(chi3, 3, 1, 1, 1) < 1e-12


def test_reduction_zero_branch_primitive():
    # for primitive chi with m1 not dividing m the product side vanishes
    chi4 = quadratic_mod(4)
    assert char_kloosterman_reduction_residual(chi4, 4, 1, 2, 1) < 1e-12
    lhs = sum(
        chi4(a).conjugate() * kloosterman(a, 1, 2) for a in (1, 3)
    )
    assert abs(lhs) < 1e-13


def test_reduction_principal_full_m1():
    # m1 = c m forces modulus 1; both sides equal phi(c) for principal chi
    for c in (2, 3, 4, 6):
        chi = principal_character(c)
        assert char_kloosterman_reduction_residual(chi, c, 1, c, 5) < 1e-12


def test_reduction_negative_m():
    chi3 = quadratic_mod(3)
    for m in (-1, -2, -6):
        for m1 in divisors(3 * m):
            for m2 in (-2, 0, 1, 7):
                r = char_kloosterman_reduction_residual(chi3, 3, m, m1, m2)
                assert r < 1e-10, (m, m1, m2, r)


def test_reduction_rejects_bad_m1():
    chi3 = quadratic_mod(3)
    with pytest.raises(ValueError):
        char_kloosterman_reduction_residual(chi3, 3, 1, 2, 1)


def test_reduction_sweep_cross_check():
    worst, cases = char_kloosterman_reduction_sweep(10, (1, -2), 4)
    assert worst < 1e-10 and cases > 0
    # scalar path agrees with the vectorized sweep on spot tuples
    for c in (4, 6, 9):
        for chi in enumerate_characters(c):
            for m in (1, -2):
                for m1 in divisors(c * m):
                    for m2 in (-4, 1, 3):
                        r = char_kloosterman_reduction_residual(chi, c, m, m1, m2)
                        assert r < 1e-10, (c, chi, m, m1, m2)


def test_additive_collapse_worked_example():
    # c=3, N=1: sum is e(-1/3) - e(-2/3) = -i sqrt 3 = (-1)^kappa tau chi(1)
    chi3 = quadratic_mod(3)
    lhs = cmath.exp(-2j * math.pi / 3) - cmath.exp(-4j * math.pi / 3)
    assert abs(lhs - (-1j * math.sqrt(3))) < 1e-13
    assert additive_collapse_residual(principal_character(1), chi3, 1) < 1e-13


def test_additive_collapse_nonunit_shift():
    chi3 = quadratic_mod(3)
    assert additive_collapse_residual(principal_character(1), chi3, 3) < 1e-13
    assert additive_collapse_residual(principal_character(1), chi3, 0) < 1e-13


def test_additive_collapse_level_equals_modulus():
    # N = c = 5: psi primitive, chi principal, psi*chi primitive
    psi = [c for c in enumerate_characters(5) if c.is_primitive][0]
    chi = principal_character(5)
    for n in range(5):
        assert additive_collapse_residual(psi, chi, n) < 1e-12


def test_additive_collapse_requires_primitive_product():
    psi = principal_character(1)
    chi6 = [c for c in enumerate_characters(6) if not c.is_principal][0]
    with pytest.raises(ValueError):
        additive_collapse_residual(psi, chi6, 1)  # conductor 3 < 6


def test_additive_collapse_sweep_small():
    worst, cases = additive_collapse_sweep(12)
    assert worst < 1e-9 and cases > 0


def test_intro_sign_variant_is_relabeling():
    # the twist e(+n abar/c) is the stated check at -n: relabeling a -> -a
    chi3 = quadratic_mod(3)
    theta = multiply(principal_character(1), chi3)
    c = 3
    for n in range(3):
        plus = sum(
            theta(a).conjugate() * cmath.exp(2j * math.pi * n * mod_inverse(a, c) / c)
            for a in (1, 2)
        )
        minus = sum(
            theta(a).conjugate()
            * cmath.exp(-2j * math.pi * (-n) * mod_inverse(a, c) / c)
            for a in (1, 2)
        )
        assert abs(plus - minus) < 1e-14
