"""Kloosterman sums, Ramanujan sums, and character-average collapses.

S(a, b; c) = sum over units x mod c of e((a x + b x~)/c), with x~ the
inverse of x mod c.  S(a, b; 1) = 1 (empty modulus).  Sums are computed
by direct enumeration over units with a precomputed inverse table;
twisted multiplicativity is provided only as a cross-check oracle.

The two residual functions verify, by full enumeration on both sides:

- the collapse of a character-averaged Kloosterman sum into a product
  of Gauss sums,
      sum_{(a,c)=1} chibar(a) S(a m, m2; c m / m1)
          = g(chibar*, c, m1) * g(chibar*, c m / m1, m2),
  where chibar* is the primitive character inducing chibar and a
  negative modulus c m / m1 transfers its sign onto the shift m2.  For
  primitive chi the right side vanishes whenever m1 does not divide m,
  which is the familiar two-branch form of the identity.

- the additive collapse
      sum_{(a,c)=1} (psi chi)bar(a) e(-n a~ / c)
          = (-1)^kappa tau(psi chi) (psi chi)bar(n)
  for psi chi primitive mod c, kappa = 0 or 1 according to the parity
  of psi chi.

All identity checks return residuals; thresholding happens in the
harness so tolerances stay centrally configured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, mod_inverse
from .characters import (
    DirichletCharacter,
    _exp_table,
    _gauss_sum_any_modulus,
    enumerate_characters,
    gauss_sum,
    generalized_gauss_sum,
    multiply,
    primitive_part,
)

__all__ = [
    "KloostermanQuery",
    "kloosterman",
    "kloosterman_matrix",
    "ramanujan_sum",
    "twisted_multiplicativity_residual",
    "char_kloosterman_reduction_residual",
    "char_kloosterman_reduction_sweep",
    "additive_collapse_residual",
    "additive_collapse_sweep",
    "reality_symmetry_sweep",
    "weil_bound_sweep",
]


@lru_cache(maxsize=None)
def _units_and_inverses(c: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    units = tuple(a for a in range(1, c + 1) if math.gcd(a, c) == 1)
    invs = tuple(mod_inverse(a, c) for a in units)
    return units, invs


@dataclass(frozen=True)
class KloostermanQuery:
    """Arguments of a Kloosterman sum; a, b are reduced mod c on evaluation."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"modulus must be positive, got {self.c}")

    def evaluate(self) -> complex:
        return kloosterman(self.a, self.b, self.c)


def kloosterman(a: int, b: int, c: int) -> complex:
    """S(a, b; c) by direct enumeration over units mod c."""
    if c < 1:
        raise ValueError(f"modulus must be positive, got {c}")
    if c == 1:
        return 1 + 0j
    units, invs = _units_and_inverses(c)
    roots = _exp_table(c)
    return sum(roots[(a * x + b * xbar) % c] for x, xbar in zip(units, invs))


def kloosterman_matrix(c: int) -> np.ndarray:
    """All S(a, b; c) for a, b mod c at once, as a c x c complex matrix."""
    if c == 1:
        return np.ones((1, 1), dtype=complex)
    units, invs = _units_and_inverses(c)
    j = np.arange(c)
    v = np.exp(2j * np.pi * (np.outer(j, units) % c) / c)
    w = np.exp(2j * np.pi * (np.outer(j, invs) % c) / c)
    return v @ w.T


def ramanujan_sum(c: int, m: int) -> complex:
    """sum over units u mod c of e(u m / c)."""
    if c < 1:
        raise ValueError(f"modulus must be positive, got {c}")
    units, _ = _units_and_inverses(c)
    roots = _exp_table(c)
    return sum(roots[u * m % c] for u in units)


def twisted_multiplicativity_residual(a: int, b: int, c1: int, c2: int) -> float:
    """|S(a,b;c1 c2) - S(a c2~, b c2~; c1) S(a c1~, b c1~; c2)| for (c1,c2)=1.

    Cross-check oracle only; the enumerating path is primary.
    """
    if math.gcd(c1, c2) != 1:
        raise ValueError("moduli must be coprime")
    c2_inv = mod_inverse(c2, c1)
    c1_inv = mod_inverse(c1, c2)
    lhs = kloosterman(a, b, c1 * c2)
    rhs = kloosterman(a * c2_inv, b * c2_inv, c1) * kloosterman(a * c1_inv, b * c1_inv, c2)
    return abs(lhs - rhs)


# -- character-averaged collapse --------------------------------------------


def char_kloosterman_reduction_residual(
    chi: DirichletCharacter, c: int, m: int, m1: int, m2: int
) -> float:
    """Residual of the Gauss-product collapse for one parameter tuple.

    Left side: sum over units a mod c of chibar(a) S(a m, m2; |c m| / m1).
    Right side: g(chibar*, c, m1) * g(chibar*, |c m|/m1, sign(m) m2).
    Requires m1 | c m.  For primitive chi the product vanishes when
    m1 does not divide m (the zero branch), which callers may assert.
    """
    if chi.modulus != c:
        raise ValueError("character modulus must equal c")
    if m == 0:
        raise ValueError("m must be nonzero")
    if (c * m) % m1:
        raise ValueError(f"m1={m1} does not divide c*m={c * m}")
    big_c = abs(c * m) // m1
    chibar = chi.conjugate()
    chibar_vals = chibar.values()
    lhs = 0j
    for a in range(1, c + 1):
        if math.gcd(a, c) != 1:
            continue
        lhs += chibar_vals[a % c] * kloosterman(a * m, m2, big_c)
    ps = primitive_part(chibar)
    rhs = generalized_gauss_sum(ps, c, m1) * _gauss_sum_any_modulus(
        ps, big_c, (1 if m > 0 else -1) * m2
    )
    return abs(lhs - rhs)


@lru_cache(maxsize=None)
def _np_gauss_table(chi_star: DirichletCharacter, c: int) -> np.ndarray:
    """Vectorized table of sum_{(u,c)=1} chi*(u) e(u m / c) over m mod c."""
    units = [u for u in range(1, c + 1) if math.gcd(u, c) == 1]
    vals = chi_star.values()
    w = np.array([vals[u % chi_star.modulus] for u in units])
    roots = np.exp(2j * np.pi * np.arange(c) / c)
    idx = np.outer(np.array(units) % c, np.arange(c)) % c
    tab = (w[:, None] * roots[idx]).sum(axis=0)
    tab.setflags(write=False)
    return tab


def char_kloosterman_reduction_sweep(
    c_max: int = 40, m_set: tuple[int, ...] = (1, -1, 2, -2, 6, -6), m2_max: int = 12
) -> tuple[float, int]:
    """Max collapse residual over c <= c_max, all chi mod c, m in m_set,
    all m1 | c m, |m2| <= m2_max.  Returns (max residual, case count).

    Vectorized over characters and m2; spot tuples are cross-checked
    against the scalar path in the test suite.
    """
    m2s = np.arange(-m2_max, m2_max + 1)
    worst = 0.0
    cases = 0
    for c in range(1, c_max + 1):
        units_c = np.array([a for a in range(1, c + 1) if math.gcd(a, c) == 1])
        chars = enumerate_characters(c)
        xbar = np.array(
            [[ch.values()[a % c] for a in units_c] for ch in chars]
        ).conjugate()
        prim = [primitive_part(ch.conjugate()) for ch in chars]
        for m in m_set:
            sgn = 1 if m > 0 else -1
            for m1 in divisors(c * m):
                big_c = abs(c * m) // m1
                units_big, invs_big = _units_and_inverses(big_c)
                du = np.array(units_big)
                dv = np.array(invs_big)
                x = (units_c * m) % big_c
                phase1 = np.exp(2j * np.pi * np.outer(x, du) / big_c)
                phase2 = np.exp(2j * np.pi * np.outer(m2s, dv) / big_c)
                lhs = xbar @ (phase1 @ phase2.T)  # (n_chi, n_m2)
                g1 = np.array([_np_gauss_table(ps, c)[m1 % c] for ps in prim])
                idx2 = (sgn * m2s) % big_c
                g2 = np.array([_np_gauss_table(ps, big_c)[idx2] for ps in prim])
                resid = float(np.abs(lhs - g1[:, None] * g2).max())
                worst = max(worst, resid)
                cases += len(chars) * len(m2s)
    return worst, cases


# -- additive collapse -------------------------------------------------------


def additive_collapse_residual(
    psi: DirichletCharacter, chi: DirichletCharacter, n: int
) -> float:
    """Residual of the additive collapse at shift n.

    psi has modulus N, chi modulus c with N | c, and psi*chi must be
    primitive mod c (raises otherwise).
    """
    c = chi.modulus
    if c % psi.modulus:
        raise ValueError("level must divide the twist modulus")
    theta = multiply(psi, chi)
    if theta.modulus != c or not theta.is_primitive:
        raise ValueError("psi*chi must be primitive modulo c")
    return _collapse_residual_at(theta, n)


def _collapse_residual_at(theta: DirichletCharacter, n: int) -> float:
    c = theta.modulus
    roots = _exp_table(c)
    tbar = theta.conjugate().values()
    units, invs = _units_and_inverses(c)
    lhs = sum(tbar[a % c] * roots[(-n * abar) % c] for a, abar in zip(units, invs))
    kappa = 0 if theta.parity == 1 else 1
    rhs = (-1) ** kappa * gauss_sum(theta) * tbar[n % c]
    return abs(lhs - rhs)


def additive_collapse_sweep(c_max: int = 36) -> tuple[float, int]:
    """Max additive-collapse residual over c <= c_max, every level N | c,
    every psi mod N and chi mod c with psi*chi primitive, and all n mod c.

    The residual depends on (psi, chi) only through the product
    character, so distinct products are evaluated once.
    """
    worst = 0.0
    cases = 0
    for c in range(1, c_max + 1):
        seen: dict[tuple[int, ...], float | None] = {}
        for level in divisors(c):
            for psi in enumerate_characters(level):
                for chi in enumerate_characters(c):
                    theta = multiply(psi, chi)
                    key = theta.exponents
                    if key not in seen:
                        if theta.is_primitive:
                            seen[key] = max(
                                _collapse_residual_at(theta, n) for n in range(c)
                            )
                        else:
                            seen[key] = None
                    r = seen[key]
                    if r is not None:
                        worst = max(worst, r)
                        cases += c
    return worst, cases


# -- bulk sanity sweeps ------------------------------------------------------


def reality_symmetry_sweep(c_max: int = 200) -> tuple[float, float]:
    """(max |Im S|, max |S(a,b;c) - S(b,a;c)|) over all a, b mod c, c <= c_max."""
    max_im = 0.0
    max_asym = 0.0
    for c in range(1, c_max + 1):
        s = kloosterman_matrix(c)
        max_im = max(max_im, float(np.abs(s.imag).max()))
        max_asym = max(max_asym, float(np.abs(s - s.T).max()))
    return max_im, max_asym


def weil_bound_sweep(p_max: int = 200) -> float:
    """Max of |S(a,b;p)| / (2 sqrt p) over primes p <= p_max, (ab, p) = 1.

    Classical sanity oracle, external to the verified identities.
    """
    from .arith import primes_up_to

    worst = 0.0
    for p in primes_up_to(p_max):
        s = kloosterman_matrix(p)[1:, 1:]  # unit rows/columns only
        worst = max(worst, float(np.abs(s).max()) / (2 * math.sqrt(p)))
    return worst
