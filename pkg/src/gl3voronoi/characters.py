"""Dirichlet characters in generator-exponent form.

A character mod q is stored as one integer exponent per generator of
(Z/qZ)^x: if g has order r and the stored exponent is e, the character
sends g^k to e(e*k/r), with e(x) = exp(2*pi*i*x).  Moduli up to ~10**4
stay cheap because only the exponent vector is kept; discrete-log and
value tables are materialized lazily per modulus and cached.

Every evaluation goes through an exact rational angle: the angle of
chi(n) is assembled as a reduced fraction of a full turn and a single
complex exponential is taken, so the floating error is O(1) per term.
Modulus 1 is supported (the trivial character is 1 everywhere).

Characters are immutable and hashable; the lazy caches are idempotent,
so racing initializations are harmless.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .arith import divisors, euler_phi, unit_group_generators

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "principal_character",
    "conductor",
    "primitive_part",
    "multiply",
    "induce",
    "gauss_sum",
    "generalized_gauss_sum",
    "gauss_sum_table",
]


@lru_cache(maxsize=None)
def _root_of_unity(num: int, den: int) -> complex:
    return cmath.exp(2j * math.pi * num / den)


def root_of_unity(angle: Fraction) -> complex:
    """e(angle) from an exact fraction of a full turn."""
    a = angle % 1
    return _root_of_unity(a.numerator, a.denominator)


@lru_cache(maxsize=None)
def _structure(q: int):
    """(generators, dlog) for modulus q.

    dlog maps each unit residue (reduced mod q, so 0 for q = 1) to its
    exponent vector against the canonical generators.
    """
    gens = unit_group_generators(q)
    orders = [r for _, r in gens]
    pow_tables = [[pow(g, k, q) for k in range(r)] for g, r in gens]
    dlog: dict[int, tuple[int, ...]] = {}
    for combo in itertools.product(*[range(r) for r in orders]):
        n = 1 % q
        for table, k in zip(pow_tables, combo):
            n = n * table[k] % q
        dlog[n] = combo
    assert len(dlog) == euler_phi(q)
    return gens, dlog


@lru_cache(maxsize=None)
def _exp_table(c: int) -> tuple[complex, ...]:
    """e(j/c) for j = 0..c-1."""
    return tuple(_root_of_unity(j, c) for j in range(c))


class DirichletCharacter:
    """A Dirichlet character mod q, identified by its exponent vector."""

    __slots__ = ("modulus", "exponents", "_conductor", "_values", "_parity")

    def __init__(self, modulus: int, exponents: tuple[int, ...] = ()):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        gens, _ = _structure(modulus)
        if len(exponents) != len(gens):
            raise ValueError(
                f"expected {len(gens)} exponents for modulus {modulus}, "
                f"got {len(exponents)}"
            )
        self.modulus = modulus
        self.exponents = tuple(e % r for e, (_, r) in zip(exponents, gens))
        self._conductor: int | None = None
        self._values: tuple[complex, ...] | None = None
        self._parity: int | None = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(modulus={self.modulus}, exponents={self.exponents})"

    # -- evaluation --------------------------------------------------------

    def angle(self, n: int) -> Fraction | None:
        """Exact angle of chi(n) as a fraction of a full turn, None if chi(n)=0."""
        gens, dlog = _structure(self.modulus)
        combo = dlog.get(n % self.modulus)
        if combo is None:
            return None
        a = Fraction(0)
        for e, k, (_, r) in zip(self.exponents, combo, gens):
            a += Fraction(e * k, r)
        return a % 1

    def __call__(self, n: int) -> complex:
        a = self.angle(n)
        return 0j if a is None else root_of_unity(a)

    def values(self) -> tuple[complex, ...]:
        """Value table chi(0), ..., chi(q-1) (lazy, cached)."""
        if self._values is None:
            q = self.modulus
            vals = [0j] * q
            _, dlog = _structure(q)
            for n in dlog:
                vals[n] = root_of_unity(self.angle(n))
            self._values = tuple(vals)
        return self._values

    # -- structure ---------------------------------------------------------

    @property
    def parity(self) -> int:
        """chi(-1), which is +1 or -1."""
        if self._parity is None:
            a = self.angle(-1)
            assert a in (Fraction(0), Fraction(1, 2))
            self._parity = 1 if a == 0 else -1
        return self._parity

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def conductor(self) -> int:
        """Smallest d | q with chi(a) = 1 for all units a = 1 (mod d)."""
        if self._conductor is None:
            q = self.modulus
            for d in divisors(q):
                ok = True
                for a in range(1, q + 1, d):
                    if math.gcd(a, q) != 1:
                        continue
                    if self.angle(a) != 0:
                        ok = False
                        break
                if ok:
                    self._conductor = d
                    break
        return self._conductor

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))


def principal_character(q: int) -> DirichletCharacter:
    gens, _ = _structure(q)
    return DirichletCharacter(q, (0,) * len(gens))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All euler_phi(q) characters mod q, principal first."""
    gens, _ = _structure(q)
    return [
        DirichletCharacter(q, combo)
        for combo in itertools.product(*[range(r) for _, r in gens])
    ]


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    d = chi.conductor
    q = chi.modulus
    gens_d, _ = _structure(d)
    exps = []
    for h, r in gens_d:
        hq = h
        while math.gcd(hq, q) != 1:
            hq += d  # some unit of q in the class h mod d exists below q
        a = chi.angle(hq)
        e = a * r
        assert e.denominator == 1, "character does not factor through its conductor"
        exps.append(int(e) % r)
    return DirichletCharacter(d, tuple(exps))


def multiply(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """Pointwise product character mod lcm of the two moduli."""
    q = math.lcm(chi1.modulus, chi2.modulus)
    gens, _ = _structure(q)
    exps = []
    for g, r in gens:
        a = chi1.angle(g) + chi2.angle(g)
        e = a * r
        assert e.denominator == 1
        exps.append(int(e) % r)
    return DirichletCharacter(q, tuple(exps))


def induce(chi_star: DirichletCharacter, q: int) -> DirichletCharacter:
    """Lift chi_star to modulus q (requires conductor | q)."""
    if q % chi_star.modulus:
        raise ValueError(f"{chi_star.modulus} does not divide {q}")
    gens, _ = _structure(q)
    exps = []
    for g, r in gens:
        a = chi_star.angle(g)
        e = a * r
        assert e.denominator == 1
        exps.append(int(e) % r)
    return DirichletCharacter(q, tuple(exps))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum over u mod q of chi(u) e(u/q), by direct summation."""
    q = chi.modulus
    total = 0j
    for u in range(1, q + 1):
        a = chi.angle(u)
        if a is None:
            continue
        total += root_of_unity(a + Fraction(u, q))
    return total


def generalized_gauss_sum(chi_star: DirichletCharacter, c: int, m: int) -> complex:
    """g(chi*, c, m) = sum over units u mod c of e(u m / c) chi*(u).

    chi* must be primitive and its modulus must divide c; m is reduced
    mod c (negative shifts allowed).
    """
    if not chi_star.is_primitive:
        raise ValueError("generalized Gauss sum requires a primitive character")
    if c % chi_star.modulus:
        raise ValueError(
            f"conductor {chi_star.modulus} does not divide modulus {c}"
        )
    return _gauss_sum_any_modulus(chi_star, c, m)


def _gauss_sum_any_modulus(chi_star: DirichletCharacter, c: int, m: int) -> complex:
    """sum over units u mod c of e(u m / c) chi*(u), for any positive c.

    chi* is evaluated as the function on Z attached to its (primitive)
    exponent data, so units of c sharing a factor with the conductor
    contribute 0.  This is the exact unit-sum behind the collapse
    identities, where the modulus need not be a conductor multiple.
    """
    if c < 1:
        raise ValueError(f"modulus must be positive, got {c}")
    m %= c
    total = 0j
    for u in range(1, c + 1):
        if math.gcd(u, c) != 1:
            continue
        a = chi_star.angle(u)
        if a is None:
            continue
        total += root_of_unity(a + Fraction(u * m, c))
    return total


@lru_cache(maxsize=None)
def gauss_sum_table(chi_star: DirichletCharacter, c: int) -> tuple[complex, ...]:
    """g(chi*, c, m) for m = 0..c-1, as one cached table per (chi*, c).

    Used by the hot loops; entry m agrees with _gauss_sum_any_modulus.
    """
    roots = _exp_table(c)
    tab = [0j] * c
    for u in range(1, c + 1):
        if math.gcd(u, c) != 1:
            continue
        a = chi_star.angle(u)
        if a is None:
            continue
        w = root_of_unity(a)
        uu = u % c
        for m in range(c):
            tab[m] += w * roots[uu * m % c]
    return tuple(tab)
