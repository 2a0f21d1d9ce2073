"""Relation-satisfying GL(3) coefficient families with nebentypus.

A model produces coefficients A(m1, m2) for nonzero integers m1, m2 with
(m1, N) = 1, normalized by A(1, 1) = 1, satisfying:

- multiplicativity: A(m1 m1', m2 m2') = A(m1, m2) A(m1', m2') for
  coprime index pairs;
- the bilinear divisor-sum relations
      A(n,1) A(n2,n1) = sum_{abc=n, a|n1, b|n2} psi(ab) A(c n2/b, b n1/a)
      A(1,m) A(n2,n1) = sum_{abc=m, b|n1, c|n2} psi(c)  A(b n2/c, a n1/b)
  (first: (n, N) = 1; second: (n1 n2, N) = 1, m arbitrary);
- the adjoint relation A(n,1) = psi(n) conj(A(1,n)) for unitary draws;
- the sign rule A(+-m1, (-1)^k m2) = psi(-1)^k A(m1, m2).

Construction: at each prime p not dividing N draw alpha, beta on the
unit circle and set gamma = psi(p)/(alpha beta), so alpha beta gamma =
psi(p).  The local values are Schur polynomials,

    A(p^k1, p^k2) = s_{(k1+k2, k1, 0)}(alpha, beta, gamma),

evaluated through the Jacobi-Trudi determinant h_{k1+k2} h_{k1} -
h_{k1+k2+1} h_{k1-1} with the complete homogeneous h_j generated by the
three-term recursion.  The partition carries k1 (not k2) in its second
row: that is the orientation forced by the divisor-sum relations above
once the psi(ab) / psi(c) weights are in place, and it makes
A(1, p^k) = h_k, hence the local generating function

    sum_k A(1, p^k) T^k = (1 - A(1,p) T + A(p,1) T^2 - psi(p) T^3)^(-1).

At primes p | N the second-index values A(1, p^k) are free parameters
c_{p,k} drawn from the closed unit disc (a zero-ramified preset exists).
Coefficients with (m1, N) > 1 are a domain error, not zero.

All draws are keyed by (seed, role, p, k) through independently seeded
generators, so models are deterministic and order-independent.  A model
is immutable after construction; the per-prime caches are idempotent,
so concurrent reads are safe.

The relation verifiers treat the model as untrusted input and enumerate
the divisor sums in full, so any alternative coefficient source can be
plugged in.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .arith import divisors, factorize
from .characters import DirichletCharacter, principal_character

__all__ = [
    "SatakeTriple",
    "HeckeCoefficientModel",
    "new_model",
    "CoefficientDomainError",
    "hecke_relation_residual_1",
    "hecke_relation_residual_2",
    "euler_product_residual",
]


class CoefficientDomainError(ValueError):
    """First index shares a factor with the level: coefficient undefined."""


@dataclass(frozen=True)
class SatakeTriple:
    """Local parameter triple at an unramified prime; product is psi(p)."""

    alpha: complex
    beta: complex
    gamma: complex

    @property
    def product(self) -> complex:
        return self.alpha * self.beta * self.gamma

    def inverse(self) -> "SatakeTriple":
        return SatakeTriple(1 / self.alpha, 1 / self.beta, 1 / self.gamma)


def _unit(rng: random.Random) -> complex:
    return cmath.exp(2j * math.pi * rng.random())


class HeckeCoefficientModel:
    def __init__(
        self,
        level: int,
        psi: DirichletCharacter,
        prime_bound: int = 13,
        seed: int = 0,
        unitary: bool = True,
        zero_ramified: bool = False,
        _seed_key: str | None = None,
        _parent: "HeckeCoefficientModel | None" = None,
    ):
        if psi.modulus != level:
            raise ValueError("nebentypus modulus must equal the level")
        self.level = level
        self.psi = psi
        self.prime_bound = prime_bound
        self.seed = seed
        self.unitary = unitary
        self.zero_ramified = zero_ramified
        self._seed_key = _seed_key if _seed_key is not None else str(seed)
        self._parent = _parent
        self._satake: dict[int, SatakeTriple] = {}
        self._ramified: dict[tuple[int, int], complex] = {}
        self._h: dict[int, list[complex]] = {}
        self._coeff: dict[tuple[int, int], complex] = {}
        self._ram_scale: complex = 1 + 0j
        self._corruption: tuple[tuple[int, int], complex] | None = None

    # -- local data ----------------------------------------------------------

    def satake(self, p: int) -> SatakeTriple:
        """Local triple at p (requires p coprime to the level)."""
        if self.level % p == 0:
            raise CoefficientDomainError(f"prime {p} divides the level {self.level}")
        cached = self._satake.get(p)
        if cached is not None:
            return cached
        if self._parent is not None:
            triple = self._parent.satake(p).inverse()
        else:
            rng = random.Random(f"{self._seed_key}|satake|{p}")
            if self.unitary:
                alpha, beta = _unit(rng), _unit(rng)
            else:
                alpha = (0.8 + 0.45 * rng.random()) * _unit(rng)
                beta = (0.8 + 0.45 * rng.random()) * _unit(rng)
            gamma = self.psi(p) / (alpha * beta)
            triple = SatakeTriple(alpha, beta, gamma)
        assert abs(triple.product - self.psi(p)) < 1e-12
        self._satake[p] = triple
        return triple

    def ramified(self, p: int, k: int) -> complex:
        """Free second-index value A(1, p^k) at p | N; k = 0 gives 1."""
        if k == 0:
            return 1 + 0j
        if self.zero_ramified:
            return 0j
        key = (p, k)
        val = self._ramified.get(key)
        if val is None:
            rng = random.Random(f"{self._seed_key}|ramified|{p}|{k}")
            val = math.sqrt(rng.random()) * _unit(rng)  # uniform on the disc
            self._ramified[key] = val
        return val * self._ram_scale

    def _hvals(self, p: int, upto: int) -> list[complex]:
        """Complete homogeneous h_0..h_upto of the local triple at p."""
        h = self._h.get(p)
        if h is None:
            h = [1 + 0j]
            self._h[p] = h
        t = self.satake(p)
        e1 = t.alpha + t.beta + t.gamma
        e2 = t.alpha * t.beta + t.beta * t.gamma + t.gamma * t.alpha
        e3 = t.product
        while len(h) <= upto:
            k = len(h)
            h.append(
                e1 * h[k - 1]
                - e2 * (h[k - 2] if k >= 2 else 0)
                + e3 * (h[k - 3] if k >= 3 else 0)
            )
        return h

    def _local(self, p: int, k1: int, k2: int) -> complex:
        """A(p^k1, p^k2) = s_{(k1+k2, k1, 0)} via Jacobi-Trudi."""
        key = (p, k1 * 4096 + k2)
        val = self._coeff.get(key)
        if val is None:
            h = self._hvals(p, k1 + k2 + 1)
            val = h[k1 + k2] * h[k1]
            if k1 >= 1:
                val -= h[k1 + k2 + 1] * h[k1 - 1]
            self._coeff[key] = val
        return val

    # -- public surface --------------------------------------------------------

    def coefficient(self, m1: int, m2: int) -> complex:
        """A(m1, m2) for nonzero integers; (|m1|, N) = 1 required."""
        if m1 == 0 or m2 == 0:
            raise ValueError("coefficient indices must be nonzero")
        sign_factor = self.psi.parity if m2 < 0 else 1
        a1, a2 = abs(m1), abs(m2)
        if math.gcd(a1, self.level) != 1:
            raise CoefficientDomainError(
                f"first index {m1} shares a factor with the level {self.level}"
            )
        val = 1 + 0j
        ps = dict(factorize(a1))
        for p, e in factorize(a2):
            k1 = ps.pop(p, 0)
            if self.level % p == 0:
                val *= self.ramified(p, e)
            else:
                val *= self._local(p, k1, e)
        for p, k1 in ps.items():
            val *= self._local(p, k1, 0)
        val *= sign_factor
        if self._corruption is not None and (m1, m2) == self._corruption[0]:
            val += self._corruption[1]
        return val

    def contragredient(self) -> "HeckeCoefficientModel":
        """Dual model: A~(m1,m2) = psibar(m1 m2) A(m2, m1) off the level.

        Local triples are inverted; the ramified sequence is an
        independent fresh draw (the dual is not pinned at p | N).
        """
        return HeckeCoefficientModel(
            self.level,
            self.psi.conjugate(),
            self.prime_bound,
            seed=self.seed,
            unitary=self.unitary,
            zero_ramified=self.zero_ramified,
            _seed_key=self._seed_key + "|contra",
            _parent=self,
        )

    def corrupted(self, index: tuple[int, int], delta: complex) -> "HeckeCoefficientModel":
        """Copy of the model with delta added to the single coefficient A(index).

        Fault-injection helper: a verifier unable to detect this is broken.
        """
        twin = HeckeCoefficientModel(
            self.level,
            self.psi,
            self.prime_bound,
            seed=self.seed,
            unitary=self.unitary,
            zero_ramified=self.zero_ramified,
            _seed_key=self._seed_key,
            _parent=self._parent,
        )
        twin._corruption = (index, delta)
        return twin

    def scale_ramified(self, factor: complex) -> "HeckeCoefficientModel":
        """Copy with every free ramified value c_{p,k}, k >= 1, scaled."""
        twin = HeckeCoefficientModel(
            self.level,
            self.psi,
            self.prime_bound,
            seed=self.seed,
            unitary=self.unitary,
            zero_ramified=self.zero_ramified,
            _seed_key=self._seed_key,
            _parent=self._parent,
        )
        twin._ram_scale = factor
        return twin


def new_model(
    level: int,
    psi: DirichletCharacter | None = None,
    prime_bound: int = 13,
    seed: int = 0,
    unitary: bool = True,
    zero_ramified: bool = False,
) -> HeckeCoefficientModel:
    """Seeded model; psi defaults to the principal character mod level."""
    if psi is None:
        psi = principal_character(level)
    model = HeckeCoefficientModel(
        level, psi, prime_bound, seed, unitary, zero_ramified
    )
    from .arith import primes_up_to

    for p in primes_up_to(prime_bound):
        if level % p:
            model.satake(p)  # eager warm-up; draws are order-independent anyway
    return model


# -- relation verifiers -------------------------------------------------------


def hecke_relation_residual_1(
    model: HeckeCoefficientModel, n: int, n1: int, n2: int
) -> float:
    """|A(n,1) A(n2,n1) - sum_{abc=n, a|n1, b|n2} psi(ab) A(c n2/b, b n1/a)|.

    Requires (n, N) = 1 and (n2, N) = 1 so every first index is defined.
    """
    level = model.level
    if math.gcd(n, level) != 1:
        raise CoefficientDomainError(f"n={n} must be coprime to the level")
    if math.gcd(n2, level) != 1:
        raise CoefficientDomainError(f"n2={n2} must be coprime to the level")
    psi = model.psi
    lhs = model.coefficient(n, 1) * model.coefficient(n2, n1)
    rhs = 0j
    for a in divisors(n):
        if n1 % a:
            continue
        for b in divisors(n // a):
            if n2 % b:
                continue
            c = n // (a * b)
            rhs += psi(a * b) * model.coefficient(c * n2 // b, b * n1 // a)
    return abs(lhs - rhs)


def hecke_relation_residual_2(
    model: HeckeCoefficientModel, m: int, n1: int, n2: int
) -> float:
    """|A(1,m) A(n2,n1) - sum_{abc=m, b|n1, c|n2} psi(c) A(b n2/c, a n1/b)|.

    Requires (n1 n2, N) = 1; m may contain level primes, whose part is
    forced through the free ramified values because psi kills the other
    decompositions.
    """
    level = model.level
    if math.gcd(n1 * n2, level) != 1:
        raise CoefficientDomainError("n1, n2 must be coprime to the level")
    psi = model.psi
    lhs = model.coefficient(1, m) * model.coefficient(n2, n1)
    rhs = 0j
    for a in divisors(m):
        for b in divisors(m // a):
            if n1 % b:
                continue
            c = m // (a * b)
            if n2 % c:
                continue
            rhs += psi(c) * model.coefficient(b * n2 // c, a * n1 // b)
    return abs(lhs - rhs)


def euler_product_residual(
    model: HeckeCoefficientModel,
    chi: DirichletCharacter,
    s: complex,
    n_max: int,
    variant: str = "cubic-psi",
) -> float:
    """Coefficientwise residual of the degree-3 Euler product.

    Compares A(1,n) chi(n) against the expansion of
        prod_{p not dividing N}
            (1 - A(1,p) chi(p) p^-s + B_p p^-2s - psi(p) chi(p)^3 p^-3s)^(-1)
    over n <= n_max with (n, N) = 1, as finite Dirichlet polynomials.
    The comparison is exact in the coefficients; s only fixes the stated
    convergence domain (Re s >= 2 enforced).

    variant selects the quadratic numerator B_p:
      "cubic-psi"     B_p = A(p,1) chi(p)^2            (relation-consistent)
      "quadratic-psi" B_p = A(p,1) chi(p)^2 psi(p)     (rejected alternative)
    The first is the form forced by the divisor-sum relations; the
    alternative is kept so the harness can display its failure.
    """
    if complex(s).real < 2:
        raise ValueError("stated convergence domain requires Re s >= 2")
    if variant not in ("cubic-psi", "quadratic-psi"):
        raise ValueError(f"unknown variant {variant!r}")
    level = model.level
    psi = model.psi
    ucache: dict[int, list[complex]] = {}

    def useq(p: int, upto: int) -> list[complex]:
        u = ucache.get(p)
        if u is None:
            u = [1 + 0j]
            ucache[p] = u
        cp = chi(p)
        a = model.coefficient(1, p) * cp
        b = model.coefficient(p, 1) * cp * cp
        if variant == "quadratic-psi":
            b *= psi(p)
        c = psi(p) * cp**3
        while len(u) <= upto:
            k = len(u)
            u.append(
                a * u[k - 1]
                - b * (u[k - 2] if k >= 2 else 0)
                + c * (u[k - 3] if k >= 3 else 0)
            )
        return u

    worst = 0.0
    for n in range(1, n_max + 1):
        if math.gcd(n, level) != 1:
            continue
        lhs = model.coefficient(1, n) * chi(n)
        rhs = 1 + 0j
        for p, e in factorize(n):
            rhs *= useq(p, e)[e]
        worst = max(worst, abs(lhs - rhs))
    return worst
