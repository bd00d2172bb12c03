"""Scalar arithmetic over Z_{p^mu} and the Eisenstein-ring parameter objects.

Residues are plain Python ints kept in ``range(p**mu)``.  The uniformizer
gamma of every chain ring handled here is realised as the residue ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_base(q: int) -> tuple[int, int]:
    """Return ``(p, a)`` with ``q == p**a``; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, rest = 0, q
    while rest % p == 0:
        rest //= p
        a += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a


@dataclass(frozen=True)
class Modulus:
    """The ring Z_{p^mu}."""

    p: int
    mu: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.mu < 1:
            raise ValueError(f"mu={self.mu} must be at least 1")

    @property
    def value(self) -> int:
        return self.p**self.mu

    def reduce(self, x: int) -> int:
        return x % self.value


def valuation(x: int, m: Modulus) -> int:
    """Largest v <= mu with p^v | x.  ``valuation(0) == mu``."""
    x %= m.value
    if x == 0:
        return m.mu
    v = 0
    while x % m.p == 0:
        x //= m.p
        v += 1
    return v


def units(m: Modulus) -> list[int]:
    return [x for x in range(1, m.value) if x % m.p]


def inverse(x: int, m: Modulus) -> int:
    return pow(x, -1, m.value)


def unit_part(x: int, m: Modulus) -> tuple[int, int]:
    """Split a nonzero residue as ``p**v * u`` with u a unit; return ``(v, u)``."""
    v = valuation(x, m)
    if v == m.mu:
        raise ValueError("zero has no unit part")
    return v, (x // m.p**v) % m.value


def neg_one_power_is_square(m_exp: int, q: int) -> bool:
    """True iff (-1)^m_exp is a square in the field with q elements."""
    if q % 2 == 0:
        raise ValueError("q must be odd")
    prime_power_base(q)
    return m_exp % 2 == 0 or q % 4 == 1


@dataclass(frozen=True)
class EisensteinParams:
    """Parameters of R_e = GR(p^e, r)[y] / <g(y), p^(e-1) y^t> with deg g = k.

    ``g_coeffs`` is kept for provenance only; nothing here multiplies in R_e.
    """

    p: int
    e: int
    r: int
    k: int
    t: int
    g_coeffs: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1 or self.r < 1 or self.k < 1:
            raise ValueError("e, r and k must be positive")
        if not 1 <= self.t <= self.k:
            raise ValueError("t must satisfy 1 <= t <= k")
        if self.e == 1 and self.t != self.k:
            raise ValueError("t = k is forced when e = 1")
        if self.g_coeffs is not None:
            g = tuple(c % self.p**self.e for c in self.g_coeffs)
            if len(g) != self.k:
                raise ValueError("g_coeffs must hold k coefficients")
            if g[0] % self.p == 0:
                raise ValueError("g_0 must be a unit")
            object.__setattr__(self, "g_coeffs", g)

    @property
    def n_hi(self) -> int:
        """Coordinates per element that live mod p^e."""
        return self.r * self.t

    @property
    def n_lo(self) -> int:
        """Coordinates per element that live mod p^(e-1)."""
        return self.r * (self.k - self.t)

    @property
    def hi_mod(self) -> int:
        return self.p**self.e

    @property
    def lo_mod(self) -> int:
        return self.p ** (self.e - 1)

    @property
    def ring_size(self) -> int:
        return self.hi_mod**self.n_hi * self.lo_mod**self.n_lo


@dataclass(frozen=True)
class AdditiveElement:
    """An element sum_{i,s} a_{i,s} xi_s y^i of R_e, stored by its coefficients.

    ``hi`` lists a_{i,s} for i < t (index i*r + s), ``lo`` lists them for i >= t.
    """

    params: EisensteinParams
    hi: tuple[int, ...]
    lo: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        pr = self.params
        if len(self.hi) != pr.n_hi or len(self.lo) != pr.n_lo:
            raise ValueError("component counts do not match params")
        object.__setattr__(self, "hi", tuple(a % pr.hi_mod for a in self.hi))
        object.__setattr__(self, "lo", tuple(a % pr.lo_mod for a in self.lo))

    def __add__(self, other: AdditiveElement) -> AdditiveElement:
        if other.params != self.params:
            raise ValueError("params mismatch")
        return AdditiveElement(
            self.params,
            tuple(a + b for a, b in zip(self.hi, other.hi)),
            tuple(a + b for a, b in zip(self.lo, other.lo)),
        )

    def scale(self, u: int) -> AdditiveElement:
        """Multiply by an integer (the Z_{p^e}-module action)."""
        return AdditiveElement(
            self.params, tuple(a * u for a in self.hi), tuple(a * u for a in self.lo)
        )

    def is_zero(self) -> bool:
        return not any(self.hi) and not any(self.lo)

    @classmethod
    def zero(cls, params: EisensteinParams) -> AdditiveElement:
        return cls(params, (0,) * params.n_hi, (0,) * params.n_lo)

    def __str__(self) -> str:
        pr = self.params
        coeffs = list(self.hi) + list(self.lo)
        terms = []
        for i in range(pr.k):
            block = coeffs[i * pr.r : (i + 1) * pr.r]
            label = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            c = block[0] if pr.r == 1 else "(" + ",".join(map(str, block)) + ")"
            terms.append(f"{c}{label}" if label else f"{c}")
        return "+".join(terms)


def psi_pack(a: AdditiveElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return a.hi, a.lo


def psi_unpack(hi: Sequence[int], lo: Sequence[int], params: EisensteinParams) -> AdditiveElement:
    return AdditiveElement(params, tuple(hi), tuple(lo))


def all_elements(params: EisensteinParams) -> Iterator[AdditiveElement]:
    """Every element of R_e, in lexicographic coefficient order."""
    ranges = [range(params.hi_mod)] * params.n_hi + [range(params.lo_mod)] * params.n_lo
    for coeffs in product(*ranges):
        yield AdditiveElement(params, coeffs[: params.n_hi], coeffs[params.n_hi :])
