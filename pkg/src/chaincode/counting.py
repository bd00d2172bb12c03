"""Closed-form enumeration of self-orthogonal, self-dual and LCD codes.

Every function works in exact integer arithmetic.  Exponents that carry
halves are evaluated as ``Fraction`` and checked for integrality before a
power is taken.  Totals always include the zero code.

Notation: ``k = (k_0, ..., k_{e-1})`` and ``l = (l_0, ..., l_{e-2})`` give the
type of a code; ``m_i(k) = k_0 + ... + k_i`` (zero for negative i) and the
contraction ``k^(i) = (m_i(k), k_{i+1}, ..., k_{s-1-i})`` shortens a tuple of
length s to length s - 2i.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .ringcore import EisensteinParams, neg_one_power_is_square, prime_power_base

VARIANTS = ("printed", "sign-corrected")


class NonIntegralCount(ValueError):
    """A counting expression evaluated to a non-integer."""


def _odd_q(q: int) -> None:
    prime_power_base(q)
    if q % 2 == 0:
        raise ValueError("q must be odd")


def _as_int(x: Fraction | int, what: str = "count") -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise NonIntegralCount(f"{what} evaluates to the non-integer {x}")
    return x.numerator


def _qpow(q: int, exponent: Fraction | int) -> Fraction:
    """q**exponent for an integral (possibly negative) exponent."""
    ex = _as_int(exponent, "exponent")
    return Fraction(q) ** ex


def gauss_binom(n: int, s: int, q: int) -> int:
    """Number of s-dimensional subspaces of F_q^n; 0 when s > n or s < 0."""
    if s < 0 or s > n:
        return 0
    num = den = 1
    for i in range(s):
        num *= q**n - q**i
        den *= q**s - q**i
    return num // den


def sigma(n: int, s: int, q: int) -> int:
    """Number of self-orthogonal s-dimensional codes in F_q^n (q odd)."""
    _odd_q(q)
    if s < 0:
        return 0
    if s == 0:
        return 1
    if s > n // 2:
        return 0
    den = 1
    for j in range(1, s + 1):
        den *= q**j - 1
    if n % 2:
        num = 1
        for i in range(s):
            num *= q ** (n - 1 - 2 * i) - 1
    else:
        nu = 1 if neg_one_power_is_square(n // 2, q) else -1
        num = q ** (n - s) - nu * q ** (n // 2 - s) + nu * q ** (n // 2) - 1
        for i in range(1, s):
            num *= q ** (n - 2 * i) - 1
    return _as_int(Fraction(num, den), "sigma")


def sd_exists_field(n: int, q: int) -> bool:
    _odd_q(q)
    return n % 2 == 0 and neg_one_power_is_square(n // 2, q)


def m_sum(t: Sequence[int], i: int) -> int:
    return sum(t[: i + 1]) if i >= 0 else 0


def contract(t: Sequence[int], i: int) -> tuple[int, ...]:
    """The contraction t^(i) of a tuple of length s, of length s - 2i."""
    s = len(t)
    if i == 0:
        return tuple(t)
    if s - 2 * i < 1:
        raise ValueError("contraction too deep for this tuple")
    return (m_sum(t, i),) + tuple(t[i + 1 : s - i])


def _tuples_with_sum_at_most(n: int, s: int) -> Iterator[tuple[int, ...]]:
    for total in range(n + 1):
        for cut in combinations_with_replacement(range(s), total):
            t = [0] * s
            for c in cut:
                t[c] += 1
            yield tuple(t)


def in_k_set(t: Sequence[int], n: int) -> bool:
    s = len(t)
    for i in range(s // 2, s):
        lhs = 2 * sum(t[: s - i]) + sum(t[s - i : i + 1])
        if lhs > n:
            return False
    return all(x >= 0 for x in t)


def in_l_set(t: Sequence[int], n: int) -> bool:
    s = len(t)
    if any(x < 0 for x in t):
        return False
    if any(t[i] != t[s - i] for i in range(1, s)):
        return False
    delta = 1 if s % 2 == 0 else 0
    half = (s - 1) // 2
    return 2 * sum(t[: half + 1]) + delta * t[s // 2] == n


def k_set(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """Tuples t of length s with 2(t_0+..+t_{s-1-i}) + t_{s-i}+..+t_i <= n."""
    for t in _tuples_with_sum_at_most(n, s):
        if in_k_set(t, n):
            yield t


def l_set(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """Palindromic tuples (t_i = t_{s-i}) with 2(t_0+..+t_{(s-1)//2}) + delta t_{s/2} = n."""
    for t in _tuples_with_sum_at_most(n, s):
        if in_l_set(t, n):
            yield t


def theta2_value(k0: int, k1: int, l0: int, n1: int, n2: int) -> Fraction:
    h = Fraction(1, 2)
    return k0 * (n1 + n2 - 3 * h * k0 - k1 - l0 - h) + l0 * (n1 - 2 * k0 - k1)


def theta2(k0: int, k1: int, l0: int, n1: int, n2: int) -> int:
    return _as_int(theta2_value(k0, k1, l0, n1, n2), "theta2")


def theta3_value(k: Sequence[int], l: Sequence[int], n1: int, n2: int) -> Fraction:
    if len(k) != 3 or len(l) != 2:
        raise ValueError("theta3 needs k of length 3 and l of length 2")
    k0, k1, k2 = k
    l0, l1 = l
    h = Fraction(1, 2)
    return (
        (n1 - 3 * k0 - k1 - k2) * (k0 + 2 * l0 + k1 + l1)
        + k0 * (n1 + 2 * n2 - 1)
        + k1 * (n2 - 2 * l0 - l1)
        + l0 * (n2 - 3 * h * l0 - l1 + k2 - h)
    )


def theta3(k: Sequence[int], l: Sequence[int], n1: int, n2: int) -> int:
    return _as_int(theta3_value(k, l, n1, n2), "theta3")


def theta_mu(mu: int, k: Sequence[int], l: Sequence[int], n1: int, n2: int, variant: str) -> int:
    """Exponent of the lift count from the (mu-2)-ladder to the mu-ladder.

    The two variants differ only in the sign of the k_{mu-1} l_{mu-2} term.
    """
    if mu < 4 or len(k) != mu or len(l) != mu - 1:
        raise ValueError("theta_mu needs mu >= 4, len(k) = mu and len(l) = mu - 1")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    mk, ml = m_sum(k, mu - 2), m_sum(l, mu - 3)
    k0, k1, l0 = k[0], k[1], l[0]
    top = k[mu - 1] * l[mu - 2]
    return (
        k0 * (2 * n1 - 2 * mk - m_sum(k, 1) - 1)
        + l0 * (2 * n2 - 2 * ml - m_sum(l, 1) - k1 - 1)
        + (top if variant == "sign-corrected" else -top)
        + (mk + ml - k0 - l0) * (n1 + n2 - mk - ml)
        + 2 * k0 * (n2 - ml)
        + (k0 + 2 * l0) * (n1 - mk - k0)
        - (mk + ml) * (k[mu - 1] + l[mu - 2])
    )


@lru_cache(maxsize=None)
def selected_theta_variant() -> str:
    """The variant that the census lift oracle confirms (computed once per process)."""
    from .census import select_theta_variant

    return select_theta_variant().selected


def _variant(variant: str | None) -> str:
    return selected_theta_variant() if variant is None else variant


def lift_count_value(
    mu: int, k: Sequence[int], l: Sequence[int], n1: int, n2: int, q: int, variant: str | None = None
) -> Fraction:
    """Number of lifts of a fixed (mu-2)-ladder code to type (k, l), as a Fraction."""
    mk, ml = m_sum(k, mu - 2), m_sum(l, mu - 3)
    binoms = (
        gauss_binom(n1 - mk - k[0], k[mu - 1], q)
        * gauss_binom(n2 - ml - l[0], l[mu - 2], q)
        * gauss_binom(k[0] + k[1], k[0], q)
        * gauss_binom(l[0] + l[1], l[0], q)
    )
    return binoms * Fraction(q) ** theta_mu(mu, k, l, n1, n2, _variant(variant))


def lift_count(mu: int, k: Sequence[int], l: Sequence[int], n1: int, n2: int, q: int, variant: str | None = None) -> int:
    return _as_int(lift_count_value(mu, k, l, n1, n2, q, variant), "lift count")


def delta_e(k: Sequence[int], l: Sequence[int], n1: int, n2: int, e: int, variant: str | None = None) -> int:
    if e < 4:
        raise ValueError("delta_e needs e >= 4")
    v = _variant(variant)
    if e % 2:
        top = (e - 5) // 2
        mus = [(5 + 2 * i, top - i) for i in range(top + 1)]
    else:
        top = (e - 4) // 2
        mus = [(4 + 2 * i, top - i) for i in range(top + 1)]
    return sum(theta_mu(mu, contract(k, c), contract(l, c), n1, n2, v) for mu, c in mus)


def s_e_value(k: Sequence[int], l: Sequence[int], n1: int, n2: int, e: int) -> Fraction:
    if e % 2:
        c = (e - 3) // 2
        return theta3_value(contract(k, c), contract(l, c), n1, n2)
    c = (e - 2) // 2
    k2 = contract(k, c)
    return theta2_value(k2[0], k2[1], m_sum(l, c), n1, n2)


def s_e(k: Sequence[int], l: Sequence[int], n1: int, n2: int, e: int) -> int:
    return _as_int(s_e_value(k, l, n1, n2, e), "s_e")


def f_factor(k: Sequence[int], l: Sequence[int], e: int, q: int) -> int:
    out = 1
    for i in range(1, (e - 1) // 2 + 1):
        out *= gauss_binom(m_sum(k, i), k[i], q)
    for j in range(1, (e - 2) // 2 + 1):
        out *= gauss_binom(m_sum(l, j), l[j], q)
    return out


def b_factor(k: Sequence[int], l: Sequence[int], n1: int, n2: int, e: int, q: int) -> int:
    out = f_factor(k, l, e, q)
    for w in range((e - 1) // 2, e - 1):
        out *= gauss_binom(n1 - m_sum(k, w) - m_sum(k, e - 2 - w), k[w + 1], q)
    for s in range((e - 2) // 2, e - 2):
        out *= gauss_binom(n2 - m_sum(l, s) - m_sum(l, e - 3 - s), l[s + 1], q)
    return out


def _check_type(e: int, k: Sequence[int], l: Sequence[int]) -> None:
    if e < 2 or len(k) != e or len(l) != e - 1:
        raise ValueError("type tuples must have lengths e and e - 1")


def _exponent_value(k, l, n1, n2, e, variant) -> Fraction:
    if e == 2:
        return theta2_value(k[0], k[1], l[0], n1, n2)
    if e == 3:
        return theta3_value(k, l, n1, n2)
    return delta_e(k, l, n1, n2, e, variant) + s_e_value(k, l, n1, n2, e)


def count_so_typed_value(
    q: int, e: int, n1: int, n2: int, k: Sequence[int], l: Sequence[int], variant: str | None = None
) -> Fraction:
    """Self-orthogonal codes of type (k, l), as a Fraction (closed form)."""
    _odd_q(q)
    _check_type(e, k, l)
    if not (in_k_set(k, n1) and in_k_set(l, n2)):
        return Fraction(0)
    lead = sigma(n1, m_sum(k, (e - 1) // 2), q) * sigma(n2, m_sum(l, (e - 2) // 2), q)
    if lead == 0:
        return Fraction(0)
    return lead * b_factor(k, l, n1, n2, e, q) * _qpow_frac(q, _exponent_value(k, l, n1, n2, e, variant))


def _qpow_frac(q: int, exponent: Fraction) -> Fraction:
    # a half-integral exponent cannot be right; surface it as non-integrality
    if Fraction(exponent).denominator != 1:
        raise NonIntegralCount(f"exponent {exponent} is not an integer")
    return Fraction(q) ** int(exponent)


def count_so_typed(
    q: int, e: int, n1: int, n2: int, k: Sequence[int], l: Sequence[int], variant: str | None = None
) -> int:
    return _as_int(count_so_typed_value(q, e, n1, n2, k, l, variant))


def count_so_typed_recursive(
    q: int, e: int, n1: int, n2: int, k: Sequence[int], l: Sequence[int], variant: str | None = None
) -> Fraction:
    """The same count through the two-step lift recurrence, down to e in {2, 3}."""
    _odd_q(q)
    _check_type(e, k, l)
    if e <= 3:
        return count_so_typed_value(q, e, n1, n2, k, l, variant)
    if not (in_k_set(k, n1) and in_k_set(l, n2)):
        return Fraction(0)
    lower = count_so_typed_recursive(q, e - 2, n1, n2, contract(k, 1), contract(l, 1), variant)
    if lower == 0:
        return Fraction(0)
    return lower * lift_count_value(e, k, l, n1, n2, q, variant)


def count_so_total(q: int, e: int, n1: int, n2: int, variant: str | None = None) -> int:
    return sum(
        count_so_typed(q, e, n1, n2, k, l, variant) for k in k_set(n1, e) for l in k_set(n2, e - 1)
    )


def count_so_prescribed_torsion(mu: int, q: int, n1: int, n2: int, k: Sequence[int], l: Sequence[int]) -> int:
    """Self-orthogonal codes sharing one prescribed tower of torsion codes."""
    _odd_q(q)
    if mu == 2:
        return _as_int(_qpow(q, theta2_value(k[0], k[1], l[0], n1, n2)))
    if mu == 3:
        return _as_int(_qpow(q, theta3_value(k, l, n1, n2)))
    raise ValueError("prescribed-torsion counts exist for mu in {2, 3}")


def sd_exists_mixed(q: int, e: int, n1: int, n2: int) -> bool:
    _odd_q(q)
    if e % 2:
        return n1 % 2 == 0 and neg_one_power_is_square(n1 // 2, q)
    return n2 % 2 == 0 and neg_one_power_is_square(n2 // 2, q)


def _sd_general(q: int, e: int, n1: int, n2: int, variant: str | None) -> int:
    total = Fraction(0)
    for k in l_set(n1, e):
        for l in l_set(n2, e - 1):
            lead = sigma(n1, m_sum(k, (e - 1) // 2), q) * sigma(n2, m_sum(l, (e - 2) // 2), q)
            if lead:
                total += lead * f_factor(k, l, e, q) * _qpow_frac(q, _exponent_value(k, l, n1, n2, e, variant))
    return _as_int(total)


def count_sd_total(q: int, e: int, n1: int, n2: int, variant: str | None = None) -> int:
    _odd_q(q)
    if not sd_exists_mixed(q, e, n1, n2):
        return 0
    if e == 2:
        return sum(
            sigma(n1, k0, q) * sigma(n2, n2 // 2, q) * _as_int(_qpow(q, Fraction(k0 * (n2 + k0 - 1), 2)))
            for k0 in range(n1 // 2 + 1)
        )
    if e == 3:
        h = n1 // 2
        return sum(
            sigma(n1, h, q)
            * sigma(n2, l0, q)
            * gauss_binom(h, k0, q)
            * _as_int(_qpow(q, k0 * (h + n2 - 1) + Fraction(l0 * (n1 - 2 * k0 + l0 - 1), 2)))
            for k0 in range(h + 1)
            for l0 in range(n2 // 2 + 1)
        )
    return _sd_general(q, e, n1, n2, variant)


def count_sd_total_general(q: int, e: int, n1: int, n2: int, variant: str | None = None) -> int:
    """Self-dual total through the general index-set sum, valid for every e >= 2."""
    _odd_q(q)
    if not sd_exists_mixed(q, e, n1, n2):
        return 0
    return _sd_general(q, e, n1, n2, variant)


def lcd_field_count(n: int, s: int, p: int) -> int:
    """Number of s-dimensional LCD codes in F_p^n."""
    if s < 0 or s > n:
        return 0
    if s == 0 or s == n:
        return 1
    if p == 2:
        g = lambda a, b: gauss_binom(a, b, 4)  # noqa: E731
        if n % 2 and s % 2:
            return 2 ** ((n - s) * (s + 1) // 2) * g((n - 1) // 2, (s - 1) // 2)
        if n % 2 == 0 and s % 2:
            return 2 ** ((n * s - s * s + n - 1) // 2) * g((n - 2) // 2, (s - 1) // 2)
        if n % 2 and s % 2 == 0:
            return 2 ** (s * (n - s + 1) // 2) * g((n - 1) // 2, s // 2)
        return _as_int(
            Fraction(2) ** Fraction(n * s - s * s - 2, 2)
            * ((2**s + 1) * g((n - 2) // 2, s // 2) + (2 ** (n - s + 1) - 2 ** (n - s) + 1) * g((n - 2) // 2, (s - 2) // 2)),
            "L_2",
        )
    g = lambda a, b: gauss_binom(a, b, p * p)  # noqa: E731
    if s % 2 and n % 2:
        return p ** ((n - s) * (s + 1) // 2) * g((n - 1) // 2, (s - 1) // 2)
    if s % 2:
        sign = 1 if (p % 4 == 3 and n % 4 == 2) else -1
        return p ** ((n * s - s * s - 1) // 2) * (p ** (n // 2) + sign) * g((n - 2) // 2, (s - 1) // 2)
    if n % 2:
        return p ** (s * (n - s + 1) // 2) * g((n - 1) // 2, s // 2)
    return p ** (s * (n - s) // 2) * g(n // 2, s // 2)


def count_lcd_mixed(n1: int, n2: int, p: int, e: int) -> int:
    """All LCD codes of the mixed ambient, both trivial codes included."""
    if e < 2:
        raise ValueError("e must be at least 2")
    return sum(
        lcd_field_count(n1, i, p)
        * lcd_field_count(n2, j, p)
        * p ** ((n1 - i) * (e - 1) * (i + j) + (n2 - j) * ((e - 1) * i + (e - 2) * j))
        for i in range(n1 + 1)
        for j in range(n2 + 1)
    )


def additive_lengths(params: EisensteinParams, n: int) -> tuple[int, int]:
    return n * params.r * params.t, n * params.r * (params.k - params.t)


def _odd_p(params: EisensteinParams) -> None:
    if params.p % 2 == 0:
        raise ValueError("self-orthogonal and self-dual counts need odd p")
    if params.e < 2:
        raise ValueError("e must be at least 2")


def count_so_additive(params: EisensteinParams, n: int, variant: str | None = None) -> int:
    _odd_p(params)
    return count_so_total(params.p, params.e, *additive_lengths(params, n), variant=variant)


def count_sd_additive(params: EisensteinParams, n: int, variant: str | None = None) -> int:
    _odd_p(params)
    return count_sd_total(params.p, params.e, *additive_lengths(params, n), variant=variant)


def sd_exists_additive(params: EisensteinParams, n: int) -> bool:
    _odd_p(params)
    return sd_exists_mixed(params.p, params.e, *additive_lengths(params, n))


def count_acd_additive(params: EisensteinParams, n: int) -> int:
    if params.e < 2:
        raise ValueError("e must be at least 2")
    n1, n2 = additive_lengths(params, n)
    return count_lcd_mixed(n1, n2, params.p, params.e)
