"""Additive codes over the Eisenstein chain ring R_e, handled through Psi.

Psi unpacks each ring element into its r*t coefficients mod p^e and its
r*(k-t) coefficients mod p^(e-1).  A word of length N is laid out with all hi
coefficients first (position by position) and then all lo coefficients, so an
additive code of length N is a mixed code of block-length (N*r*t, N*r*(k-t)).
Everything heavy runs on that image.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import mixedcode as mc
from .mixedcode import MixedAmbient, MixedCode
from .ringcore import AdditiveElement, EisensteinParams, Modulus, units

Row = tuple[int, ...]


def image_ambient(params: EisensteinParams, n: int) -> MixedAmbient:
    return MixedAmbient(params.p, params.e, n * params.n_hi, n * params.n_lo)


@dataclass(frozen=True)
class AdditiveCode:
    params: EisensteinParams
    n: int
    image: MixedCode

    def __post_init__(self) -> None:
        if self.params.e < 2:
            raise ValueError("additive codes here need e >= 2")
        if self.image.ambient != image_ambient(self.params, self.n):
            raise ValueError("image ambient does not match params and length")

    def cardinality(self) -> int:
        return mc.cardinality(self.image)

    def words(self) -> list[tuple[AdditiveElement, ...]]:
        """Every codeword (small codes only)."""
        return [unpack_word(self.params, self.n, self.image.ambient.unembed(w)) for w in mc.codewords(self.image)]


def pack_word(word: Sequence[AdditiveElement]) -> Row:
    """Psi on a word: hi coefficients of every position, then lo coefficients."""
    return tuple(x for a in word for x in a.hi) + tuple(x for a in word for x in a.lo)


def unpack_word(params: EisensteinParams, n: int, row: Sequence[int]) -> tuple[AdditiveElement, ...]:
    h, l = params.n_hi, params.n_lo
    hi, lo = row[: n * h], row[n * h :]
    return tuple(
        AdditiveElement(params, tuple(hi[i * h : (i + 1) * h]), tuple(lo[i * l : (i + 1) * l]))
        for i in range(n)
    )


def additive_from_generators(
    params: EisensteinParams, n: int, words: Iterable[Sequence[AdditiveElement]]
) -> AdditiveCode:
    rows = []
    for w in words:
        w = tuple(w)
        if len(w) != n or any(a.params != params for a in w):
            raise ValueError(f"generator rows need {n} elements of the given ring")
        rows.append(pack_word(w))
    return AdditiveCode(params, n, mc.from_generators(image_ambient(params, n), rows))


def element(params: EisensteinParams, text: str | int) -> AdditiveElement:
    """Parse ``a``, ``y``, ``a+by`` style elements of R_p = Z_{p^2}[y]/<y^2-p, py>.

    Only the r = 1, k = 2, t = 1 family has this shorthand.
    """
    if (params.r, params.k, params.t) != (1, 2, 1):
        raise ValueError("shorthand parsing needs r = 1, k = 2, t = 1")
    a0 = a1 = 0
    for term in str(text).replace(" ", "").split("+"):
        if term.endswith("y"):
            a1 += int(term[:-1]) if term[:-1] else 1
        elif term:
            a0 += int(term)
    return AdditiveElement(params, (a0,), (a1,))


def chi_orthogonal(d: Sequence[AdditiveElement], c: Sequence[AdditiveElement]) -> bool:
    """Character pairing test, written directly on ring coefficients."""
    if len(d) != len(c):
        raise ValueError("words of different lengths")
    if not d:
        return True
    pr = d[0].params
    if any(a.params != pr for a in (*d, *c)):
        raise ValueError("params mismatch")
    total = 0
    for a, b in zip(d, c):
        total += sum(x * y for x, y in zip(a.hi, b.hi))
        total += pr.p * sum(x * y for x, y in zip(a.lo, b.lo))
    return total % pr.hi_mod == 0


def chi_dual(C: AdditiveCode) -> AdditiveCode:
    return AdditiveCode(C.params, C.n, mc.dual(C.image))


def is_self_orthogonal(C: AdditiveCode) -> bool:
    return mc.is_self_orthogonal(C.image)


def is_self_dual(C: AdditiveCode) -> bool:
    return mc.is_self_dual(C.image)


def is_acd(C: AdditiveCode) -> bool:
    return mc.is_lcd(C.image)


@dataclass(frozen=True)
class MonomialMatrix:
    """Coordinate i of a word moves to position ``perm[i]`` and is scaled by ``mult[i]``."""

    perm: tuple[int, ...]
    mult: tuple[int, ...]
    modulus: int

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.mult) != len(self.perm):
            raise ValueError("perm must be a permutation matching mult in length")
        mult = tuple(u % self.modulus for u in self.mult)
        p = _prime_of(self.modulus)
        if any(u % p == 0 for u in mult):
            raise ValueError("multipliers must be units")
        object.__setattr__(self, "mult", mult)

    @classmethod
    def identity(cls, n: int, modulus: int) -> MonomialMatrix:
        return cls(tuple(range(n)), (1,) * n, modulus)

    @property
    def n(self) -> int:
        return len(self.perm)

    def compose(self, other: MonomialMatrix) -> MonomialMatrix:
        """Apply ``self`` first, then ``other``."""
        if other.n != self.n or other.modulus != self.modulus:
            raise ValueError("size mismatch")
        perm = tuple(other.perm[self.perm[i]] for i in range(self.n))
        mult = tuple(self.mult[i] * other.mult[self.perm[i]] for i in range(self.n))
        return MonomialMatrix(perm, mult, self.modulus)

    def apply_row(self, row: Sequence[int], params: EisensteinParams) -> Row:
        """Action on a Psi-packed word (hi and lo blocks of every position)."""
        h, l, n = params.n_hi, params.n_lo, self.n
        hi_mod, lo_mod = params.hi_mod, params.lo_mod
        out = [0] * (n * (h + l))
        for i in range(n):
            j, u = self.perm[i], self.mult[i]
            for s in range(h):
                out[j * h + s] = row[i * h + s] * u % hi_mod
            for s in range(l):
                out[n * h + j * l + s] = row[n * h + i * l + s] * u % lo_mod
        return tuple(out)


def _prime_of(modulus: int) -> int:
    return next(d for d in range(2, modulus + 1) if modulus % d == 0)


def monomial_group(params: EisensteinParams, n: int) -> list[MonomialMatrix]:
    """All N! * |units|^N monomial matrices over Z_{p^e}."""
    from itertools import permutations, product

    us = units(Modulus(params.p, params.e))
    return [
        MonomialMatrix(perm, mult, params.hi_mod)
        for perm in permutations(range(n))
        for mult in product(us, repeat=n)
    ]


def monomial_image_code(C: MixedCode, U: MonomialMatrix, params: EisensteinParams) -> MixedCode:
    """Image of a mixed code under Psi(U), computed on its mixed generators."""
    a = C.ambient
    return mc.from_generators(a, [U.apply_row(g, params) for g in C.generators()])


def monomial_image(C: AdditiveCode, U: MonomialMatrix) -> AdditiveCode:
    if U.n != C.n or U.modulus != C.params.hi_mod:
        raise ValueError("monomial matrix does not fit the code")
    return AdditiveCode(C.params, C.n, monomial_image_code(C.image, U, C.params))


def _check_rp(params: EisensteinParams) -> None:
    if (params.e, params.r, params.k, params.t) != (2, 1, 2, 1):
        raise NotImplementedError("homogeneous weights are defined here for the R_p family only")


def hom_distance(C: AdditiveCode) -> int:
    _check_rp(C.params)
    return mc.min_hom_distance(C.image)


def plotkin_bound(p: int, n: int, m: int) -> Fraction:
    if m < 2:
        raise ValueError("the bound needs M >= 2")
    return Fraction((p - 1) * p * n * m, m - 1)


def plotkin_achieved(p: int, n: int, m: int, d: int) -> bool:
    """d is the largest multiple of (p-1)p not exceeding the homogeneous bound."""
    if m < 2:
        raise ValueError("the bound needs M >= 2")
    if d < 1:
        raise ValueError("d must be positive")
    g = (p - 1) * p
    return d == (plotkin_bound(p, n, m) // g) * g


# -- files --------------------------------------------------------------------


def read_additive_file(path: str | Path) -> AdditiveCode:
    """JSON with p, e, r, k, t, n and generator rows of n*(r*k) integers."""
    data = json.loads(Path(path).read_text())
    try:
        params = EisensteinParams(*(int(data[f]) for f in ("p", "e", "r", "k", "t")))
        n = int(data["n"])
        rows = data.get("generators", [])
    except KeyError as exc:
        raise ValueError(f"missing field {exc}") from None
    per = params.r * params.k
    words = []
    for row in rows:
        if len(row) != n * per:
            raise ValueError(f"each generator row needs {n * per} integers")
        words.append(
            tuple(
                AdditiveElement(
                    params,
                    tuple(row[i * per : i * per + params.n_hi]),
                    tuple(row[i * per + params.n_hi : (i + 1) * per]),
                )
                for i in range(n)
            )
        )
    return additive_from_generators(params, n, words)


def additive_to_dict(C: AdditiveCode) -> dict:
    pr = C.params
    rows = []
    for g in C.image.generators():
        word = unpack_word(pr, C.n, g)
        rows.append([x for a in word for x in (*a.hi, *a.lo)])
    return {"p": pr.p, "e": pr.e, "r": pr.r, "k": pr.k, "t": pr.t, "n": C.n, "generators": rows}
