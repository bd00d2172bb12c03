"""Z_{p^mu} Z_{p^(mu-1)}-linear codes.

A mixed word (c | d) is embedded as the row (c | p*d) over Z_{p^mu}; a code
is stored as the Howell basis of its embedded image, so two codes are equal
exactly when their bases are.  The Euclidean form is evaluated on the mixed
words themselves, never as the plain dot product of the embedded rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from . import modmatrix as mm
from .ringcore import Modulus, valuation

Row = tuple[int, ...]


@dataclass(frozen=True)
class MixedAmbient:
    p: int
    mu: int
    n1: int
    n2: int

    def __post_init__(self) -> None:
        Modulus(self.p, self.mu)
        if self.mu < 2:
            raise ValueError("mu must be at least 2")
        if self.n1 < 0 or self.n2 < 0 or self.n1 + self.n2 < 1:
            raise ValueError("need n1, n2 >= 0 and n1 + n2 >= 1")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def mod(self) -> int:
        return self.p**self.mu

    @property
    def lo_mod(self) -> int:
        return self.p ** (self.mu - 1)

    @property
    def lo_mask(self) -> tuple[int, ...]:
        return (0,) * self.n1 + (1,) * self.n2

    @property
    def size(self) -> int:
        return self.mod**self.n1 * self.lo_mod**self.n2

    @property
    def log_size(self) -> int:
        return self.mu * self.n1 + (self.mu - 1) * self.n2

    def generators(self) -> tuple[Row, ...]:
        """Embedded generators e_i (hi) and p*e_j (lo) of the whole ambient."""
        return tuple(
            tuple((1 if i < self.n1 else self.p) if j == i else 0 for j in range(self.n))
            for i in range(self.n)
        )

    def embed(self, word: Sequence[int]) -> Row:
        """(c | d) with d read mod p^(mu-1) -> (c | p*d) mod p^mu."""
        if len(word) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(word)}")
        m, lm = self.mod, self.lo_mod
        return tuple(x % m for x in word[: self.n1]) + tuple(self.p * (x % lm) for x in word[self.n1 :])

    def unembed(self, row: Sequence[int]) -> Row:
        return tuple(row[: self.n1]) + tuple(x // self.p for x in row[self.n1 :])

    def label(self) -> str:
        return f"Z{self.mod}Z{self.lo_mod} ({self.n1},{self.n2})"

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.mu, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class MixedWord:
    ambient: MixedAmbient
    hi: tuple[int, ...]
    lo: tuple[int, ...]

    def __post_init__(self) -> None:
        a = self.ambient
        if len(self.hi) != a.n1 or len(self.lo) != a.n2:
            raise ValueError("word length does not match ambient")
        object.__setattr__(self, "hi", tuple(x % a.mod for x in self.hi))
        object.__setattr__(self, "lo", tuple(x % a.lo_mod for x in self.lo))

    @classmethod
    def of(cls, ambient: MixedAmbient, entries: Sequence[int]) -> MixedWord:
        return cls(ambient, tuple(entries[: ambient.n1]), tuple(entries[ambient.n1 :]))

    def embedded(self) -> Row:
        return self.ambient.embed(self.hi + self.lo)


@dataclass(frozen=True)
class CodeType:
    ks: tuple[int, ...]
    ls: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"k": list(self.ks), "l": list(self.ls)}

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.ks)) + ";" + ",".join(map(str, self.ls)) + "}"


@dataclass(frozen=True)
class MixedCode:
    ambient: MixedAmbient
    basis: tuple[Row, ...]

    @property
    def matrix(self) -> mm.ResidueMatrix:
        return mm.ResidueMatrix(Modulus(self.ambient.p, self.ambient.mu), self.basis, self.ambient.n)

    def generators(self) -> list[Row]:
        """Basis rows in mixed form (hi entries, then lo entries mod p^(mu-1))."""
        return [self.ambient.unembed(r) for r in self.basis]

    def is_zero(self) -> bool:
        return not self.basis


WordLike = Union[MixedWord, Sequence[int]]


def _embed_all(ambient: MixedAmbient, rows: Iterable[WordLike]) -> list[Row]:
    out = []
    for r in rows:
        if isinstance(r, MixedWord):
            if r.ambient != ambient:
                raise ValueError("word from another ambient")
            out.append(r.embedded())
        else:
            out.append(ambient.embed(tuple(int(x) for x in r)))
    return out


def from_generators(ambient: MixedAmbient, rows: Iterable[WordLike]) -> MixedCode:
    return from_embedded(ambient, _embed_all(ambient, rows))


def from_embedded(ambient: MixedAmbient, rows: Sequence[Sequence[int]]) -> MixedCode:
    return MixedCode(ambient, mm.howell_rows(rows, ambient.p, ambient.mu))


def zero_code(ambient: MixedAmbient) -> MixedCode:
    return MixedCode(ambient, ())


def full_code(ambient: MixedAmbient) -> MixedCode:
    return from_embedded(ambient, ambient.generators())


def cardinality(C: MixedCode) -> int:
    return mm.basis_cardinality(C.basis, C.ambient.p, C.ambient.mu)


def log_cardinality(C: MixedCode) -> int:
    mu = C.ambient.mu
    return sum(mu - v for _, v in mm.pivot_profile(C.basis, C.ambient.p, mu))


def embedded_ip(x: Sequence[int], y: Sequence[int], ambient: MixedAmbient) -> int:
    """Euclidean form of two embedded rows."""
    p, n1 = ambient.p, ambient.n1
    hi = sum(a * b for a, b in zip(x[:n1], y[:n1]))
    lo = sum((a // p) * (b // p) for a, b in zip(x[n1:], y[n1:]))
    return (hi + p * lo) % ambient.mod


def inner_product(m1: MixedWord, m2: MixedWord) -> int:
    if m1.ambient != m2.ambient:
        raise ValueError("ambient mismatch")
    a = m1.ambient
    hi = sum(x * y for x, y in zip(m1.hi, m2.hi))
    lo = sum(x * y for x, y in zip(m1.lo, m2.lo)) % a.lo_mod
    return (hi + a.p * lo) % a.mod


def dual_basis(ambient: MixedAmbient, basis: Sequence[Row]) -> tuple[Row, ...]:
    """Howell basis of the Euclidean dual of span(basis).

    Unknowns are (x | u) with lo coordinate p*u, so each embedded generator
    g gives the single congruence sum x_i g_i + sum u_j g_j = 0 mod p^mu.
    """
    p, n1, m = ambient.p, ambient.n1, ambient.mod
    sol = mm.kernel_rows(basis, ambient.n, p, ambient.mu)
    rows = [tuple(r[:n1]) + tuple(p * x % m for x in r[n1:]) for r in sol]
    return mm.howell_rows(rows, p, ambient.mu)


def dual(C: MixedCode) -> MixedCode:
    return MixedCode(C.ambient, dual_basis(C.ambient, C.basis))


def code_sum(C1: MixedCode, C2: MixedCode) -> MixedCode:
    if C1.ambient != C2.ambient:
        raise ValueError("ambient mismatch")
    return from_embedded(C1.ambient, C1.basis + C2.basis)


def intersect(C1: MixedCode, C2: MixedCode) -> MixedCode:
    if C1.ambient != C2.ambient:
        raise ValueError("ambient mismatch")
    a = C1.ambient
    return MixedCode(a, mm.intersect_rows(C1.basis, C2.basis, a.n, a.p, a.mu))


def contains(C: MixedCode, D: MixedCode) -> bool:
    """D is a subcode of C."""
    return code_sum(C, D).basis == C.basis


def is_self_orthogonal(C: MixedCode) -> bool:
    """G diamond G^T = 0 on a generator matrix."""
    a = C.ambient
    G = mm.ResidueMatrix(Modulus(a.p, a.mu), tuple(C.generators()), a.n)
    return not any(any(r) for r in mm.diamond(G, G, a.n1).rows)


def is_self_dual(C: MixedCode) -> bool:
    return 2 * log_cardinality(C) == C.ambient.log_size and is_self_orthogonal(C)


def is_lcd(C: MixedCode) -> bool:
    return log_cardinality(code_sum(C, dual(C))) == C.ambient.log_size


def _level(x: int, lo: bool, ambient: MixedAmbient) -> int:
    v = valuation(x, Modulus(ambient.p, ambient.mu))
    return v - 1 if lo else v


@dataclass(frozen=True)
class _Pivot:
    row: Row
    col: int
    level: int
    lo: bool


def _pivot_rows(C: MixedCode) -> list[_Pivot]:
    """Greedy gamma-graded elimination behind the standard form.

    The next pivot is the entry of least level, hi before lo, then leftmost;
    it is normalised to gamma^level and cleared from all unprocessed rows.
    Processed rows are then reduced modulo every later pivot.
    """
    a = C.ambient
    p, m, n1 = a.p, a.mod, a.n1
    work = [list(r) for r in C.basis]
    done: list[_Pivot] = []
    while work:
        best = None
        for ri, r in enumerate(work):
            for c, x in enumerate(r):
                if x:
                    lo = c >= n1
                    key = (_level(x, lo, a), lo, c)
                    if best is None or key < best[0]:
                        best = (key, ri)
        if best is None:
            break
        (lev, lo, c), ri = best
        row = work.pop(ri)
        pv = p ** (lev + 1 if lo else lev)
        inv = pow(row[c] // pv, -1, m)
        row = [x * inv % m for x in row]
        nxt = []
        for r in work:
            if r[c]:
                t = r[c] // pv
                r = [(x - t * y) % m for x, y in zip(r, row)]
            if any(r):
                nxt.append(r)
        work = nxt
        done.append(_Pivot(tuple(row), c, lev, lo))
    for i, piv in enumerate(done):
        pv = piv.row[piv.col]
        for h in range(i):
            hr = done[h].row
            if hr[piv.col] >= pv:
                t = hr[piv.col] // pv
                done[h] = _Pivot(tuple((x - t * y) % m for x, y in zip(hr, piv.row)), done[h].col, done[h].level, done[h].lo)
    return done


def type_of(C: MixedCode) -> CodeType:
    mu = C.ambient.mu
    ks, ls = [0] * mu, [0] * (mu - 1)
    for piv in _pivot_rows(C):
        if piv.lo:
            ls[piv.level] += 1
        else:
            ks[piv.level] += 1
    return CodeType(tuple(ks), tuple(ls))


def standard_form(C: MixedCode) -> tuple[tuple[int, ...], tuple[int, ...], list[Row]]:
    """Column permutations (hi, lo) and a generator matrix in block standard form.

    ``hi_perm[i]`` is the original hi column placed at position i (same for
    lo).  Rows are hi-pivot rows by level, then lo-pivot rows by level.
    """
    a = C.ambient
    piv = _pivot_rows(C)
    xs = sorted((pv for pv in piv if not pv.lo), key=lambda pv: pv.level)
    ys = sorted((pv for pv in piv if pv.lo), key=lambda pv: pv.level)
    hi_cols = [pv.col for pv in xs]
    lo_cols = [pv.col - a.n1 for pv in ys]
    hi_perm = tuple(hi_cols + [j for j in range(a.n1) if j not in hi_cols])
    lo_perm = tuple(lo_cols + [j for j in range(a.n2) if j not in lo_cols])
    rows = []
    for pv in xs + ys:
        w = a.unembed(pv.row)
        rows.append(tuple(w[j] for j in hi_perm) + tuple(w[a.n1 + j] for j in lo_perm))
    return hi_perm, lo_perm, rows


def torsion(C: MixedCode, i: int, side: str) -> tuple[Row, ...]:
    """Generator rows (RREF over F_p) of the i-th torsion code of one side."""
    a = C.ambient
    side = side.upper()
    if side == "X":
        if not 1 <= i <= a.mu:
            raise ValueError("X-side torsion index must lie in 1..mu")
        rows = [
            tuple((x // a.p**pv.level) % a.p for x in pv.row[: a.n1])
            for pv in _pivot_rows(C)
            if not pv.lo and pv.level < i
        ]
        width = a.n1
    elif side == "Y":
        if not 1 <= i <= a.mu - 1:
            raise ValueError("Y-side torsion index must lie in 1..mu-1")
        rows = [
            tuple((x // a.p ** (pv.level + 1)) % a.p for x in pv.row[a.n1 :])
            for pv in _pivot_rows(C)
            if pv.lo and pv.level < i
        ]
        width = a.n2
    else:
        raise ValueError("side must be X or Y")
    if width == 0:
        return ()
    return mm.howell_rows(rows, a.p, 1)


def codewords(C: MixedCode) -> Iterator[Row]:
    """Every codeword, embedded, exactly once."""
    a = C.ambient
    return mm.span_elements(C.basis, a.p, a.mu, a.n)


def hom_weight_symbol(hi: int, lo: int, p: int) -> int:
    hi %= p * p
    lo %= p
    if hi == 0 and lo == 0:
        return 0
    if lo == 0 and hi % p == 0:
        return p * p
    return (p - 1) * p


def _check_hom(a: MixedAmbient) -> None:
    if a.mu != 2 or a.n1 != a.n2:
        raise NotImplementedError("homogeneous weight needs mu = 2 and n1 = n2")


def hom_weight_word(m: MixedWord) -> int:
    _check_hom(m.ambient)
    return sum(hom_weight_symbol(x, y, m.ambient.p) for x, y in zip(m.hi, m.lo))


def _hom_weight_embedded(row: Row, a: MixedAmbient) -> int:
    n1 = a.n1
    return sum(hom_weight_symbol(row[i], row[n1 + i] // a.p, a.p) for i in range(n1))


def min_hom_distance(C: MixedCode) -> int:
    a = C.ambient
    _check_hom(a)
    if C.is_zero():
        raise ValueError("the zero code has no minimum distance")
    return min(_hom_weight_embedded(w, a) for w in codewords(C) if any(w))


def read_code_file(path: str | Path) -> MixedCode:
    """Load a code description: JSON with p, e, n1, n2 and integer generator rows."""
    data = json.loads(Path(path).read_text())
    try:
        ambient = MixedAmbient(int(data["p"]), int(data["e"]), int(data["n1"]), int(data["n2"]))
        rows = data.get("generators", [])
    except KeyError as exc:
        raise ValueError(f"missing field {exc}") from None
    return from_generators(ambient, rows)


def code_to_dict(C: MixedCode) -> dict:
    return {**C.ambient.to_dict(), "generators": [list(r) for r in C.generators()]}
