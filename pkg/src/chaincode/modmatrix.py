"""Exact linear algebra over Z_{p^mu}: Howell forms, kernels, spans.

Matrices over F_p are the case mu = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from . import kernel as _backend
from .ringcore import Modulus, valuation

Row = tuple[int, ...]


@dataclass(frozen=True)
class ResidueMatrix:
    m: Modulus
    rows: tuple[Row, ...]
    cols: int

    def __post_init__(self) -> None:
        mod = self.m.value
        rows = tuple(tuple(x % mod for x in r) for r in self.rows)
        if any(len(r) != self.cols for r in rows):
            raise ValueError("row length does not match cols")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]], p: int, mu: int, cols: int | None = None) -> ResidueMatrix:
        rows = tuple(tuple(r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols is required for an empty matrix")
            cols = len(rows[0])
        return cls(Modulus(p, mu), rows, cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def transpose(self) -> ResidueMatrix:
        return ResidueMatrix(self.m, tuple(zip(*self.rows)) if self.rows else (), self.n_rows)

    def __matmul__(self, other: ResidueMatrix) -> ResidueMatrix:
        if self.cols != other.n_rows or self.m != other.m:
            raise ValueError("shape or modulus mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.cols
        out = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        return ResidueMatrix(self.m, out, other.cols)


def howell_rows(rows: Sequence[Sequence[int]], p: int, mu: int) -> tuple[Row, ...]:
    return _backend.howell(rows, p, mu)


def howell_form(M: ResidueMatrix) -> ResidueMatrix:
    return ResidueMatrix(M.m, howell_rows(M.rows, M.m.p, M.m.mu), M.cols)


def pivot_profile(basis: Sequence[Row], p: int, mu: int) -> list[tuple[int, int]]:
    """``(column, valuation)`` of each pivot of a Howell basis."""
    m = Modulus(p, mu)
    out = []
    for r in basis:
        c = next(j for j, x in enumerate(r) if x)
        out.append((c, valuation(r[c], m)))
    return out


def pivot_cols(basis: Sequence[Row]) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(r) if x) for r in basis)


def span_cardinality(M: ResidueMatrix) -> int:
    H = howell_rows(M.rows, M.m.p, M.m.mu)
    return M.m.p ** sum(M.m.mu - v for _, v in pivot_profile(H, M.m.p, M.m.mu))


def basis_cardinality(basis: Sequence[Row], p: int, mu: int) -> int:
    return p ** sum(mu - v for _, v in pivot_profile(basis, p, mu))


def span_elements(basis: Sequence[Row], p: int, mu: int, n: int) -> Iterator[Row]:
    """Each element of the span of a Howell basis exactly once."""
    mod = p**mu
    prof = pivot_profile(basis, p, mu)
    ranges = [range(p ** (mu - v)) for _, v in prof]
    for coeffs in product(*ranges):
        yield tuple(sum(a * r[j] for a, r in zip(coeffs, basis)) % mod for j in range(n))


def kernel_rows(rows: Sequence[Sequence[int]], n: int, p: int, mu: int) -> tuple[Row, ...]:
    """Howell basis of {x in Z_{p^mu}^n : rows . x^T = 0}."""
    rows = [tuple(r) for r in rows]
    k = len(rows)
    if k == 0:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    aug = [tuple(rows[i][j] for i in range(k)) + tuple(int(i == j) for i in range(n)) for j in range(n)]
    H = howell_rows(aug, p, mu)
    sol = [r[k:] for r in H if not any(r[:k])]
    return howell_rows(sol, p, mu)


def kernel(M: ResidueMatrix) -> ResidueMatrix:
    return ResidueMatrix(M.m, kernel_rows(M.rows, M.cols, M.m.p, M.m.mu), M.cols)


def intersect_rows(a: Sequence[Row], b: Sequence[Row], n: int, p: int, mu: int) -> tuple[Row, ...]:
    """Howell basis of span(a) intersected with span(b) (Zassenhaus)."""
    if not a or not b:
        return ()
    z = (0,) * n
    stacked = [tuple(r) + tuple(r) for r in a] + [tuple(r) + z for r in b]
    H = howell_rows(stacked, p, mu)
    return howell_rows([r[n:] for r in H if not any(r[:n])], p, mu)


def colon_rows(
    k: Sequence[Row], ambient_gens: Sequence[Row], shift: int, n: int, p: int, mu: int
) -> tuple[Row, ...]:
    """Howell basis of {y in span(ambient_gens) : p^shift * y in span(k)}."""
    mod = p**mu
    s = p**shift % mod
    z = (0,) * n
    stacked = [tuple(s * x % mod for x in g) + tuple(g) for g in ambient_gens]
    stacked += [tuple(r) + z for r in k]
    H = howell_rows(stacked, p, mu)
    return howell_rows([r[n:] for r in H if not any(r[:n])], p, mu)


def diamond(G: ResidueMatrix, H: ResidueMatrix, n1: int) -> ResidueMatrix:
    """A1 A2^T + gamma B1 B2^T for mixed matrices split after column ``n1``.

    The lo blocks hold residues mod p^(mu-1); gamma is p.
    """
    if G.cols != H.cols or not 0 <= n1 <= G.cols or G.m != H.m:
        raise ValueError("column split mismatch")
    m = G.m
    lo_mod = m.p ** (m.mu - 1)
    out = []
    for g in G.rows:
        row = []
        for h in H.rows:
            hi = sum(a * b for a, b in zip(g[:n1], h[:n1]))
            lo = sum((a % lo_mod) * (b % lo_mod) for a, b in zip(g[n1:], h[n1:])) % lo_mod
            row.append(hi + m.p * lo)
        out.append(tuple(row))
    return ResidueMatrix(m, tuple(out), H.n_rows)


def field_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(howell_rows(rows, p, 1))


def symmetrize(A: ResidueMatrix, B: ResidueMatrix) -> ResidueMatrix:
    """A B^T + B A^T over F_q (q = A.m.p, mu = 1)."""
    if A.m.mu != 1 or A.m != B.m:
        raise ValueError("symmetrize works over a prime field")
    if A.n_rows != B.n_rows or A.cols != B.cols:
        raise ValueError("shape mismatch")
    ab = A @ B.transpose()
    rows = tuple(tuple(ab.rows[i][j] + ab.rows[j][i] for j in range(A.n_rows)) for i in range(A.n_rows))
    return ResidueMatrix(A.m, rows, A.n_rows)


def count_solutions(A: ResidueMatrix, J: ResidueMatrix) -> int:
    """Number of X with A X = J for full-row-rank A (s x n) and J (s x l)."""
    s, n = A.n_rows, A.cols
    if J.n_rows != s:
        raise ValueError("shape mismatch")
    if field_rank(A.rows, A.m.p) != s:
        raise ValueError("A must have full row rank")
    return A.m.p ** ((n - s) * J.cols)


def count_solutions_brute(A: ResidueMatrix, J: ResidueMatrix) -> int:
    """Exhaustive count of X with A X = J; small sizes only."""
    q, n, l = A.m.p, A.cols, J.cols
    count = 0
    for flat in product(range(q), repeat=n * l):
        X = ResidueMatrix(A.m, tuple(tuple(flat[i * l : (i + 1) * l]) for i in range(n)), l)
        if (A @ X).rows == J.rows:
            count += 1
    return count


def rref_subspaces(n: int, p: int, dim: int | None = None) -> Iterator[tuple[Row, ...]]:
    """Every subspace of F_p^n as its reduced row echelon basis."""
    from itertools import combinations

    dims = range(n + 1) if dim is None else [dim]
    for d in dims:
        for piv in combinations(range(n), d):
            free = [(i, j) for i in range(d) for j in range(n) if j > piv[i] and j not in piv]
            for vals in product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for i, c in enumerate(piv):
                    rows[i][c] = 1
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                yield tuple(tuple(r) for r in rows)
