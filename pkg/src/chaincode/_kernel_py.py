"""Pure-Python hot kernels.  ``_kernel.pyx`` mirrors these signatures exactly."""

from __future__ import annotations

from itertools import product
from typing import Sequence

Row = tuple[int, ...]


def _val(x: int, p: int, mu: int) -> int:
    if x == 0:
        return mu
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def howell(rows: Sequence[Sequence[int]], p: int, mu: int) -> tuple[Row, ...]:
    """Howell form of the row span of ``rows`` over Z_{p^mu}.

    Pivots sit in strictly increasing columns, each equal to p^v; entries
    above a pivot are reduced below it; zero rows are dropped.
    """
    m = p**mu
    work = [[x % m for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return ()
    n = len(work[0])
    out: list[tuple[int, int, list[int]]] = []
    for c in range(n):
        best, bv = -1, mu
        for idx, r in enumerate(work):
            x = r[c]
            if x:
                v = _val(x, p, mu)
                if v < bv:
                    best, bv = idx, v
                    if v == 0:
                        break
        if best < 0:
            continue
        piv = work.pop(best)
        pv = p**bv
        inv = pow(piv[c] // pv, -1, m)
        if inv != 1:
            piv = [x * inv % m for x in piv]
        nxt = []
        for r in work:
            x = r[c]
            if x:
                t = x // pv
                r = [(a - t * b) % m for a, b in zip(r, piv)]
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        if bv:
            ann = [x * p ** (mu - bv) % m for x in piv]
            if any(ann):
                nxt.append(ann)
        work = nxt
        out.append((c, pv, piv))
        if not work:
            break
    for i, (c, pv, row) in enumerate(out):
        for h in range(i):
            hrow = out[h][2]
            x = hrow[c]
            if x >= pv:
                t = x // pv
                out[h] = (out[h][0], out[h][1], [(a - t * b) % m for a, b in zip(hrow, row)])
    return tuple(tuple(r) for _, _, r in out)


def reduce_vec(vec: Sequence[int], basis: Sequence[Row], pivcols: Sequence[int], m: int) -> Row:
    """Canonical representative of ``vec`` modulo the span of a Howell basis."""
    v = [x % m for x in vec]
    for row, c in zip(basis, pivcols):
        x = v[c]
        pv = row[c]
        if x >= pv:
            t = x // pv
            v = [(a - t * b) % m for a, b in zip(v, row)]
    return tuple(v)


def coset_reps(
    gens: Sequence[Row],
    ranges: Sequence[int],
    kbasis: Sequence[Row],
    kpivcols: Sequence[int],
    head: Row,
    lo_mask: Sequence[int] | None,
    p: int,
    m: int,
) -> list[Row]:
    """All words ``head + reduce(sum a_i gens_i)`` with ``0 <= a_i < ranges[i]``.

    With ``lo_mask`` given, keep only isotropic words: sum over hi
    coordinates of x^2 plus sum over lo coordinates of p*(x/p)^2 is 0 mod m.
    """
    out = []
    n = len(head)
    for coeffs in product(*[range(r) for r in ranges]):
        y = [0] * n
        for a, g in zip(coeffs, gens):
            if a:
                for j in range(n):
                    y[j] += a * g[j]
        x = reduce_vec(y, kbasis, kpivcols, m)
        x = tuple((a + b) % m for a, b in zip(x, head))
        if lo_mask is not None:
            s = 0
            for a, lo in zip(x, lo_mask):
                if a:
                    if lo:
                        b = a // p
                        s += b * b * p
                    else:
                        s += a * a
            if s % m:
                continue
        out.append(x)
    return out
