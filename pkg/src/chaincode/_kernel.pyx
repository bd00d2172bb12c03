# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernel_py``.

Entries are held as C ``long long``; every modulus handled here is below
2**31, so products of two reduced residues never overflow.
"""

from libc.stdlib cimport malloc, free

DEF_LIMIT = 2**31


cdef inline int _val(long long x, long long p, int mu) nogil:
    cdef int v = 0
    if x == 0:
        return mu
    while x % p == 0:
        x //= p
        v += 1
    return v


cdef long long _inv(long long a, long long m):
    return pow(int(a), -1, int(m))


def howell(rows, int p, int mu):
    cdef long long m = (<long long>p) ** mu
    if m >= DEF_LIMIT:
        from ._kernel_py import howell as slow
        return slow(rows, p, mu)
    rows = list(rows)
    cdef int nrows = len(rows)
    if nrows == 0:
        return ()
    cdef int n = len(rows[0])
    if n == 0:
        return ()
    cdef int cap = nrows + n + 1
    cdef long long *buf = <long long *> malloc(cap * n * sizeof(long long))
    cdef int *alive = <int *> malloc(cap * sizeof(int))
    cdef int *pcol = <int *> malloc(n * sizeof(int))
    cdef long long *ppv = <long long *> malloc(n * sizeof(long long))
    cdef int *prow = <int *> malloc(n * sizeof(int))
    cdef int i, j, c, r, h, best, bv, v, count = 0, npiv = 0, nz
    cdef long long x, pv, t, inv, ann
    try:
        for i in range(nrows):
            row = rows[i]
            nz = 0
            for j in range(n):
                x = row[j] % m
                if x < 0:
                    x += m
                buf[count * n + j] = x
                if x:
                    nz = 1
            alive[count] = nz
            count += 1
        for c in range(n):
            best = -1
            bv = mu
            for r in range(count):
                if alive[r] == 1:
                    x = buf[r * n + c]
                    if x:
                        v = _val(x, p, mu)
                        if v < bv:
                            bv = v
                            best = r
                            if v == 0:
                                break
            if best < 0:
                continue
            alive[best] = 2
            pv = 1
            for i in range(bv):
                pv *= p
            x = buf[best * n + c] // pv
            if x != 1:
                inv = _inv(x, m)
                for j in range(c, n):
                    buf[best * n + j] = (buf[best * n + j] * inv) % m
            for r in range(count):
                if alive[r] == 1:
                    x = buf[r * n + c]
                    if x:
                        t = x // pv
                        nz = 0
                        for j in range(c, n):
                            x = (buf[r * n + j] - t * buf[best * n + j]) % m
                            if x < 0:
                                x += m
                            buf[r * n + j] = x
                            if x:
                                nz = 1
                        if not nz:
                            alive[r] = 0
            if bv > 0:
                ann = m // pv
                nz = 0
                for j in range(n):
                    x = (buf[best * n + j] * ann) % m
                    buf[count * n + j] = x
                    if x:
                        nz = 1
                alive[count] = nz
                count += 1
            pcol[npiv] = c
            ppv[npiv] = pv
            prow[npiv] = best
            npiv += 1
        for i in range(npiv):
            c = pcol[i]
            pv = ppv[i]
            for h in range(i):
                x = buf[prow[h] * n + c]
                if x >= pv:
                    t = x // pv
                    for j in range(c, n):
                        x = (buf[prow[h] * n + j] - t * buf[prow[i] * n + j]) % m
                        if x < 0:
                            x += m
                        buf[prow[h] * n + j] = x
        return tuple(tuple([buf[prow[i] * n + j] for j in range(n)]) for i in range(npiv))
    finally:
        free(buf)
        free(alive)
        free(pcol)
        free(ppv)
        free(prow)


def reduce_vec(vec, basis, pivcols, long long m):
    cdef int n = len(vec)
    cdef long long *v = <long long *> malloc(n * sizeof(long long))
    cdef int j, c
    cdef long long x, pv, t
    try:
        for j in range(n):
            x = vec[j] % m
            v[j] = x + m if x < 0 else x
        for row, c in zip(basis, pivcols):
            x = v[c]
            pv = row[c]
            if x >= pv:
                t = x // pv
                for j in range(c, n):
                    x = (v[j] - t * <long long>row[j]) % m
                    v[j] = x + m if x < 0 else x
        return tuple([v[j] for j in range(n)])
    finally:
        free(v)


def coset_reps(gens, ranges, kbasis, kpivcols, head, lo_mask, long long p, long long m):
    cdef int n = len(head)
    cdef int ng = len(gens)
    cdef int nk = len(kbasis)
    cdef int i, j, c, carry
    cdef long long x, t, s, pv, b
    cdef bint check = lo_mask is not None
    out = []
    for i in range(ng):
        if ranges[i] <= 0:
            return out
    cdef long long *G = <long long *> malloc((ng * n + 1) * sizeof(long long))
    cdef long long *K = <long long *> malloc((nk * n + 1) * sizeof(long long))
    cdef int *kc = <int *> malloc((nk + 1) * sizeof(int))
    cdef long long *H = <long long *> malloc(n * sizeof(long long))
    cdef int *lo = <int *> malloc(n * sizeof(int))
    cdef long long *y = <long long *> malloc(n * sizeof(long long))
    cdef long long *a = <long long *> malloc((ng + 1) * sizeof(long long))
    cdef long long *rng = <long long *> malloc((ng + 1) * sizeof(long long))
    try:
        for i in range(ng):
            rng[i] = ranges[i]
            a[i] = 0
            for j in range(n):
                G[i * n + j] = gens[i][j] % m
        for i in range(nk):
            kc[i] = kpivcols[i]
            for j in range(n):
                K[i * n + j] = kbasis[i][j]
        for j in range(n):
            H[j] = head[j] % m
            lo[j] = lo_mask[j] if check else 0
        while True:
            for j in range(n):
                y[j] = 0
            for i in range(ng):
                if a[i]:
                    for j in range(n):
                        y[j] = (y[j] + a[i] * G[i * n + j]) % m
            for i in range(nk):
                c = kc[i]
                pv = K[i * n + c]
                x = y[c]
                if x >= pv:
                    t = x // pv
                    for j in range(c, n):
                        x = (y[j] - t * K[i * n + j]) % m
                        y[j] = x + m if x < 0 else x
            for j in range(n):
                y[j] = (y[j] + H[j]) % m
            keep = True
            if check:
                s = 0
                for j in range(n):
                    x = y[j]
                    if x:
                        if lo[j]:
                            b = x // p
                            s = (s + b * b % m * p) % m
                        else:
                            s = (s + x * x) % m
                keep = s == 0
            if keep:
                out.append(tuple([y[j] for j in range(n)]))
            carry = ng - 1
            while carry >= 0:
                a[carry] += 1
                if a[carry] < rng[carry]:
                    break
                a[carry] = 0
                carry -= 1
            if carry < 0:
                break
        return out
    finally:
        free(G)
        free(K)
        free(kc)
        free(H)
        free(lo)
        free(y)
        free(a)
        free(rng)
