# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Entries are held in C ``long long`` buffers, so ``fp_row_reduce`` requires
p < 2**31 and ``lattice_count`` requires n*q < 2**62; ``kernels`` routes
larger inputs to the pure-Python versions.
"""

from libc.stdlib cimport malloc, free


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, qt, tmp
    while newr != 0:
        qt = r // newr
        tmp = t - qt * newt
        t = newt
        newt = tmp
        tmp = r - qt * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def fp_row_reduce(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *R = <long long *> malloc(max(nrows * ncols, 1) * sizeof(long long))
    if R == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long long v, inv, t
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j] % p
                R[i * ncols + j] = v
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if R[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    v = R[r * ncols + j]
                    R[r * ncols + j] = R[piv * ncols + j]
                    R[piv * ncols + j] = v
            inv = _inv_mod(R[r * ncols + c], p)
            if inv != 1:
                for j in range(c, ncols):
                    R[r * ncols + j] = R[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    t = R[i * ncols + c]
                    if t != 0:
                        for j in range(c, ncols):
                            v = (R[i * ncols + j] - t * R[r * ncols + j]) % p
                            if v < 0:
                                v += p
                            R[i * ncols + j] = v
            pivots.append(c)
            r += 1
        out = [[R[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(R)
    return out, pivots


def lattice_count(long long n, long long q):
    cdef long long total = 0, i, nq = n * q, rest
    for i in range(1, q):
        rest = nq - n * i
        total += (rest - 1) // q
    return total


def constancy_classes(long long q, long long p, long long k):
    cdef Py_ssize_t size = 0, t, u, a, b, root, x, lo_t, hi_t
    cdef bint changed
    cdef long long *reps = <long long *> malloc(q * sizeof(long long))
    cdef Py_ssize_t *index = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef Py_ssize_t *parent = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef Py_ssize_t *lo = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef Py_ssize_t *hi = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    if reps == NULL or index == NULL or parent == NULL or lo == NULL or hi == NULL:
        free(reps); free(index); free(parent); free(lo); free(hi)
        raise MemoryError()
    try:
        for u in range(1, q):
            if u % p != 0:
                reps[size] = u
                index[u] = size
                size += 1
        for t in range(size):
            parent[t] = t
        for t in range(size):
            a = _find(parent, t)
            b = _find(parent, index[(reps[t] * k) % q])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
        changed = True
        while changed:
            changed = False
            for t in range(size):
                lo[t] = size
                hi[t] = -1
            for t in range(size):
                root = _find(parent, t)
                if t < lo[root]:
                    lo[root] = t
                if t > hi[root]:
                    hi[root] = t
            for root in range(size):
                lo_t = lo[root]
                hi_t = hi[root]
                if hi_t < 0:
                    continue
                for x in range(lo_t, hi_t + 1):
                    a = _find(parent, x)
                    b = _find(parent, root)
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
                        changed = True
        labels = []
        current = -1
        last_root = -1
        for t in range(size):
            root = _find(parent, t)
            if root != last_root:
                current += 1
                last_root = root
            labels.append(current)
    finally:
        free(reps); free(index); free(parent); free(lo); free(hi)
    return labels


cdef Py_ssize_t _find(Py_ssize_t *parent, Py_ssize_t x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def pair_orbit_count(Py_ssize_t n, generators):
    cdef Py_ssize_t ngen = len(generators), g, i, j, a, b, i0, j0, top
    cdef Py_ssize_t *perm = <Py_ssize_t *> malloc(max(ngen * n, 1) * sizeof(Py_ssize_t))
    cdef char *seen = <char *> malloc(max(n * n, 1))
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(max(2 * n * n, 2) * sizeof(Py_ssize_t))
    cdef long orbits = 0
    if perm == NULL or seen == NULL or stack == NULL:
        free(perm); free(seen); free(stack)
        raise MemoryError()
    try:
        for g in range(ngen):
            images = generators[g]
            for i in range(n):
                perm[g * n + i] = images[i]
        for i in range(n * n):
            seen[i] = 0
        for i0 in range(n):
            for j0 in range(n):
                if i0 == j0 or seen[i0 * n + j0]:
                    continue
                orbits += 1
                seen[i0 * n + j0] = 1
                top = 0
                stack[0] = i0
                stack[1] = j0
                top = 1
                while top > 0:
                    top -= 1
                    i = stack[2 * top]
                    j = stack[2 * top + 1]
                    for g in range(ngen):
                        a = perm[g * n + i]
                        b = perm[g * n + j]
                        if not seen[a * n + b]:
                            seen[a * n + b] = 1
                            stack[2 * top] = a
                            stack[2 * top + 1] = b
                            top += 1
    finally:
        free(perm); free(seen); free(stack)
    return orbits
