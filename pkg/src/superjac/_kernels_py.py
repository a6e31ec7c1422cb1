"""Pure-Python implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them one for one
and the test-suite checks that both agree.
"""

from __future__ import annotations


def fp_row_reduce(rows, ncols, p):
    """Reduced row echelon form over F_p.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    R = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    nrows = len(R)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        row = R[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r:
                other = R[i]
                t = other[c]
                if t:
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - t * row[j]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def lattice_count(n, q):
    """Number of integer pairs i > 0, j > 0 with n*i + q*j < n*q."""
    total = 0
    nq = n * q
    for i in range(1, q):
        rest = nq - n * i
        # j ranges over 1 .. ceil(rest / q) - 1
        total += (rest - 1) // q
    return total


def constancy_classes(q, p, k):
    """Coarsest partition of the units of Z/q forced by k-invariance plus monotonicity.

    Returns a list of class labels, one per representative in increasing
    order; labels are 0, 1, 2, ... and each class is a contiguous run.
    """
    reps = [u for u in range(1, q) if u % p]
    index = {u: t for t, u in enumerate(reps)}
    size = len(reps)
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, u in enumerate(reps):
        a, b = find(t), find(index[u * k % q])
        if a != b:
            parent[max(a, b)] = min(a, b)

    while True:
        lo = {}
        hi = {}
        for t in range(size):
            root = find(t)
            lo[root] = min(lo.get(root, t), t)
            hi[root] = max(hi.get(root, t), t)
        changed = False
        for root in lo:
            for t in range(lo[root], hi[root] + 1):
                a, b = find(t), find(root)
                if a != b:
                    parent[max(a, b)] = min(a, b)
                    changed = True
        if not changed:
            break

    labels = []
    current = -1
    last_root = None
    for t in range(size):
        root = find(t)
        if root != last_root:
            current += 1
            last_root = root
        labels.append(current)
    return labels


def pair_orbit_count(n, generators):
    """Number of orbits of the group generated by ``generators`` on ordered
    pairs of distinct points of {0..n-1}."""
    seen = [[False] * n for _ in range(n)]
    orbits = 0
    for i0 in range(n):
        for j0 in range(n):
            if i0 == j0 or seen[i0][j0]:
                continue
            orbits += 1
            seen[i0][j0] = True
            stack = [(i0, j0)]
            while stack:
                i, j = stack.pop()
                for g in generators:
                    a, b = g[i], g[j]
                    if not seen[a][b]:
                        seen[a][b] = True
                        stack.append((a, b))
    return orbits
