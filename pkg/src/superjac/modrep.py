"""Permutation modules over F_p for subgroups of S_n.

Modules built from a set of generating permutations:

* ``FullPerm``  F_p^n, g e_i = e_{g(i)};
* ``Deg0``      the sum-zero vectors, basis e_i - e_n (i < n);
* ``V``         F_p^n / F_p 1, basis the classes of e_1..e_{n-1};
                x is reduced by subtracting x_n from every coordinate;
* ``W``         image of Deg0 in V (requires p | n), basis the classes of
                e_i - e_n for i < n-1; Deg0 coordinates y reduce to
                y_j - y_{n-1}.

Permutations are stored 0-based as tuples of images; the helpers that talk to
users accept and print 1-based cycles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .arith import FpMatrix, fp_nullspace, fp_rank, fp_span_basis, require_prime
from .errors import InconclusiveError, PreconditionError, VerificationError

SYMMETRIC = "SymmetricFull"
ALTERNATING = "Alternating"
CUSTOM = "Custom"

LABEL_ALIASES = {"S": SYMMETRIC, "A": ALTERNATING, SYMMETRIC: SYMMETRIC, ALTERNATING: ALTERNATING,
                 "symmetric": SYMMETRIC, "alternating": ALTERNATING}

DESK_SCALE_DIM = 30


def cycle(n: int, *points: int) -> tuple:
    """The permutation of {0..n-1} given by one 1-based cycle."""
    img = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        img[a - 1] = b - 1
    return tuple(img)


def is_even(perm: Sequence[int]) -> bool:
    seen = [False] * len(perm)
    transpositions = 0
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            transpositions += length - 1
    return transpositions % 2 == 0


def compose(g: Sequence[int], h: Sequence[int]) -> tuple:
    """g after h."""
    return tuple(g[h[i]] for i in range(len(h)))


def inverse(g: Sequence[int]) -> tuple:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


@dataclass(frozen=True)
class PermGenerators:
    n: int
    generators: tuple
    label: str = CUSTOM

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g) != self.n or sorted(g) != list(range(self.n)):
                raise PreconditionError(f"{g} is not a permutation of {self.n} points")
        if self.label == ALTERNATING and not all(is_even(g) for g in gens):
            raise PreconditionError("alternating label with an odd generator")


def standard_generators(n: int, label: str) -> PermGenerators:
    label = LABEL_ALIASES.get(label, label)
    if n < 3:
        raise PreconditionError("need n >= 3")
    long_cycle = cycle(n, *range(1, n + 1))
    if label == SYMMETRIC:
        gens = [cycle(n, 1, 2), long_cycle]
    elif label == ALTERNATING:
        other = long_cycle if n % 2 else cycle(n, *range(2, n + 1))
        gens = [cycle(n, 1, 2, 3)]
        if other not in gens:
            gens.append(other)
    else:
        raise PreconditionError(f"unknown group label {label!r}")
    return PermGenerators(n, tuple(gens), label)


def group_order(gens: PermGenerators) -> int:
    """Order of the generated group via a deterministic Schreier-Sims chain.

    The chain is rebuilt after each new strong generator; at n <= 12 that is
    cheap and keeps the bookkeeping obvious.
    """
    n = gens.n
    identity = tuple(range(n))
    strong = [g for g in gens.generators if g != identity]
    base = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))

    def build():
        levels = []
        for k, b in enumerate(base):
            level_gens = [s for s in strong if all(s[c] == c for c in base[:k])]
            trans = {b: identity}
            frontier = [b]
            while frontier:
                x = frontier.pop()
                for s in level_gens:
                    y = s[x]
                    if y not in trans:
                        trans[y] = compose(s, trans[x])
                        frontier.append(y)
            levels.append((level_gens, trans))
        return levels

    def sift(g, levels, start):
        for k in range(start, len(base)):
            trans = levels[k][1]
            img = g[base[k]]
            if img not in trans:
                return g
            g = compose(inverse(trans[img]), g)
        return g

    levels = build()
    k = 0
    while k < len(base):
        level_gens, trans = levels[k]
        residue = None
        for x, u in trans.items():
            for s in level_gens:
                schreier = compose(inverse(trans[s[x]]), compose(s, u))
                h = sift(schreier, levels, k + 1)
                if h != identity:
                    residue = h
                    break
            if residue is not None:
                break
        if residue is None:
            k += 1
            continue
        strong.append(residue)
        if all(residue[b] == b for b in base):
            base.append(next(i for i in range(n) if residue[i] != i))
        levels = build()
        k = 0
    order = 1
    for _, trans in levels:
        order *= len(trans)
    return order


class _Echelon:
    """Incrementally maintained echelon basis over F_p."""

    def __init__(self, p: int):
        self.p = p
        self.rows = {}  # pivot column -> row normalised to 1 at the pivot

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for c, row in self.rows.items():
            t = v[c]
            if t:
                v = [(a - t * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert v; False if it was already in the span."""
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], -1, self.p)
        v = [x * inv % self.p for x in v]
        for k, row in self.rows.items():
            t = row[c]
            if t:
                self.rows[k] = [(a - t * b) % self.p for a, b in zip(row, v)]
        self.rows[c] = v
        return True


@dataclass(frozen=True)
class FpModule:
    p: int
    dim: int
    action: tuple  # one FpMatrix per generator, acting on column vectors
    tag: str
    n: int = 0

    def spin(self, vectors: Sequence[Sequence[int]]) -> list:
        """Basis of the smallest invariant subspace containing ``vectors``."""
        ech = _Echelon(self.p)
        queue = [tuple(v) for v in vectors if ech.add(v)]
        basis = list(queue)
        while queue:
            v = queue.pop()
            for g in self.action:
                w = g.apply(v)
                if ech.add(w):
                    queue.append(w)
                    basis.append(w)
            if len(basis) == self.dim:
                break
        return basis

    def is_invariant(self, subspace: Sequence[Sequence[int]]) -> bool:
        span = fp_span_basis(subspace, self.p, self.dim)
        for g in self.action:
            images = [g.apply(v) for v in span]
            if len(fp_span_basis(span + images, self.p, self.dim)) != len(span):
                return False
        return True

    def dual(self) -> "FpModule":
        return FpModule(self.p, self.dim, tuple(g.transpose() for g in self.action), self.tag + "*", self.n)


def _lift(tag: str, n: int, k: int) -> list:
    x = [0] * n
    if tag in ("FullPerm", "V"):
        x[k] = 1
    else:  # Deg0 and W lift basis vector k to e_k - e_n
        x[k] = 1
        x[n - 1] -= 1
    return x


def _project(tag: str, n: int, x: Sequence[int], p: int) -> list:
    if tag == "FullPerm":
        return [v % p for v in x]
    if tag == "V":
        return [(x[i] - x[n - 1]) % p for i in range(n - 1)]
    if tag == "Deg0":
        return [x[i] % p for i in range(n - 1)]
    if tag == "W":
        y = x[:n - 1]
        return [(y[j] - y[n - 2]) % p for j in range(n - 2)]
    raise PreconditionError(f"unknown module tag {tag!r}")


_DIMS = {"FullPerm": 0, "Deg0": 1, "V": 1, "W": 2}


def build_module(gens: PermGenerators, p: int, tag: str) -> FpModule:
    require_prime(p)
    n = gens.n
    if tag not in _DIMS:
        raise PreconditionError(f"unknown module tag {tag!r}")
    if tag == "W" and n % p:
        raise PreconditionError(f"W needs p | n (p={p}, n={n})")
    dim = n - _DIMS[tag]
    action = []
    for g in gens.generators:
        cols = []
        for k in range(dim):
            x = _lift(tag, n, k)
            gx = [0] * n
            for i, v in enumerate(x):
                gx[g[i]] = v
            cols.append(_project(tag, n, gx, p))
        action.append(FpMatrix(p, dim, dim, [cols[j][i] for i in range(dim) for j in range(dim)]))
    return FpModule(p, dim, tuple(action), tag, n)


def commutant(M: FpModule):
    """(dimension, basis) of the matrices commuting with every action matrix."""
    d, p = M.dim, M.p
    if not M.action:
        basis = []
        for k in range(d * d):
            e = [0] * (d * d)
            e[k] = 1
            basis.append(FpMatrix(p, d, d, e))
        return d * d, basis
    # unknown theta[a][b] at index a*d + b; equation (theta g - g theta)[i][j] = 0
    rows = []
    for g in M.action:
        G = g.to_rows()
        for i in range(d):
            for j in range(d):
                eq = [0] * (d * d)
                for k in range(d):
                    if G[k][j]:
                        eq[i * d + k] += G[k][j]
                    if G[i][k]:
                        eq[k * d + j] -= G[i][k]
                rows.append(eq)
    A = FpMatrix.from_rows(p, rows, d * d)
    sol = fp_nullspace(A)
    return len(sol), [FpMatrix(p, d, d, v) for v in sol]


# --------------------------------------------------------------------------
# polynomials over F_p for the MeatAxe (ascending coefficient lists)


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(_ptrim(a)) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _ptrim(_pmod(a, b, p))
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _pdiv(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 1)
    while len(_ptrim(a)) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        quot[shift] = c
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
    return _ptrim(quot)


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return _ptrim(result)


def charpoly(A: FpMatrix) -> list:
    """Characteristic polynomial det(xI - A), ascending coefficients (Hessenberg method)."""
    p, n = A.p, A.rows
    H = A.to_rows()
    # reduce to upper Hessenberg form by similarity transforms
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if H[i][k]), None)
        if piv is None:
            continue
        if piv != k + 1:
            H[piv], H[k + 1] = H[k + 1], H[piv]
            for row in H:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        inv = pow(H[k + 1][k], -1, p)
        for i in range(k + 2, n):
            c = H[i][k] * inv % p
            if c:
                for j in range(n):
                    H[i][j] = (H[i][j] - c * H[k + 1][j]) % p
                for row in H:
                    row[k + 1] = (row[k + 1] + c * row[i]) % p
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h_mm) p_{m-1} - sum_i h_im prod_{j=i+1}^{m} h_{j,j-1} p_{i-1}
        pm = _pmul([(-H[m - 1][m - 1]) % p, 1], polys[m - 1], p)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            c = H[i - 1][m - 1] * prod % p
            if c:
                term = [c * x % p for x in polys[i - 1]]
                pm = pm + [0] * (len(term) - len(pm))
                for j, x in enumerate(term):
                    pm[j] = (pm[j] - x) % p
                pm = _ptrim(pm)
        polys.append(pm)
    return polys[n]


def _irreducible_factors_by_degree(f: list, p: int):
    """Distinct-degree factorisation; yields (d, g) where g is the product of
    the monic irreducible factors of degree d of the squarefree part of f."""
    f = _ptrim([x % p for x in f])
    inv = pow(f[-1], -1, p)
    f = [x * inv % p for x in f]
    # squarefree part via gcd with derivative is not needed: we only use
    # factors g of degree d with deg g == d, which are irreducible regardless.
    x = [0, 1]
    h = list(x)
    d = 0
    rest = f
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, rest, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(rest, _ptrim(diff), p)
        if len(g) > 1:
            yield d, g
            while len(g) > 1:
                rest = _pdiv(rest, g, p)
                g = _pgcd(rest, g, p)
            h = _pmod(h, rest, p)
    if len(rest) > 1:
        yield len(rest) - 1, rest


def _poly_at_matrix(f: list, A: FpMatrix) -> FpMatrix:
    n, p = A.rows, A.p
    out = FpMatrix.zeros(p, n, n)
    for c in reversed(f):
        out = out @ A + FpMatrix.identity(p, n).scale(c)
    return out


def _annihilator(basis: Sequence[Sequence[int]], p: int, dim: int) -> list:
    if not basis:
        return [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    return fp_nullspace(FpMatrix.from_rows(p, basis, dim))


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    witness: Optional[tuple]  # basis of a proper nonzero invariant subspace
    trials: int

    def __bool__(self):
        return self.simple


def is_simple(M: FpModule, seed: int = 0, max_trials: int = 200) -> SimplicityResult:
    """MeatAxe irreducibility test (Holt-Rees variant of Norton's criterion).

    Random algebra elements A are drawn; for an irreducible factor f of the
    characteristic polynomial with nullity(f(A)) == deg f, a vector of the
    null space and one of the transposed null space are spun. A proper spin
    yields a witness; two full spins prove simplicity.
    """
    d, p = M.dim, M.p
    if d > DESK_SCALE_DIM:
        raise PreconditionError(f"dimension {d} exceeds desk scale {DESK_SCALE_DIM}")
    if d == 0:
        return SimplicityResult(False, None, 0)
    if d == 1:
        return SimplicityResult(True, None, 0)
    rng = random.Random(seed)
    dual = M.dual()
    identity = FpMatrix.identity(p, d)
    pool = list(M.action) or [identity]
    for trial in range(1, max_trials + 1):
        a, b = rng.choice(pool), rng.choice(pool)
        pool.append(a @ b)
        if len(pool) > 12:
            pool.pop(len(M.action) or 1)
        A = identity.scale(rng.randrange(p))
        for g in pool:
            c = rng.randrange(p)
            if c:
                A = A + g.scale(c)
        for deg, factor in _irreducible_factors_by_degree(charpoly(A), p):
            if len(factor) - 1 != deg:
                continue
            fA = _poly_at_matrix(factor, A)
            null = fp_nullspace(fA)
            v = null[0]
            sub = M.spin([v])
            if len(sub) < d:
                return SimplicityResult(False, tuple(sub), trial)
            null_t = fp_nullspace(fA.transpose())
            w = null_t[0]
            sub_t = dual.spin([w])
            if len(sub_t) < d:
                witness = tuple(_annihilator(sub_t, p, d))
                return SimplicityResult(False, witness, trial)
            if len(null) == deg:
                return SimplicityResult(True, None, trial)
    raise InconclusiveError(f"no verdict after {max_trials} MeatAxe trials")


def validate_witness(M: FpModule, witness: Sequence[Sequence[int]]) -> bool:
    """Witness spans a proper nonzero invariant subspace."""
    span = fp_span_basis(witness, M.p, M.dim)
    return 0 < len(span) < M.dim and M.is_invariant(span)


def is_doubly_transitive(gens: PermGenerators) -> bool:
    if gens.n < 2:
        return True
    return kernels.pair_orbit_count(gens.n, [list(g) for g in gens.generators]) == 1


@dataclass(frozen=True)
class CommutantReport:
    n: int
    p: int
    label: str
    commutant_V: int
    commutant_W: int
    W_simple: bool
    doubly_transitive: bool

    @property
    def passed(self) -> bool:
        return self.commutant_V == 1 and self.commutant_W == 1 and self.W_simple and self.doubly_transitive

    def as_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "group": self.label, "commutant_dim_V": self.commutant_V,
                "commutant_dim_W": self.commutant_W, "W_simple": self.W_simple,
                "doubly_transitive": self.doubly_transitive, "passed": self.passed}


def verify_scalar_commutant(n: int, p: int, label: str, seed: int = 0) -> CommutantReport:
    """Commutant of V is the scalars, with the supporting facts about W."""
    label = LABEL_ALIASES.get(label, label)
    require_prime(p)
    if n % p:
        raise PreconditionError(f"p = {p} does not divide n = {n}")
    if n < 5:
        raise PreconditionError("need n >= 5")
    if label not in (SYMMETRIC, ALTERNATING):
        raise PreconditionError(f"group must be symmetric or alternating, got {label!r}")
    gens = standard_generators(n, label)
    V = build_module(gens, p, "V")
    W = build_module(gens, p, "W")
    cV, _ = commutant(V)
    cW, _ = commutant(W)
    simple = is_simple(W, seed=seed)
    if not simple and simple.witness is not None and not validate_witness(W, simple.witness):
        raise VerificationError("MeatAxe produced an invalid witness")
    return CommutantReport(n, p, label, cV, cW, simple.simple, is_doubly_transitive(gens))


def scalar_matrix_rank(mats: Sequence[FpMatrix]) -> int:
    """Dimension of the span of a list of matrices (as vectors)."""
    if not mats:
        return 0
    p = mats[0].p
    return fp_rank(FpMatrix.from_rows(p, [list(m.entries) for m in mats]))
