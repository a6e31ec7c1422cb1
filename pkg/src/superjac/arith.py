"""Exact arithmetic substrate.

Big integers (Python ``int``) are used throughout; nothing here ever rounds.
Contents: strict floor, dense integer polynomials and the cyclotomic
polynomials of prime-power order, the Bezout pair used by the curve
coordinates, integer matrices with Smith and Hermite normal forms, and dense
linear algebra over F_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import NonPrimeError, PreconditionError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrimeError(f"{p!r} is not prime")


def strict_floor(z) -> int:
    """Greatest integer strictly less than ``z`` (z rational)."""
    z = Fraction(z)
    f = math.floor(z)
    return f - 1 if f == z else f


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, coefficients in ascending degree order."""

    coefficients: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-x for x in self.coefficients))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def divmod_monic(self, divisor: "IntPoly"):
        """Long division by a monic divisor; returns (quotient, remainder)."""
        d = divisor.coefficients
        if not d or d[-1] != 1:
            raise PreconditionError("divisor must be monic")
        rem = list(self.coefficients)
        dd = len(d) - 1
        if len(rem) <= dd:
            return IntPoly(()), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for j in range(dd + 1):
                    rem[k - dd + j] -= c * d[j]
        return IntPoly(tuple(quot)), IntPoly(tuple(rem))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mon and abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}{mon}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def cyclotomic_P(p: int, r: int) -> IntPoly:
    """(x^q - 1)/(x - 1) = 1 + x + ... + x^(q-1) with q = p^r."""
    require_prime(p)
    if r < 1:
        raise PreconditionError("r must be positive")
    return IntPoly((1,) * p**r)


def cyclotomic_Phi(p: int, i: int) -> IntPoly:
    """The p^i-th cyclotomic polynomial, sum_{j<p} x^(j p^(i-1))."""
    require_prime(p)
    if i < 1:
        raise PreconditionError("i must be positive")
    step = p ** (i - 1)
    c = [0] * ((p - 1) * step + 1)
    for j in range(p):
        c[j * step] = 1
    return IntPoly(tuple(c))


def bezout_pair(m: int, M: int) -> tuple:
    """(a, b) with a*m + b*M = 1 and 0 < a < M (M > 1); (1, 1 - m) when M = 1."""
    if m < 1 or M < 1:
        raise PreconditionError("m and M must be positive")
    if math.gcd(m, M) != 1:
        raise PreconditionError(f"gcd({m}, {M}) != 1")
    if M == 1:
        return 1, 1 - m
    a = pow(m, -1, M)
    b = (1 - a * m) // M
    return a, b


# rational polynomials, only what squarefree ingestion needs


def _qpoly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def qpoly_derivative(coeffs: Sequence) -> list:
    return _qpoly_trim([Fraction(k) * c for k, c in enumerate(coeffs)][1:])


def qpoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd of two polynomials with rational coefficients."""
    a = _qpoly_trim(Fraction(x) for x in a)
    b = _qpoly_trim(Fraction(x) for x in b)
    while b:
        r = list(a)
        db = len(b) - 1
        while len(r) - 1 >= db and r:
            c = r[-1] / b[-1]
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            r = _qpoly_trim(r)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


# --------------------------------------------------------------------------
# integer matrices


class IntMatrix:
    """Dense row-major integer matrix (immutable)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if len(entries) != rows * cols:
            raise PreconditionError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise PreconditionError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise PreconditionError("shape mismatch")
        A, B = self.to_rows(), other.to_rows()
        out = []
        for row in A:
            for j in range(other.cols):
                out.append(sum(row[k] * B[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()})"

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise PreconditionError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        A = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                for i in range(k + 1, n):
                    if A[i][k]:
                        A[k], A[i] = A[i], A[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i > 1."""

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(d <= 1 for d in f):
            raise PreconditionError("invariant factors must exceed 1")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise PreconditionError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise PreconditionError("negative free rank")

    @property
    def order(self):
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    def p_rank(self, p: int) -> int:
        """Dimension of the p-torsion over F_p (free part excluded)."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, c):
    """row dst += c * row src"""
    rs, rd = A[src], A[dst]
    for k in range(len(rd)):
        rd[k] += c * rs[k]


def _add_col(A, dst, src, c):
    for row in A:
        row[dst] += c * row[src]


def smith_normal_form(M: IntMatrix):
    """Smith normal form with unimodular transforms.

    Returns ``(group, U, V)`` with ``U @ M @ V`` diagonal, the diagonal a
    divisibility chain of nonnegative integers. ``group`` is the cokernel of
    x -> x M, i.e. Z^cols modulo the lattice spanned by the rows of M.
    """
    m, n = M.rows, M.cols
    A = M.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()
    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of least absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(A, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(A, t, pj)
            _swap_cols(V, t, pj)
        dirty = False
        piv = A[t][t]
        for i in range(t + 1, m):
            if A[i][t]:
                c = -(A[i][t] // piv)
                _add_row(A, i, t, c)
                _add_row(U, i, t, c)
                dirty = dirty or A[i][t] != 0
        for j in range(t + 1, n):
            if A[t][j]:
                c = -(A[t][j] // piv)
                _add_col(A, j, t, c)
                _add_col(V, j, t, c)
                dirty = dirty or A[t][j] != 0
        if dirty:
            continue
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            _add_row(A, t, bad, 1)
            _add_row(U, t, bad, 1)
            continue
        if piv < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    rank = sum(1 for d in diag if d)
    group = AbelianGroupStructure(tuple(d for d in diag if d > 1), n - rank)
    return group, IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n)


def smith_diagonal(M: IntMatrix) -> list:
    _, U, V = smith_normal_form(M)
    D = U @ M @ V
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def integer_kernel(M: IntMatrix) -> list:
    """Basis of the left kernel {x in Z^rows : x M = 0}."""
    _, U, V = smith_normal_form(M)
    D = U @ M @ V
    rank = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])
    return [U.to_rows()[i] for i in range(rank, M.rows)]


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Rows are in echelon form with positive pivots; entries above each pivot
    are reduced into [0, pivot). Zero rows are dropped.
    """
    A = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        # gcd-combine column c over rows r.. into row r
        live = [i for i in range(r, len(A)) if A[i][c]]
        if not live:
            continue
        while True:
            live = [i for i in range(r, len(A)) if A[i][c]]
            if len(live) == 1:
                break
            k = min(live, key=lambda i: abs(A[i][c]))
            for i in live:
                if i != k:
                    _add_row(A, i, k, -(A[i][c] // A[k][c]))
        k = live[0]
        _swap_rows(A, r, k)
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            if A[i][c]:
                _add_row(A, i, r, -(A[i][c] // A[r][c]))
        r += 1
    return [row for row in A[:r]]


def lattice_contains(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice whose Hermite normal form is ``hnf``."""
    v = list(v)
    lead = {next(c for c, x in enumerate(row) if x): row for row in hnf}
    for c in range(len(v)):
        row = lead.get(c)
        if row is None:
            if v[c]:
                return False
            continue
        if v[c] % row[c]:
            return False
        coef = v[c] // row[c]
        if coef:
            v = [a - coef * b for a, b in zip(v, row)]
    return True


# --------------------------------------------------------------------------
# linear algebra over F_p


class FpMatrix:
    """Dense matrix over the prime field F_p, entries reduced into [0, p)."""

    __slots__ = ("p", "rows", "cols", "entries")

    def __init__(self, p: int, rows: int, cols: int, entries: Iterable[int]):
        require_prime(p)
        entries = tuple(int(x) % p for x in entries)
        if len(entries) != rows * cols:
            raise PreconditionError("entry count does not match shape")
        self.p = p
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> "FpMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise PreconditionError("ragged rows")
        return cls(p, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def columns(self) -> list:
        return [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.cols, self.rows,
                        [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def _check(self, other):
        if not isinstance(other, FpMatrix) or other.p != self.p:
            raise PreconditionError("matrices over different fields")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise PreconditionError("shape mismatch")
        p = self.p
        B = other.to_rows()
        out = []
        for row in self.to_rows():
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    bk = B[k]
                    for j in range(other.cols):
                        acc[j] += a * bk[j]
            out.extend(x % p for x in acc)
        return FpMatrix(p, self.rows, other.cols, out)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self.rows, self.cols,
                        [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self.rows, self.cols,
                        [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.rows, self.cols, [c * a for a in self.entries])

    def apply(self, v: Sequence[int]) -> tuple:
        """Matrix times column vector."""
        p = self.p
        c = self.cols
        return tuple(sum(self.entries[i * c + j] * v[j] for j in range(c)) % p
                     for i in range(self.rows))

    def __eq__(self, other):
        return (isinstance(other, FpMatrix) and self.p == other.p and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.p, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.to_rows()})"

    def rank(self) -> int:
        return fp_rank(self)


def fp_rref(A: FpMatrix):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    return kernels.fp_row_reduce(A.to_rows(), A.cols, A.p)


def fp_rank(A: FpMatrix) -> int:
    return len(fp_rref(A)[1])


def fp_nullspace(A: FpMatrix) -> list:
    """Basis of {x : A x = 0} as tuples; its length is cols - rank(A)."""
    R, pivots = fp_rref(A)
    p = A.p
    pivset = set(pivots)
    basis = []
    for f in range(A.cols):
        if f in pivset:
            continue
        x = [0] * A.cols
        x[f] = 1
        for k, c in enumerate(pivots):
            x[c] = (-R[k][f]) % p
        basis.append(tuple(x))
    return basis


def fp_span_basis(vectors: Sequence[Sequence[int]], p: int, dim: int) -> list:
    """Echelon basis of the span of ``vectors`` in F_p^dim."""
    if not vectors:
        return []
    R, _ = kernels.fp_row_reduce([list(v) for v in vectors], dim, p)
    return [tuple(r) for r in R]
