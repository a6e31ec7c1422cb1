"""Divisors supported on the branch points and the points at infinity.

Branch points P_1..P_n are the delta_q-fixed points (alpha_i, 0); the points
at infinity inf_1..inf_t (t = gcd(n, q)) are permuted cyclically by delta_q.
Divisor classes of degree 0 supported on the branch points form Pic^0_B,
computed here as an explicit finite abelian group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .arith import (
    AbelianGroupStructure,
    FpMatrix,
    IntMatrix,
    IntPoly,
    bezout_pair,
    cyclotomic_P,
    fp_nullspace,
    fp_rank,
    hermite_normal_form,
    integer_kernel,
    lattice_contains,
    smith_normal_form,
)
from .curve import CurveFamily, Point, level_dimension
from .errors import ConsistencyError, PreconditionError, VerificationError


class Divisor:
    """Finite formal sum of points with integer coefficients (immutable)."""

    __slots__ = ("family", "_coeffs")

    def __init__(self, family: CurveFamily, coefficients: Mapping[Point, int] = ()):
        items = dict(coefficients)
        for pt in items:
            _check_point(family, pt)
        self.family = family
        self._coeffs = tuple(sorted(((pt, int(c)) for pt, c in items.items() if c),
                                    key=lambda kv: kv[0].sort_key()))

    @classmethod
    def from_branch_vector(cls, family: CurveFamily, vector: Sequence[int]) -> "Divisor":
        if len(vector) != family.n:
            raise PreconditionError("branch vector has wrong length")
        return cls(family, {Point.branch(i + 1): c for i, c in enumerate(vector)})

    @classmethod
    def point(cls, family: CurveFamily, pt: Point, c: int = 1) -> "Divisor":
        return cls(family, {pt: c})

    @property
    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def __getitem__(self, pt: Point) -> int:
        return self.coefficients.get(pt, 0)

    def degree(self) -> int:
        return sum(c for _, c in self._coeffs)

    def support(self) -> list:
        return [pt for pt, _ in self._coeffs]

    def supported_on_branch(self) -> bool:
        return all(pt.is_branch for pt, _ in self._coeffs)

    def branch_vector(self) -> list:
        v = [0] * self.family.n
        for pt, c in self._coeffs:
            if pt.is_branch:
                v[pt.index - 1] = c
        return v

    def infinity_vector(self) -> list:
        v = [0] * self.family.infinity_count
        for pt, c in self._coeffs:
            if not pt.is_branch:
                v[pt.index - 1] = c
        return v

    def full_vector(self) -> list:
        """Coefficients on (P_1..P_n, inf_1..inf_t)."""
        return self.branch_vector() + self.infinity_vector()

    def _same(self, other):
        if not isinstance(other, Divisor) or other.family != self.family:
            raise PreconditionError("divisors on different families")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._same(other)
        out = self.coefficients
        for pt, c in other._coeffs:
            out[pt] = out.get(pt, 0) + c
        return Divisor(self.family, out)

    def __neg__(self) -> "Divisor":
        return Divisor(self.family, {pt: -c for pt, c in self._coeffs})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor(self.family, {pt: k * c for pt, c in self._coeffs})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.family == other.family and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.family, self._coeffs))

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{c}({pt})" for pt, c in self._coeffs) + ")"


def _check_point(F: CurveFamily, pt: Point):
    bound = F.n if pt.is_branch else F.infinity_count
    if not 1 <= pt.index <= bound:
        raise PreconditionError(f"{pt} out of range for this family")


def _branch_sum(F: CurveFamily) -> dict:
    return {Point.branch(k): 1 for k in range(1, F.n + 1)}


def _infinity_sum(F: CurveFamily) -> dict:
    return {Point.infinity(j): 1 for j in range(1, F.infinity_count + 1)}


def _unit_pair(F: CurveFamily):
    """(a, b) with a*(n/t) + b*(q/t) = 1; this is bezout_pair(m, p^(r-s)) when s < r."""
    return bezout_pair(F.n // F.infinity_count, F.fiber_multiplier)


def div_x_minus_alpha(F: CurveFamily, i: int) -> Divisor:
    """div(x - alpha_i) = q (P_i) - (q/t) sum_j (inf_j)."""
    if not 1 <= i <= F.n:
        raise PreconditionError(f"branch index {i} out of range")
    coeffs = {pt: -F.fiber_multiplier for pt in _infinity_sum(F)}
    coeffs[Point.branch(i)] = F.q
    return Divisor(F, coeffs)


def div_unit_combo(F: CurveFamily, i: int) -> Divisor:
    """div(y^a (x - alpha_i)^b) = a sum_k (P_k) + b q (P_i) - sum_j (inf_j)."""
    if not 1 <= i <= F.n:
        raise PreconditionError(f"branch index {i} out of range")
    a, b = _unit_pair(F)
    coeffs = {pt: a for pt in _branch_sum(F)}
    coeffs[Point.branch(i)] += b * F.q
    for pt in _infinity_sum(F):
        coeffs[pt] = -1
    return Divisor(F, coeffs)


def delta_pushforward(F: CurveFamily, D: Divisor) -> Divisor:
    t = F.infinity_count
    out = {}
    for pt, c in D.coefficients.items():
        out[pt if pt.is_branch else Point.infinity(pt.index % t + 1)] = c
    return Divisor(F, out)


def apply_cyclic_poly(F: CurveFamily, poly: IntPoly, D: Divisor) -> Divisor:
    """sum_k c_k delta^k (D) for poly = sum_k c_k t^k."""
    acc = Divisor(F)
    power = D
    for k, c in enumerate(poly.coefficients):
        if k:
            power = delta_pushforward(F, power)
        if c:
            acc = acc + c * power
    return acc


def _default_pivot(D: Divisor) -> int:
    best = None
    for pt, c in D.coefficients.items():
        if pt.is_branch and (best is None or c > best[0] or (c == best[0] and pt.index < best[1])):
            best = (c, pt.index)
    return 1 if best is None else best[1]


def eliminate_infinity(F: CurveFamily, D: Divisor, pivot: Optional[int] = None) -> Divisor:
    """Linearly equivalent divisor on the branch points.

    Needs the same coefficient w on every point at infinity; w * sum_j (inf_j)
    is replaced by w (a sum_k (P_k) + b q (P_pivot)).
    """
    inf = D.infinity_vector()
    if len(set(inf)) != 1:
        raise PreconditionError("infinity coefficients are not all equal")
    w = inf[0]
    if w == 0:
        return D
    if pivot is None:
        pivot = _default_pivot(D)
    return D + w * div_unit_combo(F, pivot)


def is_principal_on_B(F: CurveFamily, D: Divisor) -> bool:
    """Degree-0 divisor on the branch points: principal iff all coefficients agree mod q."""
    if not D.supported_on_branch():
        raise PreconditionError("divisor meets the points at infinity")
    if D.degree() != 0:
        raise PreconditionError("divisor has nonzero degree")
    v = D.branch_vector()
    return all((c - v[0]) % F.q == 0 for c in v)


def principal_lattice_oracle(F: CurveFamily) -> IntMatrix:
    """Divisors of explicit functions supported on the branch points.

    Rows q(e_i - e_j) come from (x - alpha_i)/(x - alpha_j); rows
    (q/t) sum_k e_k - (n/t) q e_i come from y^(q/t) / (x - alpha_i)^(n/t).
    """
    n, q = F.n, F.q
    P, mm = F.fiber_multiplier, n // F.infinity_count
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = q, -q
            rows.append(v)
    for i in range(n):
        v = [P] * n
        v[i] -= mm * q
        rows.append(v)
    return IntMatrix.from_rows(rows, n)


@lru_cache(maxsize=256)
def _oracle_hnf(F: CurveFamily) -> tuple:
    M = principal_lattice_oracle(F)
    return tuple(tuple(r) for r in hermite_normal_form(M.to_rows(), F.n))


def oracle_contains(F: CurveFamily, vector: Sequence[int]) -> bool:
    return lattice_contains(_oracle_hnf(F), vector)


@lru_cache(maxsize=256)
def congruence_lattice_basis(F: CurveFamily) -> tuple:
    """Basis of {v : sum v = 0, all v_i congruent mod q}, built as the
    degree-zero part of Z*1 + q Z^n."""
    n, q = F.n, F.q
    gens = [[1] * n] + [[q if j == i else 0 for j in range(n)] for i in range(n)]
    B = hermite_normal_form(gens, n)
    degrees = IntMatrix.from_rows([[sum(row)] for row in B], 1)
    basis = []
    for x in integer_kernel(degrees):
        basis.append(tuple(sum(x[k] * B[k][j] for k in range(len(B))) for j in range(n)))
    return tuple(basis)


def lattices_agree(F: CurveFamily) -> bool:
    """Hermite forms of the explicit-function lattice and the congruence lattice coincide."""
    crit = hermite_normal_form([list(v) for v in congruence_lattice_basis(F)], F.n)
    return [list(r) for r in _oracle_hnf(F)] == crit


@dataclass(frozen=True)
class PicardStructure:
    """Pic^0_B as an explicit group.

    Degree-0 branch vectors are written in the basis e_i - e_n (i < n), so a
    vector's coordinates are its first n-1 entries. ``transform`` (the right
    Smith transform) sends coordinates x to x @ transform, whose entries are
    read modulo ``diagonal``.
    """

    group: AbelianGroupStructure
    p: int
    p_rank: int
    diagonal: tuple
    transform: IntMatrix

    def coordinates(self, D: Divisor) -> tuple:
        if not D.supported_on_branch() or D.degree() != 0:
            raise PreconditionError("need a degree-0 divisor on the branch points")
        x = D.branch_vector()[:-1]
        T = self.transform
        y = [sum(x[k] * T[k, j] for k in range(T.rows)) for j in range(T.cols)]
        return tuple(yj % d if d else yj for yj, d in zip(y, self.diagonal))

    def is_zero(self, D: Divisor) -> bool:
        return not any(self.coordinates(D))

    def p_torsion_coordinates(self, D: Divisor) -> tuple:
        """F_p coordinates of a p-torsion class in Pic^0_B[p]."""
        out = []
        for y, d in zip(self.coordinates(D), self.diagonal):
            if d and d % self.p == 0:
                step = d // self.p
                if y % step:
                    raise VerificationError("class is not p-torsion")
                out.append(y // step)
            elif y:
                raise VerificationError("class is not p-torsion")
        return tuple(out)

    def as_dict(self) -> dict:
        return {"invariant_factors": list(self.group.invariant_factors),
                "free_rank": self.group.free_rank, "p": self.p, "p_rank": self.p_rank,
                "order": self.group.order}


@lru_cache(maxsize=256)
def picard_structure(F: CurveFamily) -> PicardStructure:
    """Degree-0 branch divisors modulo the principal ones (congruence criterion)."""
    n = F.n
    rows = [list(v[:-1]) for v in congruence_lattice_basis(F)]
    M = IntMatrix.from_rows(rows, n - 1)
    group, U, V = smith_normal_form(M)
    D = U @ M @ V
    diag = tuple(D[i, i] if i < D.rows else 0 for i in range(n - 1))
    return PicardStructure(group, F.p, group.p_rank(F.p), diag, V)


def build_D_classes(F: CurveFamily) -> list:
    """D_i = P_{q/p}(delta)((P_i) - (inf_1)), moved onto the branch points."""
    F.require_regime("build_D_classes")
    P = cyclotomic_P(F.p, F.r - 1) if F.r > 1 else IntPoly((1,))
    out = []
    for i in range(1, F.n + 1):
        base = Divisor(F, {Point.branch(i): 1, Point.infinity(1): -1})
        out.append(eliminate_infinity(F, apply_cyclic_poly(F, P, base), pivot=i))
    return out


def D_class_closed_form(F: CurveFamily, i: int) -> Divisor:
    """a m p^(r-1) (P_i) - a p^(r-s-1) sum_k (P_k)."""
    F.require_regime("D_class_closed_form")
    a, _ = bezout_pair(F.m, F.fiber_multiplier)
    p, r, s = F.p, F.r, F.s
    coeffs = {pt: -a * p ** (r - s - 1) for pt in _branch_sum(F)}
    coeffs[Point.branch(i)] += a * F.m * p ** (r - 1)
    return Divisor(F, coeffs)


def has_order_exactly_p(F: CurveFamily, D: Divisor) -> bool:
    return not is_principal_on_B(F, D) and is_principal_on_B(F, F.p * D)


@dataclass(frozen=True)
class PiMap:
    matrix: FpMatrix
    kernel: tuple
    rank: int


def pi_matrix_and_kernel(F: CurveFamily) -> PiMap:
    """The map phi_i -> class of D_i from F_p^n to Pic^0_B[p], in F_p coordinates."""
    F.require_regime("pi_matrix_and_kernel")
    pic = picard_structure(F)
    cols = [pic.p_torsion_coordinates(D) for D in build_D_classes(F)]
    rows = [[c[k] for c in cols] for k in range(pic.p_rank)]
    A = FpMatrix.from_rows(F.p, rows, F.n)
    return PiMap(A, tuple(fp_nullspace(A)), fp_rank(A))


def permute_branch_labels(D: Divisor, sigma: Sequence[int]) -> Divisor:
    """Relabel P_i as P_sigma[i-1] (sigma a 1-based permutation of 1..n)."""
    out = {}
    for pt, c in D.coefficients.items():
        out[Point.branch(sigma[pt.index - 1]) if pt.is_branch else pt] = c
    return Divisor(D.family, out)


@dataclass(frozen=True)
class TorsionRankReport:
    dimension: int
    tate_rank: int
    lambda_dimension: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.tate_rank == self.lambda_dimension == self.expected


def torsion_rank_identities(F: CurveFamily) -> TorsionRankReport:
    """Tate-module rank 2 dim / [Q(zeta_q):Q] against n - 1 and the lambda-torsion dimension."""
    F.require_regime("torsion_rank_identities")
    dim = level_dimension(F.p, F.r, F.s, F.n)
    degree = F.p**F.r - F.p ** (F.r - 1)
    if (2 * dim) % degree:
        raise ConsistencyError("Tate rank is not an integer")
    return TorsionRankReport(dim, 2 * dim // degree, picard_structure(F).p_rank, F.n - 1)
