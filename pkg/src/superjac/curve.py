"""Closed-form invariants of the superelliptic family y^q = f(x).

A family is the tuple (p, r, s, m) with q = p^r and n = deg f = m p^s,
p not dividing m. Roots of f are abstract labels 1..n; nothing here needs
their numeric values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import IntMatrix, bezout_pair, qpoly_derivative, qpoly_gcd, require_prime, strict_floor
from .errors import (
    ConsistencyError,
    DegreeTooSmallError,
    DivisibleCofactorError,
    MultipleRootsError,
    PreconditionError,
    RegimeError,
)


@dataclass(frozen=True)
class CurveFamily:
    p: int
    r: int
    s: int
    m: int
    leading_coefficient: Optional[Fraction] = field(default=None, compare=False)

    def __post_init__(self):
        require_prime(self.p)
        if self.r < 1:
            raise PreconditionError("r must be at least 1")
        if self.s < 0:
            raise PreconditionError("s must be nonnegative")
        if self.m < 1:
            raise PreconditionError("m must be positive")
        if self.m % self.p == 0:
            raise DivisibleCofactorError(f"p = {self.p} divides m = {self.m}")
        if self.n < 2:
            raise DegreeTooSmallError(f"n = {self.n} < 2")

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def n(self) -> int:
        return self.m * self.p ** self.s

    @property
    def theorem_regime(self) -> bool:
        return self.n >= 5 and 0 < self.s < self.r

    @property
    def infinity_count(self) -> int:
        """gcd(n, q) = p^min(s, r); equals p^s when s <= r."""
        return math.gcd(self.n, self.q)

    @property
    def fiber_multiplier(self) -> int:
        """q / gcd(n, q); equals p^(r-s) when s < r."""
        return self.q // self.infinity_count

    def require_regime(self, what: str = "this operation") -> None:
        if not 0 < self.s < self.r:
            raise RegimeError(f"{what} requires 0 < s < r (got s={self.s}, r={self.r})")

    def level(self, i: int) -> "CurveFamily":
        """The family y^(p^i) = f(x) with the same f."""
        return CurveFamily(self.p, i, self.s, self.m, self.leading_coefficient)

    def as_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "s": self.s, "m": self.m, "q": self.q, "n": self.n,
                "theorem_regime": self.theorem_regime}


def make_family(p: int, r: int, s: int, m: int, leading_coefficient=None) -> CurveFamily:
    return CurveFamily(p, r, s, m, None if leading_coefficient is None else Fraction(leading_coefficient))


def family_from_polynomial(coefficients: Sequence, p: int, r: int) -> CurveFamily:
    """Build the family of y^(p^r) = f(x) from the ascending coefficients of f.

    Rejects f with repeated roots. The Galois group of f is not examined.
    """
    require_prime(p)
    f = [Fraction(c) for c in coefficients]
    while f and f[-1] == 0:
        f.pop()
    if len(f) < 3:
        raise DegreeTooSmallError("f must have degree at least 2")
    g = qpoly_gcd(f, qpoly_derivative(f))
    if len(g) > 1:
        raise MultipleRootsError(f"f has repeated roots (gcd with f' has degree {len(g) - 1})")
    n = len(f) - 1
    s = 0
    while n % p == 0:
        n //= p
        s += 1
    return make_family(p, r, s, n, f[-1])


def genus(F: CurveFamily) -> int:
    return ((F.q - 1) * (F.n - 1) + 1 - F.infinity_count) // 2


@dataclass(frozen=True)
class Point:
    """A branch point P_index (kind "P") or a point at infinity (kind "inf")."""

    kind: str
    index: int

    @classmethod
    def branch(cls, i: int) -> "Point":
        return cls("P", i)

    @classmethod
    def infinity(cls, j: int) -> "Point":
        return cls("inf", j)

    @property
    def is_branch(self) -> bool:
        return self.kind == "P"

    @property
    def u_exponent(self) -> int:
        """For infinity_j: u = zeta^j where zeta is a primitive root of the fiber size."""
        if self.is_branch:
            raise PreconditionError("branch points have no u-coordinate at infinity")
        return self.index

    def sort_key(self):
        return (0 if self.is_branch else 1, self.index)

    def __str__(self):
        return f"P_{self.index}" if self.is_branch else f"inf_{self.index}"


def infinity_points(F: CurveFamily) -> list:
    return [Point.infinity(j) for j in range(1, F.infinity_count + 1)]


@dataclass(frozen=True)
class InfinityAction:
    """delta_q on the points at infinity: j -> permutation[j-1], and v -> zeta_q^v_exponent v."""

    permutation: tuple
    v_exponent: Optional[int]

    def power(self, k: int) -> tuple:
        t = len(self.permutation)
        return tuple((j + k) % t + 1 for j in range(t))

    def order(self) -> int:
        return len(self.permutation)

    def stabilizer_exponents(self, point: int = 1, upto: Optional[int] = None) -> list:
        """Exponents k in [0, upto) with shift^k fixing ``point``."""
        upto = upto if upto is not None else len(self.permutation)
        return [k for k in range(upto) if self.power(k)[point - 1] == point]

    def is_transitive(self) -> bool:
        t = len(self.permutation)
        orbit = {1}
        j = 1
        for _ in range(t):
            j = self.permutation[j - 1]
            orbit.add(j)
        return len(orbit) == t


def delta_on_infinity(F: CurveFamily) -> InfinityAction:
    t = F.infinity_count
    perm = tuple(j % t + 1 for j in range(1, t + 1))
    v_exp = None
    if F.s < F.r:
        a, _ = bezout_pair(F.m, F.fiber_multiplier)
        v_exp = (-a) % F.q
    return InfinityAction(perm, v_exp)


@dataclass(frozen=True)
class MonomialMap:
    """(out1, out2) = (in1^e11 in2^e12, in1^e21 in2^e22)."""

    exponents: IntMatrix

    def compose(self, inner: "MonomialMap") -> "MonomialMap":
        """self after inner."""
        return MonomialMap(self.exponents @ inner.exponents)

    def det(self) -> int:
        return self.exponents.det()

    def is_identity(self) -> bool:
        return self.exponents == IntMatrix.identity(2)


def birational_exponents(F: CurveFamily):
    """Monomial maps (u, v) -> (x, y) and back that move infinity to v = 0."""
    F.require_regime("birational_exponents")
    a, b = bezout_pair(F.m, F.fiber_multiplier)
    P = F.fiber_multiplier
    forward = MonomialMap(IntMatrix.from_rows([[-a, -P], [b, -F.m]]))
    inverse = MonomialMap(IntMatrix.from_rows([[-F.m, P], [-b, -a]]))
    return forward, inverse


def differential_basis(F: CurveFamily) -> list:
    """Exponent pairs (i, j) of the holomorphic differentials x^(j-1) dx / y^(q-i)."""
    n, q = F.n, F.q
    return [(i, j) for i in range(1, q) for j in range(1, n) if n * i + q * j < n * q]


def eigenspace_dim(F: CurveFamily, i: int) -> int:
    """Multiplicity n_i of the eigenvalue zeta_q^(-i)."""
    if not 0 < i < F.q:
        raise PreconditionError(f"i = {i} outside (0, {F.q})")
    return strict_floor(Fraction(F.n * i, F.q))


@dataclass(frozen=True)
class MultiplicityProfile:
    """n_i on the representatives 0 < i < q prime to p."""

    q: int
    p: int
    values: tuple  # ((i, n_i), ...) in increasing i

    def __post_init__(self):
        vals = [v for _, v in self.values]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise ConsistencyError("multiplicity profile is not nondecreasing")

    @classmethod
    def from_mapping(cls, q: int, p: int, mapping: dict) -> "MultiplicityProfile":
        return cls(q, p, tuple(sorted(mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.values)

    def __getitem__(self, i: int) -> int:
        return self.as_dict()[i % self.q]

    @property
    def units(self) -> list:
        return [i for i, _ in self.values]


def multiplicity_profile(F: CurveFamily) -> MultiplicityProfile:
    return MultiplicityProfile(
        F.q, F.p, tuple((i, eigenspace_dim(F, i)) for i in range(1, F.q) if i % F.p))


def closed_form_multiplicities(F: CurveFamily) -> dict:
    """Predicted n_1, n_(P+1), n_(P-1) from m = kP + c with P = p^(r-s), 0 < c < P."""
    F.require_regime("closed_form_multiplicities")
    P = F.fiber_multiplier
    k, c = divmod(F.m, P)
    return {1: k, P + 1: k * P + k + c, P - 1: k * P - k + c - 1}


def d_invariant(F: CurveFamily) -> int:
    """gcd of all n_i over units i; checked against the closed forms when 0 < s < r."""
    prof = multiplicity_profile(F).as_dict()
    d = 0
    for v in prof.values():
        d = math.gcd(d, v)
    if 0 < F.s < F.r:
        for i, expected in closed_form_multiplicities(F).items():
            if prof[i] != expected:
                raise ConsistencyError(f"n_{i} = {prof[i]} but closed form gives {expected}")
        if F.theorem_regime and d != 1:
            raise ConsistencyError(f"d(n, q) = {d} != 1")
    return d


def level_dimension(p: int, i: int, s: int, n: int) -> int:
    """Dimension of the new part of the Jacobian at level p^i."""
    phi = p**i - p ** (i - 1)
    if i > s:
        return phi * (n - 1) // 2
    return phi * (n - 2) // 2


def dimension_decomposition(F: CurveFamily) -> list:
    """[(i, dim of the level-p^i factor)] for i = 1..r; the dimensions sum to the genus."""
    return [(i, level_dimension(F.p, i, F.s, F.n)) for i in range(1, F.r + 1)]


def grid_families(primes=(2, 3, 5, 7), q_max: int = 128, n_max: int = 50, n_min: int = 2):
    """Every valid family with p in ``primes``, q <= q_max and n_min <= n <= n_max."""
    out = []
    for p in primes:
        r = 1
        while p**r <= q_max:
            s = 0
            while p**s <= n_max:
                for m in range(1, n_max // p**s + 1):
                    if m % p and n_min <= m * p**s:
                        out.append(CurveFamily(p, r, s, m))
                s += 1
            r += 1
    return out
