import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjac import curve
from superjac.curve import CurveFamily, make_family
from superjac.errors import (
    DegreeTooSmallError,
    DivisibleCofactorError,
    MultipleRootsError,
    NonPrimeError,
    RegimeError,
)


@st.composite
def families(draw, require_regime=False, q_max=128, n_max=50):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    r_top = max(1, int(math.log(q_max, p) + 1e-9))
    r = draw(st.integers(2 if require_regime else 1, max(r_top, 2 if require_regime else 1)))
    s = draw(st.integers(1, r - 1)) if require_regime else draw(st.integers(0, 3))
    m = draw(st.integers(1, 12).filter(lambda m: m % p))
    if m * p**s < 2:
        m = 2 if p != 2 else 3
    return CurveFamily(p, r, s, m)


def riemann_hurwitz_genus(n, q):
    """Cover x : C -> P^1 of degree q; ramification e = q over each root and e = q/gcd(n,q) at infinity."""
    t = math.gcd(n, q)
    ram = n * (q - 1) + t * (q // t - 1)
    return (ram - 2 * q + 2) // 2


@given(families())
def test_genus_three_ways(F):
    g = curve.genus(F)
    assert g == len(curve.differential_basis(F))
    assert g == sum(curve.eigenspace_dim(F, i) for i in range(1, F.q))
    assert g == riemann_hurwitz_genus(F.n, F.q)


def test_running_example():
    F = make_family(3, 2, 1, 2)
    assert (F.q, F.n) == (9, 6)
    assert curve.genus(F) == 19
    assert F.infinity_count == 3
    assert curve.multiplicity_profile(F).as_dict() == {1: 0, 2: 1, 4: 2, 5: 3, 7: 4, 8: 5}
    assert curve.d_invariant(F) == 1
    assert curve.dimension_decomposition(F) == [(1, 4), (2, 15)]


def test_other_examples():
    assert curve.genus(make_family(2, 3, 1, 3)) == 17
    assert curve.dimension_decomposition(make_family(2, 3, 1, 3)) == [(1, 2), (2, 5), (3, 10)]
    assert curve.dimension_decomposition(make_family(5, 2, 1, 1)) == [(1, 6), (2, 40)]
    prof = curve.multiplicity_profile(make_family(2, 2, 1, 3)).as_dict()
    assert prof == {1: 1, 3: 4}


@given(families())
def test_profile_nondecreasing_and_symmetric(F):
    prof = curve.multiplicity_profile(F).as_dict()
    vals = list(prof.values())
    assert vals == sorted(vals)
    # n_i + n_(q-i) = n - 1 when q does not divide n i
    for i, v in prof.items():
        if (F.n * i) % F.q:
            assert v + prof[F.q - i] == F.n - 1


@given(families(require_regime=True))
def test_closed_form_multiplicities(F):
    prof = curve.multiplicity_profile(F).as_dict()
    for i, v in curve.closed_form_multiplicities(F).items():
        assert prof[i] == v


@given(families())
def test_decomposition_sums_to_genus(F):
    assert sum(d for _, d in curve.dimension_decomposition(F)) == curve.genus(F)


@given(families())
def test_level_dimensions_match_genus_differences(F):
    prev = 0
    for i, d in curve.dimension_decomposition(F):
        g = curve.genus(F.level(i))
        assert d == g - prev
        prev = g


@given(families(require_regime=True))
def test_birational_maps_are_inverse(F):
    fwd, inv = curve.birational_exponents(F)
    assert fwd.compose(inv).is_identity()
    assert inv.compose(fwd).is_identity()
    assert fwd.det() == 1


@given(families(require_regime=True))
def test_birational_map_separates_infinity(F):
    """Under the substitution y^q / x^n becomes u^(p^s): v drops out, leaving p^s points."""
    fwd, _ = curve.birational_exponents(F)
    (e11, e12), (e21, e22) = fwd.exponents.to_rows()
    assert F.q * e22 - F.n * e12 == 0
    assert F.q * e21 - F.n * e11 == F.p**F.s


@given(families(require_regime=True))
def test_delta_at_infinity(F):
    act = curve.delta_on_infinity(F)
    t = F.p**F.s
    assert act.order() == t and act.is_transitive()
    assert act.stabilizer_exponents(1, upto=F.q) == [k for k in range(F.q) if k % t == 0]
    a, _ = curve.bezout_pair(F.m, F.fiber_multiplier)
    assert act.v_exponent == (-a) % F.q


def test_delta_example():
    act = curve.delta_on_infinity(make_family(3, 2, 1, 2))
    assert act.permutation == (2, 3, 1)
    assert act.v_exponent == 7


def test_validation_errors():
    with pytest.raises(NonPrimeError):
        make_family(4, 2, 1, 2)
    with pytest.raises(DivisibleCofactorError):
        make_family(3, 2, 1, 3)
    with pytest.raises(DegreeTooSmallError):
        make_family(3, 2, 0, 1)
    with pytest.raises(RegimeError):
        curve.birational_exponents(make_family(3, 2, 0, 5))
    with pytest.raises(RegimeError):
        curve.closed_form_multiplicities(make_family(3, 2, 2, 2))


def test_polynomial_ingestion():
    F = curve.family_from_polynomial([-1, -1, 0, 0, 0, 0, 1], 3, 2)
    assert F == make_family(3, 2, 1, 2)
    F2 = curve.family_from_polynomial([Fraction(1, 2)] + [0] * 8 + [3], 3, 3)
    assert (F2.s, F2.m) == (2, 1)
    with pytest.raises(MultipleRootsError):
        curve.family_from_polynomial([1, -2, 1], 3, 2)


def test_grid_contents():
    grid = curve.grid_families()
    assert all(F.q <= 128 and 2 <= F.n <= 50 and F.m % F.p for F in grid)
    assert len(set(grid)) == len(grid)
    brute = sum(1 for p in (2, 3, 5, 7) for r in range(1, 8) if p**r <= 128
                for n in range(2, 51) for s in range(0, 6)
                if n % p**s == 0 and (n // p**s) % p)
    assert len(grid) == brute
