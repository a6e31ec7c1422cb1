import json

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjac import curve, multanalysis
from superjac.curve import MultiplicityProfile, make_family
from superjac.errors import PreconditionError, RegimeError, SymmetryObstruction
from superjac.multanalysis import (
    center_verdict,
    endomorphism_certificate,
    invariant_multipliers,
    monotone_constancy,
    orbit_partition,
    units,
)

from oracles import invariant_thresholds

PRIME_POWERS = [p**r for p in (2, 3, 5, 7) for r in range(1, 6) if p**r <= 256]


def prime_of(q):
    return next(p for p in (2, 3, 5, 7) if q % p == 0)


@st.composite
def unit_pairs(draw, exclude_one=True):
    q = draw(st.sampled_from([q for q in PRIME_POWERS if q > 2 or not exclude_one]))
    p = prime_of(q)
    us = units(q, p)
    if exclude_one:
        us = [u for u in us if u != 1]
    return q, p, draw(st.sampled_from(us))


def test_orbit_partition_examples():
    assert set(orbit_partition(9, 3, 8).blocks) == {(1, 8), (2, 7), (4, 5)}
    assert orbit_partition(9, 3, 1).blocks == tuple((u,) for u in (1, 2, 4, 5, 7, 8))
    assert set(orbit_partition(16, 2, 7).blocks) == {(1, 7), (3, 5), (9, 15), (11, 13)}
    with pytest.raises(PreconditionError):
        orbit_partition(9, 3, 3)


@given(unit_pairs(exclude_one=False))
def test_orbit_partition_is_partition(case):
    q, p, k = case
    part = orbit_partition(q, p, k)
    flat = sorted(u for b in part.blocks for u in b)
    assert flat == units(q, p)
    for b in part.blocks:
        assert {u * k % q for u in b} == set(b)


def test_constancy_examples():
    assert monotone_constancy(9, 3, 8).fully_constant
    assert monotone_constancy(27, 3, 4).fully_constant
    res = monotone_constancy(16, 2, 7)
    assert not res.fully_constant
    assert res.forced_constant_prefix == 7
    assert res.witness == {1: 0, 3: 0, 5: 0, 7: 0, 9: 1, 11: 1, 13: 1, 15: 1}
    assert multanalysis.validate_witness(16, 2, 7, res.witness)


@given(unit_pairs())
def test_constancy_matches_threshold_oracle(case):
    """A non-constant invariant monotone function exists iff some step function is invariant."""
    q, p, k = case
    res = monotone_constancy(q, p, k)
    cuts = invariant_thresholds(q, p, k)
    assert res.fully_constant == (not cuts)
    assert len(res.classes) == len(cuts) + 1
    assert [c[0] for c in res.classes[1:]] == cuts
    reps = units(q, p)
    expected_prefix = reps[-1] if not cuts else max(u for u in reps if u < cuts[0])
    assert res.forced_constant_prefix == expected_prefix
    if res.witness is not None:
        assert multanalysis.validate_witness(q, p, k, res.witness)


@given(unit_pairs())
def test_nonincreasing_orientation_mirrors(case):
    q, p, k = case
    up = monotone_constancy(q, p, k)
    down = monotone_constancy(q, p, k, orientation="nonincreasing")
    assert up.classes == down.classes
    if down.witness is not None:
        assert multanalysis.validate_witness(q, p, k, down.witness, orientation="nonincreasing")
        assert not multanalysis.validate_witness(q, p, k, down.witness)


def test_constancy_rejects_bad_input():
    with pytest.raises(PreconditionError):
        monotone_constancy(9, 3, 1)
    with pytest.raises(PreconditionError):
        monotone_constancy(9, 3, 3)
    with pytest.raises(PreconditionError):
        monotone_constancy(9, 3, 2, orientation="sideways")


def test_validate_witness_rejects_bad_functions():
    reps = units(16, 2)
    assert not multanalysis.validate_witness(16, 2, 7, {u: 0 for u in reps})
    assert not multanalysis.validate_witness(16, 2, 7, {u: i for i, u in enumerate(reps)})


@pytest.mark.parametrize("p,r_max", [(3, 5), (5, 3), (7, 2), (2, 8)])
def test_exhaustive_symmetry(p, r_max):
    rep = multanalysis.verify_forced_constancy(p, r_max)
    assert rep.passed
    if p % 2:
        assert rep.fully_constant == rep.cases
    else:
        assert [(q, k) for q, k, _ in rep.sharp_cases] == [(2**r, 2 ** (r - 1) - 1) for r in range(3, 9)]


@given(st.sampled_from(PRIME_POWERS), st.data())
def test_invariant_multipliers_form_subgroup(q, data):
    p = prime_of(q)
    us = units(q, p)
    vals = data.draw(st.lists(st.integers(0, 3), min_size=len(us), max_size=len(us)))
    prof = MultiplicityProfile(q, p, tuple(zip(us, sorted(vals))))
    H = invariant_multipliers(prof)
    assert 1 in H
    assert all(a * b % q in H for a in H for b in H)
    assert all(pow(a, -1, q) in H for a in H)


def test_invariant_multipliers_examples():
    assert invariant_multipliers(curve.multiplicity_profile(make_family(3, 2, 1, 2))) == {1}
    assert invariant_multipliers(curve.multiplicity_profile(make_family(2, 2, 1, 3))) == {1}
    const = MultiplicityProfile(9, 3, tuple((u, 2) for u in units(9, 3)))
    assert invariant_multipliers(const) == set(units(9, 3))


def test_center_verdicts():
    v = center_verdict(make_family(3, 2, 1, 2))
    assert v.center == "Q(zeta_9)" and v.multipliers == (1,)
    assert center_verdict(make_family(2, 2, 1, 3)).center == "Q(zeta_4)"
    const = MultiplicityProfile(9, 3, tuple((u, 2) for u in units(9, 3)))
    with pytest.raises(SymmetryObstruction, match="8"):
        center_verdict(make_family(3, 2, 1, 2), const)
    with pytest.raises(RegimeError):
        center_verdict(make_family(3, 2, 0, 5))


def test_certificate_examples():
    cert = endomorphism_certificate(make_family(3, 2, 1, 2), "Alternating")
    assert cert.ok
    assert cert.conclusion["algebra"] == "Q(zeta_3) x Q(zeta_9)"
    assert [lv["dimension"] for lv in cert.conclusion["levels"]] == [4, 15]
    cert2 = endomorphism_certificate(make_family(2, 3, 1, 3), "SymmetricFull")
    assert cert2.conclusion["algebra"] == "Q(zeta_2) x Q(zeta_4) x Q(zeta_8)"
    assert [lv["dimension"] for lv in cert2.conclusion["levels"]] == [2, 5, 10]
    with pytest.raises(RegimeError):
        endomorphism_certificate(make_family(3, 2, 2, 2), "S")
    with pytest.raises(PreconditionError):
        endomorphism_certificate(make_family(3, 2, 1, 2), "cyclic")


def regime_families(n_max=14):
    return [F for F in curve.grid_families(q_max=27, n_max=n_max) if F.theorem_regime]


@pytest.mark.parametrize("F", regime_families(), ids=lambda F: f"{F.p}-{F.r}-{F.s}-{F.m}")
def test_certificate_on_grid(F):
    cert = endomorphism_certificate(F, "S")
    d = cert.as_dict()
    jsonschema.validate(d, multanalysis.certificate_schema())
    assert json.loads(json.dumps(d)) == d
    assert cert.conclusion["total_dimension"] == curve.genus(F)
    statuses = {c.claim: c.status for c in cert.checks}
    assert statuses["galois_group"] == "cited"
    assert "failed" not in statuses.values()
    commutant = [c for c in cert.checks if c.claim == "galois_commutant_is_scalars"]
    assert all(c.status == ("verified" if F.n <= 10 else "cited") for c in commutant)


def test_certificate_is_deterministic():
    a = endomorphism_certificate(make_family(5, 2, 1, 2), "A", seed=3).as_dict()
    b = endomorphism_certificate(make_family(5, 2, 1, 2), "A", seed=3).as_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
