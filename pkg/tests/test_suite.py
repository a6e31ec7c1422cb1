import random

from superjac import curve, divisor, multanalysis, suite
from superjac.curve import make_family


def test_sampler_mixes_principal_and_not():
    rng = random.Random(0)
    F = make_family(3, 2, 1, 2)
    prin = [suite._random_principal(rng, F.n, F.q) for _ in range(200)]
    rand = [suite._random_degree_zero(rng, F.n, F.q) for _ in range(200)]
    assert all(sum(v) == 0 for v in prin + rand)
    assert all(divisor.oracle_contains(F, v) for v in prin)
    assert not all(divisor.oracle_contains(F, v) for v in rand)


def test_principal_oracle_catches_a_wrong_criterion(monkeypatch):
    monkeypatch.setattr(divisor, "is_principal_on_B", lambda F, D: False)
    res = suite.run_criterion(4, q_max=9, n_max=6)
    assert not res.passed


def test_decomposition_catches_a_wrong_level_formula(monkeypatch):
    monkeypatch.setattr(curve, "dimension_decomposition",
                        lambda F: [(i, curve.level_dimension(F.p, i, F.s + 1, F.n)) for i in range(1, F.r + 1)])
    assert not suite.run_criterion(2, q_max=27, n_max=12).passed


def test_multiplier_criterion_catches_symmetric_profiles(monkeypatch):
    monkeypatch.setattr(multanalysis, "invariant_multipliers", lambda prof, p=None: {1, prof.q - 1})
    assert not suite.run_criterion(8, q_max=27, n_max=12).passed


def test_crash_is_reported_as_failure(monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(curve, "birational_exponents", boom)
    res = suite.run_criterion(9, q_max=27, n_max=12)
    assert not res.passed and "boom" in res.detail


def test_run_all_order_and_reduced_grid():
    results = suite.run_all(q_max=27, n_max=12)
    assert [r.number for r in results] == list(range(1, 10))
    assert all(r.passed for r in results)
    assert "seconds" not in results[0].as_dict()
