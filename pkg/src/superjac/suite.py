"""Grid verification driver behind ``superjac verify-all``.

Each criterion is an independent task returning a ``CriterionResult``; the
driver may run them in worker processes and always reports them in the fixed
order of ``CRITERIA``. Library functions are looked up through their modules
at call time so that a deliberately broken formula is seen by the suite.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import arith, curve, divisor, errors, kernels, modrep, multanalysis

DEFAULT_Q_MAX = 128
DEFAULT_N_MAX = 50
SMALL_Q_MAX = 27
SMALL_N_MAX = 12
SAMPLES_PER_FAMILY = 500


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    detail: str
    seconds: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        d = {"criterion": self.number, "name": self.name, "passed": self.passed,
             "checked": self.checked, "detail": self.detail}
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


def _grid(q_max, n_max):
    return curve.grid_families(q_max=q_max, n_max=n_max)


def _small_grid(q_max, n_max):
    return curve.grid_families(q_max=min(q_max, SMALL_Q_MAX), n_max=min(n_max, SMALL_N_MAX))


def genus_identity(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = _grid(q_max, n_max)
    for F in fams:
        g = curve.genus(F)
        lattice = kernels.lattice_count(F.n, F.q)
        eig = sum(curve.eigenspace_dim(F, i) for i in range(1, F.q))
        if not g == lattice == eig:
            bad.append((F.p, F.r, F.s, F.m, g, lattice, eig))
    return len(fams), bad


def decomposition_sum(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = _grid(q_max, n_max)
    for F in fams:
        total = sum(d for _, d in curve.dimension_decomposition(F))
        if total != curve.genus(F):
            bad.append((F.p, F.r, F.s, F.m, total))
    return len(fams), bad


def gcd_invariant(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = [F for F in _grid(q_max, n_max) if 0 < F.s < F.r]
    for F in fams:
        try:
            d = curve.d_invariant(F)
        except errors.VerificationError as exc:
            bad.append((F.p, F.r, F.s, F.m, str(exc)))
            continue
        if d != 1:
            bad.append((F.p, F.r, F.s, F.m, d))
    return len(fams), bad


def _random_degree_zero(rng, n, q):
    v = [rng.randint(-2 * q, 2 * q) for _ in range(n - 1)]
    return v + [-sum(v)]


def _random_principal(rng, n, q):
    """A vector satisfying the congruence condition, built without the oracle."""
    c = rng.randint(-2 * q, 2 * q)
    while (n * c) % q:
        c += 1
    w = [rng.randint(-2, 2) for _ in range(n - 1)]
    last = -(n * c + q * sum(w)) // q
    return [c + q * x for x in w] + [c + q * last]


def principal_oracle(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0,
                     samples=SAMPLES_PER_FAMILY):
    rng = random.Random(seed)
    bad = []
    fams = _small_grid(q_max, n_max)
    for F in fams:
        if not divisor.lattices_agree(F):
            bad.append((F.p, F.r, F.s, F.m, "lattices differ"))
        for t in range(samples):
            v = _random_degree_zero(rng, F.n, F.q) if t % 2 == 0 else _random_principal(rng, F.n, F.q)
            D = divisor.Divisor.from_branch_vector(F, v)
            if divisor.is_principal_on_B(F, D) != divisor.oracle_contains(F, v):
                bad.append((F.p, F.r, F.s, F.m, tuple(v)))
                break
    return len(fams), bad


def picard_torsion_suite(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = [F for F in _small_grid(q_max, n_max) if 0 < F.s < F.r]
    for F in fams:
        key = (F.p, F.r, F.s, F.m)
        pic = divisor.picard_structure(F)
        if pic.p_rank != F.n - 1:
            bad.append(key + ("p-rank", pic.p_rank))
        pim = divisor.pi_matrix_and_kernel(F)
        if pim.rank != F.n - 1 or len(pim.kernel) != 1 or len(set(pim.kernel[0])) != 1:
            bad.append(key + ("pi", pim.rank))
        for i, D in enumerate(divisor.build_D_classes(F), start=1):
            if not divisor.has_order_exactly_p(F, D):
                bad.append(key + ("order", i))
            if D != divisor.D_class_closed_form(F, i):
                bad.append(key + ("closed form", i))
    return len(fams), bad


def scalar_commutant_grid(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    checked = 0
    for n in range(5, 11):
        for p in (2, 3, 5, 7):
            if n % p:
                continue
            for label in ("S", "A"):
                rep = modrep.verify_scalar_commutant(n, p, label, seed=seed)
                checked += 1
                if not rep.passed:
                    bad.append(rep.as_dict())
    return checked, bad


def _symmetry_cases(odd_q_max=243, even_q_max=256):
    """(p, r_max) covering every odd prime power <= odd_q_max and 2^r <= even_q_max."""
    cases = []
    for p in range(3, odd_q_max + 1, 2):
        if not arith.is_prime(p):
            continue
        r = 1
        while p ** (r + 1) <= odd_q_max:
            r += 1
        cases.append((p, r))
    r = 1
    while 2 ** (r + 1) <= even_q_max:
        r += 1
    cases.append((2, r))
    return cases


def forced_constancy(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    checked = 0
    for p, r_max in _symmetry_cases():
        rep = multanalysis.verify_forced_constancy(p, r_max)
        checked += rep.cases
        bad.extend((q, k) for q, k, _ in rep.counterexamples)
    return checked, bad


def multiplier_symmetry(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = [F for F in _grid(q_max, n_max) if F.theorem_regime]
    for F in fams:
        mult = multanalysis.invariant_multipliers(curve.multiplicity_profile(F), F.p)
        if mult != {1}:
            bad.append((F.p, F.r, F.s, F.m, sorted(mult)))
    return len(fams), bad


def birational_coherence(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0):
    bad = []
    fams = [F for F in _grid(q_max, n_max) if 0 < F.s < F.r]
    for F in fams:
        fwd, inv = curve.birational_exponents(F)
        if not (fwd.compose(inv).is_identity() and fwd.det() == 1):
            bad.append((F.p, F.r, F.s, F.m, "birational"))
        act = curve.delta_on_infinity(F)
        t = F.p**F.s
        stab = act.stabilizer_exponents(1, upto=F.q)
        if (act.order() != t or not act.is_transitive()
                or stab != [k for k in range(F.q) if k % t == 0]):
            bad.append((F.p, F.r, F.s, F.m, "infinity action"))
    return len(fams), bad


CRITERIA = [
    (1, "genus_identity", genus_identity),
    (2, "decomposition_sum", decomposition_sum),
    (3, "gcd_invariant", gcd_invariant),
    (4, "principal_oracle", principal_oracle),
    (5, "picard_torsion_suite", picard_torsion_suite),
    (6, "scalar_commutant_grid", scalar_commutant_grid),
    (7, "forced_constancy", forced_constancy),
    (8, "multiplier_symmetry", multiplier_symmetry),
    (9, "birational_coherence", birational_coherence),
]


def run_criterion(number: int, q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0) -> CriterionResult:
    _, name, fn = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        checked, bad = fn(q_max=q_max, n_max=n_max, seed=seed)
        detail = "ok" if not bad else f"{len(bad)} failure(s), first: {bad[0]}"
        passed = not bad
    except Exception as exc:  # noqa: BLE001  a crash is a failed criterion
        checked, passed, detail = 0, False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, name, passed, checked, detail, time.perf_counter() - start)


def _run_star(args):
    return run_criterion(*args)


def run_all(q_max=DEFAULT_Q_MAX, n_max=DEFAULT_N_MAX, seed=0, jobs=1, only=None) -> list:
    numbers = [c[0] for c in CRITERIA if only is None or c[0] in only]
    tasks = [(k, q_max, n_max, seed) for k in numbers]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_star, tasks))
    return [run_criterion(*t) for t in tasks]
