import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjac import modrep
from superjac.errors import InconclusiveError, PreconditionError
from superjac.modrep import PermGenerators, build_module, commutant, is_simple, standard_generators

from oracles import brute_commutant_dim, brute_simple, group_closure

DIVISIBLE_GRID = [(n, p) for n in range(5, 11) for p in (2, 3, 5, 7) if n % p == 0]


@pytest.mark.parametrize("n", range(3, 11))
def test_group_orders(n):
    assert modrep.group_order(standard_generators(n, "S")) == math.factorial(n)
    assert modrep.group_order(standard_generators(n, "A")) == math.factorial(n) // 2


@pytest.mark.parametrize("n", range(3, 7))
def test_group_order_against_closure(n):
    for label in ("S", "A"):
        gens = standard_generators(n, label)
        assert modrep.group_order(gens) == len(group_closure(n, gens.generators))


def test_group_order_small_subgroups():
    n = 6
    gens = PermGenerators(n, (modrep.cycle(n, 1, 2, 3), modrep.cycle(n, 4, 5)))
    assert modrep.group_order(gens) == 6
    assert modrep.group_order(PermGenerators(4, ())) == 1


@given(st.integers(3, 7), st.data())
def test_double_transitivity_against_closure(n, data):
    k = data.draw(st.integers(1, 2))
    gens = tuple(tuple(data.draw(st.permutations(range(n)))) for _ in range(k))
    G = group_closure(n, gens)
    pairs = {(g[0], g[1]) for g in G}
    expected = len(pairs) == n * (n - 1)
    assert modrep.is_doubly_transitive(PermGenerators(n, gens)) == expected


def test_double_transitivity_examples():
    assert modrep.is_doubly_transitive(standard_generators(7, "A"))
    cyclic = PermGenerators(5, (modrep.cycle(5, 1, 2, 3, 4, 5),))
    assert not modrep.is_doubly_transitive(cyclic)


def test_permutation_helpers():
    c = modrep.cycle(4, 1, 2, 3)
    assert c == (1, 2, 0, 3)
    assert modrep.is_even(c) and not modrep.is_even(modrep.cycle(4, 1, 2))
    assert modrep.compose(c, modrep.inverse(c)) == (0, 1, 2, 3)
    with pytest.raises(PreconditionError):
        PermGenerators(3, ((0, 1, 2), (0, 0, 1)))
    with pytest.raises(PreconditionError):
        PermGenerators(3, (modrep.cycle(3, 1, 2),), modrep.ALTERNATING)


@pytest.mark.parametrize("tag,shift", [("FullPerm", 0), ("Deg0", 1), ("V", 1), ("W", 2)])
def test_module_dimensions_and_homomorphism(tag, shift):
    n, p = 6, 3
    gens = standard_generators(n, "S")
    M = build_module(gens, p, tag)
    assert M.dim == n - shift
    # the action respects composition: the matrix of g*h is the product
    g, h = gens.generators
    gh = build_module(PermGenerators(n, (modrep.compose(g, h),)), p, tag).action[0]
    assert gh == M.action[0] @ M.action[1]


def test_W_needs_p_dividing_n():
    with pytest.raises(PreconditionError):
        build_module(standard_generators(7, "S"), 3, "W")


DIM_SHIFT = {"FullPerm": 0, "Deg0": 1, "V": 1, "W": 2}
ENUMERABLE_COMMUTANTS = [(n, p, tag) for n, p in [(5, 2), (4, 2), (3, 3), (4, 3), (6, 2)]
                         for tag in ("FullPerm", "Deg0", "V")
                         if p ** ((n - DIM_SHIFT[tag]) ** 2) <= 300_000]
ENUMERABLE_MODULES = [(n, p, tag, label) for n, p in [(4, 2), (5, 5), (6, 2), (6, 3), (3, 3), (5, 2)]
                      for tag in DIM_SHIFT for label in ("S", "A")
                      if (tag != "W" or n % p == 0) and p ** (n - DIM_SHIFT[tag]) <= 5000]


@pytest.mark.parametrize("n,p,tag", ENUMERABLE_COMMUTANTS)
def test_commutant_against_enumeration(n, p, tag):
    M = build_module(standard_generators(n, "S"), p, tag)
    dim, basis = commutant(M)
    assert dim == brute_commutant_dim(p, M.dim, [g.to_rows() for g in M.action])
    for T in basis:
        assert all(T @ g == g @ T for g in M.action)


def test_commutant_examples():
    assert commutant(build_module(standard_generators(5, "S"), 2, "FullPerm"))[0] == 2
    trivial = modrep.FpModule(2, 5, (), "FullPerm", 5)
    assert commutant(trivial)[0] == 25


@pytest.mark.parametrize("n,p,tag,label", ENUMERABLE_MODULES)
def test_meataxe_against_brute_force(n, p, tag, label):
    M = build_module(standard_generators(n, label), p, tag)
    res = is_simple(M, seed=1)
    assert res.simple == brute_simple(p, M.dim, [g.to_rows() for g in M.action])
    if not res.simple:
        assert modrep.validate_witness(M, res.witness)


@given(st.sampled_from(DIVISIBLE_GRID), st.sampled_from(["S", "A"]), st.integers(0, 10**6))
def test_meataxe_verdict_independent_of_seed(np_, label, seed):
    n, p = np_
    for tag in ("FullPerm", "V", "W"):
        M = build_module(standard_generators(n, label), p, tag)
        res = is_simple(M, seed=seed)
        assert res.simple == (tag == "W")
        if not res.simple:
            assert modrep.validate_witness(M, res.witness)


def test_V_witness_is_invariant():
    M = build_module(standard_generators(6, "S"), 3, "V")
    res = is_simple(M)
    assert not res.simple
    assert M.is_invariant(res.witness)


def test_meataxe_exhausts_budget():
    # with no trials allowed there is no verdict, even for a simple module
    M = build_module(standard_generators(6, "S"), 3, "W")
    with pytest.raises(InconclusiveError):
        is_simple(M, seed=0, max_trials=0)


@pytest.mark.parametrize("n,p", DIVISIBLE_GRID)
@pytest.mark.parametrize("label", ["S", "A"])
def test_scalar_commutant_grid(n, p, label):
    rep = modrep.verify_scalar_commutant(n, p, label)
    assert rep.commutant_V == 1 and rep.commutant_W == 1
    assert rep.W_simple and rep.doubly_transitive and rep.passed


def test_spec_commutant_example():
    rep = modrep.verify_scalar_commutant(6, 3, "A")
    assert rep.as_dict()["commutant_dim_V"] == 1


def test_scalar_commutant_preconditions():
    with pytest.raises(PreconditionError):
        modrep.verify_scalar_commutant(7, 3, "S")
    with pytest.raises(PreconditionError):
        modrep.verify_scalar_commutant(4, 2, "S")


def test_scalar_matrix_rank():
    M = build_module(standard_generators(5, "S"), 5, "V")
    assert modrep.scalar_matrix_rank(list(M.action) + [M.action[0]]) == 2


def _span(p, dim, vecs):
    return set(tuple(v) for v in modrep.fp_span_basis(vecs, p, dim))


def test_generator_examples():
    gens5 = standard_generators(5, "S")
    assert len(gens5.generators) == 2 and modrep.group_order(gens5) == 120
    assert all(modrep.is_even(g) for g in standard_generators(6, "A").generators)
    a3 = standard_generators(3, "A")
    assert a3.generators == (modrep.cycle(3, 1, 2, 3),) and modrep.group_order(a3) == 3


def test_module_examples():
    S6 = standard_generators(6, "S")
    assert build_module(S6, 3, "V").dim == 5
    assert build_module(S6, 3, "W").dim == 4
    with pytest.raises(PreconditionError):
        build_module(standard_generators(5, "S"), 3, "W")
    assert commutant(build_module(standard_generators(6, "A"), 3, "V"))[0] == 1
    assert commutant(modrep.FpModule(3, 5, (), "V", 6))[0] == 25


def test_permutation_convention():
    """g sends e_i to e_(g(i))."""
    g = modrep.cycle(4, 1, 2, 3)
    M = build_module(PermGenerators(4, (g,)), 5, "FullPerm")
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        image = M.action[0].apply(e)
        assert image[g[i]] == 1 and sum(image) == 1


def test_reducible_witnesses_are_the_natural_submodules():
    n, p = 6, 3
    V = build_module(standard_generators(n, "A"), p, "V")
    res = is_simple(V, seed=0)
    # inside V the heart W is the sum-zero hyperplane (p | n)
    hyper = [[1 if j == i else (p - 1 if j == n - 2 else 0) for j in range(n - 1)] for i in range(n - 2)]
    assert _span(p, n - 1, res.witness) == _span(p, n - 1, hyper)

    full = build_module(standard_generators(n, "S"), p, "FullPerm")
    res = is_simple(full, seed=0)
    constants = _span(p, n, [[1] * n])
    deg0 = _span(p, n, [[1 if j == i else (p - 1 if j == n - 1 else 0) for j in range(n)] for i in range(n - 1)])
    assert _span(p, n, res.witness) in (constants, deg0)


def test_pair_orbit_examples():
    assert modrep.kernels.pair_orbit_count(5, [list(g) for g in standard_generators(5, "A").generators]) == 1
    assert modrep.kernels.pair_orbit_count(5, [list(modrep.cycle(5, 1, 2, 3, 4, 5))]) == 4


@pytest.mark.parametrize("n,p,label", [(6, 3, "A"), (6, 2, "S"), (10, 5, "A")])
def test_scalar_commutant_examples(n, p, label):
    assert modrep.verify_scalar_commutant(n, p, label).passed
