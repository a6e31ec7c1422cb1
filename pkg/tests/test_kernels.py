import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjac import _kernels_py as py
from superjac import kernels

ck = pytest.importorskip("superjac._ckernels", reason="compiled extension not built")

primes = st.sampled_from([2, 3, 5, 7, 11, 101, 65521])


@given(primes, st.integers(1, 7), st.integers(1, 7), st.data())
def test_row_reduce_backends_agree(p, r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(-10**6, 10**6), min_size=c, max_size=c),
                              min_size=r, max_size=r))
    R1, piv1 = py.fp_row_reduce(rows, c, p)
    R2, piv2 = ck.fp_row_reduce(rows, c, p)
    assert [list(x) for x in R1] == [list(x) for x in R2]
    assert list(piv1) == list(piv2)


@given(primes, st.integers(1, 6), st.integers(1, 6), st.data())
def test_row_reduce_is_rref(p, r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                              min_size=r, max_size=r))
    R, piv = kernels.fp_row_reduce(rows, c, p)
    for k, col in enumerate(piv):
        assert R[k][col] == 1
        assert all(R[i][col] == 0 for i in range(len(R)) if i != k)
        assert all(x == 0 for x in R[k][:col])
    assert list(piv) == sorted(piv)


@given(st.integers(1, 300), st.integers(1, 300))
def test_lattice_count_backends_agree(n, q):
    brute = sum(1 for i in range(1, q) for j in range(1, n) if n * i + q * j < n * q) if n * q < 5000 else None
    a, b = py.lattice_count(n, q), ck.lattice_count(n, q)
    assert a == b
    if brute is not None:
        assert a == brute


@given(st.sampled_from([(p, r) for p in (2, 3, 5, 7, 11, 13) for r in range(1, 5) if p**r <= 2000]),
       st.data())
def test_constancy_backends_agree(pr, data):
    p, r = pr
    q = p**r
    k = data.draw(st.integers(1, q - 1).filter(lambda k: k % p))
    assert list(py.constancy_classes(q, p, k)) == list(ck.constancy_classes(q, p, k))


@given(st.integers(2, 9), st.data())
def test_pair_orbits_backends_agree(n, data):
    gens = [list(data.draw(st.permutations(range(n)))) for _ in range(data.draw(st.integers(0, 3)))]
    assert py.pair_orbit_count(n, gens) == ck.pair_orbit_count(n, gens)


def test_large_prime_falls_back_to_python():
    p = (1 << 61) - 1
    R, piv = kernels.fp_row_reduce([[2, 3], [4, 6]], 2, p)
    assert piv == [0] and R[0][0] == 1


def test_pure_python_switch():
    env = dict(os.environ, SUPERJAC_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import superjac; print(superjac.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND == ("python" if os.environ.get("SUPERJAC_PURE") == "1" else "cython")


def test_huge_entries_fall_back_to_python():
    R, piv = kernels.fp_row_reduce([[10**30 + 1, 2], [3, 10**40]], 2, 7)
    assert (R, piv) == py.fp_row_reduce([[10**30 + 1, 2], [3, 10**40]], 2, 7)
