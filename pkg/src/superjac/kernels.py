"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it was built and importable;
otherwise, or when ``SUPERJAC_PURE=1`` is set, the pure-Python versions in
``_kernels_py`` are used. Inputs too large for the C integer types are always
routed to the Python versions.
"""

from __future__ import annotations

import os

from . import _kernels_py as _py

_FP_LIMIT = 1 << 31  # products of two residues stay below 2^62
_LATTICE_LIMIT = 1 << 62

_c = None
if os.environ.get("SUPERJAC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


def fp_row_reduce(rows, ncols, p):
    if _c is not None and p < _FP_LIMIT:
        try:
            return _c.fp_row_reduce(rows, ncols, p)
        except OverflowError:  # an entry does not fit in a C long long
            pass
    return _py.fp_row_reduce(rows, ncols, p)


def lattice_count(n, q):
    if _c is not None and n * q < _LATTICE_LIMIT:
        return _c.lattice_count(n, q)
    return _py.lattice_count(n, q)


def constancy_classes(q, p, k):
    if _c is not None and q < _FP_LIMIT:
        return _c.constancy_classes(q, p, k % q)
    return _py.constancy_classes(q, p, k % q)


def pair_orbit_count(n, generators):
    if _c is not None:
        return _c.pair_orbit_count(n, generators)
    return _py.pair_orbit_count(n, generators)
