"""Array kernels behind the exhaustive oracles.

A function table ``X -> Y`` is a row of ``|X|`` codomain indices.  A
lens ``(S, T) -> (A, B)`` is a pair of rows: a view row of length
``|S|`` over ``A`` and an update row of length ``|S|*|B|`` over ``T``,
where position ``s*|B| + b`` holds ``u(s, b)``.

Two interchangeable backends exist.  The numba backend is used when
numba imports and ``BILENS_KERNELS`` is unset or ``numba``; setting
``BILENS_KERNELS=numpy`` forces the vectorised numpy fallback.
"""

import os

import numpy as np

_requested = os.environ.get("BILENS_KERNELS", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"BILENS_KERNELS must be 'numba' or 'numpy', got {_requested!r}")

try:
    if _requested == "numpy":
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"
_NUMBA_COMPILED = HAVE_NUMBA


# -- numpy reference path ---------------------------------------------------

def _all_tables_np(m, n):
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if n == 0:
        return np.zeros((0, m), dtype=np.int64)
    count = n ** m
    codes = np.arange(count, dtype=np.int64)
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % n


def _encode_np(rows, n):
    m = rows.shape[1]
    if m == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    weights = np.asarray(n, dtype=np.int64) ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _compose_np(outer_v, outer_u, inner_v, inner_u, mid_bwd, out_bwd):
    # outer: (A,B) -> (P,Q), inner: (S,T) -> (A,B); rows broadcast to n
    n = max(outer_v.shape[0], inner_v.shape[0])
    ns = inner_v.shape[1]
    inner_v = np.broadcast_to(inner_v, (n, ns))
    outer_v = np.broadcast_to(outer_v, (n, outer_v.shape[1]))
    outer_u = np.broadcast_to(outer_u, (n, outer_u.shape[1]))
    inner_u = np.broadcast_to(inner_u, (n, inner_u.shape[1]))
    view = np.take_along_axis(outer_v, inner_v, axis=1)
    if ns == 0 or out_bwd == 0:
        return view, np.zeros((n, ns * out_bwd), dtype=np.int64)
    q = np.arange(out_bwd, dtype=np.int64)
    # index into outer_u: v_inner(s)*|Q| + q, shape (n, ns, |Q|)
    oidx = inner_v[:, :, None] * out_bwd + q[None, None, :]
    b = np.take_along_axis(outer_u, oidx.reshape(n, -1), axis=1).reshape(n, ns, out_bwd)
    s = np.arange(ns, dtype=np.int64)
    iidx = s[None, :, None] * mid_bwd + b
    upd = np.take_along_axis(inner_u, iidx.reshape(n, -1), axis=1)
    return view, upd


# -- numba path -------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _all_tables_nb(m, n):
        if m == 0:
            return np.zeros((1, 0), dtype=np.int64)
        if n == 0:
            return np.zeros((0, m), dtype=np.int64)
        count = n ** m
        out = np.zeros((count, m), dtype=np.int64)
        for r in range(1, count):
            for j in range(m):
                out[r, j] = out[r - 1, j]
            j = m - 1
            while True:
                out[r, j] += 1
                if out[r, j] < n:
                    break
                out[r, j] = 0
                j -= 1
        return out

    @njit(cache=True)
    def _encode_nb(rows, n):
        k, m = rows.shape
        out = np.zeros(k, dtype=np.int64)
        for r in range(k):
            acc = 0
            for j in range(m):
                acc = acc * n + rows[r, j]
            out[r] = acc
        return out

    @njit(cache=True)
    def _compose_nb(outer_v, outer_u, inner_v, inner_u, mid_bwd, out_bwd):
        n = max(outer_v.shape[0], inner_v.shape[0])
        ns = inner_v.shape[1]
        view = np.empty((n, ns), dtype=np.int64)
        upd = np.empty((n, ns * out_bwd), dtype=np.int64)
        one_o = outer_v.shape[0] == 1
        one_i = inner_v.shape[0] == 1
        for r in range(n):
            ro = 0 if one_o else r
            ri = 0 if one_i else r
            for s in range(ns):
                a = inner_v[ri, s]
                view[r, s] = outer_v[ro, a]
                for q in range(out_bwd):
                    b = outer_u[ro, a * out_bwd + q]
                    upd[r, s * out_bwd + q] = inner_u[ri, s * mid_bwd + b]
        return view, upd


def all_tables(m, n):
    """All ``n**m`` tables of length ``m`` over ``range(n)``, lexicographic."""
    if HAVE_NUMBA:
        return _all_tables_nb(int(m), int(n))
    return _all_tables_np(int(m), int(n))


def encode(rows, n):
    """Mixed-radix code of each row; agrees with the order of :func:`all_tables`."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if HAVE_NUMBA:
        return _encode_nb(rows, int(n))
    return _encode_np(rows, int(n))


def compose(outer_v, outer_u, inner_v, inner_u, mid_bwd, out_bwd):
    """Batch lens composition ``outer o inner``.

    Arguments are 2-D row stacks; a stack of one row broadcasts against
    the other operand.  ``mid_bwd`` is ``|B|`` of the middle object and
    ``out_bwd`` is ``|Q|`` of the outer codomain.
    """
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (outer_v, outer_u, inner_v, inner_u)]
    if args[0].shape[0] == 0 or args[2].shape[0] == 0:
        ns = args[2].shape[1]
        return (np.zeros((0, ns), dtype=np.int64),
                np.zeros((0, ns * int(out_bwd)), dtype=np.int64))
    if HAVE_NUMBA:
        return _compose_nb(*args, int(mid_bwd), int(out_bwd))
    return _compose_np(*args, int(mid_bwd), int(out_bwd))


def use_backend(name):
    """Switch backend at runtime (``"numba"`` or ``"numpy"``); used by the benchmark."""
    global HAVE_NUMBA, BACKEND
    if name == "numba":
        if not _NUMBA_COMPILED:
            raise RuntimeError("numba kernels were not compiled at import time")
        HAVE_NUMBA = True
    elif name == "numpy":
        HAVE_NUMBA = False
    else:
        raise ValueError(name)
    BACKEND = name
