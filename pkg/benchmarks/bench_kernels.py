"""Compare the numba kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on a hom-set enumeration of the given shape,
then a full pullback verifier run.  Both backends must agree on every
output before any timing is reported.
"""

import argparse
import timeit

import numpy as np

from bilens import _kernels
from bilens.finset import canonical_set
from bilens.lens import LensObject, hom_arrays, lens_identity
from bilens.limits import CospanDiagram, verify_product_universal, verify_pullback_universal


def obj(name, s, t):
    return LensObject(canonical_set(name + "f", name.lower(), s),
                      canonical_set(name + "b", name.lower() + "'", t))


def cases():
    X, Y = obj("X", 2, 2), obj("Y", 3, 4)
    hom = hom_arrays(X, Y)
    outer = hom_arrays(Y, obj("Z", 2, 2))
    ov, ou = outer.views[:1], outer.updates[:1]
    yield "all_tables(12, 3)", lambda: _kernels.all_tables(12, 3)
    yield f"encode {hom.updates.shape}", lambda: _kernels.encode(hom.updates, 2)
    yield (f"compose 1 x {len(hom)}",
           lambda: _kernels.compose(ov, ou, hom.views, hom.updates, 4, 2))
    big = obj("P", 2, 2)
    c = CospanDiagram(lens_identity(big), lens_identity(big))
    yield "verify_pullback (2,2) apex<=2", lambda: verify_pullback_universal(c, 2).checked_cones
    yield ("verify_product (2,2)x(1,2) apex<=2",
           lambda: verify_product_universal([big, obj("Q", 1, 2)], 2).checked_cones)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels._NUMBA_COMPILED:
        raise SystemExit("numba is unavailable (or BILENS_KERNELS=numpy); nothing to compare")

    print(f"{'case':<38}{'numba ms':>10}{'numpy ms':>10}{'speedup':>9}")
    for name, fn in cases():
        timings, outs = {}, {}
        for backend in ("numba", "numpy"):
            _kernels.use_backend(backend)
            outs[backend] = fn()  # also warms the jit
            timings[backend] = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        _kernels.use_backend("numba")
        if not same(outs["numba"], outs["numpy"]):
            raise SystemExit(f"backends disagree on {name}")
        nb, npy = timings["numba"], timings["numpy"]
        print(f"{name:<38}{nb:>10.3f}{npy:>10.3f}{npy / nb:>8.1f}x")


if __name__ == "__main__":
    main()
