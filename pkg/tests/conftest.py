import os
import pathlib

import pytest
from hypothesis import settings, strategies as st

from bilens.finset import FinFn, FinSet, canonical_set
from bilens.lens import Lens, LensObject

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def obj(name, s, t):
    return LensObject(canonical_set(f"{name}f", f"{name.lower()}", s),
                      canonical_set(f"{name}b", f"{name.lower()}'", t))


def fin_fns(X, Y):
    """Strategy for a random total function X -> Y (Y nonempty unless X is empty)."""
    return st.lists(st.integers(0, max(len(Y) - 1, 0)), min_size=len(X), max_size=len(X)).map(
        lambda idx: FinFn.from_indices(X, Y, idx))


def lenses(X, Y):
    nv, nu = len(X.fwd), len(X.fwd) * len(Y.bwd)
    return st.tuples(
        st.lists(st.integers(0, max(len(Y.fwd) - 1, 0)), min_size=nv, max_size=nv),
        st.lists(st.integers(0, max(len(X.bwd) - 1, 0)), min_size=nu, max_size=nu),
    ).map(lambda vu: Lens.from_rows(X, Y, vu[0], vu[1]))


small = st.integers(0, 2)
small_pos = st.integers(1, 2)


def sized(name, n):
    return FinSet(name, tuple(f"{name.lower()}{i}" for i in range(n)))
