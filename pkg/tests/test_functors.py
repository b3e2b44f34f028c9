from itertools import product as cartesian

import pytest

from bilens.errors import EndpointMismatch
from bilens.finset import FinFn, FinSet, enumerate_fns, exponential_set, fn_compose, identity, product_set
from bilens.functors import (K_object, V_object, VK, adjunction_from_lens, adjunction_to_lens,
                             apply_K, apply_V, check_adjunction_naturality, naturality_witness)
from bilens.lens import (Lens, LensObject, enumerate_hom, first_projection_lens, hom_size, lens_compose,
                         lens_identity)

from conftest import obj


def _fixture_pair():
    S, T = FinSet("S", ("s",)), FinSet("T", ("t0", "t1"))
    A, B = FinSet("A", ("a",)), FinSet("B", ("b0", "b1"))
    P, Q = FinSet("P", ("p",)), FinSet("Q", ("q0", "q1"))
    lam = Lens.from_tables(LensObject(S, T), LensObject(A, B), {"s": "a"},
                           {"s": {"b0": "t0", "b1": "t1"}})
    mu = Lens.from_tables(LensObject(A, B), LensObject(P, Q), {"a": "p"},
                          {"a": {"q0": "b0", "q1": "b1"}})
    return lam, mu


def skip_swap_transport(f, k, bwd):
    # corrupted transport: reads the uncurried b-major table as if s-major
    S, B = f.dom, k.dom
    flat = exponential_set(S, bwd).uncurry(k).idx
    return Lens._raw(LensObject(S, bwd), LensObject(f.cod, B), f,
                     FinFn._raw(product_set(S, B).set, bwd, flat))


def test_view_functor():
    lam, mu = _fixture_pair()
    X = lam.src
    assert V_object(X) == X.fwd
    assert apply_V(lens_identity(X)) == identity(X.fwd)
    assert apply_V(lens_compose(mu, lam)) == fn_compose(apply_V(mu), apply_V(lam))
    Xs, Ys = FinSet("X", ("x0", "x1")), FinSet("Y", ("y0", "y1"))
    assert apply_V(first_projection_lens(Xs, Ys)) == product_set(Xs, Ys).p1


def test_continuation_functor_identity_and_contravariance():
    lam, mu = _fixture_pair()
    X = lam.src
    assert K_object(X) == exponential_set(X.fwd, X.bwd).set
    assert apply_K(lens_identity(X)) == identity(K_object(X))
    assert apply_K(lens_compose(mu, lam)) == fn_compose(apply_K(lam), apply_K(mu))


def test_continuation_contravariance_exhaustive():
    X, Y, Z = obj("X", 2, 1), obj("Y", 1, 2), obj("Z", 2, 2)
    for lam in enumerate_hom(X, Y):
        for mu in enumerate_hom(Y, Z):
            assert apply_K(lens_compose(mu, lam)) == fn_compose(apply_K(lam), apply_K(mu))


def test_continuation_pointwise_on_projection_lens():
    Xs, Ys = FinSet("X", ("x0", "x1")), FinSet("Y", ("y0",))
    lam = first_projection_lens(Xs, Ys)
    K = apply_K(lam)
    src, dst = exponential_set(Xs, Xs), exponential_set(lam.src.fwd, lam.src.bwd)
    for k in enumerate_fns(Xs, Xs):
        out = dst.function(K(src.element(k)))
        for x in Xs:
            assert out(f"({x},y0)") == f"({k(x)},y0)"


def test_continuation_matches_formula_exhaustively():
    X, Y = obj("X", 2, 2), obj("Y", 2, 2)
    src_exp = exponential_set(Y.fwd, Y.bwd)
    dst_exp = exponential_set(X.fwd, X.bwd)
    for lam in enumerate_hom(X, Y):
        K = apply_K(lam)
        for k in enumerate_fns(Y.fwd, Y.bwd):
            got = dst_exp.function(K(src_exp.element(k)))
            for s in X.fwd:
                assert got(s) == lam.put(s, k(lam.get(s)))


def test_vk_is_an_adaptor():
    lam, _ = _fixture_pair()
    a = VK(lam)
    assert a.f == lam.view and a.g == apply_K(lam)


@pytest.mark.parametrize("s,t,a,b", list(cartesian((0, 1, 2), repeat=4)))
def test_adjunction_round_trips(s, t, a, b):
    X, Y = obj("X", s, t), obj("Y", a, b)
    E = exponential_set(X.fwd, X.bwd)
    lenses = list(enumerate_hom(X, Y))
    images = set()
    for lam in lenses:
        f, k = adjunction_from_lens(lam)
        assert f.cod == Y.fwd and k.dom == Y.bwd and k.cod == E.set
        assert adjunction_to_lens(f, k, X.bwd) == lam
        images.add((f, k))
    pairs = [(f, k) for f in enumerate_fns(X.fwd, Y.fwd) for k in enumerate_fns(Y.bwd, E.set)]
    assert len(pairs) == len(lenses) == len(images)
    for f, k in pairs:
        assert adjunction_from_lens(adjunction_to_lens(f, k, X.bwd)) == (f, k)


def test_adjunction_pointwise():
    X, Y = obj("X", 2, 2), obj("Y", 2, 2)
    E = exponential_set(X.fwd, X.bwd)
    for lam in enumerate_hom(X, Y):
        _, k = adjunction_from_lens(lam)
        for b in Y.bwd:
            row = E.function(k(b))
            for s in X.fwd:
                assert row(s) == lam.put(s, b)


def test_adjunct_of_identity_constant():
    S = FinSet("S", ("s0", "s1"))
    B = FinSet("B", ("b",))
    E = exponential_set(S, S)
    k = FinFn(B, E.set, {"b": E.element(identity(S))})
    lam = adjunction_to_lens(identity(S), k, S)
    assert lam.update_table() == {"s0": {"b": "s0"}, "s1": {"b": "s1"}}


def test_adjunction_rejects_wrong_exponential():
    S, B = FinSet("S", ("s0",)), FinSet("B", ("b",))
    k = FinFn(B, S, {"b": "s0"})
    with pytest.raises(EndpointMismatch):
        adjunction_to_lens(identity(S), k, S)


def test_naturality_identity_square():
    X = obj("X", 2, 2)
    assert check_adjunction_naturality(lens_identity(X), identity(X.fwd), identity(X.bwd))


def test_naturality_exhaustive_small():
    # lam : X' -> X, f : A -> A', g : B' -> B over fixed objects with sizes <= 2
    X2, X, Y, Y2 = obj("P", 2, 2), obj("X", 2, 1), obj("Y", 2, 1), obj("Q", 2, 2)
    count = 0
    for lam in enumerate_hom(X2, X):
        for f in enumerate_fns(Y.fwd, Y2.fwd):
            for g in enumerate_fns(Y2.bwd, Y.bwd):
                assert naturality_witness(lam, f, g) is None
                count += 1
    assert count == hom_size(X2, X) * 4 * 1 == 64


def _first_failing_square(transport):
    X2, X, Y, Y2 = obj("P", 2, 2), obj("X", 2, 2), obj("Y", 2, 2), obj("Q", 2, 2)
    for lam in enumerate_hom(X2, X):
        for f in enumerate_fns(Y.fwd, Y2.fwd):
            for g in enumerate_fns(Y2.bwd, Y.bwd):
                w = naturality_witness(lam, f, g, transport=transport)
                if w is not None:
                    return lam, f, g, w
    return None


def test_skip_swap_mutation_is_caught():
    found = _first_failing_square(skip_swap_transport)
    assert found is not None
    lam, f, g, (f0, k0) = found
    assert not check_adjunction_naturality(lam, f, g, transport=skip_swap_transport)
    assert check_adjunction_naturality(lam, f, g)
    # the two transports disagree on at least one leg of the failing square
    vk = VK(lam)
    left_in = (fn_compose(f, fn_compose(f0, vk.f)), fn_compose(vk.g, fn_compose(k0, g)), lam.src.bwd)
    right_in = (f0, k0, lam.dst.bwd)
    assert any(skip_swap_transport(*x) != adjunction_to_lens(*x) for x in (left_in, right_in))


def test_mutation_is_invisible_on_identity_squares():
    # identities on both sides make any transport commute; the search above is needed
    X, Y = obj("X", 2, 2), obj("Y", 2, 2)
    assert naturality_witness(lens_identity(X), identity(Y.fwd), identity(Y.bwd),
                              transport=skip_swap_transport) is None
