"""Independent brute-force oracles.

Everything here goes through ``enumerate_hom`` and the pure-Python
``lens_compose`` only; no array kernels, no histogram tricks.  The
fixed cospan cases at the bottom are shared by several suites.
"""

from collections import Counter
from itertools import product as cartesian

from bilens.finset import FinFn, FinSet, canonical_set
from bilens.lens import (Adaptor, Lens, LensObject, adaptor_embed, enumerate_hom, lens_compose,
                         lens_identity)
from bilens.limits import CospanDiagram

from conftest import obj


def apexes(max_size):
    for p in range(max_size + 1):
        for q in range(max_size + 1):
            yield LensObject(FinSet("P", tuple(f"p{i}" for i in range(p))),
                             FinSet("Q", tuple(f"q{i}" for i in range(q))))


def pullback_oracle(cospan, pb_obj, p1, p2, max_apex):
    """``(checked, first_bad)``; ``first_bad`` is ``(apex, mu, mu', count)`` or None.

    Cones are visited per apex in (mu, mu') lexicographic order.
    """
    checked = 0
    for apex in apexes(max_apex):
        hist = Counter()
        for alpha in enumerate_hom(apex, pb_obj):
            hist[(lens_compose(p1, alpha), lens_compose(p2, alpha))] += 1
        rights = list(enumerate_hom(apex, cospan.right.src))
        right_legs = [lens_compose(cospan.right, m2) for m2 in rights]
        for mu in enumerate_hom(apex, cospan.left.src):
            left_leg = lens_compose(cospan.left, mu)
            for mu2, rl in zip(rights, right_legs):
                if left_leg != rl:
                    continue
                checked += 1
                n = hist[(mu, mu2)]
                if n != 1:
                    return checked, (apex, mu, mu2, n)
    return checked, None


def product_oracle(objs, prod_obj, projections, max_apex):
    checked = 0
    for apex in apexes(max_apex):
        hist = Counter()
        for alpha in enumerate_hom(apex, prod_obj):
            hist[tuple(lens_compose(p, alpha) for p in projections)] += 1
        for legs in cartesian(*(list(enumerate_hom(apex, o)) for o in objs)):
            checked += 1
            if hist[tuple(legs)] != 1:
                return checked, (apex, legs, hist[tuple(legs)])
    return checked, None


def mediators_of(cone_mu, cone_mu2, pb_obj, p1, p2):
    """Every alpha with both triangles commuting, by direct search."""
    return [a for a in enumerate_hom(cone_mu.src, pb_obj)
            if lens_compose(p1, a) == cone_mu and lens_compose(p2, a) == cone_mu2]


def cocone_failures(cone_mu, cone_mu2, cospan):
    """All ``(p, (s, s'), b)`` where ``u_mu(p, u(s, b)) != u_mu'(p, u'(s', b))``, s, s' matched."""
    lam, lam2 = cospan.left, cospan.right
    out = []
    for p in cone_mu.src.fwd:
        for s, s2 in cartesian(lam.src.fwd, lam2.src.fwd):
            if lam.get(s) != lam2.get(s2):
                continue
            for b in lam.dst.bwd:
                if cone_mu.put(p, lam.put(s, b)) != cone_mu2.put(p, lam2.put(s2, b)):
                    out.append((p, f"({s},{s2})", b))
    return out


def probe_instance():
    S = FinSet("S", ("s1", "s2"))
    S_ = FinSet("S'", ("s1'", "s2'"))
    T = FinSet("T", ("t1", "t2"))
    T_ = FinSet("T'", ("t1'", "t2'"))
    A, B = FinSet("A", ("a",)), FinSet("B", ("b",))
    X, X_, foot = LensObject(S, T), LensObject(S_, T_), LensObject(A, B)
    left = Lens.from_tables(X, foot, {"s1": "a", "s2": "a"}, {"s1": {"b": "t1"}, "s2": {"b": "t2"}})
    right = Lens.from_tables(X_, foot, {"s1'": "a", "s2'": "a"},
                             {"s1'": {"b": "t1'"}, "s2'": {"b": "t2'"}})
    apex = LensObject(FinSet("P", ("p",)), FinSet("Q", ("q1", "q2")))
    mu = Lens.from_tables(apex, X, {"p": "s1"}, {"p": {"t1": "q1", "t2": "q2"}})
    mu2 = Lens.from_tables(apex, X_, {"p": "s1'"}, {"p": {"t1'": "q1", "t2'": "q2"}})
    return left, right, apex, mu, mu2


def bijection(X: FinSet, Y: FinSet, perm):
    return FinFn.from_indices(X, Y, perm)


def _swap(n):
    return tuple(reversed(range(n)))


def well_behaved_cospans():
    one = LensObject(FinSet("S", ("s",)), FinSet("T", ("t",)))
    X = obj("X", 2, 2)
    Y = obj("Y", 2, 2)
    swap = adaptor_embed(Adaptor(FinFn.from_indices(Y.fwd, X.fwd, _swap(2)),
                                 FinFn.from_indices(X.bwd, Y.bwd, _swap(2))))
    empty = LensObject(FinSet("E", ()), FinSet("ET", ("e0",)))
    A2 = LensObject(canonical_set("A", "a", 2), FinSet("B", ("b",)))
    inj1 = Lens.from_tables(LensObject(FinSet("S", ("s",)), FinSet("T", ("t0", "t1"))), A2,
                            {"s": "a0"}, {"s": {"b": "t1"}})
    inj2 = Lens.from_tables(LensObject(FinSet("U", ("u0", "u1")), FinSet("V", ("v",))), A2,
                            {"u0": "a0", "u1": "a1"}, {"u0": {"b": "v"}, "u1": {"b": "v"}})
    return {
        "identity-unit": CospanDiagram(lens_identity(one), lens_identity(one)),
        "identity-2x2": CospanDiagram(lens_identity(X), lens_identity(X)),
        "bijections": CospanDiagram(lens_identity(X), swap),
        "empty-state": CospanDiagram(lens_identity(empty), lens_identity(empty)),
        "injective-views": CospanDiagram(inj1, inj2),
    }
