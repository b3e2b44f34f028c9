from itertools import permutations

import pytest

from bilens.errors import EndpointMismatch
from bilens.finset import FinSet, identity
from bilens.functors import apply_V
from bilens.lens import Lens, LensObject, enumerate_hom, lens_compose, lens_identity
from bilens.limits import CospanDiagram, lens_pullback
from bilens.spans import (Span, adaptor_bijection_spans, probe_span_laws, relabel_apex, span_compose,
                          span_identity, span_iso, spans_between)

from conftest import obj
from oracles import probe_instance

UNIT = LensObject(FinSet("S", ("s",)), FinSet("T", ("t",)))


def brute_span_iso(s1, s2):
    """Direct search over hom(apex1, apex2) for a two-sided invertible 2-cell."""
    for phi in enumerate_hom(s1.apex, s2.apex):
        if lens_compose(s2.left, phi) != s1.left or lens_compose(s2.right, phi) != s1.right:
            continue
        for psi in enumerate_hom(s2.apex, s1.apex):
            if (lens_compose(psi, phi) == lens_identity(s1.apex)
                    and lens_compose(phi, psi) == lens_identity(s2.apex)):
                return phi
    return None


def test_span_legs_must_share_apex():
    X, Y = obj("X", 1, 1), obj("Y", 1, 1)
    with pytest.raises(EndpointMismatch):
        Span(X, lens_identity(X), lens_identity(Y))


def test_identity_span():
    s = span_identity(UNIT)
    assert s.left == s.right == lens_identity(UNIT)
    assert apply_V(s.left) == identity(UNIT.fwd)


def test_compose_identity_spans_on_unit():
    s = span_compose(span_identity(UNIT), span_identity(UNIT))
    assert s.apex.fwd.elems == ("(s,s)",)
    assert len(s.apex.bwd) == 1
    assert span_iso(s, span_identity(UNIT)).found


def test_compose_endpoints():
    X, Y, Z = obj("X", 1, 2), obj("Y", 2, 1), obj("Z", 1, 1)
    s1 = Span(X, lens_identity(X), next(enumerate_hom(X, Y)))
    s2 = Span(Y, lens_identity(Y), next(enumerate_hom(Y, Z)))
    s = span_compose(s1, s2)
    assert (s.source, s.target) == (X, Z)
    with pytest.raises(EndpointMismatch):
        span_compose(s2, s1)


def test_compose_with_identity_uses_pullback_of_the_leg():
    S, T = FinSet("S", ("s",)), FinSet("T", ("t0", "t1"))
    A, B = FinSet("A", ("a",)), FinSet("B", ("b0", "b1"))
    X, Y = LensObject(S, T), LensObject(A, B)
    lam = Lens.from_tables(X, Y, {"s": "a"}, {"s": {"b0": "t0", "b1": "t1"}})
    s = Span(X, lens_identity(X), lam)
    comp = span_compose(s, span_identity(Y))
    pb = lens_pullback(CospanDiagram(lam, lens_identity(Y)))
    assert comp.apex == pb.obj
    assert comp.left == pb.p1 and comp.right == lens_compose(lens_identity(Y), pb.p2)


def test_compose_across_probe_cospan():
    left, right, *_ = probe_instance()
    s1 = Span(left.src, lens_identity(left.src), left)
    s2 = Span(right.src, right, lens_identity(right.src))
    s = span_compose(s1, s2)
    assert len(s.apex.bwd) == 1 and len(s.apex.fwd) == 4


def test_iso_with_itself_returns_identity():
    X, Y = obj("X", 2, 2), obj("Y", 1, 2)
    for lam in list(enumerate_hom(X, Y))[::9]:
        s = Span(X, lens_identity(X), lam)
        res = span_iso(s, s)
        assert res.iso == lens_identity(X)
        assert res.inverse == lens_identity(X)


def test_iso_of_relabelled_span():
    X, Y = obj("X", 2, 2), obj("Y", 2, 1)
    for lam in list(enumerate_hom(X, Y))[::5]:
        s = Span(X, lens_identity(X), lam)
        for fp in permutations(range(2)):
            for bp in permutations(range(2)):
                r = relabel_apex(s, fp, bp)
                res = span_iso(s, r)
                assert res.found
                assert lens_compose(res.inverse, res.iso) == lens_identity(s.apex)
                assert lens_compose(res.iso, res.inverse) == lens_identity(r.apex)
                assert lens_compose(r.left, res.iso) == s.left
                assert lens_compose(r.right, res.iso) == s.right


def test_iso_none_for_different_apex_sizes():
    X = obj("X", 1, 1)
    big = obj("P", 2, 1)
    s1 = span_identity(X)
    s2 = Span(big, next(enumerate_hom(big, X)), next(enumerate_hom(big, X)))
    assert not span_iso(s1, s2).found
    assert not span_iso(s2, s1).found


def test_iso_rejects_different_endpoints():
    with pytest.raises(EndpointMismatch):
        span_iso(span_identity(obj("X", 1, 1)), span_identity(obj("Y", 1, 1)))


def test_iso_agrees_with_brute_force_and_is_symmetric():
    X = obj("X", 2, 1)
    spans = list(spans_between(X, X, 2))[::9]
    spans += [relabel_apex(s, (1, 0), (1, 0)) for s in spans if s.apex.sizes == (2, 2)]
    for s1 in spans:
        for s2 in spans:
            got = span_iso(s1, s2)
            want = brute_span_iso(s1, s2)
            assert got.found == (want is not None)
            assert got.found == span_iso(s2, s1).found


def test_iso_budget_marks_inconclusive():
    X = obj("X", 2, 2)
    s = Span(X, lens_identity(X), lens_identity(X))
    res = span_iso(s, s, budget=1)
    assert res.inconclusive and not res.found


def test_probe_unit_objects_apex_one():
    report = probe_span_laws(spans_between(UNIT, UNIT, 1))
    assert report.verified and not report.partial
    assert report.checked_cones == 3 * 1 + 27


def test_probe_adaptor_bijection_spans():
    X = obj("X", 2, 2)
    spans = list(adaptor_bijection_spans(X, X))
    assert len(spans) == 16
    report = probe_span_laws(spans, max_triples=10 ** 6)
    assert report.verified and not report.partial


def test_probe_is_deterministic():
    spans = list(spans_between(UNIT, UNIT, 2))
    r1 = probe_span_laws(spans, max_triples=200)
    r2 = probe_span_laws(spans, max_triples=200)
    assert r1 == r2


def test_probe_records_unit_law_finding_at_apex_two():
    # when a leg's updates reach both elements of Q, the unit pullback glues them together
    report = probe_span_laws(spans_between(UNIT, UNIT, 2), max_triples=0)
    assert report.status == "failed"
    laws = {f.law for f in report.failures}
    assert laws == {"left-unit", "right-unit"}
    assert len(report.failures) == 16
    first = report.witness.cone
    s, = first.items
    comp = span_compose(s, span_identity(UNIT)) if first.law == "right-unit" else \
        span_compose(span_identity(UNIT), s)
    assert len(comp.apex.bwd) < len(s.apex.bwd)
