"""Spans of lenses, composed through :func:`lens_pullback`.

Spans are kept concrete.  Two spans are compared by searching for an
invertible lens between their apexes that commutes with both legs.
"""

from dataclasses import dataclass
from itertools import permutations, product as cartesian

from .errors import EndpointMismatch
from .finset import FinFn, canonical_set, product_set
from .lens import (Adaptor, Lens, LensObject, adaptor_embed, enumerate_hom, inverse,
                   lens_compose, lens_identity)
from .laws import LawFailure
from .limits import CospanDiagram, VerificationReport, Witness, apex_objects, lens_pullback

DEFAULT_ISO_BUDGET = 1 << 20


@dataclass(frozen=True)
class Span:
    apex: LensObject
    left: Lens
    right: Lens

    def __post_init__(self):
        if self.left.src != self.apex or self.right.src != self.apex:
            raise EndpointMismatch("both legs of a span start at its apex")

    @property
    def source(self) -> LensObject:
        return self.left.dst

    @property
    def target(self) -> LensObject:
        return self.right.dst


def span_identity(X: LensObject) -> Span:
    ident = lens_identity(X)
    return Span(X, ident, ident)


def span_compose(s1: Span, s2: Span) -> Span:
    """``s2 o s1`` for ``s1 : X -> Y`` and ``s2 : Y -> Z``."""
    if s1.target != s2.source:
        raise EndpointMismatch(f"span ends at {s1.target}, next starts at {s2.source}")
    pb = lens_pullback(CospanDiagram(s1.right, s2.left))
    return Span(pb.obj, lens_compose(s1.left, pb.p1), lens_compose(s2.right, pb.p2))


@dataclass(frozen=True)
class SpanIso:
    iso: object
    inverse: object
    inconclusive: bool = False

    @property
    def found(self):
        return self.iso is not None


def span_iso(s1: Span, s2: Span, budget=DEFAULT_ISO_BUDGET) -> SpanIso:
    """Search for an invertible ``phi : apex1 -> apex2`` with
    ``left2 o phi = left1`` and ``right2 o phi = right1``.

    Only invertible lenses are searched: a bijective view together with,
    for each ``p``, a bijection ``Q2 -> Q1`` as the update slice.  The
    two leg equations then split into one independent constraint per
    ``p``, so the search runs per ``p`` over those bijections.
    """
    if s1.source != s2.source or s1.target != s2.target:
        raise EndpointMismatch("spans have different endpoints")
    X, Y = s1.apex, s2.apex
    P1, Q1 = X.fwd, X.bwd
    P2, Q2 = Y.fwd, Y.bwd
    if len(P1) != len(P2) or (len(P1) and len(Q1) != len(Q2)):
        return SpanIso(None, None)
    n, m = len(P1), len(Q2)
    if _falling(n) * n * _falling(m) > budget:
        return SpanIso(None, None, inconclusive=True)
    l1, r1, l2, r2 = s1.left, s1.right, s2.left, s2.right
    slices = list(permutations(range(m)))
    SB = product_set(P1, Q2).set
    for vperm in permutations(range(n)):
        if any(l2.view.idx[vperm[p]] != l1.view.idx[p] or r2.view.idx[vperm[p]] != r1.view.idx[p]
               for p in range(n)):
            continue
        update = []
        for p in range(n):
            sigma = next((s for s in slices if _slice_ok(s, p, vperm[p], l1, l2)
                          and _slice_ok(s, p, vperm[p], r1, r2)), None)
            if sigma is None:
                break
            update.extend(sigma)
        else:
            phi = Lens._raw(X, Y, FinFn._raw(P1, P2, tuple(vperm)), FinFn._raw(SB, Q1, tuple(update)))
            inv = inverse(phi)
            if inv is not None and lens_compose(l2, phi) == l1 and lens_compose(r2, phi) == r1:
                return SpanIso(phi, inv)
    return SpanIso(None, None)


def _slice_ok(sigma, p, p2, leg1, leg2):
    # sigma(u_leg2(p2, x)) == u_leg1(p, x) for every x in the leg's bwd target
    nx = len(leg1.dst.bwd)
    u1, u2 = leg1.update.idx, leg2.update.idx
    return all(sigma[u2[p2 * nx + x]] == u1[p * nx + x] for x in range(nx))


def _falling(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def spans_between(X: LensObject, Y: LensObject, max_apex_size=1):
    """Every span ``X <- apex -> Y`` over the canonical apexes up to ``max_apex_size``."""
    for apex in apex_objects(max_apex_size):
        rights = list(enumerate_hom(apex, Y))
        for left in enumerate_hom(apex, X):
            for right in rights:
                yield Span(apex, left, right)


def probe_span_laws(spans, max_triples=2000, budget=DEFAULT_ISO_BUDGET) -> VerificationReport:
    """Check the unit laws on every span and associativity on composable
    triples (the first ``max_triples`` in enumeration order), up to
    :func:`span_iso`.

    Every failure is recorded; ``witness`` is the first one.  A search
    that ran out of budget marks the report partial instead of failing.
    """
    spans = list(spans)
    failures = []
    checked = 0
    partial = False

    def same(a, b):
        nonlocal partial
        res = span_iso(a, b, budget)
        if res.inconclusive:
            partial = True
            return True
        return res.found

    for s in spans:
        checked += 1
        if not same(span_compose(span_identity(s.source), s), s):
            failures.append(LawFailure("left-unit", (s,)))
        if not same(span_compose(s, span_identity(s.target)), s):
            failures.append(LawFailure("right-unit", (s,)))
    by_source = {}
    for s in spans:
        by_source.setdefault(s.source, []).append(s)
    triples = ((s1, s2, s3) for s1 in spans
               for s2 in by_source.get(s1.target, ())
               for s3 in by_source.get(s2.target, ()))
    for n, (s1, s2, s3) in enumerate(triples):
        if n >= max_triples:
            partial = True
            break
        checked += 1
        lhs = span_compose(span_compose(s1, s2), s3)
        rhs = span_compose(s1, span_compose(s2, s3))
        if not same(lhs, rhs):
            failures.append(LawFailure("associativity", (s1, s2, s3)))
    if failures:
        first = failures[0]
        return VerificationReport("failed", checked, Witness(first, 0), partial, tuple(failures))
    return VerificationReport("verified", checked, None, partial)


def relabel_apex(s: Span, fwd_perm, bwd_perm, suffix="'") -> Span:
    """The span obtained by renaming the apex through bijections.

    ``fwd_perm`` and ``bwd_perm`` are permutations of apex indices; the
    relabelled apex gets fresh set names ending in ``suffix``.
    """
    P, Q = s.apex.fwd, s.apex.bwd
    P2 = canonical_set(P.name + suffix, "r", len(P))
    Q2 = canonical_set(Q.name + suffix, "k", len(Q))
    apex2 = LensObject(P2, Q2)
    # phi : apex2 -> apex with bijective view and update
    f = FinFn._raw(P2, P, tuple(fwd_perm))
    g = FinFn._raw(Q, Q2, tuple(bwd_perm))
    phi = adaptor_embed(Adaptor(f, g))
    return Span(apex2, lens_compose(s.left, phi), lens_compose(s.right, phi))


def adaptor_bijection_spans(X: LensObject, Y: LensObject, apex: LensObject = None):
    """Spans ``X <- apex -> Y`` whose legs are embedded pairs of bijections."""
    if apex is None:
        apex = X
    if {X.sizes, Y.sizes} != {apex.sizes}:
        return
    P, Q = apex.fwd, apex.bwd
    for fl, gl, fr, gr in cartesian(*(list(permutations(range(k)))
                                      for k in (len(P), len(Q), len(P), len(Q)))):
        left = adaptor_embed(Adaptor(FinFn._raw(P, X.fwd, fl), FinFn._raw(X.bwd, Q, gl)))
        right = adaptor_embed(Adaptor(FinFn._raw(P, Y.fwd, fr), FinFn._raw(Y.bwd, Q, gr)))
        yield Span(apex, left, right)
