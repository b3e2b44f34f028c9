"""Products and pullbacks of lenses, and exhaustive checks of their
universal properties.

The constructions follow the textbook recipe: products are
``(prod S_i, coprod T_i)``, and the pullback of a cospan
``(S, T) -> (A, B) <- (S', T')`` has forward part the set pullback
``W = S *_A S'`` and backward part the pushout of
``T <- W*B -> T'``.  Whether the result really is universal is not
assumed anywhere; :func:`verify_product_universal` and
:func:`verify_pullback_universal` count mediators by brute force.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import EndpointMismatch, NoMediatorConstructible, NotACocone, NotACone
from .finset import (FamilyCoproduct, FamilyProduct, FinFn, PullbackSet, PushoutSet,
                     canonical_set, coproduct_family, fn_compose, product_family,
                     product_set, pullback_mediator_set, pullback_set, pushout_mediator_set,
                     pushout_set)
from .lens import (HomArrays, Lens, LensObject, hom_arrays, hom_size, lens_codes,
                   lens_compose, lens_from_code)

DEFAULT_BUDGET = 1 << 22


@dataclass(frozen=True)
class CospanDiagram:
    left: Lens
    right: Lens

    def __post_init__(self):
        if self.left.dst != self.right.dst:
            raise EndpointMismatch(f"cospan legs end at {self.left.dst} and {self.right.dst}")

    @property
    def foot(self) -> LensObject:
        return self.left.dst


@dataclass(frozen=True)
class ConeDiagram:
    apex: LensObject
    mu: Lens
    mu_prime: Lens
    over: CospanDiagram

    def __post_init__(self):
        if self.mu.src != self.apex or self.mu_prime.src != self.apex:
            raise EndpointMismatch("cone legs must start at the apex")
        if self.mu.dst != self.over.left.src or self.mu_prime.dst != self.over.right.src:
            raise EndpointMismatch("cone legs must end at the feet of the cospan")
        if lens_compose(self.over.left, self.mu) != lens_compose(self.over.right, self.mu_prime):
            raise NotACone("left o mu and right o mu' differ")

    @classmethod
    def _raw(cls, apex, mu, mu_prime, over):
        # for callers that have already established the cone condition
        cone = object.__new__(cls)
        for k, v in (("apex", apex), ("mu", mu), ("mu_prime", mu_prime), ("over", over)):
            object.__setattr__(cone, k, v)
        return cone


@dataclass(frozen=True)
class ProductCone:
    apex: LensObject
    legs: tuple
    factors: tuple


@dataclass(frozen=True)
class Witness:
    cone: object
    mediator_count: int
    cocone_witness: Optional[tuple] = None


@dataclass(frozen=True)
class VerificationReport:
    status: str
    checked_cones: int
    witness: Optional[object] = None
    partial: bool = False
    failures: tuple = field(default=())

    def __post_init__(self):
        if self.status not in ("verified", "failed"):
            raise ValueError(self.status)
        if (self.witness is None) != (self.status == "verified"):
            raise ValueError("a witness is present exactly when the status is failed")

    @property
    def verified(self):
        return self.status == "verified"


def apex_objects(max_apex_size):
    """Canonical apexes ``({p0..}, {q0..})`` with both sizes in ``0..max``."""
    for p in range(max_apex_size + 1):
        for q in range(max_apex_size + 1):
            yield LensObject(canonical_set("P", "p", p), canonical_set("Q", "q", q))


def _post_codes(outer: Lens, hom: HomArrays):
    """Codes of ``outer o alpha`` for every ``alpha`` in ``hom``."""
    ov, ou = outer.rows()
    v, u = _kernels.compose(ov, ou, hom.views, hom.updates,
                            len(outer.src.bwd), len(outer.dst.bwd))
    return lens_codes(hom.src, outer.dst, v, u)


def factorizations(legs: Sequence[Lens], projections: Sequence[Lens]):
    """Codes of every ``alpha`` with ``projections[i] o alpha = legs[i]`` for all ``i``.

    Plain exhaustive search over ``hom(apex, target)``.
    """
    legs, projections = tuple(legs), tuple(projections)
    if not legs:
        raise ValueError("need at least one leg")
    apex = legs[0].src
    target = projections[0].src
    hom = hom_arrays(apex, target)
    ok = np.ones(len(hom), dtype=bool)
    for leg, proj in zip(legs, projections):
        want = lens_codes(apex, leg.dst, *leg.rows())[0]
        ok &= _post_codes(proj, hom) == want
    return np.flatnonzero(ok)


# -- products ---------------------------------------------------------------

@dataclass(frozen=True)
class LensProduct:
    obj: LensObject
    projections: tuple
    factors: tuple
    fwd: FamilyProduct
    bwd: FamilyCoproduct


def lens_product(objs: Sequence[LensObject]) -> LensProduct:
    """``prod (S_i, T_i) = (prod S_i, coprod T_i)`` with its projections."""
    objs = tuple(objs)
    fwd = product_family(tuple(o.fwd for o in objs))
    bwd = coproduct_family(tuple(o.bwd for o in objs))
    obj = LensObject(fwd.set, bwd.set)
    projections = []
    for k, o in enumerate(objs):
        upd = fn_compose(bwd.injections[k], product_set(fwd.set, o.bwd).p2)
        projections.append(Lens._raw(obj, o, fwd.projections[k], upd))
    return LensProduct(obj, tuple(projections), objs, fwd, bwd)


def lens_tuple(legs: Sequence[Lens], product: LensProduct = None, apex: LensObject = None) -> Lens:
    """The mediator ``apex -> prod X_i``: pair the views, copair the updates."""
    legs = tuple(legs)
    if product is None:
        product = lens_product([l.dst for l in legs])
    if apex is None:
        if not legs:
            raise EndpointMismatch("the nullary tuple needs an explicit apex")
        apex = legs[0].src
    for leg, o in zip(legs, product.factors):
        if leg.src != apex:
            raise EndpointMismatch(f"legs start at different objects: {leg.src} and {apex}")
        if leg.dst != o:
            raise EndpointMismatch(f"leg ends at {leg.dst}, factor is {o}")
    if len(legs) != len(product.factors):
        raise EndpointMismatch(f"need {len(product.factors)} legs, got {len(legs)}")
    P = apex.fwd
    view = product.fwd.tuple_from(P, [l.view for l in legs])
    update = []
    for p in range(len(P)):
        for leg in legs:
            nt = len(leg.dst.bwd)
            update.extend(leg.update.idx[p * nt:(p + 1) * nt])
    upd = FinFn._raw(product_set(P, product.obj.bwd).set, apex.bwd, tuple(update))
    return Lens._raw(apex, product.obj, view, upd)


def verify_product_universal(objs: Sequence[LensObject], max_apex_size=2,
                             budget=DEFAULT_BUDGET) -> VerificationReport:
    """Count mediators into ``lens_product(objs)`` for every cone.

    Every lens ``alpha`` into the product is swept once and sorted by
    the cone ``(proj_i o alpha)_i`` it induces; the product is universal
    iff each cone receives exactly one ``alpha``.
    """
    objs = tuple(objs)
    prod = lens_product(objs)
    checked, partial = 0, False
    for apex in apex_objects(max_apex_size):
        sizes = [hom_size(apex, o) for o in objs]
        n_cones = math.prod(sizes)
        if max(n_cones, hom_size(apex, prod.obj)) > budget:
            partial = True
            continue
        hom = hom_arrays(apex, prod.obj)
        code = np.zeros(len(hom), dtype=np.int64)
        for proj, n in zip(prod.projections, sizes):
            code = code * n + _post_codes(proj, hom)
        counts = np.bincount(code, minlength=n_cones)
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            first = int(bad[0])
            legs, rest = [], first
            for o, n in reversed(list(zip(objs, sizes))):
                rest, c = divmod(rest, n)
                legs.append(lens_from_code(apex, o, c))
            cone = ProductCone(apex, tuple(reversed(legs)), objs)
            return VerificationReport("failed", checked + first + 1,
                                      Witness(cone, int(counts[first])), partial)
        checked += n_cones
    return VerificationReport("verified", checked, None, partial)


# -- pullbacks --------------------------------------------------------------

@dataclass(frozen=True)
class LensPullback:
    obj: LensObject
    p1: Lens
    p2: Lens
    cospan: CospanDiagram
    fwd: PullbackSet
    bwd: PushoutSet


def lens_pullback(c: CospanDiagram) -> LensPullback:
    lam, lam2 = c.left, c.right
    B = c.foot.bwd
    fwd = pullback_set(lam.view, lam2.view)
    W = fwd.set
    WB = product_set(W, B).set
    nb = len(B)
    # W*B -> T and W*B -> T' through the two updates
    to_t = FinFn._raw(WB, lam.src.bwd, tuple(lam.update.idx[s * nb + b]
                                              for s in fwd.p1.idx for b in range(nb)))
    to_t2 = FinFn._raw(WB, lam2.src.bwd, tuple(lam2.update.idx[s * nb + b]
                                                for s in fwd.p2.idx for b in range(nb)))
    bwd = pushout_set(to_t, to_t2)
    obj = LensObject(W, bwd.set)
    p1 = Lens._raw(obj, lam.src, fwd.p1, fn_compose(bwd.j1, product_set(W, lam.src.bwd).p2))
    p2 = Lens._raw(obj, lam2.src, fwd.p2, fn_compose(bwd.j2, product_set(W, lam2.src.bwd).p2))
    return LensPullback(obj, p1, p2, c, fwd, bwd)


def lens_pullback_mediator(cone: ConeDiagram, pb: LensPullback = None) -> Lens:
    """The mediator built from the set pullback and, pointwise in ``p``,
    the pushout's universal map.

    Raises :class:`NoMediatorConstructible` when, for some ``p``, the
    maps ``t -> u_mu(p, t)`` and ``t' -> u_mu'(p, t')`` do not form a
    cocone over ``T <- W*B -> T'``.
    """
    if pb is None:
        pb = lens_pullback(cone.over)
    elif pb.cospan != cone.over:
        raise EndpointMismatch("cone and pullback are over different cospans")
    mu, mu2 = cone.mu, cone.mu_prime
    P, Q = cone.apex.fwd, cone.apex.bwd
    T, T2 = mu.dst.bwd, mu2.dst.bwd
    view = pullback_mediator_set(mu.view, mu2.view, pb.fwd)
    nt, nt2 = len(T), len(T2)
    B = cone.over.foot.bwd
    update = []
    for p in range(len(P)):
        k1 = FinFn._raw(T, Q, mu.update.idx[p * nt:(p + 1) * nt])
        k2 = FinFn._raw(T2, Q, mu2.update.idx[p * nt2:(p + 1) * nt2])
        try:
            m = pushout_mediator_set(k1, k2, pb.bwd)
        except NotACocone as exc:
            z = pb.bwd.f.dom.index[exc.witness]
            w, b = divmod(z, len(B))
            triple = (P.elems[p], pb.fwd.set.elems[w], B.elems[b])
            raise NoMediatorConstructible(
                f"u_mu and u_mu' disagree at p={triple[0]}, w={triple[1]}, b={triple[2]}",
                triple) from None
        update.extend(m.idx)
    return Lens._raw(cone.apex, pb.obj, view,
                     FinFn._raw(product_set(P, pb.obj.bwd).set, Q, tuple(update)))


def verify_pullback_universal(c: CospanDiagram, max_apex_size=2,
                              budget=DEFAULT_BUDGET) -> VerificationReport:
    """Count mediators into ``lens_pullback(c)`` for every cone over ``c``.

    Cones are all pairs ``(mu, mu')`` with ``left o mu = right o mu'``
    over every canonical apex up to ``max_apex_size``, in lexicographic
    order.  Every candidate ``alpha`` is swept once; the report fails at
    the first cone that does not receive exactly one.
    """
    pb = lens_pullback(c)
    X, X2 = c.left.src, c.right.src
    checked, partial = 0, False
    for apex in apex_objects(max_apex_size):
        n1, n2 = hom_size(apex, X), hom_size(apex, X2)
        if max(n1 * n2, hom_size(apex, pb.obj)) > budget:
            partial = True
            continue
        c1 = _post_codes(c.left, hom_arrays(apex, X))
        c2 = _post_codes(c.right, hom_arrays(apex, X2))
        hom = hom_arrays(apex, pb.obj)
        images = _post_codes(pb.p1, hom) * n2 + _post_codes(pb.p2, hom)
        counts = np.bincount(images, minlength=n1 * n2)
        is_cone = (c1[:, None] == c2[None, :]).ravel()
        if np.any(counts[~is_cone]):
            # the pullback square itself fails to commute
            raise RuntimeError("a lens into the pullback apex induced a non-cone")
        cones = np.flatnonzero(is_cone)
        bad = np.flatnonzero(counts[cones] != 1)
        if bad.size:
            pos = int(bad[0])
            i, j = divmod(int(cones[pos]), n2)
            cone = ConeDiagram(apex, lens_from_code(apex, X, i), lens_from_code(apex, X2, j), c)
            try:
                lens_pullback_mediator(cone, pb)
                triple = None
            except NoMediatorConstructible as exc:
                triple = exc.witness
            return VerificationReport("failed", checked + pos + 1,
                                      Witness(cone, int(counts[cones[pos]]), triple), partial)
        checked += cones.size
    return VerificationReport("verified", checked, None, partial)


def pullback_mediators(cone: ConeDiagram, pb: LensPullback = None):
    """Every lens ``alpha`` with ``p1 o alpha = mu`` and ``p2 o alpha = mu'``."""
    if pb is None:
        pb = lens_pullback(cone.over)
    codes = factorizations([cone.mu, cone.mu_prime], [pb.p1, pb.p2])
    return [lens_from_code(cone.apex, pb.obj, int(k)) for k in codes]
