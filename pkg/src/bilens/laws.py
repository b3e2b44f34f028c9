"""Exhaustive category-law and functoriality suites on the object-level API."""

from dataclasses import dataclass
from itertools import product as cartesian

from .finset import canonical_set, enumerate_fns, identity
from .lens import (Adaptor, LensObject, adaptor_compose, adaptor_embed, enumerate_hom,
                   lens_compose, lens_identity)
from .limits import VerificationReport, Witness


@dataclass(frozen=True)
class LawFailure:
    law: str
    items: tuple


def _report(checked, failures):
    if failures:
        return VerificationReport("failed", checked, Witness(failures[0], 0), False, tuple(failures))
    return VerificationReport("verified", checked)


def sized_objects(sizes, count=4):
    """``count`` distinct objects ``X0..`` whose sizes cycle through ``sizes``.

    ``sizes = (s, t, a, b)`` gives ``X0 = (s, t)``, ``X1 = (a, b)``,
    ``X2 = (s, t)``, ``X3 = (a, b)``.
    """
    pairs = [(sizes[0], sizes[1]), (sizes[2], sizes[3])]
    out = []
    for i in range(count):
        f, b = pairs[i % 2]
        out.append(LensObject(canonical_set(f"F{i}", f"x{i}_", f), canonical_set(f"B{i}", f"y{i}_", b)))
    return out


def check_category_laws(objs) -> VerificationReport:
    """Associativity over every composable triple ``X0 -> X1 -> X2 -> X3``
    and both unit laws on every lens of the three hom-sets."""
    W, X, Y, Z = objs
    lams = list(enumerate_hom(W, X))
    mus = list(enumerate_hom(X, Y))
    nus = list(enumerate_hom(Y, Z))
    failures = []
    checked = 0
    nu_mu = [[lens_compose(nu, mu) for nu in nus] for mu in mus]
    for lam in lams:
        for mu, row in zip(mus, nu_mu):
            mu_lam = lens_compose(mu, lam)
            for nu, nm in zip(nus, row):
                checked += 1
                if lens_compose(nm, lam) != lens_compose(nu, mu_lam):
                    failures.append(LawFailure("associativity", (lam, mu, nu)))
    for hom in (lams, mus, nus):
        for lens in hom:
            checked += 2
            if lens_compose(lens_identity(lens.dst), lens) != lens:
                failures.append(LawFailure("left-unit", (lens,)))
            if lens_compose(lens, lens_identity(lens.src)) != lens:
                failures.append(LawFailure("right-unit", (lens,)))
    return _report(checked, failures)


def check_embed_functoriality(objs) -> VerificationReport:
    """``<f2 o f1, g1 o g2> = <f2, g2> o <f1, g1>`` for every adaptor pair
    ``X0 -> X1 -> X2``, and ``<id, id> = id`` on each object."""
    X0, X1, X2 = objs[:3]
    failures = []
    checked = 0
    firsts = [Adaptor(f, g) for f, g in cartesian(list(enumerate_fns(X0.fwd, X1.fwd)),
                                                   list(enumerate_fns(X1.bwd, X0.bwd)))]
    seconds = [Adaptor(f, g) for f, g in cartesian(list(enumerate_fns(X1.fwd, X2.fwd)),
                                                    list(enumerate_fns(X2.bwd, X1.bwd)))]
    for a1 in firsts:
        e1 = adaptor_embed(a1)
        for a2 in seconds:
            checked += 1
            if adaptor_embed(adaptor_compose(a2, a1)) != lens_compose(adaptor_embed(a2), e1):
                failures.append(LawFailure("functoriality", (a1, a2)))
    for X in (X0, X1, X2):
        checked += 1
        if adaptor_embed(Adaptor(identity(X.fwd), identity(X.bwd))) != lens_identity(X):
            failures.append(LawFailure("identity", (X,)))
    return _report(checked, failures)
