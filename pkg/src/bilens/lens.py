"""Bimorphic lenses over finite sets.

A lens ``(S, T) -> (A, B)`` is a view ``S -> A`` together with an update
``S*B -> T``.  No lens laws are imposed; :func:`check_put_get` is offered
only for the monomorphic shape where that law can even be stated.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import _kernels
from .errors import EndpointMismatch, InapplicableLaw
from .finset import (FinFn, FinSet, fn_compose, identity, is_bijection,
                     product_set)


@dataclass(frozen=True)
class LensObject:
    fwd: FinSet
    bwd: FinSet

    def __str__(self):
        return f"({self.fwd.name}, {self.bwd.name})"

    @property
    def sizes(self):
        return len(self.fwd), len(self.bwd)


@dataclass(frozen=True)
class Lens:
    src: LensObject
    dst: LensObject
    view: FinFn
    update: FinFn

    def __post_init__(self):
        S, T = self.src.fwd, self.src.bwd
        A, B = self.dst.fwd, self.dst.bwd
        if self.view.dom != S or self.view.cod != A:
            raise EndpointMismatch(f"view must go {S.name} -> {A.name}")
        if self.update.dom != product_set(S, B).set or self.update.cod != T:
            raise EndpointMismatch(f"update must go {S.name}*{B.name} -> {T.name}")

    @classmethod
    def _raw(cls, src, dst, view, update):
        lens = object.__new__(cls)
        object.__setattr__(lens, "src", src)
        object.__setattr__(lens, "dst", dst)
        object.__setattr__(lens, "view", view)
        object.__setattr__(lens, "update", update)
        return lens

    @classmethod
    def from_tables(cls, src, dst, view, update):
        """Build from a view table and a nested update table ``{s: {b: t}}``."""
        S, B = src.fwd, dst.bwd
        SB = product_set(S, B).set
        flat = {}
        for s in S.elems:
            row = update.get(s)
            if row is None:
                raise ValueError(f"update table has no row for {s!r}")
            for b in B.elems:
                if b not in row:
                    raise ValueError(f"update table has no entry for ({s!r}, {b!r})")
            extra = set(row) - set(B.elems)
            if extra:
                raise ValueError(f"update row {s!r} has keys outside {B.name}: {sorted(extra)}")
        extra = set(update) - set(S.elems)
        if extra:
            raise ValueError(f"update table has rows outside {S.name}: {sorted(extra)}")
        for s in S.elems:
            for b in B.elems:
                flat[f"({s},{b})"] = update[s][b]
        return cls(src, dst, FinFn(S, dst.fwd, view), FinFn(SB, src.bwd, flat))

    @classmethod
    def from_functions(cls, src, dst, get, put):
        """Build from Python callables ``get(s) -> a`` and ``put(s, b) -> t``."""
        S, B = src.fwd, dst.bwd
        view = FinFn(S, dst.fwd, [get(s) for s in S.elems])
        update = FinFn(product_set(S, B).set, src.bwd, [put(s, b) for s in S.elems for b in B.elems])
        return cls(src, dst, view, update)

    @classmethod
    def from_rows(cls, src, dst, view_row, update_row):
        return cls._raw(src, dst,
                        FinFn._raw(src.fwd, dst.fwd, tuple(int(i) for i in view_row)),
                        FinFn._raw(product_set(src.fwd, dst.bwd).set, src.bwd,
                                   tuple(int(i) for i in update_row)))

    def get(self, s):
        return self.view(s)

    def put(self, s, b):
        S, B = self.src.fwd, self.dst.bwd
        i = S.index[s] * len(B) + B.index[b]
        return self.src.bwd.elems[self.update.idx[i]]

    def update_table(self):
        """The update as a nested table ``{s: {b: t}}``."""
        T = self.src.bwd.elems
        nb = len(self.dst.bwd)
        return {s: {b: T[self.update.idx[i * nb + j]] for j, b in enumerate(self.dst.bwd.elems)}
                for i, s in enumerate(self.src.fwd.elems)}

    def rows(self):
        """``(view, update)`` as single-row int64 arrays for the kernels."""
        return (np.asarray([self.view.idx], dtype=np.int64).reshape(1, -1),
                np.asarray([self.update.idx], dtype=np.int64).reshape(1, -1))

    def __repr__(self):
        return f"Lens({self.src} -> {self.dst}, view={self.view.table}, update={self.update_table()})"


def lens_identity(X: LensObject) -> Lens:
    return Lens._raw(X, X, identity(X.fwd), product_set(X.fwd, X.bwd).p2)


def lens_compose(mu: Lens, lam: Lens) -> Lens:
    """``mu o lam``; the update is ``(s, q) -> u_lam(s, u_mu(v_lam(s), q))``."""
    if lam.dst != mu.src:
        raise EndpointMismatch(f"cannot compose {mu.src} -> {mu.dst} after {lam.src} -> {lam.dst}")
    lv, lu = lam.view.idx, lam.update.idx
    mv, mu_u = mu.view.idx, mu.update.idx
    nb = len(lam.dst.bwd)
    nq = len(mu.dst.bwd)
    view = tuple(mv[a] for a in lv)
    update = tuple(lu[s * nb + mu_u[a * nq + q]] for s, a in enumerate(lv) for q in range(nq))
    S = lam.src.fwd
    return Lens._raw(lam.src, mu.dst,
                     FinFn._raw(S, mu.dst.fwd, view),
                     FinFn._raw(product_set(S, mu.dst.bwd).set, lam.src.bwd, update))


def lens_equal(l1: Lens, l2: Lens) -> bool:
    return l1 == l2


@dataclass(frozen=True)
class Adaptor:
    """A morphism ``(S, T) -> (A, B)`` of C x C^op: ``f : S -> A`` and ``g : B -> T``."""

    f: FinFn
    g: FinFn

    @property
    def src(self):
        return LensObject(self.f.dom, self.g.cod)

    @property
    def dst(self):
        return LensObject(self.f.cod, self.g.dom)


def adaptor_compose(second: Adaptor, first: Adaptor) -> Adaptor:
    """Composition in C x C^op; the backward leg composes the other way round."""
    return Adaptor(fn_compose(second.f, first.f), fn_compose(first.g, second.g))


def adaptor_embed(a: Adaptor) -> Lens:
    S, B = a.f.dom, a.g.dom
    return Lens._raw(a.src, a.dst, a.f, fn_compose(a.g, product_set(S, B).p2))


def first_projection_lens(X: FinSet, Y: FinSet) -> Lens:
    """The lens onto the first component of a pair.

    ``(X*Y, X*Y) -> (X, X)`` with view ``(x, y) -> x`` and update
    ``((x, y), x') -> (x', y)``.
    """
    XY = product_set(X, Y)
    src = LensObject(XY.set, XY.set)
    dst = LensObject(X, X)
    ny = len(Y)
    nx = len(X)
    update = tuple(x2 * ny + (xy % ny) for xy in range(len(XY.set)) for x2 in range(nx))
    return Lens._raw(src, dst, XY.p1, FinFn._raw(product_set(XY.set, X).set, XY.set, update))


def check_put_get(lens: Lens) -> bool:
    """Whether ``v(u(s, b)) = b`` for every ``s`` and ``b``.

    Only defined when ``S = T`` and ``A = B``.
    """
    if lens.src.fwd != lens.src.bwd or lens.dst.fwd != lens.dst.bwd:
        raise InapplicableLaw(f"put-get needs a lens (S, S) -> (A, A), got {lens.src} -> {lens.dst}")
    nb = len(lens.dst.bwd)
    v, u = lens.view.idx, lens.update.idx
    return all(v[u[i]] == i % nb for i in range(len(u)))


# -- hom-sets ---------------------------------------------------------------

def hom_size(X: LensObject, Y: LensObject) -> int:
    s, t = X.sizes
    a, b = Y.sizes
    return a ** s * t ** (s * b)


@dataclass(frozen=True)
class HomArrays:
    """The full hom-set ``X -> Y`` as row stacks, in :func:`enumerate_hom` order."""

    src: LensObject
    dst: LensObject
    views: np.ndarray
    updates: np.ndarray

    def __len__(self):
        return self.views.shape[0]

    def lens(self, i) -> Lens:
        return Lens.from_rows(self.src, self.dst, self.views[i], self.updates[i])

    @property
    def n_views(self):
        return len(self.dst.fwd) ** len(self.src.fwd)

    @property
    def n_updates(self):
        return len(self) // self.n_views if self.n_views else 0


def hom_arrays(X: LensObject, Y: LensObject) -> HomArrays:
    s, t = X.sizes
    a, b = Y.sizes
    views = _kernels.all_tables(s, a)
    updates = _kernels.all_tables(s * b, t)
    nv, nu = views.shape[0], updates.shape[0]
    return HomArrays(X, Y, np.repeat(views, nu, axis=0), np.tile(updates, (nv, 1)))


def lens_codes(X: LensObject, Y: LensObject, views, updates):
    """Position of each row pair in the :func:`enumerate_hom` order of ``X -> Y``."""
    s, t = X.sizes
    a, b = Y.sizes
    nu = t ** (s * b)
    return _kernels.encode(views, a) * nu + _kernels.encode(updates, t)


def lens_code(lens: Lens) -> int:
    v, u = lens.rows()
    return int(lens_codes(lens.src, lens.dst, v, u)[0])


def enumerate_hom(X: LensObject, Y: LensObject):
    """Every lens ``X -> Y``, lexicographic in (view table, update table)."""
    s, t = X.sizes
    a, b = Y.sizes
    views = _kernels.all_tables(s, a)
    updates = _kernels.all_tables(s * b, t)
    S, A = X.fwd, Y.fwd
    SB = product_set(S, Y.bwd).set
    ups = [FinFn._raw(SB, X.bwd, tuple(int(i) for i in r)) for r in updates]
    for vr in views:
        view = FinFn._raw(S, A, tuple(int(i) for i in vr))
        for up in ups:
            yield Lens._raw(X, Y, view, up)


# -- isomorphisms -----------------------------------------------------------

def inverse(lens: Lens):
    """The two-sided inverse of ``lens``, or ``None`` if it has none.

    A lens ``(S, T) -> (A, B)`` is invertible exactly when its view is a
    bijection and, for every ``s``, ``b -> u(s, b)`` is a bijection
    ``B -> T``.  The candidate inverse is checked by composition.
    """
    S, T = lens.src.fwd, lens.src.bwd
    A, B = lens.dst.fwd, lens.dst.bwd
    if not is_bijection(lens.view):
        return None
    nb, nt = len(B), len(T)
    if len(S) and nb != nt:
        return None
    u = lens.update.idx
    v_inv = [0] * len(A)
    for s, a in enumerate(lens.view.idx):
        v_inv[a] = s
    update = []
    for a in range(len(A)):
        s = v_inv[a]
        row = u[s * nb:(s + 1) * nb]
        if len(set(row)) != nb:
            return None
        back = [0] * nt
        for b, t in enumerate(row):
            back[t] = b
        update.extend(back)
    inv = Lens._raw(lens.dst, lens.src, FinFn._raw(A, S, tuple(v_inv)),
                    FinFn._raw(product_set(A, T).set, B, tuple(update)))
    if (lens_compose(inv, lens) != lens_identity(lens.src)
            or lens_compose(lens, inv) != lens_identity(lens.dst)):
        return None
    return inv


def enumerate_isos(X: LensObject, Y: LensObject):
    """Every invertible lens ``X -> Y``, each paired with its inverse."""
    S, T = X.fwd, X.bwd
    A, B = Y.fwd, Y.bwd
    if len(S) != len(A) or (len(S) and len(T) != len(B)):
        return
    slices = [tuple(p) for p in permutations(range(len(T)))] if len(S) else [()]
    SB = product_set(S, B).set
    for vperm in permutations(range(len(A))):
        view = FinFn._raw(S, A, tuple(vperm))
        for choice in _product_rows(slices, len(S)):
            lens = Lens._raw(X, Y, view, FinFn._raw(SB, T, choice))
            inv = inverse(lens)
            if inv is not None:
                yield lens, inv


def _product_rows(slices, k):
    if k == 0:
        yield ()
        return
    for head in slices:
        for tail in _product_rows(slices, k - 1):
            yield head + tail


def lens_from_code(X: LensObject, Y: LensObject, code: int) -> Lens:
    """Inverse of :func:`lens_code`."""
    s, t = X.sizes
    a, b = Y.sizes
    nu = t ** (s * b)
    vcode, ucode = divmod(int(code), nu)
    return Lens._raw(X, Y, FinFn._raw(X.fwd, Y.fwd, _decode(vcode, s, a)),
                     FinFn._raw(product_set(X.fwd, Y.bwd).set, X.bwd, _decode(ucode, s * b, t)))


def _decode(code, m, n):
    out = [0] * m
    for j in range(m - 1, -1, -1):
        code, out[j] = divmod(code, n)
    return tuple(out)
