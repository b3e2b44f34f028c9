"""The view functor, the continuation functor, and the adjunction
``<V, K>  -|  <-, ->`` between lenses and adaptors.

An element of ``hom((S, S->T), (A, B))`` in C x C^op is a pair
``(f, k)`` with ``f : S -> A`` and ``k : B -> (S -> T)``.  It corresponds
to the lens with view ``f`` and update ``(s, b) -> k(b)(s)``: the
continuation is curried over ``B`` and keeps ``S`` as context.
"""

from .errors import EndpointMismatch
from .finset import FinFn, FinSet, enumerate_fns, exponential_set, fn_compose, product_set
from .lens import Adaptor, Lens, LensObject, adaptor_embed, lens_compose


def V_object(X: LensObject) -> FinSet:
    return X.fwd


def apply_V(lens: Lens) -> FinFn:
    return lens.view


def K_object(X: LensObject) -> FinSet:
    return exponential_set(X.fwd, X.bwd).set


def apply_K(lens: Lens) -> FinFn:
    """``K(lens) : (A -> B) -> (S -> T)``, ``k -> (s -> u(s, k(v(s))))``."""
    S, T = lens.src.fwd, lens.src.bwd
    A, B = lens.dst.fwd, lens.dst.bwd
    src_exp = exponential_set(A, B)
    dst_exp = exponential_set(S, T)
    nb = len(B)
    v, u = lens.view.idx, lens.update.idx
    idx = []
    for k in src_exp._tables:
        row = tuple(u[s * nb + k[a]] for s, a in enumerate(v))
        idx.append(_code(row, len(T)))
    return FinFn._raw(src_exp.set, dst_exp.set, tuple(idx))


def _code(row, n):
    acc = 0
    for i in row:
        acc = acc * n + i
    return acc


def VK_object(X: LensObject):
    """``<V, K>(S, T) = (S, S -> T)`` as an object of C x C^op."""
    return X.fwd, K_object(X)


def VK(lens: Lens) -> Adaptor:
    """``<V, K>(lens)`` as a morphism ``(S, S->T) -> (A, A->B)`` of C x C^op."""
    return Adaptor(apply_V(lens), apply_K(lens))


def adjunction_from_lens(lens: Lens):
    """Lens ``(S, T) -> (A, B)`` to ``(f : S -> A, k : B -> (S -> T))``."""
    S, T = lens.src.fwd, lens.src.bwd
    B = lens.dst.bwd
    E = exponential_set(S, T)
    nb = len(B)
    u = lens.update.idx
    # swap arguments: (b, s) -> u(s, b), then curry over S
    swapped = tuple(u[s * nb + b] for b in range(nb) for s in range(len(S)))
    k = E.curry(FinFn._raw(product_set(B, S).set, T, swapped), B)
    return lens.view, k


def adjunction_to_lens(f: FinFn, k: FinFn, bwd: FinSet) -> Lens:
    """Inverse of :func:`adjunction_from_lens`; ``bwd`` is the set ``T``."""
    S, A, B = f.dom, f.cod, k.dom
    E = exponential_set(S, bwd)
    if k.cod != E.set:
        raise EndpointMismatch(f"continuation must land in {E.set.name}, got {k.cod.name}")
    flat = E.uncurry(k).idx  # indexed b*|S| + s
    ns, nb = len(S), len(B)
    update = tuple(flat[b * ns + s] for s in range(ns) for b in range(nb))
    return Lens._raw(LensObject(S, bwd), LensObject(A, B), f,
                     FinFn._raw(product_set(S, B).set, bwd, update))


def naturality_witness(lam: Lens, f: FinFn, g: FinFn, transport=adjunction_to_lens):
    """First ``(f0, k0)`` on which the naturality square fails, else ``None``.

    ``lam : (S', T') -> (S, T)``, ``f : A -> A'`` and ``g : B' -> B``.
    The square compares, for every ``(f0, k0)`` in
    ``hom((S, S->T), (A, B))``:

    * act by ``(<V,K>(lam), (f, g))`` in C x C^op, then transport; and
    * transport, then act by ``<f, g> o - o lam`` in lenses.

    ``transport`` is injectable so a deliberately broken one can be
    shown to fail.
    """
    S, T = lam.dst.fwd, lam.dst.bwd
    A, B = f.dom, g.cod
    T2 = lam.src.bwd
    E = exponential_set(S, T)
    vk = VK(lam)
    fg = adaptor_embed(Adaptor(f, g))
    for f0 in enumerate_fns(S, A):
        left_view = fn_compose(f, fn_compose(f0, vk.f))
        for k0 in enumerate_fns(B, E.set):
            left_k = fn_compose(vk.g, fn_compose(k0, g))
            left = transport(left_view, left_k, T2)
            right = lens_compose(fg, lens_compose(transport(f0, k0, T), lam))
            if left != right:
                return f0, k0
    return None


def check_adjunction_naturality(lam: Lens, f: FinFn, g: FinFn, transport=adjunction_to_lens) -> bool:
    """Exhaustively check the naturality square at ``(lam, f, g)``."""
    return naturality_witness(lam, f, g, transport) is None
