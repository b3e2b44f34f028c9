"""Finite sets, total functions, and their finite limits and colimits.

Everything here is computed explicitly on element labels.  Labels of
derived sets follow one fixed convention so that output is reproducible:

* products: ``(x,y)``, ordered lexicographically by factor order;
* binary coproducts: ``inl:x`` then ``inr:y``;
* indexed coproducts: ``in0:x``, ``in1:y``, ...;
* exponentials: ``{x0:y0,x1:y1}``, one label per table, lexicographic;
* quotients: each class is named by its order-least member.
"""

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as _cartesian
from typing import Mapping, Sequence

from . import _kernels
from .errors import EndpointMismatch, NotACocone, NotACone

_SIMPLE_NAME = re.compile(r"^[\w']+$")


def _wrap(name):
    return name if _SIMPLE_NAME.match(name) else f"({name})"


@dataclass(frozen=True)
class FinSet:
    name: str
    elems: tuple

    def __post_init__(self):
        elems = tuple(self.elems)
        object.__setattr__(self, "elems", elems)
        if not isinstance(self.name, str):
            raise TypeError(f"set name must be a string, got {self.name!r}")
        for e in elems:
            if not isinstance(e, str):
                raise TypeError(f"element labels must be strings, got {e!r} in {self.name}")
        if len(set(elems)) != len(elems):
            seen = set()
            dup = next(e for e in elems if e in seen or seen.add(e))
            raise ValueError(f"duplicate element {dup!r} in set {self.name}")

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elems)}

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"FinSet({self.name!r}, {list(self.elems)!r})"


def canonical_set(name, prefix, n):
    """The set ``{prefix0, ..., prefix(n-1)}`` used as a search alphabet."""
    return FinSet(name, tuple(f"{prefix}{i}" for i in range(n)))


class FinFn:
    """A total function between finite sets, stored as codomain indices.

    ``table`` may be a mapping from every domain label to a codomain
    label, or a sequence of codomain labels listed in domain order.
    """

    __slots__ = ("dom", "cod", "idx", "__weakref__")

    def __init__(self, dom: FinSet, cod: FinSet, table):
        if isinstance(table, Mapping):
            extra = set(table) - set(dom.elems)
            if extra:
                raise ValueError(f"table has keys outside {dom.name}: {sorted(extra)}")
            missing = [x for x in dom.elems if x not in table]
            if missing:
                raise ValueError(f"table is not total on {dom.name}; missing {missing}")
            images = [table[x] for x in dom.elems]
        else:
            images = list(table)
            if len(images) != len(dom):
                raise ValueError(f"table has {len(images)} entries, {dom.name} has {len(dom)}")
        cidx = cod.index
        try:
            idx = tuple(cidx[y] for y in images)
        except KeyError as exc:
            raise ValueError(f"image {exc.args[0]!r} is not an element of {cod.name}") from None
        self.dom, self.cod, self.idx = dom, cod, idx

    @classmethod
    def from_indices(cls, dom, cod, idx):
        idx = tuple(int(i) for i in idx)
        if len(idx) != len(dom):
            raise ValueError(f"index table has {len(idx)} entries, {dom.name} has {len(dom)}")
        n = len(cod)
        if any(not 0 <= i < n for i in idx):
            raise ValueError(f"index out of range for {cod.name}")
        return cls._raw(dom, cod, idx)

    @classmethod
    def _raw(cls, dom, cod, idx):
        f = object.__new__(cls)
        f.dom, f.cod, f.idx = dom, cod, idx
        return f

    @property
    def table(self) -> dict:
        ce = self.cod.elems
        return {x: ce[i] for x, i in zip(self.dom.elems, self.idx)}

    def __call__(self, x):
        return self.cod.elems[self.idx[self.dom.index[x]]]

    def __eq__(self, other):
        if not isinstance(other, FinFn):
            return NotImplemented
        return self.idx == other.idx and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash((self.dom, self.cod, self.idx))

    def __repr__(self):
        return f"FinFn({self.dom.name} -> {self.cod.name}, {self.table})"


def identity(X: FinSet) -> FinFn:
    return FinFn._raw(X, X, tuple(range(len(X))))


def fn_compose(g: FinFn, f: FinFn) -> FinFn:
    """``g o f``: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise EndpointMismatch(f"cannot compose {g.dom.name} -> {g.cod.name} after "
                               f"{f.dom.name} -> {f.cod.name}")
    gi = g.idx
    return FinFn._raw(f.dom, g.cod, tuple(gi[i] for i in f.idx))


def constant(X: FinSet, Y: FinSet, y) -> FinFn:
    return FinFn._raw(X, Y, (Y.index[y],) * len(X))


def is_bijection(f: FinFn) -> bool:
    return len(f.dom) == len(f.cod) and len(set(f.idx)) == len(f.idx)


def enumerate_fns(X: FinSet, Y: FinSet):
    """All ``|Y|**|X|`` total functions ``X -> Y`` in lexicographic table order."""
    for row in _kernels.all_tables(len(X), len(Y)):
        yield FinFn._raw(X, Y, tuple(int(i) for i in row))


# -- products ---------------------------------------------------------------

@dataclass(frozen=True)
class ProductSet:
    set: FinSet
    p1: FinFn
    p2: FinFn

    def pair(self, f: FinFn, g: FinFn) -> FinFn:
        """The pairing ``<f, g> : Z -> X*Y``."""
        X, Y = self.p1.cod, self.p2.cod
        if f.dom != g.dom or f.cod != X or g.cod != Y:
            raise EndpointMismatch("pairing needs f: Z -> X and g: Z -> Y over one Z")
        ny = len(Y)
        return FinFn._raw(f.dom, self.set, tuple(a * ny + b for a, b in zip(f.idx, g.idx)))


@lru_cache(maxsize=None)
def product_set(X: FinSet, Y: FinSet) -> ProductSet:
    """Binary product ``X*Y`` with projections and a pairing builder."""
    labels = tuple(f"({x},{y})" for x in X.elems for y in Y.elems)
    P = FinSet(f"{_wrap(X.name)}*{_wrap(Y.name)}", labels)
    ny = len(Y)
    p1 = FinFn._raw(P, X, tuple(i for i in range(len(X)) for _ in range(ny)))
    p2 = FinFn._raw(P, Y, tuple(j for _ in range(len(X)) for j in range(ny)))
    return ProductSet(P, p1, p2)


def pairing(f: FinFn, g: FinFn) -> FinFn:
    return product_set(f.cod, g.cod).pair(f, g)


def diagonal(X: FinSet) -> FinFn:
    return pairing(identity(X), identity(X))


def fn_product(f: FinFn, g: FinFn) -> FinFn:
    """``f x g : X*Y -> X'*Y'``."""
    src = product_set(f.dom, g.dom)
    return pairing(fn_compose(f, src.p1), fn_compose(g, src.p2))


# -- coproducts -------------------------------------------------------------

@dataclass(frozen=True)
class CoproductSet:
    set: FinSet
    i1: FinFn
    i2: FinFn

    def copair(self, f: FinFn, g: FinFn) -> FinFn:
        """The copairing ``[f, g] : X+Y -> Z``."""
        X, Y = self.i1.dom, self.i2.dom
        if f.dom != X or g.dom != Y or f.cod != g.cod:
            raise EndpointMismatch("copairing needs f: X -> Z and g: Y -> Z into one Z")
        return FinFn._raw(self.set, f.cod, f.idx + g.idx)


@lru_cache(maxsize=4096)
def coproduct_set(X: FinSet, Y: FinSet) -> CoproductSet:
    labels = tuple(f"inl:{x}" for x in X.elems) + tuple(f"inr:{y}" for y in Y.elems)
    C = FinSet(f"{_wrap(X.name)}+{_wrap(Y.name)}", labels)
    i1 = FinFn._raw(X, C, tuple(range(len(X))))
    i2 = FinFn._raw(Y, C, tuple(range(len(X), len(X) + len(Y))))
    return CoproductSet(C, i1, i2)


def copairing(f: FinFn, g: FinFn) -> FinFn:
    return coproduct_set(f.dom, g.dom).copair(f, g)


# -- indexed families -------------------------------------------------------

@dataclass(frozen=True)
class FamilyProduct:
    set: FinSet
    projections: tuple
    factors: tuple

    def tuple_map(self, fns: Sequence[FinFn]) -> FinFn:
        fns = tuple(fns)
        if len(fns) != len(self.factors):
            raise EndpointMismatch(f"need {len(self.factors)} legs, got {len(fns)}")
        if not fns:
            raise EndpointMismatch("the nullary tuple needs an explicit domain; use tuple_from")
        return self.tuple_from(fns[0].dom, fns)

    def tuple_from(self, Z: FinSet, fns: Sequence[FinFn]) -> FinFn:
        fns = tuple(fns)
        if len(fns) != len(self.factors):
            raise EndpointMismatch(f"need {len(self.factors)} legs, got {len(fns)}")
        for f, X in zip(fns, self.factors):
            if f.dom != Z or f.cod != X:
                raise EndpointMismatch(f"leg {f!r} does not go {Z.name} -> {X.name}")
        idx = []
        for z in range(len(Z)):
            acc = 0
            for f, X in zip(fns, self.factors):
                acc = acc * len(X) + f.idx[z]
            idx.append(acc)
        return FinFn._raw(Z, self.set, tuple(idx))


@lru_cache(maxsize=1024)
def product_family(sets: tuple) -> FamilyProduct:
    """Indexed product with flattened labels ``(x1,...,xn)``.

    The empty family gives the singleton ``{()}``; two factors give
    exactly :func:`product_set`'s labels.
    """
    sets = tuple(sets)
    if len(sets) == 2:
        name = product_set(*sets).set.name
    elif not sets:
        name = "1"
    else:
        name = "Prod[" + ",".join(s.name for s in sets) + "]"
    combos = list(_cartesian(*[range(len(s)) for s in sets]))
    labels = tuple("(" + ",".join(s.elems[i] for s, i in zip(sets, c)) + ")" for c in combos)
    P = FinSet(name, labels)
    projections = tuple(FinFn._raw(P, s, tuple(c[k] for c in combos))
                        for k, s in enumerate(sets))
    return FamilyProduct(P, projections, sets)


@dataclass(frozen=True)
class FamilyCoproduct:
    set: FinSet
    injections: tuple
    summands: tuple

    def copair_from(self, Z: FinSet, fns: Sequence[FinFn]) -> FinFn:
        fns = tuple(fns)
        if len(fns) != len(self.summands):
            raise EndpointMismatch(f"need {len(self.summands)} legs, got {len(fns)}")
        idx = ()
        for f, X in zip(fns, self.summands):
            if f.dom != X or f.cod != Z:
                raise EndpointMismatch(f"leg {f!r} does not go {X.name} -> {Z.name}")
            idx += f.idx
        return FinFn._raw(self.set, Z, idx)


@lru_cache(maxsize=1024)
def coproduct_family(sets: tuple) -> FamilyCoproduct:
    """Indexed coproduct with labels ``in<k>:x``; the empty family is ``0``.

    Two summands give exactly :func:`coproduct_set`'s ``inl:``/``inr:`` labels.
    """
    sets = tuple(sets)
    if len(sets) == 2:
        C = coproduct_set(*sets).set
    else:
        name = "0" if not sets else f"Sum[{','.join(s.name for s in sets)}]"
        C = FinSet(name, tuple(f"in{k}:{x}" for k, s in enumerate(sets) for x in s.elems))
    injections, offset = [], 0
    for s in sets:
        injections.append(FinFn._raw(s, C, tuple(range(offset, offset + len(s)))))
        offset += len(s)
    return FamilyCoproduct(C, tuple(injections), sets)


# -- exponentials -----------------------------------------------------------

@dataclass(frozen=True)
class ExponentialSet:
    set: FinSet
    ev: FinFn
    base: FinSet
    target: FinSet

    def element(self, f: FinFn) -> str:
        """The label naming ``f : base -> target``."""
        if f.dom != self.base or f.cod != self.target:
            raise EndpointMismatch(f"{f!r} is not a table {self.base.name} -> {self.target.name}")
        return self.set.elems[_table_code(f.idx, len(self.target))]

    def function(self, label) -> FinFn:
        """Inverse of :meth:`element`."""
        return FinFn._raw(self.base, self.target, self._tables[self.set.index[label]])

    @cached_property
    def _tables(self):
        rows = _kernels.all_tables(len(self.base), len(self.target))
        return [tuple(int(i) for i in r) for r in rows]

    def curry(self, h: FinFn, Z: FinSet) -> FinFn:
        """``h : Z*X -> Y`` becomes ``Z -> (X -> Y)``.

        ``Z`` is passed explicitly: an empty product does not remember
        its factors.
        """
        X, Y = self.base, self.target
        if h.cod != Y or h.dom != product_set(Z, X).set:
            raise EndpointMismatch(f"curry: {h!r} is not a map {Z.name}*{X.name} -> {Y.name}")
        nx, ny = len(X), len(Y)
        idx = tuple(_table_code(h.idx[z * nx:(z + 1) * nx], ny) for z in range(len(Z)))
        return FinFn._raw(Z, self.set, idx)

    def uncurry(self, k: FinFn) -> FinFn:
        """``k : Z -> (X -> Y)`` becomes ``Z*X -> Y``."""
        if k.cod != self.set:
            raise EndpointMismatch(f"uncurry: {k!r} does not land in {self.set.name}")
        P = product_set(k.dom, self.base).set
        tables = self._tables
        return FinFn._raw(P, self.target, tuple(i for c in k.idx for i in tables[c]))


def _table_code(idx, n):
    acc = 0
    for i in idx:
        acc = acc * n + i
    return acc


@lru_cache(maxsize=1024)
def exponential_set(X: FinSet, Y: FinSet) -> ExponentialSet:
    """The set of all tables ``X -> Y`` and evaluation ``(X->Y)*X -> Y``."""
    rows = _kernels.all_tables(len(X), len(Y))
    labels = tuple("{" + ",".join(f"{x}:{Y.elems[i]}" for x, i in zip(X.elems, r)) + "}"
                   for r in rows)
    E = FinSet(f"[{X.name}->{Y.name}]", labels)
    EX = product_set(E, X).set
    ev = FinFn._raw(EX, Y, tuple(int(i) for r in rows for i in r))
    return ExponentialSet(E, ev, X, Y)


# -- quotients, pullbacks, pushouts -----------------------------------------

class UnionFind:
    """Disjoint sets over ``range(n)`` whose roots are class minima."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry


@dataclass(frozen=True)
class QuotientResult:
    classes: tuple
    canonical_map: FinFn


def quotient(X: FinSet, pairs, name=None) -> QuotientResult:
    """Quotient of ``X`` by the equivalence generated by ``pairs`` of labels."""
    uf = UnionFind(len(X))
    ix = X.index
    for a, b in pairs:
        uf.union(ix[a], ix[b])
    roots = [uf.find(i) for i in range(len(X))]
    reps = sorted(set(roots))
    rep_pos = {r: k for k, r in enumerate(reps)}
    Q = FinSet(name or f"{_wrap(X.name)}/~", tuple(X.elems[r] for r in reps))
    classes = tuple(tuple(X.elems[i] for i in range(len(X)) if roots[i] == r) for r in reps)
    return QuotientResult(classes, FinFn._raw(X, Q, tuple(rep_pos[r] for r in roots)))


@dataclass(frozen=True)
class PullbackSet:
    set: FinSet
    p1: FinFn
    p2: FinFn
    f: FinFn
    g: FinFn

    def mediator(self, h1: FinFn, h2: FinFn) -> FinFn:
        return pullback_mediator_set(h1, h2, self)

    @cached_property
    def _position(self):
        return {(a, b): k for k, (a, b) in enumerate(zip(self.p1.idx, self.p2.idx))}


def pullback_set(f: FinFn, g: FinFn) -> PullbackSet:
    """``{(x, y) | f(x) = g(y)}`` for a cospan ``X -> Z <- Y``."""
    if f.cod != g.cod:
        raise EndpointMismatch(f"pullback needs a common codomain, got {f.cod.name} and {g.cod.name}")
    X, Y = f.dom, g.dom
    keep = [(i, j) for i in range(len(X)) for j in range(len(Y)) if f.idx[i] == g.idx[j]]
    W = FinSet(f"{_wrap(X.name)}*[{f.cod.name}]{_wrap(Y.name)}",
               tuple(f"({X.elems[i]},{Y.elems[j]})" for i, j in keep))
    p1 = FinFn._raw(W, X, tuple(i for i, _ in keep))
    p2 = FinFn._raw(W, Y, tuple(j for _, j in keep))
    return PullbackSet(W, p1, p2, f, g)


def pullback_mediator_set(h1: FinFn, h2: FinFn, pb: PullbackSet) -> FinFn:
    """The unique ``u : Q -> W`` with ``p1 o u = h1`` and ``p2 o u = h2``."""
    if h1.dom != h2.dom or h1.cod != pb.f.dom or h2.cod != pb.g.dom:
        raise EndpointMismatch("cone legs do not match the pullback's cospan")
    fi, gi = pb.f.idx, pb.g.idx
    for q, (a, b) in enumerate(zip(h1.idx, h2.idx)):
        if fi[a] != gi[b]:
            raise NotACone(f"f o h1 and g o h2 differ at {h1.dom.elems[q]}",
                           witness=h1.dom.elems[q])
    pos = pb._position
    return FinFn._raw(h1.dom, pb.set, tuple(pos[ab] for ab in zip(h1.idx, h2.idx)))


@dataclass(frozen=True)
class PushoutSet:
    set: FinSet
    j1: FinFn
    j2: FinFn
    quotient: QuotientResult
    f: FinFn
    g: FinFn
    coproduct: CoproductSet

    def mediator(self, k1: FinFn, k2: FinFn) -> FinFn:
        return pushout_mediator_set(k1, k2, self)


def pushout_set(f: FinFn, g: FinFn) -> PushoutSet:
    """``(X + Y)/~`` for a span ``X <- Z -> Y``, with ``f(z) ~ g(z)``."""
    if f.dom != g.dom:
        raise EndpointMismatch(f"pushout needs a common domain, got {f.dom.name} and {g.dom.name}")
    X, Y, Z = f.cod, g.cod, f.dom
    cop = coproduct_set(X, Y)
    C = cop.set
    nx = len(X)
    pairs = [(C.elems[a], C.elems[nx + b]) for a, b in zip(f.idx, g.idx)]
    name = f"{_wrap(X.name)}+[{Z.name}]{_wrap(Y.name)}"
    q = quotient(C, pairs, name=name)
    j1 = fn_compose(q.canonical_map, cop.i1)
    j2 = fn_compose(q.canonical_map, cop.i2)
    return PushoutSet(q.canonical_map.cod, j1, j2, q, f, g, cop)


def pushout_mediator_set(k1: FinFn, k2: FinFn, po: PushoutSet) -> FinFn:
    """The unique ``m : P -> Q`` with ``m o j1 = k1`` and ``m o j2 = k2``."""
    if k1.dom != po.f.cod or k2.dom != po.g.cod or k1.cod != k2.cod:
        raise EndpointMismatch("cocone legs do not match the pushout's span")
    Z = po.f.dom
    for z, (a, b) in enumerate(zip(po.f.idx, po.g.idx)):
        if k1.idx[a] != k2.idx[b]:
            raise NotACocone(f"k1 o f and k2 o g differ at {Z.elems[z]}", witness=Z.elems[z])
    Q = k1.cod
    out = [None] * len(po.set)
    for a, c in enumerate(po.j1.idx):
        out[c] = k1.idx[a]
    for b, c in enumerate(po.j2.idx):
        if out[c] is None:
            out[c] = k2.idx[b]
    return FinFn._raw(po.set, Q, tuple(out))
