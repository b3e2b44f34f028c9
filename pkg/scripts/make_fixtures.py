"""Regenerate the JSON files under fixtures/."""

import pathlib
import sys

from bilens import serialize
from bilens.finset import FinFn, FinSet, canonical_set
from bilens.functors import adjunction_from_lens
from bilens.lens import Adaptor, Lens, LensObject, lens_identity
from bilens.limits import ConeDiagram, CospanDiagram
from bilens.spans import Span, relabel_apex, span_identity

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")


def write(name, doc):
    (OUT / name).write_text(serialize.dumps(doc), encoding="utf-8")


def main():
    OUT.mkdir(exist_ok=True)
    S2T2 = LensObject(canonical_set("S", "s", 2), canonical_set("T", "t", 2))
    A2B2 = LensObject(canonical_set("A", "a", 2), canonical_set("B", "b", 2))
    one = LensObject(FinSet("S1", ("s",)), FinSet("T1", ("t",)))
    write("S2T2.json", serialize.dump(S2T2))
    write("A2B2.json", serialize.dump(A2B2))
    write("unit.json", serialize.dump(one))
    write("family.json", serialize.dump_family([S2T2, A2B2]))
    write("family-empty.json", serialize.dump_family([]))

    ident = lens_identity(S2T2)
    write("id.json", serialize.dump(ident))

    lam = Lens.from_tables(S2T2, A2B2, {"s0": "a0", "s1": "a1"},
                           {"s0": {"b0": "t0", "b1": "t1"}, "s1": {"b0": "t1", "b1": "t1"}})
    mu = Lens.from_tables(A2B2, S2T2, {"a0": "s1", "a1": "s1"},
                          {"a0": {"t0": "b1", "t1": "b0"}, "a1": {"t0": "b0", "t1": "b0"}})
    write("lam.json", serialize.dump(lam))
    write("mu.json", serialize.dump(mu))

    f = FinFn(S2T2.fwd, A2B2.fwd, {"s0": "a1", "s1": "a0"})
    g = FinFn(A2B2.bwd, S2T2.bwd, {"b0": "t0", "b1": "t0"})
    write("adaptor.json", serialize.dump(Adaptor(f, g)))
    write("f.json", serialize.dump(FinFn(A2B2.fwd, A2B2.fwd, {"a0": "a1", "a1": "a1"})))
    write("g.json", serialize.dump(FinFn(S2T2.bwd, S2T2.bwd, {"t0": "t1", "t1": "t0"})))
    fv, k = adjunction_from_lens(lam)
    write("adjunct.json", serialize.dump_adjunct(fv, k, S2T2.bwd))

    # monomorphic lens on (S,S) that satisfies put-get, and one on (S,T)
    SS = LensObject(S2T2.fwd, S2T2.fwd)
    putget = Lens.from_tables(SS, SS, {"s0": "s0", "s1": "s1"},
                              {"s0": {"s0": "s0", "s1": "s1"}, "s1": {"s0": "s0", "s1": "s1"}})
    write("putget-mono.json", serialize.dump(putget))

    # universality probe: constant views into a one-point A
    S = FinSet("S", ("s1", "s2"))
    S_ = FinSet("S'", ("s1'", "s2'"))
    T = FinSet("T", ("t1", "t2"))
    T_ = FinSet("T'", ("t1'", "t2'"))
    A, B = FinSet("A", ("a",)), FinSet("B", ("b",))
    X, X_, foot = LensObject(S, T), LensObject(S_, T_), LensObject(A, B)
    left = Lens.from_tables(X, foot, {"s1": "a", "s2": "a"}, {"s1": {"b": "t1"}, "s2": {"b": "t2"}})
    right = Lens.from_tables(X_, foot, {"s1'": "a", "s2'": "a"},
                             {"s1'": {"b": "t1'"}, "s2'": {"b": "t2'"}})
    probe = CospanDiagram(left, right)
    write("probe-cospan.json", serialize.dump(probe))
    apex = LensObject(FinSet("P", ("p",)), FinSet("Q", ("q1", "q2")))
    cmu = Lens.from_tables(apex, X, {"p": "s1"}, {"p": {"t1": "q1", "t2": "q2"}})
    cmu2 = Lens.from_tables(apex, X_, {"p": "s1'"}, {"p": {"t1'": "q1", "t2'": "q2"}})
    write("probe-cone.json", serialize.dump(ConeDiagram(apex, cmu, cmu2, probe)))

    # a well-behaved cospan: identity legs
    id_cospan = CospanDiagram(ident, ident)
    write("id-cospan.json", serialize.dump(id_cospan))
    write("id-cone.json", serialize.dump(ConeDiagram(S2T2, ident, ident, id_cospan)))

    s = Span(S2T2, ident, lam)
    write("span.json", serialize.dump(s))
    write("span-relabelled.json", serialize.dump(relabel_apex(s, (1, 0), (1, 0))))
    write("span-id.json", serialize.dump(span_identity(A2B2)))


if __name__ == "__main__":
    main()
