"""Command-line front end.

Exit codes: 0 success or verified, 1 a verifier or law probe found a
counterexample (the witness is printed), 2 malformed input or an
endpoint mismatch.
"""

import argparse
import json
import os
import sys

from . import serialize
from .errors import BilensError, InapplicableLaw, NoMediatorConstructible
from .finset import FinFn
from .functors import adjunction_from_lens, adjunction_to_lens, naturality_witness
from .laws import check_category_laws, sized_objects
from .lens import (Adaptor, Lens, LensObject, adaptor_embed, check_put_get, enumerate_hom,
                   hom_size, lens_compose, lens_identity)
from .limits import (ConeDiagram, CospanDiagram, lens_product, lens_pullback,
                     lens_pullback_mediator, verify_product_universal, verify_pullback_universal)
from .spans import Span, probe_span_laws, span_compose, span_iso, spans_between


class UsageError(Exception):
    pass


def max_budget():
    raw = os.environ.get("BILENS_MAX_BUDGET", "2")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"BILENS_MAX_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("BILENS_MAX_BUDGET must be non-negative")
    return value


def _apex_size(requested):
    cap = max_budget()
    if requested is None:
        return cap, False
    if requested > cap:
        print(f"warning: --max-apex {requested} capped at BILENS_MAX_BUDGET={cap}", file=sys.stderr)
        return cap, True
    return requested, False


def _load(path, kind):
    value = serialize.load_file(path)
    if not isinstance(value, kind):
        raise UsageError(f"{path}: expected a {kind.__name__} document")
    return value


# -- pretty printing --------------------------------------------------------

def _rows_table(header, rows):
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    line = lambda cells: "  ".join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(header), line(["-" * w for w in widths])] + [line(r) for r in rows])


def _pretty_lens(lens: Lens, title="lens"):
    out = [f"{title}: {lens.src} -> {lens.dst}", "",
           _rows_table(["s", "view(s)"], list(lens.view.table.items())), ""]
    rows = [(s, b, t) for s, row in lens.update_table().items() for b, t in row.items()]
    out.append(_rows_table(["s", "b", "update(s,b)"], rows))
    return "\n".join(out)


def _pretty(doc, value):
    if isinstance(value, Lens):
        return _pretty_lens(value)
    if isinstance(value, Span):
        return "\n\n".join([f"span apex {value.apex}", _pretty_lens(value.left, "left"),
                            _pretty_lens(value.right, "right")])
    if isinstance(doc, dict) and "status" in doc:
        rows = [("status", doc["status"]), ("checked_cones", doc["checked_cones"]),
                ("partial", doc["partial"])]
        w = doc.get("witness")
        if w and "failure" in w:
            rows.append(("first_failure", w["failure"]["law"]))
        elif w:
            rows.append(("mediator_count", w["mediator_count"]))
            if "cocone_witness" in w:
                cw = w["cocone_witness"]
                rows.append(("cocone_witness", f"p={cw['p']} w={cw['w']} b={cw['b']}"))
        if "failures" in doc:
            rows.append(("failures", len(doc["failures"])))
        return _rows_table(["field", "value"], rows)
    flat = {k: v for k, v in doc.items() if k != "sets"} if isinstance(doc, dict) else doc
    if isinstance(flat, dict) and all(not isinstance(v, (dict, list)) for v in flat.values()):
        return _rows_table(["field", "value"], list(flat.items()))
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _emit(args, doc, value=None):
    if args.pretty:
        sys.stdout.write(_pretty(doc, value) + "\n")
    else:
        sys.stdout.write(serialize.dumps(doc))


# -- commands ---------------------------------------------------------------

def cmd_compose(args):
    mu, lam = _load(args.mu, Lens), _load(args.lam, Lens)
    out = lens_compose(mu, lam)
    _emit(args, serialize.dump(out), out)
    return 0


def cmd_identity(args):
    out = lens_identity(_load(args.obj, LensObject))
    _emit(args, serialize.dump(out), out)
    return 0


def cmd_embed(args):
    out = adaptor_embed(_load(args.adaptor, Adaptor))
    _emit(args, serialize.dump(out), out)
    return 0


def cmd_product(args):
    prod = lens_product([_load(p, LensObject) for p in args.objs])
    _emit(args, serialize.dump(prod))
    return 0


def cmd_pullback(args):
    pb = lens_pullback(_load(args.cospan, CospanDiagram))
    _emit(args, serialize.dump(pb))
    return 0


def cmd_mediator(args):
    cone = _load(args.cone, ConeDiagram)
    cospan = _load(args.cospan, CospanDiagram)
    if cone.over != cospan:
        raise UsageError("the cone is over a different cospan")
    try:
        out = lens_pullback_mediator(cone, lens_pullback(cospan))
    except NoMediatorConstructible as exc:
        p, w, b = exc.witness
        _emit(args, {"error": "no-mediator-constructible", "witness": {"p": p, "w": w, "b": b}})
        return 1
    _emit(args, serialize.dump(out), out)
    return 0


def cmd_verify(args):
    size, capped = _apex_size(args.max_apex)
    value = serialize.load_file(args.diagram)
    if args.kind == "product":
        if not isinstance(value, list):
            raise UsageError(f"{args.diagram}: expected a family document")
        report = verify_product_universal(value, size)
    else:
        if not isinstance(value, CospanDiagram):
            raise UsageError(f"{args.diagram}: expected a cospan document")
        report = verify_pullback_universal(value, size)
    if capped and not report.partial:
        from dataclasses import replace
        report = replace(report, partial=True)
    _emit(args, serialize.dump(report))
    return 0 if report.verified else 1


def cmd_span(args):
    if args.action == "compose":
        if len(args.files) != 2:
            raise UsageError("span compose takes two span files")
        out = span_compose(_load(args.files[0], Span), _load(args.files[1], Span))
        _emit(args, serialize.dump(out), out)
        return 0
    if args.action == "iso":
        if len(args.files) != 2:
            raise UsageError("span iso takes two span files")
        res = span_iso(_load(args.files[0], Span), _load(args.files[1], Span))
        _emit(args, serialize.dump(res))
        return 0 if res.found else 1
    size, capped = _apex_size(args.max_apex)
    values = [serialize.load_file(f) for f in args.files]
    spans = [v for v in values if isinstance(v, Span)]
    objs = [v for v in values if isinstance(v, LensObject)]
    if len(spans) + len(objs) != len(values) or (spans and objs) or len(objs) > 2:
        raise UsageError("span probe takes span files, or one or two object files")
    if objs:
        X = objs[0]
        Y = objs[-1]
        spans = list(spans_between(X, X, size))
        if Y != X:
            spans += list(spans_between(X, Y, size)) + list(spans_between(Y, Y, size))
    report = probe_span_laws(spans, max_triples=args.max_triples)
    if capped and not report.partial:
        from dataclasses import replace
        report = replace(report, partial=True)
    _emit(args, serialize.dump(report))
    return 0 if report.verified else 1


def cmd_adjunct(args):
    if args.direction == "to-lens":
        value = serialize.load_file(args.file)
        if not (isinstance(value, tuple) and len(value) == 3 and isinstance(value[0], FinFn)):
            raise UsageError(f"{args.file}: expected an adjunct document")
        out = adjunction_to_lens(*value)
        _emit(args, serialize.dump(out), out)
    else:
        lens = _load(args.file, Lens)
        f, k = adjunction_from_lens(lens)
        _emit(args, serialize.dump_adjunct(f, k, lens.src.bwd))
    return 0


def cmd_naturality(args):
    lam = _load(args.lens, Lens)
    f, g = _load(args.f, FinFn), _load(args.g, FinFn)
    bad = naturality_witness(lam, f, g)
    doc = {"natural": bad is None}
    if bad is not None:
        w = serialize.Writer()
        doc = w.document("naturality", {"natural": False,
                                        "witness": {"view": w.fn(bad[0]), "cont": w.fn(bad[1])}})
    _emit(args, doc)
    return 0 if bad is None else 1


def cmd_hom(args):
    X, Y = _load(args.src, LensObject), _load(args.dst, LensObject)
    if args.action == "count":
        _emit(args, {"count": sum(1 for _ in enumerate_hom(X, Y))})
    else:
        if hom_size(X, Y) > 1 << 16:
            raise UsageError(f"hom-set has {hom_size(X, Y)} lenses; refusing to print them all")
        _emit(args, serialize.dump_lenses(enumerate_hom(X, Y)))
    return 0


def cmd_laws(args):
    try:
        sizes = [int(x) for x in args.sizes.split(",")]
    except ValueError:
        raise UsageError("--sizes takes four integers s,t,a,b") from None
    if len(sizes) != 4 or min(sizes) < 0:
        raise UsageError("--sizes takes four non-negative integers s,t,a,b")
    cap = max_budget()
    if max(sizes) > cap:
        raise UsageError(f"sizes exceed BILENS_MAX_BUDGET={cap}")
    report = check_category_laws(sized_objects(sizes))
    _emit(args, serialize.dump(report))
    return 0 if report.verified else 1


def cmd_putget(args):
    lens = _load(args.lens, Lens)
    ok = check_put_get(lens)
    _emit(args, {"put_get": ok})
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="bilens", description="Bimorphic lenses over finite sets.")
    parser.add_argument("--pretty", action="store_true", help="render aligned tables instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="compose two lenses, mu after lam")
    p.add_argument("mu")
    p.add_argument("lam")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("identity", help="identity lens on an object")
    p.add_argument("obj")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("embed", help="lens of an adaptor (f, g)")
    p.add_argument("adaptor")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("product", help="product of objects with projections")
    p.add_argument("objs", nargs="*")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("pullback", help="pullback of a cospan")
    p.add_argument("cospan")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("mediator", help="mediating lens for a cone over a cospan")
    p.add_argument("cone")
    p.add_argument("cospan")
    p.set_defaults(func=cmd_mediator)

    p = sub.add_parser("verify", help="exhaustively check a universal property")
    p.add_argument("kind", choices=["product", "pullback"])
    p.add_argument("diagram")
    p.add_argument("--max-apex", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("span", help="span composition, isomorphism and law probes")
    p.add_argument("action", choices=["compose", "iso", "probe"])
    p.add_argument("files", nargs="*")
    p.add_argument("--max-apex", type=int, default=1,
                   help="apex size bound when probing spans between objects (default 1)")
    p.add_argument("--max-triples", type=int, default=2000)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("adjunct", help="transport across the adjunction isomorphism")
    p.add_argument("direction", choices=["to-lens", "from-lens"])
    p.add_argument("file")
    p.set_defaults(func=cmd_adjunct)

    p = sub.add_parser("naturality", help="check one naturality square exhaustively")
    p.add_argument("lens")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_naturality)

    p = sub.add_parser("hom", help="count or list a hom-set")
    p.add_argument("action", choices=["count", "enumerate"])
    p.add_argument("src")
    p.add_argument("dst")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("laws", help="exhaustive category-law suite")
    p.add_argument("--sizes", default="2,2,2,2")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("putget", help="check the put-get law")
    p.add_argument("lens")
    p.set_defaults(func=cmd_putget)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BilensError, UsageError, OSError) as exc:
        kind = "inapplicable" if isinstance(exc, InapplicableLaw) else "error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
