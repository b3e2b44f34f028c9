"""JSON documents for sets, functions, lenses, diagrams, spans and reports.

A document is an object with exactly one payload key and an optional
``"sets"`` list declaring every set the payload refers to by name::

    {"sets": [{"name": "S", "elems": ["s0", "s1"]}, ...],
     "lens": {"src": ["S", "T"], "dst": ["A", "B"],
              "view": {"s0": "a0", ...},
              "update": {"s0": {"b0": "t0", ...}, ...}}}

Unknown keys are rejected at every level.  Element order inside a set is
preserved in both directions.
"""

import json

from .errors import SchemaError
from .finset import FinFn, FinSet, exponential_set
from .laws import LawFailure
from .lens import Adaptor, Lens, LensObject
from .limits import (ConeDiagram, CospanDiagram, LensProduct, LensPullback, ProductCone,
                     VerificationReport, Witness)
from .spans import Span, SpanIso

PAYLOADS = ("set", "fn", "object", "lens", "adaptor", "family", "cospan", "cone", "span",
            "adjunct", "product", "pullback", "span_iso", "lenses")


def _keys(body, required, optional=(), where="document"):
    if not isinstance(body, dict):
        raise SchemaError(f"{where} must be an object")
    extra = set(body) - set(required) - set(optional)
    if extra:
        raise SchemaError(f"unknown keys in {where}: {sorted(extra)}")
    missing = [k for k in required if k not in body]
    if missing:
        raise SchemaError(f"missing keys in {where}: {missing}")


# -- writing ----------------------------------------------------------------

class Writer:
    """Renders values to JSON bodies, collecting the sets they mention."""

    def __init__(self):
        self.sets = {}

    def ref(self, S: FinSet) -> str:
        name = S.name
        k = 1
        while name in self.sets and self.sets[name] != S:
            k += 1
            name = f"{S.name}~{k}"
        self.sets[name] = S
        return name

    def finset(self, S):
        return {"name": S.name, "elems": list(S.elems)}

    def fn(self, f: FinFn):
        return {"dom": self.ref(f.dom), "cod": self.ref(f.cod), "table": f.table}

    def obj(self, X: LensObject):
        return [self.ref(X.fwd), self.ref(X.bwd)]

    def lens(self, l: Lens):
        return {"src": self.obj(l.src), "dst": self.obj(l.dst),
                "view": l.view.table, "update": l.update_table()}

    def adaptor(self, a: Adaptor):
        return {"f": self.fn(a.f), "g": self.fn(a.g)}

    def cospan(self, c: CospanDiagram):
        return {"left": self.lens(c.left), "right": self.lens(c.right)}

    def cone(self, c: ConeDiagram):
        return {"mu": self.lens(c.mu), "mu_prime": self.lens(c.mu_prime), "over": self.cospan(c.over)}

    def span(self, s: Span):
        return {"apex": self.obj(s.apex), "left": self.lens(s.left), "right": self.lens(s.right)}

    def adjunct(self, f: FinFn, k: FinFn, bwd: FinSet):
        E = exponential_set(f.dom, bwd)
        cont = {b: E.function(k(b)).table for b in k.dom.elems}
        return {"src": [self.ref(f.dom), self.ref(bwd)], "dst": [self.ref(f.cod), self.ref(k.dom)],
                "view": f.table, "cont": cont}

    def witness(self, w: Witness):
        cone = w.cone
        out = {}
        if isinstance(cone, ConeDiagram):
            out["cone"] = self.cone(cone)
        elif isinstance(cone, ProductCone):
            out["product_cone"] = {"apex": self.obj(cone.apex),
                                   "legs": [self.lens(l) for l in cone.legs],
                                   "factors": [self.obj(o) for o in cone.factors]}
        else:
            out["failure"] = self.failure(cone)
        out["mediator_count"] = w.mediator_count
        if w.cocone_witness is not None:
            p, wl, b = w.cocone_witness
            out["cocone_witness"] = {"p": p, "w": wl, "b": b}
        return out

    def failure(self, f):
        items = []
        for item in f.items:
            if isinstance(item, Span):
                items.append({"span": self.span(item)})
            elif isinstance(item, Lens):
                items.append({"lens": self.lens(item)})
            elif isinstance(item, Adaptor):
                items.append({"adaptor": self.adaptor(item)})
            elif isinstance(item, LensObject):
                items.append({"object": self.obj(item)})
            else:
                raise TypeError(f"cannot serialise {item!r}")
        return {"law": f.law, "items": items}

    def report(self, r: VerificationReport):
        out = {"status": r.status, "checked_cones": r.checked_cones, "partial": r.partial}
        if r.witness is not None:
            out["witness"] = self.witness(r.witness)
        if r.failures:
            out["failures"] = [self.failure(f) for f in r.failures]
        return out

    def document(self, key, body):
        doc = {}
        if self.sets:
            doc["sets"] = [{"name": n, "elems": list(S.elems)} for n, S in self.sets.items()]
        doc[key] = body
        return doc


def dump(value) -> dict:
    """The document for an in-memory value."""
    w = Writer()
    if isinstance(value, FinSet):
        return {"set": w.finset(value)}
    if isinstance(value, FinFn):
        body = w.fn(value)
        return w.document("fn", body)
    if isinstance(value, LensObject):
        return w.document("object", w.obj(value))
    if isinstance(value, Lens):
        return w.document("lens", w.lens(value))
    if isinstance(value, Adaptor):
        return w.document("adaptor", w.adaptor(value))
    if isinstance(value, CospanDiagram):
        return w.document("cospan", w.cospan(value))
    if isinstance(value, ConeDiagram):
        return w.document("cone", w.cone(value))
    if isinstance(value, Span):
        return w.document("span", w.span(value))
    if isinstance(value, LensProduct):
        body = {"object": w.obj(value.obj), "projections": [w.lens(p) for p in value.projections]}
        return w.document("product", body)
    if isinstance(value, LensPullback):
        body = {"object": w.obj(value.obj), "p1": w.lens(value.p1), "p2": w.lens(value.p2)}
        return w.document("pullback", body)
    if isinstance(value, SpanIso):
        body = {"iso": w.lens(value.iso) if value.iso is not None else None,
                "inverse": w.lens(value.inverse) if value.inverse is not None else None,
                "inconclusive": value.inconclusive}
        return w.document("span_iso", body)
    if isinstance(value, VerificationReport):
        body = w.report(value)
        doc = {}
        if w.sets:
            doc["sets"] = [{"name": n, "elems": list(S.elems)} for n, S in w.sets.items()]
        doc.update(body)
        return doc
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dump_family(objs) -> dict:
    w = Writer()
    return w.document("family", [w.obj(o) for o in objs])


def dump_adjunct(f, k, bwd) -> dict:
    w = Writer()
    return w.document("adjunct", w.adjunct(f, k, bwd))


def dump_lenses(lenses) -> dict:
    w = Writer()
    return w.document("lenses", [w.lens(l) for l in lenses])


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- reading ----------------------------------------------------------------

class Reader:
    def __init__(self, sets=()):
        self.sets = {}
        for body in sets:
            S = self.finset(body)
            if S.name in self.sets and self.sets[S.name] != S:
                raise SchemaError(f"set {S.name!r} declared twice with different elements")
            self.sets[S.name] = S

    def finset(self, body):
        _keys(body, ("name", "elems"), where="set")
        if not isinstance(body["name"], str) or not isinstance(body["elems"], list):
            raise SchemaError("set needs a string name and a list of elements")
        try:
            return FinSet(body["name"], tuple(body["elems"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(str(exc)) from None

    def ref(self, name):
        if not isinstance(name, str):
            raise SchemaError(f"set reference must be a string, got {name!r}")
        try:
            return self.sets[name]
        except KeyError:
            raise SchemaError(f"undeclared set {name!r}") from None

    def pair(self, body):
        if not isinstance(body, list) or len(body) != 2:
            raise SchemaError("an object is a pair [fwd, bwd] of set names")
        return self.ref(body[0]), self.ref(body[1])

    def obj(self, body):
        return LensObject(*self.pair(body))

    def _table(self, table, where):
        if not isinstance(table, dict):
            raise SchemaError(f"{where} must be an object")
        return table

    def fn(self, body):
        _keys(body, ("dom", "cod", "table"), where="fn")
        try:
            return FinFn(self.ref(body["dom"]), self.ref(body["cod"]), self._table(body["table"], "table"))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None

    def lens(self, body):
        _keys(body, ("src", "dst", "view", "update"), where="lens")
        src, dst = self.obj(body["src"]), self.obj(body["dst"])
        update = self._table(body["update"], "update")
        for row in update.values():
            self._table(row, "update row")
        try:
            return Lens.from_tables(src, dst, self._table(body["view"], "view"), update)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None

    def adaptor(self, body):
        _keys(body, ("f", "g"), where="adaptor")
        return Adaptor(self.fn(body["f"]), self.fn(body["g"]))

    def cospan(self, body):
        _keys(body, ("left", "right"), where="cospan")
        return CospanDiagram(self.lens(body["left"]), self.lens(body["right"]))

    def cone(self, body):
        _keys(body, ("mu", "mu_prime", "over"), where="cone")
        mu = self.lens(body["mu"])
        return ConeDiagram(mu.src, mu, self.lens(body["mu_prime"]), self.cospan(body["over"]))

    def span(self, body):
        _keys(body, ("apex", "left", "right"), where="span")
        return Span(self.obj(body["apex"]), self.lens(body["left"]), self.lens(body["right"]))

    def family(self, body):
        if not isinstance(body, list):
            raise SchemaError("family must be a list of objects")
        return [self.obj(o) for o in body]

    def adjunct(self, body):
        _keys(body, ("src", "dst", "view", "cont"), where="adjunct")
        (S, T), (A, B) = self.pair(body["src"]), self.pair(body["dst"])
        E = exponential_set(S, T)
        cont = self._table(body["cont"], "cont")
        try:
            f = FinFn(S, A, self._table(body["view"], "view"))
            rows = {b: E.element(FinFn(S, T, self._table(cont.get(b), "cont row")))
                    for b in cont}
            k = FinFn(B, E.set, rows)
        except (ValueError, SchemaError) as exc:
            raise SchemaError(str(exc)) from None
        return f, k, T

    def witness(self, body):
        _keys(body, ("mediator_count",), ("cone", "product_cone", "failure", "cocone_witness"),
              where="witness")
        if "cone" in body:
            cone = self.cone(body["cone"])
        elif "product_cone" in body:
            pc = body["product_cone"]
            _keys(pc, ("apex", "legs", "factors"), where="product_cone")
            cone = ProductCone(self.obj(pc["apex"]), tuple(self.lens(l) for l in pc["legs"]),
                               tuple(self.obj(o) for o in pc["factors"]))
        elif "failure" in body:
            cone = self.failure(body["failure"])
        else:
            raise SchemaError("witness needs a cone, product_cone or failure")
        cw = body.get("cocone_witness")
        if cw is not None:
            _keys(cw, ("p", "w", "b"), where="cocone_witness")
            cw = (cw["p"], cw["w"], cw["b"])
        return Witness(cone, body["mediator_count"], cw)

    def failure(self, body):
        _keys(body, ("law", "items"), where="failure")
        items = []
        if not isinstance(body["items"], list):
            raise SchemaError("failure items must be a list")
        for item in body["items"]:
            _keys(item, (), ("span", "lens", "adaptor", "object"), where="failure item")
            if len(item) != 1:
                raise SchemaError("a failure item has exactly one key")
            (kind, val), = item.items()
            items.append({"span": self.span, "lens": self.lens, "adaptor": self.adaptor,
                          "object": self.obj}[kind](val))
        return LawFailure(body["law"], tuple(items))

    def report(self, body):
        _keys(body, ("status", "checked_cones", "partial"), ("witness", "failures"), where="report")
        witness = self.witness(body["witness"]) if "witness" in body else None
        failures = tuple(self.failure(f) for f in body.get("failures", ()))
        try:
            return VerificationReport(body["status"], body["checked_cones"], witness,
                                      body["partial"], failures)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None


def load(doc):
    """Parse a document into its value; see :data:`PAYLOADS` for the kinds.

    Any structural problem surfaces as :class:`SchemaError`; diagrams
    whose parts parse but do not fit together raise the package's other
    errors (``EndpointMismatch``, ``NotACone``).
    """
    try:
        return _load(doc)
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise SchemaError(f"malformed document: {exc!r}") from None


def _load(doc):
    if not isinstance(doc, dict):
        raise SchemaError("a document must be a JSON object")
    if "status" in doc:
        reader = Reader(doc.get("sets", ()))
        body = {k: v for k, v in doc.items() if k != "sets"}
        return reader.report(body)
    keys = [k for k in doc if k != "sets"]
    if len(keys) != 1 or keys[0] not in PAYLOADS:
        raise SchemaError(f"expected one payload key from {list(PAYLOADS)}, got {keys}")
    key = keys[0]
    sets = doc.get("sets", [])
    if not isinstance(sets, list):
        raise SchemaError("sets must be a list")
    reader = Reader(sets)
    body = doc[key]
    if key == "set":
        return reader.finset(body)
    if key == "product":
        _keys(body, ("object", "projections"), where="product")
        return reader.obj(body["object"]), [reader.lens(l) for l in body["projections"]]
    if key == "pullback":
        _keys(body, ("object", "p1", "p2"), where="pullback")
        return reader.obj(body["object"]), reader.lens(body["p1"]), reader.lens(body["p2"])
    if key == "span_iso":
        _keys(body, ("iso", "inverse", "inconclusive"), where="span_iso")
        iso = reader.lens(body["iso"]) if body["iso"] is not None else None
        inv = reader.lens(body["inverse"]) if body["inverse"] is not None else None
        return SpanIso(iso, inv, body["inconclusive"])
    if key == "lenses":
        return [reader.lens(l) for l in body]
    return getattr(reader, {"fn": "fn", "object": "obj"}.get(key, key))(body)


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    return load(doc)
