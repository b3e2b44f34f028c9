"""Bimorphic lenses over finite sets: construction, limits, spans and
exhaustive checkers for their universal properties."""

from .errors import (BilensError, EndpointMismatch, InapplicableLaw, NoMediatorConstructible,
                     NotACocone, NotACone, SchemaError)
from .finset import FinFn, FinSet, canonical_set, enumerate_fns, fn_compose, identity
from .functors import (VK, K_object, V_object, VK_object, adjunction_from_lens, adjunction_to_lens,
                       apply_K, apply_V, check_adjunction_naturality, naturality_witness)
from .laws import LawFailure, check_category_laws, check_embed_functoriality, sized_objects
from .lens import (Adaptor, Lens, LensObject, adaptor_compose, adaptor_embed, check_put_get,
                   enumerate_hom, hom_size, inverse, lens_compose, lens_equal, lens_identity)
from .limits import (ConeDiagram, CospanDiagram, LensProduct, LensPullback, ProductCone,
                     VerificationReport, Witness, lens_product, lens_pullback,
                     lens_pullback_mediator, lens_tuple, verify_product_universal,
                     verify_pullback_universal)
from .spans import (Span, SpanIso, adaptor_bijection_spans, probe_span_laws, span_compose,
                    span_identity, span_iso, spans_between)

from types import ModuleType as _Module

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _Module))
