"""Buekenhout-Metz unitals in PG(2, q^2), q odd, and their Triple O'Nan configurations."""

from .gfield import FieldCtx, FieldError, Fq2Elem, FqElem, NonSquareError, OrderTooLarge, ctx_for_order, make_ctx
from .plane import DegenerateError, ProjLine, ProjPoint
from .unital import T_INF, InvalidParamsError, Unital, UnitalParams, equivalent_params, validate
from .onan import TripleOnanConfig, TripleOnanParams, realize, verify_params, verify_triple_onan
from .construct import asq14_construction, conic_construction, cyclotomic, q3_construction, transfer_b
from .search import SearchReport, canonical_search, count_invariance_check, direct_enumeration_oracle

__all__ = [
    "FieldCtx", "FieldError", "Fq2Elem", "FqElem", "NonSquareError", "OrderTooLarge", "ctx_for_order", "make_ctx",
    "DegenerateError", "ProjLine", "ProjPoint",
    "T_INF", "InvalidParamsError", "Unital", "UnitalParams", "equivalent_params", "validate",
    "TripleOnanConfig", "TripleOnanParams", "realize", "verify_params", "verify_triple_onan",
    "asq14_construction", "conic_construction", "cyclotomic", "q3_construction", "transfer_b",
    "SearchReport", "canonical_search", "count_invariance_check", "direct_enumeration_oracle",
]
