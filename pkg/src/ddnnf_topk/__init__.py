"""Top-k solutions, top-k values and top-k transformation for d-DNNF circuits."""

from .algebra import (
    NAT_PLUS,
    UNIT_PRODUCT,
    SemigroupSpec,
    ValueFunction,
    assignment_value,
    builtin_semigroup,
    lex_compare,
    load_weights,
)
from .circuit import (
    Circuit,
    NNFParseError,
    Node,
    check_decomposability,
    check_determinism_bruteforce,
    evaluate,
    isomorphic,
    parse_nnf,
    read_nnf,
    write_nnf,
)
from .oracle import (
    GeneratorParams,
    brute_check_solutions,
    brute_check_transform,
    brute_top_values,
    enumerate_models,
    random_circuit,
)
from .preprocess import binarize, prepare, reduce, smooth
from .topk import (
    Concat,
    Leaf,
    flatten,
    simplify_circuit,
    sorted_fusion_solutions,
    sorted_fusion_values,
    sorted_product_solutions,
    sorted_product_values,
    top_solutions,
    top_values,
    transform,
)

__version__ = "0.1.0"

__all__ = [
    "assignment_value",
    "binarize",
    "brute_check_solutions",
    "brute_check_transform",
    "brute_top_values",
    "builtin_semigroup",
    "check_decomposability",
    "check_determinism_bruteforce",
    "Circuit",
    "Concat",
    "enumerate_models",
    "evaluate",
    "flatten",
    "GeneratorParams",
    "isomorphic",
    "Leaf",
    "lex_compare",
    "load_weights",
    "NAT_PLUS",
    "NNFParseError",
    "Node",
    "parse_nnf",
    "prepare",
    "random_circuit",
    "read_nnf",
    "reduce",
    "SemigroupSpec",
    "simplify_circuit",
    "smooth",
    "sorted_fusion_solutions",
    "sorted_fusion_values",
    "sorted_product_solutions",
    "sorted_product_values",
    "top_solutions",
    "top_values",
    "transform",
    "UNIT_PRODUCT",
    "ValueFunction",
    "write_nnf",
]
