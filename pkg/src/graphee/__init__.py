"""Sparse one-hot graph encoder embedding toolkit.

Ingests edge lists, assembles CSR adjacency matrices, and computes the
N x K encoder embedding with optional Laplacian normalization, diagonal
augmentation, and row correlation. Ships a seeded SBM generator and a
CLI (``graphee``) with embed / sbm / density / bench subcommands.
"""

from ._kernels import NUMBA_ENABLED
from .embedding import (
    UNLABELED,
    EmbedOptions,
    LabelVector,
    build_weight_matrix,
    correlate_rows,
    encode,
    encode_reference,
)
from .errors import GrapheeError, NumericalDomainError, ParseError, StructuralError
from .graph_io import (
    EdgeList,
    ParseOptions,
    count_undirected_edges,
    edge_density,
    parse_edge_list,
    parse_labels,
    write_edge_list,
    write_embedding,
    write_labels,
)
from .sbm import SbmParams, generate_sbm
from .sparse import (
    CooBuilder,
    CsrMatrix,
    add_identity,
    degree_vector,
    laplacian_normalize,
    spmm,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "UNLABELED",
    "CooBuilder",
    "CsrMatrix",
    "EdgeList",
    "EmbedOptions",
    "GrapheeError",
    "LabelVector",
    "NumericalDomainError",
    "ParseError",
    "ParseOptions",
    "SbmParams",
    "StructuralError",
    "add_identity",
    "build_weight_matrix",
    "correlate_rows",
    "count_undirected_edges",
    "degree_vector",
    "edge_density",
    "encode",
    "encode_reference",
    "generate_sbm",
    "laplacian_normalize",
    "parse_edge_list",
    "parse_labels",
    "spmm",
    "write_edge_list",
    "write_embedding",
    "write_labels",
    "__version__",
]
