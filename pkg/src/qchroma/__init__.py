"""Exact arithmetic for chromatic-type graph invariants.

A vertex-weighted multigraph library computing an (r,q)-deformed family of
colouring and spanning-subgraph invariants by several independent exact
algorithms, their correspondences with the Potts partition function in an
external field, the classical partition-indexed polynomials they embed
into, and the integer-partition rank machinery that bounds how much the
deformed family can remember.
"""

from .errors import (
    BadPrimeError,
    ExactDivisionError,
    GraphFormatError,
    InvalidEdgeError,
    LoopContractionError,
    QchromaError,
    SizeLimitError,
    SubstitutionError,
    VariableMismatchError,
)
from .graphs import (
    ComponentSummary,
    WeightedMultigraph,
    canonical_key,
    enumerate_multigraphs,
    graph_to_json,
    graph_to_text,
    load_graph,
    parse_graph_json,
    parse_graph_text,
    random_weighted_multigraphs,
    subset_profile,
)
from .polynomials import BivariatePoly, UniPoly, poly_exact_div, poly_mul, q_integer
from .linalg import (
    RationalMatrix,
    crt_combine,
    rank_and_nullspace,
    rational_reconstruction,
)
from .chromatic import (
    EvalPoint,
    RExponentTable,
    clear_caches,
    q_chromatic,
    q_dichromate,
    q_dichromate_falling,
    rq_chromatic_delcon,
    rq_chromatic_statesum,
    rq_chromatic_subset,
    rq_dichromate,
    rq_dichromate_delcon,
    rq_dichromate_symbolic,
    rq_dichromate_subset_symbolic,
    rq_dichromate_table,
)
from .classic import (
    UPolynomial,
    XBTable,
    dichromate_from_u,
    dichromate_from_xb,
    u_polynomial,
    xb_from_dichromate,
    xb_truncated,
)
from .potts import (
    PottsField,
    dichromate_potts_report,
    hamiltonian,
    partition_function,
    q_dichromate_potts_report,
    u_potts_report,
)
from .partitions import (
    find_dependency,
    geometric_product,
    geometric_product_via_factors,
    monomial_matrix,
    monomial_rank,
    partition_count,
    partitions,
    qpoch,
    row_factors,
    threshold_scan,
    verify_dependency,
)

__version__ = "0.1.0"
