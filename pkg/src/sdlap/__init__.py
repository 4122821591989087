"""Signed distance matrices, signed distance Laplacians, balance
certificates, and spectra of signed graphs."""

from .balance import (
    BalanceReport,
    ForestComponent,
    OneForest,
    SizeBoundError,
    closed_form_det,
    det_exact,
    det_float,
    enumerate_spanning_1forests,
    forest_det,
    is_balanced_det,
    is_balanced_forest,
    is_balanced_switching,
)
from .core import (
    NEGATIVE,
    POSITIVE,
    GenerationError,
    GraphFormatError,
    SignedGraph,
    WeightedSignedGraph,
    as_weighted,
    canonical_orientation,
    components,
    generate,
    parse_edge_list,
    path_sign,
    serialize,
    switch,
)
from .distance import (
    DisconnectedGraphError,
    DistanceTable,
    IncompatibleGraphError,
    PairDistanceSummary,
    associated_complete,
    distance_matrix,
    distance_table,
    is_compatible,
    sssp_signs,
    transmission,
)
from .matrices import (
    IncidenceMatrix,
    SquareMatrix,
    adjacency_matrix,
    distance_laplacian,
    distance_laplacian_from_table,
    incidence_matrix,
    weighted_degree_matrix,
    weighted_laplacian,
)
from .spectra import (
    FormulaComparisonRow,
    Spectrum,
    TransmissionShiftReport,
    cospectral,
    formula_vs_eigensolver_report,
    odd_cycle_formula_spectrum,
    report_to_csv,
    report_to_markdown,
    sym_eig,
    transmission_regular_shift_check,
)

__version__ = "0.1.0"
