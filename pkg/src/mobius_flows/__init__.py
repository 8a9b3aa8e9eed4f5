"""Morse flows and their one-parameter gradient bifurcations on the Möbius strip.

Flows are encoded by separatrix diagrams: graphs embedded in the strip,
stored as signed rotation systems on the capped surface.
"""
__version__ = "0.1.0"

from .errors import ArgumentError, NotFoundError, StructuralError, UnrealizableError  # noqa: E402
from .surface_map import (  # noqa: E402
    SignedMap, euler_characteristic, is_mobius, orientability, surface_signature, trace_faces, vertex_flip,
)
from .diagram import (  # noqa: E402
    EdgeKind, SeparatrixDiagram, VertexKind, check_cell_condition, check_index_formula, double_to_closed,
    reverse_flow, validate, validate_local_structure,
)
from .equivalence import canonical_code, canonical_form, is_self_reverse, isomorphic  # noqa: E402
from .enumeration import (  # noqa: E402
    PointConfiguration, connection_type, enumerate_morse_flows, enumerate_sc_diagrams, point_configurations,
)
from .bifurcation import (  # noqa: E402
    BifurcationType, MarkedBifurcation, bifurcation_census, classify_marking, contract_bifurcation,
    contractible_separatrices, enumerate_sn_bifurcations,
)
from .catalog import (  # noqa: E402
    Catalog, DiscrepancyReport, build_catalog, diff_against_expected, export_diagram, load_catalog,
    render_counts_table, save_catalog,
)
