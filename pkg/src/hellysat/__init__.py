"""Collapsibility, weak saturation, and exact rank certificates for
fractional and colorful Helly bounds."""

from .audit import AuditReport, colorful_fractional_audit, colorful_helly_audit, fractional_helly_audit
from .certificate import (
    CertificateReport,
    LinearForm,
    MonomialVector,
    certificate_rank,
    edge_vector,
    moment_forms,
    replay_lemma,
    verify_span_condition,
)
from .collapse import (
    CollapseOutcome,
    CollapseStep,
    Status,
    apply_step,
    find_collapse_sequence,
    verify_collapse_sequence,
)
from .complex_core import (
    VOID_DIM,
    SimplicialComplex,
    VertexPartition,
    build_complex,
    faces_of_size,
    full_simplex,
    induced,
    nonfaces_of_size,
    rainbow_faces,
)
from .errors import HellySatError
from .geometry import Box, equality_constructions, gen_family, nerve
from .reduction import reduce_colorful, reduce_fractional
from .saturation import (
    Hypergraph,
    SaturationInstance,
    StarPattern,
    WitnessCopy,
    addable,
    closure,
    verify_saturation_sequence,
    wsat_bruteforce,
)

__version__ = "0.1.0"
