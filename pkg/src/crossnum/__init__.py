"""Exact crossing-number machinery for drawings of complete graphs.

Rectilinear drawings are point sets with integer coordinates;
pseudolinear drawings are triple-orientation signatures.  Both count
crossings exactly, admit halving-matching-based doubling with verified
crossing predictions, and certify upper bounds on the corresponding
crossing constants as exact rationals.
"""

from .doubling import (
    BoundValue,
    DoublingReport,
    VerificationError,
    double_points,
    double_signature,
    harary_hill,
    predicted_double,
    pseudo_bound,
    rect_bound,
)
from .geometry import (
    DegenerateError,
    PointSet,
    count_crossings,
    count_crossings_brute,
    orient,
    removal_values,
    segments_cross,
)
from .halving import (
    NO_MATCHING,
    HalvingLine,
    HalvingMatching,
    NoMatching,
    RotationSlot,
    check_halving_line,
    check_halving_line_sig,
    halving_lines,
    halving_matching,
    halving_matching_sig,
    slot_partner,
)
from .heuristics import (
    SearchBudget,
    cell_walk,
    random_relocation,
    shrink,
    sig_flip_search,
)
from .io import (
    ParseError,
    format_matching,
    format_points,
    format_signature_text,
    load_drawing,
    load_points,
    load_signature,
    parse_drawing,
    parse_matching,
    parse_points,
    parse_signature,
    save_drawing,
    save_points,
    save_signature,
    signature_from_binary,
    signature_to_binary,
)
from .pipeline import PipelineConfig, orchestrate
from .registry import DrawingRecord, Registry, SubmitResult, bound_for, verify
from .signatures import (
    Signature,
    convex_signature,
    count_crossings_sig,
    count_crossings_sig_brute,
    delete_vertex,
    flip,
    is_realizable,
    realizable_after_flip,
    removal_values_sig,
    rotation,
    signature_of,
)
from .svg import export_svg, wiring_diagram

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "DegenerateError",
    "DoublingReport",
    "DrawingRecord",
    "HalvingLine",
    "HalvingMatching",
    "NO_MATCHING",
    "NoMatching",
    "ParseError",
    "PipelineConfig",
    "PointSet",
    "Registry",
    "RotationSlot",
    "SearchBudget",
    "Signature",
    "SubmitResult",
    "VerificationError",
    "bound_for",
    "cell_walk",
    "check_halving_line",
    "check_halving_line_sig",
    "convex_signature",
    "count_crossings",
    "count_crossings_brute",
    "count_crossings_sig",
    "count_crossings_sig_brute",
    "delete_vertex",
    "double_points",
    "double_signature",
    "export_svg",
    "flip",
    "format_matching",
    "format_points",
    "format_signature_text",
    "halving_lines",
    "halving_matching",
    "halving_matching_sig",
    "harary_hill",
    "is_realizable",
    "load_drawing",
    "load_points",
    "load_signature",
    "orchestrate",
    "orient",
    "parse_drawing",
    "parse_matching",
    "parse_points",
    "parse_signature",
    "predicted_double",
    "pseudo_bound",
    "random_relocation",
    "realizable_after_flip",
    "rect_bound",
    "removal_values",
    "removal_values_sig",
    "rotation",
    "save_drawing",
    "save_points",
    "save_signature",
    "segments_cross",
    "shrink",
    "sig_flip_search",
    "signature_from_binary",
    "signature_of",
    "signature_to_binary",
    "slot_partner",
    "verify",
    "wiring_diagram",
]
