"""Exact slope stability of logarithmic tangent sheaves on toric varieties of Picard rank one and two."""

__version__ = "0.1.0"

from .delpezzo import P2, PairReport, SurfaceKind, delpezzo_report, enumerate_pairs, hirzebruch
from .errors import LogStabError, PreconditionError
from .klyachko import FiltrationFamily, decompose, direct_sum, logtangent_filtrations, subsheaf_filtrations
from .lattice_fan import (
    DivisorClass,
    Rank1Class,
    Rank1Variety,
    Rank2Variety,
    build_rank1,
    build_rank2,
    class_of,
    is_ample,
    log_anticanonical_class,
)
from .regions import (
    StabilityRegion,
    case_polynomials,
    stability_region,
    threshold_delta_r,
    threshold_s_exceeds_delta,
)
from .roots import AlgebraicNumber, descartes_sign_changes, unique_positive_root
from .stability import Kind, Polystable, Verdict, brute_force_at, check_at, polystable_at, slope
from .volume_degree import RatPoly, facet_degree_polys, rank1_degrees, volume_poly

__all__ = [
    "__version__",
    "P2",
    "PairReport",
    "SurfaceKind",
    "delpezzo_report",
    "enumerate_pairs",
    "hirzebruch",
    "LogStabError",
    "PreconditionError",
    "FiltrationFamily",
    "decompose",
    "direct_sum",
    "logtangent_filtrations",
    "subsheaf_filtrations",
    "DivisorClass",
    "Rank1Class",
    "Rank1Variety",
    "Rank2Variety",
    "build_rank1",
    "build_rank2",
    "class_of",
    "is_ample",
    "log_anticanonical_class",
    "StabilityRegion",
    "case_polynomials",
    "stability_region",
    "threshold_delta_r",
    "threshold_s_exceeds_delta",
    "AlgebraicNumber",
    "descartes_sign_changes",
    "unique_positive_root",
    "Kind",
    "Polystable",
    "Verdict",
    "brute_force_at",
    "check_at",
    "polystable_at",
    "slope",
    "RatPoly",
    "facet_degree_polys",
    "rank1_degrees",
    "volume_poly",
]
