"""Constructible cosheaves over stratified simplicial complexes."""
from .complex import (
    OpenComplex,
    StratifiedComplex,
    build_complex,
    build_stratification,
    cell_name,
    incidence,
    parse_cell,
    star_cover,
)
from .cosheaf import (
    Coefficients,
    Cosheaf,
    Step,
    build_cosheaf,
    check_gluing,
    colimit,
    costalk,
    evaluate,
    limit_vect,
    open_from_generators,
    round_trip,
    transport,
)
from .cover import build_cover, components, reeb_pipeline, validate_covering
from .ingest import build_map, pi0, pushforward_cosheaf
from .linalg import Field, Matrix
from .zigzag import ZigzagModule, decompose, generalized_rank, recompose, zigzag_extract

__version__ = "0.1.0"
