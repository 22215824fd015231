"""
Exact Newton–Okounkov bodies of divisors on surfaces and Mori dream threefolds.

Bodies are computed from numerical data only: intersection forms, cones,
Mori chamber maps and flag restriction data.  All arithmetic is exact.
"""
from .errors import (
    AdmissibilityError, DomainError, FlagWarning, ModelInconsistent, OkounkovError,
)
from .geometry import (
    PiecewiseLinear, Polygon2, PolyhedralCone, Polytope3, cone_contains,
    convex_hull_2d, convex_hull_3d, dual_description, polytope_volume, ray_exit,
    solve_linear,
)
from .models import ModelRecipe, builtin_model, builtin_names, default_surface_flag
from .oracle import OracleModel, enumerate_valuations, oracle_hull, section_count
from .surface import (
    SurfaceFlag, SurfaceModel, SurfaceOkounkovPolygon, ZariskiDecomposition,
    asymptotic_valuation_surface, mu_surface, negative_part_breakpoints,
    okounkov_curve, okounkov_polygon, zariski_decompose,
)
from .threefold import (
    FlagSurfaceData, MoriChamber, OkounkovBody3, SliceProfile, ThreefoldModel,
    asymptotic_valuation_3, body_translation_vector, chamber_of,
    check_flag_admissibility, divisor_volume, limiting_body, mu_threefold,
    okounkov_body, ord_S, polyhedrality_report, shift_l, slice_at, t_partition,
    zariski_mds,
)

__version__ = "0.1.0"
