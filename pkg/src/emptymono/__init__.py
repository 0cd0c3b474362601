"""Exact triangulations of point sets with many simplices and empty
monochromatic simplices in colored point sets."""
from .bounds import Bound, SizeCertificate, c_const, improved_c_const
from .coloring import ColoredPointSet, DiscrepancyStats, discrepancy
from .errors import BudgetExceeded, CertificateFailure, DegenerateError, GeometryError, PreconditionError
from .generate import Instance, generate, simplex_hulled, two_class_instance
from .geometry import AffineFlat, Hyperplane, Location, Point, points_from
from .hull import HullSkeleton, build_hull, f_vector, is_face_of_hull, one_skeleton
from .order import dilworth_chain, generalized_order_lemma, order_lemma_simplex
from .pipelines import (CensusResult, DichotomyOutcome, Kind, census, combined_2color, combined_kcolor,
                        doubling_construction, exists_empty_mono, linear_witnesses,
                        peel_dichotomy_2color, peel_dichotomy_kcolor, project_induct_2color,
                        project_induct_kcolor)
from .star import PinnedComplex, fan_2d, star_3d, star_highd, star_in_simplex, star_subset
from .triangulation import (SimplicialComplex, convex_big_triangulation, dn_log_triangulation,
                            insert_point, nested_triangulation, pulling_triangulation,
                            shelling_triangulation, validate_complex)
from .witnesses import EmptinessOracle, WitnessReport, discrepancy_witnesses

__version__ = "0.1.0"
