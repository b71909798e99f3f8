"""tmeshkit: multivariate T-meshes with analysis-suitability classifiers.

Arbitrary-dimension, arbitrary-degree T-meshes over an integer index
domain: explicit entity complexes with replayable bisection refinement,
anchor and knot-vector machinery, spline evaluation, the four
analysis-suitability / dual-compatibility classifiers, and a seeded
verification harness that cross-checks the classifier theorems.
"""

from .mesh import (CellOutsideActiveRegion, DimensionTooSmall, IndexDomain,
                   MeshError, NonIntegerMidpoint, NotACell, TMesh,
                   active_region, build_framed_mesh, create_tensor_mesh,
                   find_cell_containing, frame_region, frame_region_k,
                   is_admissible, check_three_direction_assumption,
                   orth_entities, skeleton, subdiv)
from .regions import Box, BoxRegion, DimensionMismatch
from .topology import (ClassificationAmbiguous, NotFound, PreconditionViolated,
                       TJunction, find_separating_tjunction, find_tjunctions,
                       min_connecting_box, tjunctions_by_odir)
from .anchors import InsufficientKnots, anchor_set, global_knot_vector, \
    index_support, local_knot_vector
from .splines import DegenerateKnots, bspline_eval, supports_overlap, tspline, \
    tspline_eval
from .suitability import (AbstractExtension, GeometricExtension,
                          NonAdjacentCellBounds, atj_slice, atj_union, gtj,
                          gtj_union, is_aas, is_sgas, is_wgas)
from .dualcompat import (SameAnchor, is_sdc, is_wdc, knots_overlap,
                         strongly_partially_overlap, weakly_partially_overlap)

__version__ = "0.1.0"
