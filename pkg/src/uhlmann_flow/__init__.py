"""Mixed-state quantum dynamics as a Killing geodesic flow on purifications.

Purifications ``W`` (``tr(W W^dag) = 1``) project to density matrices via
``W W^dag``. The Hamiltonian-dependent metric ``Re tr(X^dag H^-2 Y)`` makes
``W -> exp(-iHt) W`` a unit-speed geodesic flow by isometries whose
projection is von Neumann evolution.
"""

from .dynamics import (
    FlowResult,
    derivative_defect,
    evolve_exact,
    evolve_rk4,
    flow,
    geodesic_residual,
    ham_field,
    isometry_defect,
    killing_defect,
    normal_acceleration,
    propagator,
    trajectory,
    unit_speed_defect,
)
from .errors import GeometryError
from .metric import (
    DynamicMetric,
    Frame,
    base_metric,
    bures_metric,
    chord_distance,
    frame,
    g_total,
    gram_det,
    horizontal_lift,
    split,
)
from .numerics import EigenDecomposition, frob_inner, frob_norm, herm_eig, herm_fn, sylvester_solve
from .recurrence import (
    RecurrenceReport,
    SpectralState,
    deviation,
    energy_rep,
    exact_period,
    recurrence_scan,
    truncate,
)
from .states import (
    DensityMatrix,
    Hamiltonian,
    Purification,
    TangentVector,
    fibre_act,
    project,
    random_density,
    random_purification,
    random_tangent,
    section,
)

__version__ = "0.1.0"
