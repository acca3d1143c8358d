"""L1 best approximation of the weighted Cauchy-Szego kernel by H^1_0 on the unit disk."""

__version__ = "0.1.0"

from .circle import (  # noqa: E402
    BoundarySamples,
    CircleGrid,
    l1_norm,
    l2_norm_sq,
    make_grid,
    mean_integral,
)
from .closedform import (  # noqa: E402
    Branch,
    ClosedFormResult,
    certificate_I,
    closed_form,
    extremal_h,
    extremal_residual,
)
from .estimator import HardyL1Approximator  # noqa: E402
from .inner import InnerFunctionSpec, eval_inner, mobius_disk_automorphism, sample_inner  # noqa: E402
from .kernels import (  # noqa: E402
    WeightQuery,
    cauchy_pairing,
    cauchy_szego,
    cauchy_szego_dzbar,
    reproducing_check,
    sample_weighted_kernel,
)
from .oracle import (  # noqa: E402
    SolveReport,
    TrigCoefficients,
    duality_lower_bound,
    fourier_coefficients,
    lemma1_certificate,
    solve_l1,
)
from .schwarzpick import (  # noqa: E402
    FunctionKind,
    TestFunctionSpec,
    corollary_lhs,
    corollary_rhs,
    schwarz_pick_check,
)
