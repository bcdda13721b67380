"""Summation identities expressing 3F4 functions as sums of 2F3 pair products."""
from .bessel import GeneralizedBesselArgs, generalized_j, j_int, product_2f3
from .errors import DomainError, HyperpairsError, ImaginaryPhase, NotConverged, ParityError, PoleError
from .identities import (
    Form,
    IdentityInstance,
    IdentityReport,
    XiSpec,
    ab_reparam,
    euler_lift,
    lhs_3f4,
    rhs_sum,
    xi_direct,
    xi_legendre,
)
from .legendre import CoefficientSpec, coeff, coeff_a, coeff_a_p1, legendre_p, reconstruct
from .numerics import (
    DEFAULT_POLICY,
    HalfInt,
    PFQParams,
    PhaseFactor,
    TruncationPolicy,
    eval_pfq,
    eval_pfq_regularized,
    gamma_half,
    half,
    pochhammer,
    reduce_phase,
)

__version__ = "0.1.0"
