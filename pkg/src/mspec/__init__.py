"""M-eigenvalues of fourth-order partially symmetric tensors.

Bounds from elasticity-structure matrices, the shifted block improvement
method, closed-form eigenpairs for special classes, and strong-ellipticity
certificates.
"""

from .bim import BimConfig, BimResult, bim_compare_shifts, bim_solve
from .bounds import BoundReport, bound_report, lower_mes, tau1_li, tau2_li, tau_wang, upper_es
from .elasticity import EllipticityCertificate, certify_strong_ellipticity, make_m_tensor
from .errors import MSpecError
from .exact import exact_from_omega, exact_shifted, gen_delta1, solve_exact
from .spectral import TOL, Tolerances
from .structure import structure_report
from .tensor import (
    Eigenpair,
    PsTensor,
    contract_x,
    contract_y,
    f_eval,
    identity_tensor,
    shift,
    symmetrize,
    validate,
)

__version__ = "0.1.0"
