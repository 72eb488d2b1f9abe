"""Sums of dilates A + t.A in Z/pZ: bound functions, proof replay, brute-force checks."""
from .bounds import (
    BoundProfile,
    ConcentrationBound,
    bound_profile,
    concentration_M,
    critical_density,
    f_t,
    f_t_inverse_density,
    integer_reference_bound,
    sinc_g,
    sinc_g_inverse,
    theorem1_bound,
    w_constant,
)
from .errors import *  # noqa: F401,F403
from .fourier import (
    FourierSpectrum,
    bias_lower_bound,
    counting_identity_residual,
    indicator_dft,
    normalize_bias_to_one,
)
from .lev import IntervalWindow, best_interval, lev_guarantee_check, remark_dichotomy
from .rectification import PipelineTrace, lift_to_integers, rectification_check, run_proof_pipeline
from .residue_core import (
    IntegerSet,
    ResidueSet,
    canonical_form,
    cauchy_davenport_bound,
    dilate,
    integer_sum_of_dilates,
    make_integer_set,
    make_residue_set,
    parse_set_literal,
    sum_of_dilates,
)
from .search import (
    conjecture1_explorer,
    exhaustive_min_sumset_integers,
    exhaustive_min_sumset_modp,
    verify_theorem1,
)

__version__ = "0.1.0"
