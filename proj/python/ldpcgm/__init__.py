"""LDPC-GM code ensembles: exact enumerators, growth rates, density evolution, BEC simulation."""

from fractions import Fraction

from . import _core
from ._core import (
    EnsembleSpec,
    ValidationError,
    bhattacharyya,
    binary_entropy,
    check_regular_lambda,
    check_regular_spec,
    decoding_complexity,
    delta_o,
    delta_prime,
    entropy_inverse,
    fixed_point_function,
    fixed_point_margin,
    graphical_complexity,
    guaranteed_rate,
    k_min_for_delta,
    ml_union_bound,
    punctured_spec,
    random_coding_exponent,
    run_de,
    sample_ldpc,
    simulate,
    threshold_report,
    truncate_check_regular,
    truncate_variable_regular,
    variable_regular_rho,
    variable_regular_rho_value,
    variable_regular_spec,
    w_o,
    w_o_upper_bound,
    w_ub,
)

__version__ = "0.1.0"


def f_minus(d):
    """Coefficients (index = power) of [(1+x)^d - (1-x)^d] / 2."""
    return [int(c) for c in _core.f_minus(d)]


def f_plus(d):
    """Coefficients (index = power) of [(1+x)^d + (1-x)^d] / 2."""
    return [int(c) for c in _core.f_plus(d)]


def ldgm_iowe(c, d, n, w, h):
    return Fraction(_core.ldgm_iowe(c, d, n, w, h))


def ldpc_awd(n, j, k, l):
    return Fraction(_core.ldpc_awd(n, j, k, l))


def ldpc_awd_table(n, j, k):
    return [Fraction(v) for v in _core.ldpc_awd_table(n, j, k)]


def concat_awd_ub(n, j, k, l):
    """Upper bound on the concatenated ensemble's average weight-l count."""
    return Fraction(_core.concat_awd_ub(n, j, k, l))


def concat_awd_ub_table(n, j, k):
    return [Fraction(v) for v in _core.concat_awd_ub_table(n, j, k)]


def gv_probability_bound(n, j, k, delta):
    return Fraction(_core.gv_probability_bound(n, j, k, delta))
