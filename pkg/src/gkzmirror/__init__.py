"""Exact-arithmetic toolkit for hypergeometric mirror-type maps.

Builds the multivariate hypergeometric series family and its canonical
coordinates / mirror-type maps over exact rationals, certifies integrality of
Taylor coefficients up to a truncation degree, and brute-force-verifies the
p-adic congruences that prove it.
"""

from .backend import BACKEND, Rat
from .exact import INF, gamma_p, harmonic, is_prime, multinomial, vp_factorial, \
    vp_int, vp_multinomial, vp_rat
from .series import LogSeries, Substitution, TruncatedSeries, invert_map, \
    is_integral, is_p_integral, monomials
from .gkz import AperyFamily, CATALOG_NAMES, GkzOperator, GkzSpec, \
    InadmissibleWeightError, apery_series, canonical_coordinate, catalog, \
    coefficient, companion_weights, gkz_operator, gkz_series, harmonic_series, \
    is_admissible, log_companion, mirror_type_map, vp_coefficient
from .reports import CongruenceReport, Witness
from .congruence import CoeffMap, check_dieudonne_dwork, check_pipeline, \
    check_reduction, check_reduction_coefficients, reduction_coefficient, \
    verify_coefficient_ratio, verify_dwork_box_identity, verify_formal_congruence, \
    verify_gamma_facts, verify_harmonic_gap, verify_harmonic_reduction, \
    verify_ratio_hypothesis, verify_scaled_harmonic_gap

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Rat", "INF",
    "gamma_p", "harmonic", "is_prime", "multinomial", "vp_factorial", "vp_int",
    "vp_multinomial", "vp_rat",
    "LogSeries", "Substitution", "TruncatedSeries", "invert_map", "is_integral",
    "is_p_integral", "monomials",
    "AperyFamily", "CATALOG_NAMES", "GkzOperator", "GkzSpec",
    "InadmissibleWeightError", "apery_series", "canonical_coordinate", "catalog",
    "coefficient", "companion_weights", "gkz_operator", "gkz_series",
    "harmonic_series", "is_admissible", "log_companion", "mirror_type_map",
    "vp_coefficient",
    "CongruenceReport", "Witness",
    "CoeffMap", "check_dieudonne_dwork", "check_pipeline", "check_reduction",
    "check_reduction_coefficients", "reduction_coefficient",
    "verify_coefficient_ratio", "verify_dwork_box_identity",
    "verify_formal_congruence", "verify_gamma_facts", "verify_harmonic_gap",
    "verify_harmonic_reduction", "verify_ratio_hypothesis",
    "verify_scaled_harmonic_gap",
]
