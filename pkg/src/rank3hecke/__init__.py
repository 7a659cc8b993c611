"""Exact Hecke-algebra workbench for weighted rank-3 Coxeter groups."""

from .coxeter import (INF, CaseShape, CoxeterSystem, Element, Side, bruhat_leq, classify_case,
                      descents, enumerate_ball, inverse, length, longest_element, mult,
                      normal_form, parabolic_factorize)
from .hecke import (HeckeElement, compute_bound, f_coeff, in_H_leq0, in_H_leq0_shifted, t_mult,
                    t_mult_gen, verify_bound)
from .kl import KLTables, a_truncated, bar_hecke, beta_gamma, h_coeff, kl_element
from .laurent import LaurentPoly, v_power

__version__ = "0.1.0"

__all__ = [
    "INF", "CaseShape", "CoxeterSystem", "Element", "Side", "bruhat_leq", "classify_case",
    "descents", "enumerate_ball", "inverse", "length", "longest_element", "mult", "normal_form",
    "parabolic_factorize", "HeckeElement", "compute_bound", "f_coeff", "in_H_leq0",
    "in_H_leq0_shifted", "t_mult", "t_mult_gen", "verify_bound", "KLTables", "a_truncated",
    "bar_hecke", "beta_gamma", "h_coeff", "kl_element", "LaurentPoly", "v_power",
]
