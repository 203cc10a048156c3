"""Finitely presented groups: presentations, abelianization, Tietze, Todd-Coxeter."""

from .abelian import AbelianGroup, invariant_factors, smith_normal_form
from .certify import Pi1Certificate, certify_trivial, visibly_abelian
from .coset import BACKEND, Exhausted, Finite, todd_coxeter
from .presentation import (Presentation, abelianization, amalgamate, relation_matrix,
                           surface_presentation, vanishing_cycle_quotient)
from .tietze import TietzeResult, tietze_run, tietze_simplify

__all__ = [
    "AbelianGroup", "invariant_factors", "smith_normal_form", "BACKEND", "Exhausted", "Finite",
    "todd_coxeter", "Presentation", "abelianization", "amalgamate", "relation_matrix",
    "surface_presentation", "vanishing_cycle_quotient", "TietzeResult", "tietze_run",
    "tietze_simplify", "Pi1Certificate", "certify_trivial", "visibly_abelian",
]
