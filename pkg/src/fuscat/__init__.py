"""Frobenius-Schur indicators and exponents of fusion categories, computed exactly."""

from .cyclo import Cyclotomic, root_of_unity

__version__ = "0.1.0"
