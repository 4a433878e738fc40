"""Finite fields, point counts, Dirichlet characters and count fitting."""

from .characters import (
    CyclotomicInt,
    DirichletCharacter,
    FrobeniusEigenvalue,
    char_sum,
    char_sum_star,
    dir_star,
    dirichlet_group,
    euler_phi,
    frobenius_rank1,
    x_multiset,
)
from .counting import (
    PointCountSample,
    count_acyclic_stratified,
    count_isolated,
    count_louise,
    is_suspect,
    rank1_count,
    suspect_bound,
)
from .fields import FiniteField, field_of_order, make_field, prime_power
from .quasipoly import GrothendieckReport, QuasiPolynomial, fit_quasi_polynomial, grothendieck_consistency

__all__ = [
    "CyclotomicInt",
    "DirichletCharacter",
    "FrobeniusEigenvalue",
    "FiniteField",
    "GrothendieckReport",
    "PointCountSample",
    "QuasiPolynomial",
    "char_sum",
    "char_sum_star",
    "count_acyclic_stratified",
    "count_isolated",
    "count_louise",
    "dir_star",
    "dirichlet_group",
    "euler_phi",
    "field_of_order",
    "fit_quasi_polynomial",
    "frobenius_rank1",
    "grothendieck_consistency",
    "is_suspect",
    "make_field",
    "prime_power",
    "rank1_count",
    "suspect_bound",
    "x_multiset",
]
