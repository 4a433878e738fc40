"""Exact computations for cluster varieties: mutation, Louise certificates,
covers, standard cohomology, Hodge tables of isolated varieties and point counts."""

from .cluster import (
    ExtendedExchangeMatrix,
    LaurentFraction,
    Quiver,
    Seed,
    constant_term_check,
    freeze,
    initial_seed,
    mutate_matrix,
    mutate_path,
    mutate_seed,
    quiver,
)
from .errors import (
    CertificateMismatch,
    ClusterLabError,
    CompletionFailed,
    DimensionCap,
    NoFit,
    NonIntegerSum,
    NotConnected,
    NotFullRank,
    NotPrime,
    OddDimension,
    PreconditionViolated,
)
from .exactlinalg import AbelianGroup, IntMatrix, cokernel, invariant_factors, smith_normal_form
from .hodge import HodgeTable, PoincareSeries, curious_palindrome
from .isolated import isotypic_table, rank1_table
from .quivers import (
    LouiseCertificate,
    No,
    Unknown,
    Yes,
    is_acyclic,
    is_mutation_acyclic,
    louise_certificate,
    separating_edges,
    verify_certificate,
)
from .standard import poincare_closed, reduced_gsv_form, standard_basis, standard_dims
from .symmetry import build_cover, complete_gsv, cover_degree, gsv_pullback, mutate_cover

__version__ = "0.1.0"
