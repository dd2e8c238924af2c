"""Subspace profiles, defect dimensions and their counts over finite fields."""

from qprofile.counting import QPolynomial, q_binomial, sigma_poly, sigma_value, splitting_count, whittaker_coefficient
from qprofile.ffield import FieldCtx, make_field
from qprofile.fqlinalg import MatrixFq, Subspace, span
from qprofile.fqpoly import PolyFq, companion_matrix, smallest_irreducible
from qprofile.partition import Partition, partitions_of
from qprofile.profiles import PartialMap, defect_dimensions, is_simple_map, profile

__version__ = "0.1.0"
