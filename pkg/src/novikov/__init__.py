"""Free Novikov algebras: tableau bases, codimensions and normal forms."""

from .basis import BasisElement, basis_of_multidegree, dim_polylinear, polylinear_basis, tableau_to_term
from .combinatorics import (
    PowerSeries,
    binomial,
    exponent_estimate,
    gf_coefficients,
    lemma1_lhs,
    lemma2_bounds,
    multinomial,
    partitions_of,
)
from .diagrams import (
    NovikovDiagram,
    NovikovTableau,
    YoungShape,
    count_fillings_per_shape,
    enumerate_tableaux,
    enumerate_young_shapes,
    validate_tableau,
)
from .diffreal import (
    CoordinateVector,
    DiffPolynomial,
    basis_matrix,
    expand,
    normalize,
    spanning_check,
    verify_identities_under_realization,
)
from .linalg import rank_exact
from .terms import Alphabet, Leaf, Node, Term, TermPolynomial, associator, novikov_identity_defects, parse_term, print_term

__version__ = "0.1.0"
