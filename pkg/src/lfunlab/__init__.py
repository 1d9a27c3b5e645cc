"""Exact-arithmetic laboratory for quadratic Dirichlet L-functions over F_q[x].

Brute-forces the first moment of L(1/2, chi_D) over the even-degree
square-free ensemble, checks it against a four-term asymptotic prediction,
and verifies every structural identity the comparison rests on (Poisson
summation in Z[zeta_q], the functional equation and RH root locations, the
finite central-value formula, the generating-function factorizations and the
formal cancellation identities).
"""

__version__ = "0.1.0"

from .algebra import FieldParams, QSqrt, parse_poly, format_poly  # noqa: F401
from .euler import make_context, predict_moment  # noqa: F401
from .moments import exact_moment, residual_report  # noqa: F401
