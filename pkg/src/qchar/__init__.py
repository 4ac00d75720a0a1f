"""Exact graded characters of current-algebra modules and identity checks."""

from .kato import Filling, column_k, enumerate_fillings, filling_degree, kato_graded_dim
from .partitions import conjugate, d_stat, dominance_leq, partitions_of
from .series import QPoly, QRat, QSeries, inv_qpoch, qpoch, qrat_reduce_to_poly, series_inverse
from .symfunc import SymPoly, coeff_squarefree, complete, elementary, expand_schur_basis, monomial_sym, schur
from .whittaker import global_weyl_char, hw_algebra_char, local_weyl_char, whittaker_p

__version__ = "0.1.0"
