"""
tinybunch checks the identities of bunches (pencils) of Lie algebras and of
modified Yang-Baxter (mYB) structures over exact rational arithmetic.

Lie algebras are given by structure constants or, for graded algebras like
the Witt algebra, by a rule that is checked on a window of basis indices.
Every check returns a :class:`~tinybunch.reports.CheckReport` with the first
counterexample (both sides evaluated) when the identity fails.

Usage example:

>>> from tinybunch import make_witt, make_witt_shift, check_myb, check_jacobi
>>> witt = make_witt(window=4)
>>> check_jacobi(witt).holds
True
>>> check_myb(witt, make_witt_shift(1)).holds
True
>>> from tinybunch import make_so
>>> check_jacobi(make_so(3)).holds
True
"""

from .bunch import (MYBAlgebra, Pencil, check_compatible,
                    check_gamma_homomorphism, check_myb, make_gamma_bunch,
                    tangent_bracket)
from .catalog import CATALOG, make_so, make_witt, make_witt_shift
from .claims import claims_matrix
from .errors import IdentityViolation, InputError, UnsupportedError
from .liecore import BracketMap, Element, LinearOperator, check_jacobi
from .reports import CheckReport
from .version import __version__

__all__ = ('BracketMap', 'Element', 'LinearOperator', 'Pencil', 'MYBAlgebra',
           'CheckReport', 'check_jacobi', 'check_myb', 'check_compatible',
           'check_gamma_homomorphism', 'tangent_bracket', 'make_gamma_bunch',
           'make_so', 'make_witt', 'make_witt_shift', 'CATALOG',
           'claims_matrix', 'IdentityViolation', 'InputError',
           'UnsupportedError')
