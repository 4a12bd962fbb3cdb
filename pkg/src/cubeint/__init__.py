"""Dimension reduction for unit-cube integrals of f(x1 + ... + xn).

The n-dimensional integral becomes n one-dimensional integrals against
exact rational weight polynomials; for f = log Gamma the result has an
exact closed form in terms of harmonic numbers and logarithms of integers.
"""
from ._backend import BACKEND
from .errors import ConsistencyError
from .exact import (Identity, IdentityCheck, IdentityReport, Poly, Rational,
                    binomial, check_identity, harmonic, integrate_01,
                    shifted_power)
from .loggamma import (ClosedFormValue, DerivationTrace, closed_form,
                       closed_form_via_derivation, numeric_value, r1, r2,
                       s1_total, s2_total)
from .quadrature import (Integrand, NumericReport, QuadPolicy, exact_poly_cube,
                         integrate_1d, integrate_reduced, loggamma_numeric,
                         mc_cube)
from .reduction import (ReductionPlan, gm_closed, gm_partial_sum, gm_recursive,
                        reduction_plan, tk_poly)

__version__ = "0.1.0"
