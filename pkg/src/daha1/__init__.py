"""Exact and numeric computations in the polynomial representation of the
type-A1 double affine Hecke algebra: nonsymmetric Macdonald polynomials, the
Macdonald weight and its constant-term pairings, residue continuation of the
Gaussian inner product, the global spherical function, the q -> 0 affine
Hecke algebra limit, and the rational degeneration."""

from .continuation import (ResidualData, radical_check, residual_points,
                           shapovalov_form, verify_ct_identity,
                           verify_residue_sum, wall_crossing_limits)
from .globalfn import (GlobalSeriesParams, hc_expansion, phi_tilde_series,
                       recovery_check, sigma_c, theta_eval)
from .laurent import GaussianTwisted, LaurentPoly
from .macdonald import EPoly, epoly, eval_at_trho, ppoly
from .operators import (apply_generator, apply_word, check_daha_relations,
                        check_fourier_automorphism, check_tau_plus_gaussian)
from .padic import (AHAElem, SphericalVector, aha_multiply, aha_star,
                    aha_trace, check_e_limit, check_plancherel, matsumoto_psi,
                    mu0_pair, spherical_expand)
from .ratfun import (ParamPoint, RatQT, rat_eval, rat_q0_limit)
from .rational import (check_rational_integral, coinvariant, dunkl_apply,
                       rational_form, x_power_element)
from .reports import CheckReport
from .weights import (MuSeries, PairingContext, contour_pair, ct_pair,
                      mu_ct_numeric, mu_ct_series, mu_numeric, muo_series,
                      special_factor)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
