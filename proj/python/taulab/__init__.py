"""Tau functions from linear-system realizations.

The heavy lifting lives in the compiled extension ``taulab._taulab``; this
package re-exports its public surface.
"""

from ._taulab import (
    __version__,
    cauchy_det,
    cauchy_growth,
    elliptic_K,
    hypergeom_det,
    pvi_kernel,
    run_checks,
    tau_bessel,
    tau_exp,
    tau_lame,
    weierstrass_p,
)

__all__ = [
    "__version__",
    "cauchy_det",
    "cauchy_growth",
    "elliptic_K",
    "hypergeom_det",
    "pvi_kernel",
    "run_checks",
    "tau_bessel",
    "tau_exp",
    "tau_lame",
    "weierstrass_p",
]
