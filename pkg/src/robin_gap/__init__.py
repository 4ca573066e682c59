"""Spectral data of the Robin Laplacian on the unit disc at large coupling.

Modules
-------
specfun
    Bessel and Airy functions, Bessel zeros, modified-Bessel ratio at 1.
disc_spectrum
    Dirichlet, Neumann and Robin eigenvalues of the disc; Lommel integrals.
dtn_circle
    Dirichlet-to-Neumann spectrum of ``-Delta + 1`` on the circle and its weights.
gap_model
    Diagonal model of the Neumann/Robin resolvent gap, norms and rate fits.
asymptotics
    Coefficients of the large-coupling eigenvalue expansion.
"""

__version__ = "0.1.0"

from .disc_spectrum import robin_eigenvalue
from .dtn_circle import dtn_eigenvalue
from .specfun import bessel_j, bessel_j_prime, find_zero

__all__ = ["__version__", "bessel_j", "bessel_j_prime", "dtn_eigenvalue", "find_zero", "robin_eigenvalue"]
