"""Odd and even Selberg zeta functions, eta invariants and regularized determinants
of Dirac operators on rank-one cusped hyperbolic quotients, built from explicit
length spectra, point spectra and Blaschke-product scattering models."""

from . import errors, geodesic, rootsys, scattering, specfun, trace

__version__ = "0.1.0"
__all__ = ["errors", "geodesic", "rootsys", "scattering", "specfun", "trace"]
