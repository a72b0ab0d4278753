"""Spectral Faedo-Galerkin simulator for regularized Navier-Stokes-Fourier flows."""

__version__ = "0.4.0"
