"""Exact computation with harmonic cochains on the Bruhat-Tits building
of PGL_r over F_q((1/T)): building navigation, Fourier expansions of
automorphic forms, Fourier coefficients of discriminant-type forms, and
an independent Drinfeld-module lattice-sum oracle."""

__version__ = "0.1.0"
