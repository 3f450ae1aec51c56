"""Certificates for supersingular primes and explicit Weil-height lower bounds on torsion fields of elliptic curves."""

__version__ = "0.1.0"
