"""Exceptional primes and a-priori bounds for rational points on Shimura curves
of Gamma_0(p)-type over Galois number fields."""

__version__ = "0.1.0"
