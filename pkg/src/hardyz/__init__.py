"""Arbitrary-precision toolkit around Hardy's Z function: Bernoulli kernel
identities, divided differences, exact sequence tables, extremal node
configurations with numeric certificates, and a Z evaluation engine with
zero location and derivative bounds."""

from .precision import DEFAULT_PREC, working_precision

__version__ = "1.0.0"

__all__ = ["DEFAULT_PREC", "working_precision", "__version__"]
