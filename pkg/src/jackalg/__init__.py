"""Exact computation and simulation for Jack characters, Kerov polynomials
and deformed Plancherel random partitions."""

__version__ = "0.1.0"

from .partitions import Partition

__all__ = ["Partition", "__version__"]
