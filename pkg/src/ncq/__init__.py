"""Exact computations for Type S' quantum polynomial algebras."""
from .scalar import FieldMode, INFINITE
from .ncalg import (
    QuadraticPresentation,
    RewriteSystem,
    build_rewrite_system,
    quantum_plane,
    type_s_prime,
    type_s_prime_cy,
)

__version__ = "0.1.0"
