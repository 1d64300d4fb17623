"""Wave theory, exact Riemann solver and viscous checks for the 2x2 system
``u_t + (grad Q(u))_x = M u_xx`` with ``Q = u1^3/3 + u1 u2^2``."""

from .model import State, Viscosity

__all__ = ["State", "Viscosity"]
__version__ = "0.1.0"
