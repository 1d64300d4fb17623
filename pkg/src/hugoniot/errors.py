"""Exception hierarchy shared by all layers."""


class HugoniotError(Exception):
    """Base class for all package errors."""


class NotOnLocus(HugoniotError):
    """The two states are not connected by a Rankine-Hugoniot jump."""


class NoUndercompressive(HugoniotError):
    """Undercompressive speeds exist only for mu2 < mu1."""


class DegenerateAxis(HugoniotError):
    """The requested quantity is undefined for states on the u1 axis."""


class NoConnection(HugoniotError):
    """The requested saddle connection does not exist for this viscosity."""


class NotAShock(HugoniotError):
    """A structure question was asked about a candidate that is not a Lax shock."""


class NotASaddle(HugoniotError):
    """Separatrix shooting requested from an equilibrium that is not a saddle."""


class NotEquilibrium(HugoniotError):
    """A state expected to be a zero of the profile field is not one."""


class DegenerateEquilibrium(HugoniotError):
    """Generic shooting refuses equilibria with a vanishing eigenvalue."""


class NoSolution(HugoniotError):
    """The Riemann solver found zero admissible wave patterns."""


class BlowUp(HugoniotError):
    """The viscous solver produced values beyond the magnitude bound."""
