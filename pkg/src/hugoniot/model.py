"""Closed-form wave theory of the system  u_t + (grad Q(u))_x = M u_xx.

Here ``Q = u1**3/3 + u1*u2**2`` and ``M = diag(mu1, mu2)``.  Everything in
this module is an explicit formula: flux and characteristic speeds, the
three-line Hugoniot locus, the profile energy ``Z``, its critical points,
Lax classification, undercompressive speeds and the structure predicates
that decide which Lax shocks possess a viscous profile.

States with ``u2 < 0`` are handled by reflecting ``u2 -> -u2``, computing
with ``u2 > 0`` and reflecting the result back; the system is invariant
under that reflection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DegenerateAxis,
    NoConnection,
    NotAShock,
    NotOnLocus,
    NoUndercompressive,
)

#: Absolute Rankine-Hugoniot residual accepted as "on the locus".
LOCUS_TOL = 1e-8
#: Eigenvalues, determinants and axis offsets below this count as zero.
DEGENERACY_TOL = 1e-9
#: Half-width of the band in the t parameter reported as Boundary.
BOUNDARY_BAND = 1e-6

_SQRT2 = math.sqrt(2.0)


class State(NamedTuple):
    """A point ``(u1, u2)`` of the state plane."""

    u1: float
    u2: float

    def mirrored(self) -> "State":
        return State(self.u1, -self.u2)

    def shifted(self, t: float, direction: tuple[float, float]) -> "State":
        """Return ``self + t * direction``."""
        return State(self.u1 + t * direction[0], self.u2 + t * direction[1])

    def distance(self, other: tuple[float, float]) -> float:
        return math.hypot(self.u1 - other[0], self.u2 - other[1])


DIAGONAL = (1.0, 1.0)
ANTIDIAGONAL = (1.0, -1.0)


def as_state(u) -> State:
    """Coerce a pair-like object into a finite ``State``."""
    s = State(float(u[0]), float(u[1]))
    if not (math.isfinite(s.u1) and math.isfinite(s.u2)):
        raise ValueError(f"state components must be finite, got {u!r}")
    return s


@dataclass(frozen=True)
class Viscosity:
    """Diagonal viscosity matrix ``diag(mu1, mu2)``."""

    mu1: float
    mu2: float

    def __post_init__(self):
        for name in ("mu1", "mu2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")

    @property
    def admits_undercompressive(self) -> bool:
        """True when ``mu2 < mu1``, the regime with saddle connections."""
        return self.mu2 < self.mu1

    @property
    def m(self) -> float:
        """Ratio parameter ``sqrt(mu2 / (2 mu1 - mu2))``, in (0, 1)."""
        if not self.admits_undercompressive:
            raise NoUndercompressive(
                f"m is defined only for mu2 < mu1 (got mu1={self.mu1}, mu2={self.mu2})"
            )
        return math.sqrt(self.mu2 / (2.0 * self.mu1 - self.mu2))

    def scaled(self, s: float) -> "Viscosity":
        return Viscosity(s * self.mu1, s * self.mu2)

    def as_array(self) -> np.ndarray:
        return np.array([self.mu1, self.mu2])


class ShockCandidate(NamedTuple):
    """A jump from ``u_minus`` (left) to ``u_plus`` (right) moving at ``W``."""

    u_minus: State
    u_plus: State
    W: float

    def mirrored(self) -> "ShockCandidate":
        return ShockCandidate(self.u_minus.mirrored(), self.u_plus.mirrored(), self.W)


class ShockKind(str, Enum):
    FAST = "fast"
    SLOW = "slow"
    UNDERCOMPRESSIVE = "undercompressive"
    OVERCOMPRESSIVE = "overcompressive"
    DEGENERATE = "degenerate"
    NON_EVOLUTIONARY = "non-evolutionary"


class Lambdas(NamedTuple):
    """``c_j - W`` on both sides of a shock."""

    minus1: float
    minus2: float
    plus1: float
    plus2: float


@dataclass(frozen=True)
class Classification:
    kind: ShockKind
    lambdas: Lambdas


class CharacteristicSpeeds(NamedTuple):
    c1: float
    c2: float
    beta1: State
    beta2: State
    coincident: bool


class BranchId(str, Enum):
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"


@dataclass(frozen=True)
class HugoniotBranch:
    """One straight line of the Hugoniot locus of ``u_plus``.

    The line is the graph ``u2 = slope * u1 + offset`` and the shock speed
    along it is the affine map ``W = w_slope * u1 + w_offset``.
    """

    branch_id: BranchId
    u_plus: State
    slope: float
    offset: float
    w_slope: float
    w_offset: float

    @property
    def point(self) -> State:
        """Point of the line at ``W = 2 u1+`` (``u_plus`` except on the horizontal)."""
        return self.state_at(self.u_plus.u1)

    @property
    def direction(self) -> State:
        n = math.hypot(1.0, self.slope)
        return State(1.0 / n, self.slope / n)

    def state_at(self, u1: float) -> State:
        return State(u1, self.slope * u1 + self.offset)

    def speed_at(self, u1: float) -> float:
        return self.w_slope * u1 + self.w_offset

    def distance(self, u: State) -> float:
        """Perpendicular distance from ``u`` to the line."""
        return abs(u[1] - self.slope * u[0] - self.offset) / math.hypot(1.0, self.slope)


class ZType(str, Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    SADDLE = "saddle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class EquilibriumInfo:
    """A critical point of ``Z`` (an equilibrium of the profile ODE).

    ``ode_eigen`` holds ``(eigenvalue, unit eigenvector)`` pairs of the
    linearisation of ``-M^{-1} grad Z``, sorted by eigenvalue.
    """

    name: str
    location: State
    z_type: ZType
    multiplicity: int
    ode_eigen: tuple[tuple[float, State], tuple[float, State]]


@dataclass(frozen=True)
class KeyPoints:
    """Named points of the Hugoniot locus used by the region maps.

    ``D``, ``E``, ``F`` and ``G`` exist only when ``mu2 < mu1``.
    """

    A: State
    B: State
    C: State
    H: State
    D: Optional[State] = None
    E: Optional[State] = None
    F: Optional[State] = None
    G: Optional[State] = None

    def mirrored(self) -> "KeyPoints":
        def r(p):
            return None if p is None else p.mirrored()

        return KeyPoints(*(r(getattr(self, k)) for k in "ABCHDEFG"))

    def items(self):
        """``(name, State)`` pairs of the defined points in alphabetical order."""
        return [(k, getattr(self, k)) for k in "ABCDEFGH" if getattr(self, k) is not None]


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class StructureVerdict:
    verdict: Verdict
    reason: str

    @property
    def admissible(self) -> bool:
        """Yes or Boundary: the shock is accepted by the Riemann solver."""
        return self.verdict is not Verdict.NO


# --------------------------------------------------------------------------
# flux, speeds, locus


def flux(u: State) -> State:
    """Return ``grad Q(u) = (u1^2 + u2^2, 2 u1 u2)``."""
    return State(u[0] * u[0] + u[1] * u[1], 2.0 * u[0] * u[1])


def potential_Q(u: State) -> float:
    return u[0] ** 3 / 3.0 + u[0] * u[1] ** 2


def characteristic_speeds(u: State) -> CharacteristicSpeeds:
    """Eigen-decomposition of ``Hess Q(u)``.

    Returns ``c1 = 2 u1 - 2|u2| <= c2 = 2 u1 + 2|u2|`` with unit
    eigenvectors and a flag set when the speeds coincide (``u2 = 0``).
    """
    u1, u2 = u
    c1 = 2.0 * u1 - 2.0 * abs(u2)
    c2 = 2.0 * u1 + 2.0 * abs(u2)
    up = State(1.0 / _SQRT2, 1.0 / _SQRT2)
    down = State(1.0 / _SQRT2, -1.0 / _SQRT2)
    beta1, beta2 = (down, up) if u2 >= 0 else (up, down)
    return CharacteristicSpeeds(c1, c2, beta1, beta2, abs(u2) <= DEGENERACY_TOL)


def hugoniot_branches(u_plus: State) -> tuple[HugoniotBranch, HugoniotBranch, HugoniotBranch]:
    """The three lines making up the Hugoniot locus of ``u_plus``."""
    a, b = u_plus
    up = State(a, b)
    return (
        HugoniotBranch(BranchId.HORIZONTAL, up, 0.0, -b, 1.0, a),
        HugoniotBranch(BranchId.DIAGONAL, up, 1.0, b - a, 2.0, 2.0 * b),
        HugoniotBranch(BranchId.ANTIDIAGONAL, up, -1.0, a + b, 2.0, -2.0 * b),
    )


def locus_product(u: State, u_plus: State) -> float:
    """Triple product vanishing exactly on the locus, normalised by the cube of the scale."""
    a, b = u_plus
    p = (u[1] + b) * (u[1] - u[0] + a - b) * (u[1] + u[0] - a - b)
    scale = 1.0 + max(abs(u[0]), abs(u[1]), abs(a), abs(b))
    return p / scale**3


def rh_residual(c: ShockCandidate) -> float:
    """Euclidean norm of ``W (u+ - u-) - (f(u+) - f(u-))``."""
    fm, fp = flux(c.u_minus), flux(c.u_plus)
    r1 = c.W * (c.u_plus[0] - c.u_minus[0]) - (fp[0] - fm[0])
    r2 = c.W * (c.u_plus[1] - c.u_minus[1]) - (fp[1] - fm[1])
    return math.hypot(r1, r2)


def shock_speed(u_minus: State, u_plus: State, tol: float = LOCUS_TOL) -> float:
    """Least-squares speed of the jump ``u_minus -> u_plus``.

    Raises
    ------
    NotOnLocus
        If the residual at the least-squares speed exceeds ``tol``.
    ValueError
        If the two states coincide.
    """
    d1, d2 = u_plus[0] - u_minus[0], u_plus[1] - u_minus[1]
    nd = d1 * d1 + d2 * d2
    if nd == 0.0:
        raise ValueError("shock_speed needs distinct states")
    fm, fp = flux(u_minus), flux(u_plus)
    g1, g2 = fp[0] - fm[0], fp[1] - fm[1]
    W = (d1 * g1 + d2 * g2) / nd
    res = math.hypot(W * d1 - g1, W * d2 - g2)
    if res > tol:
        raise NotOnLocus(f"{tuple(u_minus)} is not on the Hugoniot locus of {tuple(u_plus)} (residual {res:.3g})")
    return W


def locus_branch(u_minus: State, u_plus: State, tol: float = LOCUS_TOL) -> BranchId:
    """Which line of the locus of ``u_plus`` carries ``u_minus`` (closest one)."""
    branches = hugoniot_branches(u_plus)
    dists = [br.distance(u_minus) for br in branches]
    k = int(np.argmin(dists))
    if dists[k] > tol * (1.0 + abs(u_minus[0]) + abs(u_minus[1])):
        raise NotOnLocus(f"{tuple(u_minus)} is not on the Hugoniot locus of {tuple(u_plus)}")
    return branches[k].branch_id


# --------------------------------------------------------------------------
# energy and critical points


def coefficients_D(u_plus: State, W: float) -> tuple[float, float]:
    """Integration constants making ``u_plus`` a critical point of ``Z``."""
    a, b = u_plus
    return a * a + b * b - W * a, 2.0 * a * b - W * b


def energy_Z(u: State, u_plus: State, W: float) -> float:
    """``Z(u) = -Q(u) + W |u|^2 / 2 + D . u``; decreases along profile orbits."""
    D1, D2 = coefficients_D(u_plus, W)
    return -potential_Q(u) + 0.5 * W * (u[0] ** 2 + u[1] ** 2) + D1 * u[0] + D2 * u[1]


def grad_Z(u: State, u_plus: State, W: float) -> State:
    D1, D2 = coefficients_D(u_plus, W)
    return State(-(u[0] ** 2 + u[1] ** 2) + W * u[0] + D1, -2.0 * u[0] * u[1] + W * u[1] + D2)


def hessian_Z(u: State, W: float) -> np.ndarray:
    return np.array([[W - 2.0 * u[0], -2.0 * u[1]], [-2.0 * u[1], W - 2.0 * u[0]]])


def zero_set(u_plus: State, W: float) -> dict[str, State]:
    """The four zeros of ``grad Z``: ``u+``, ``ux``, ``ua`` and ``ub``."""
    a, b = u_plus
    return {
        "u+": State(a, b),
        "ux": State(W - a, -b),
        "ua": State(b + W / 2.0, a - W / 2.0),
        "ub": State(W / 2.0 - b, W / 2.0 - a),
    }


def _z_type(u: State, W: float) -> ZType:
    det = (W - 2.0 * u[0]) ** 2 - 4.0 * u[1] ** 2
    scale = 1.0 + W * W + 4.0 * (u[0] ** 2 + u[1] ** 2)
    if abs(det) <= DEGENERACY_TOL * scale:
        return ZType.DEGENERATE
    if det < 0:
        return ZType.SADDLE
    return ZType.MINIMUM if W - 2.0 * u[0] > 0 else ZType.MAXIMUM


def ode_jacobian(u: State, W: float, mu: Viscosity) -> np.ndarray:
    """Jacobian of the profile field ``-M^{-1} grad Z`` at ``u``."""
    return -hessian_Z(u, W) / mu.as_array()[:, None]


def _eigen(u: State, W: float, mu: Viscosity):
    vals, vecs = np.linalg.eig(ode_jacobian(u, W, mu))
    vals = np.real(vals)
    order = np.argsort(vals)
    out = []
    for k in order:
        v = np.real(vecs[:, k])
        v = v / np.linalg.norm(v)
        out.append((float(vals[k]), State(float(v[0]), float(v[1]))))
    return tuple(out)


def critical_points(u_plus: State, W: float, mu: Optional[Viscosity] = None) -> list[EquilibriumInfo]:
    """The four equilibria of the profile ODE with their types.

    ``mu`` only affects the reported ODE eigenpairs (default identity).
    Coincident points carry the number of copies in ``multiplicity``.
    """
    mu = mu or Viscosity(1.0, 1.0)
    pts = zero_set(u_plus, W)
    tol = DEGENERACY_TOL * (1.0 + abs(W) + abs(u_plus[0]) + abs(u_plus[1]))
    out = []
    for name, p in pts.items():
        mult = sum(1 for q in pts.values() if p.distance(q) <= tol)
        out.append(EquilibriumInfo(name, p, _z_type(p, W), mult, _eigen(p, W, mu)))
    return out


# --------------------------------------------------------------------------
# classification


def _lambdas(c: ShockCandidate) -> Lambdas:
    sm, sp = characteristic_speeds(c.u_minus), characteristic_speeds(c.u_plus)
    return Lambdas(sm.c1 - c.W, sm.c2 - c.W, sp.c1 - c.W, sp.c2 - c.W)


def lax_classify(c: ShockCandidate, tol: float = DEGENERACY_TOL) -> Classification:
    """Classify a Rankine-Hugoniot jump by the signs of ``lambda = c - W``.

    Raises
    ------
    NotOnLocus
        If the candidate violates the jump condition.
    """
    res = rh_residual(c)
    if res > LOCUS_TOL * (1.0 + abs(c.W)):
        raise NotOnLocus(f"RH residual {res:.3g} exceeds tolerance")
    lam = _lambdas(c)
    if abs(c.u_plus[1]) <= tol or min(abs(x) for x in lam) <= tol:
        return Classification(ShockKind.DEGENERATE, lam)
    m1, m2, p1, p2 = lam
    if p2 < 0 and m1 < 0 < m2:
        kind = ShockKind.FAST
    elif p1 < 0 < p2 and m1 > 0:
        kind = ShockKind.SLOW
    elif m1 < 0 < m2 and p1 < 0 < p2:
        kind = ShockKind.UNDERCOMPRESSIVE
    elif p2 < 0 and m1 > 0:
        kind = ShockKind.OVERCOMPRESSIVE
    else:
        kind = ShockKind.NON_EVOLUTIONARY
    return Classification(kind, lam)


def hessian_kind(c: ShockCandidate) -> ShockKind:
    """Fast/slow split from the Hessian-product criterion and definiteness.

    Independent of :func:`lax_classify`: a Lax shock has
    ``det Hess Z(u-) * det Hess Z(u+) < 0``; it is fast when ``Hess Z(u+)``
    is positive definite and slow when ``Hess Z(u-)`` is negative definite.
    Anything else is reported as non-evolutionary.
    """
    W = c.W

    def det(u):
        return (W / 2.0 - u[0]) ** 2 - u[1] ** 2

    if det(c.u_minus) * det(c.u_plus) >= 0:
        return ShockKind.NON_EVOLUTIONARY
    hp, hm = hessian_Z(c.u_plus, W), hessian_Z(c.u_minus, W)
    if np.all(np.linalg.eigvalsh(hp) > 0):
        return ShockKind.FAST
    if np.all(np.linalg.eigvalsh(hm) < 0):
        return ShockKind.SLOW
    return ShockKind.NON_EVOLUTIONARY


# --------------------------------------------------------------------------
# saddle-connection speeds and structure


def undercompressive_speed(u_plus: State, mu: Viscosity) -> float:
    """Speed of the rectilinear saddle connection ``ux -> u+``.

    ``W = 2 (u1+ + m |u2+|)``; the sign of the ``m`` term is the one that
    makes ``Z(ux) > Z(u+)``.
    """
    if not mu.admits_undercompressive:
        raise NoUndercompressive(f"undercompressive shocks need mu2 < mu1 (got {mu})")
    if abs(u_plus[1]) <= DEGENERACY_TOL:
        raise DegenerateAxis("undercompressive speed is undefined on the u1 axis")
    return 2.0 * (u_plus[0] + mu.m * abs(u_plus[1]))


def undercompressive_energy_gap(u_plus: State, mu: Viscosity) -> float:
    """Closed form of ``Z(ux) - Z(u+)`` at the undercompressive speed."""
    m, b = mu.m, abs(u_plus[1])
    return 4.0 * m * b**3 * (1.0 + m * m / 3.0)


def ab_connection_speed(u_plus: State, mu: Viscosity) -> tuple[float, float]:
    """Speeds ``2 (u1+ +- |u2+| / m)`` of the saddle connections between ``ua`` and ``ub``."""
    if not mu.admits_undercompressive:
        raise NoConnection(f"ua-ub connections need mu2 < mu1 (got {mu})")
    a, b = u_plus[0], abs(u_plus[1])
    return 2.0 * (a + b / mu.m), 2.0 * (a - b / mu.m)


def key_points(u_plus: State, mu: Viscosity) -> KeyPoints:
    """Key points ``A..H`` of the locus and region maps of ``u_plus``."""
    a, b = u_plus
    if b < 0:
        return key_points(State(a, -b), mu).mirrored()
    up = State(a, b)
    kp = dict(
        A=up,
        B=up.shifted(2.0 * b, ANTIDIAGONAL),
        C=up.shifted(-2.0 * b, DIAGONAL),
        H=State(a - b, 0.0),
    )
    if mu.admits_undercompressive:
        m = mu.m
        kp.update(
            D=up.shifted((1.0 + m) * b, ANTIDIAGONAL),
            E=up.shifted((1.0 + 1.0 / m) * b, ANTIDIAGONAL),
            F=State(a + 2.0 * b / m, -b),
            G=State(a + 2.0 * m * b, -b),
        )
    return KeyPoints(**kp)


def _threshold_verdict(t: float, threshold: float, below_ok: bool, what: str) -> StructureVerdict:
    if abs(t - threshold) <= BOUNDARY_BAND:
        return StructureVerdict(Verdict.BOUNDARY, f"{what}: t = {t:.12g} at threshold {threshold:.12g}")
    ok = t < threshold if below_ok else t > threshold
    side = "below" if t < threshold else "above"
    return StructureVerdict(
        Verdict.YES if ok else Verdict.NO,
        f"{what}: t = {t:.12g} {side} threshold {threshold:.12g}",
    )


def structure_exists(c: ShockCandidate, mu: Viscosity) -> StructureVerdict:
    """Decide whether a Lax shock has a viscous profile for viscosity ``mu``.

    With ``t`` the distance parameter of ``u-`` from ``u+`` along
    ``(1, -1)`` (for ``u2+ > 0``):

    * slow shocks (``0 < t < 2 u2+``) have structure iff ``mu1 <= mu2`` or
      ``t < (1 + m) u2+``;
    * fast shocks on the diagonal always have structure;
    * fast shocks on the antidiagonal beyond ``B`` have structure iff
      ``mu1 <= mu2`` or ``t > (1 + 1/m) u2+``.

    Shocks whose right state lies on the ``u1`` axis reduce to scalar
    Burgers shocks and have structure when ``u1- > u1+``.

    Raises
    ------
    NotAShock
        If the candidate is not a fast or slow Lax shock.
    """
    cls = lax_classify(c)
    a, b = c.u_plus
    if cls.kind is ShockKind.DEGENERATE and abs(b) <= DEGENERACY_TOL:
        # both lines through an axis point carry the same scalar Burgers shock
        off = abs(c.u_minus[1])
        slant = abs(off - (c.u_minus[0] - a)) <= LOCUS_TOL * (1.0 + abs(c.u_minus[0]))
        if c.u_minus[0] > a and (slant or off <= DEGENERACY_TOL):
            return StructureVerdict(Verdict.YES, "axis: compressive scalar Burgers shock")
        raise NotAShock(f"axis candidate {c} is not a compressive shock")
    if cls.kind not in (ShockKind.FAST, ShockKind.SLOW):
        raise NotAShock(f"candidate is {cls.kind.value}, not a Lax shock")
    if b < 0:
        c = c.mirrored()
        a, b = c.u_plus
    branch = locus_branch(c.u_minus, c.u_plus)
    t = c.u_minus[0] - a
    if cls.kind is ShockKind.SLOW:
        if not mu.admits_undercompressive:
            return StructureVerdict(Verdict.YES, "slow shock, mu1 <= mu2")
        return _threshold_verdict(t, (1.0 + mu.m) * b, True, "slow shock vs point D")
    if branch is BranchId.DIAGONAL:
        return StructureVerdict(Verdict.YES, "fast shock of the ub family")
    if not mu.admits_undercompressive:
        return StructureVerdict(Verdict.YES, "fast shock of the ua family, mu1 <= mu2")
    return _threshold_verdict(t, (1.0 + 1.0 / mu.m) * b, False, "fast ua-family shock vs point E")
