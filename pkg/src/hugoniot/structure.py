"""Phase-plane oracle for viscous shock profiles.

A travelling wave ``u(x - W t)`` of the viscous system solves the
gradient-like ODE ``u' = -M^{-1} grad Z(u)`` whose equilibria are the four
points of :func:`hugoniot.model.zero_set`.  This module integrates that ODE
with an adaptive Runge-Kutta scheme, shoots separatrices from saddles and
searches for heteroclinic orbits.  It uses none of the closed-form
structure predicates of :mod:`hugoniot.model` and therefore serves as an
independent check of them.
"""

from __future__ import annotations

import csv
import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import DOP853
from scipy.optimize import brentq

from .errors import (
    DegenerateAxis,
    DegenerateEquilibrium,
    NotASaddle,
    NotEquilibrium,
    NoUndercompressive,
)
from .model import (
    EquilibriumInfo,
    State,
    Viscosity,
    ZType,
    coefficients_D,
    critical_points,
    energy_Z,
    grad_Z,
    ode_jacobian,
    zero_set,
)


@dataclass(frozen=True)
class Numerics:
    """Integration and shooting settings.

    ``eps`` is the initial offset from a saddle relative to the spread of
    the equilibria; ``delta`` is the absolute radius of the ball counted as
    convergence to an equilibrium.
    """

    rtol: float = 1e-10
    atol: float = 1e-12
    eps: float = 1e-6
    delta: float = 1e-5
    max_steps: int = 1_000_000
    samples_per_step: int = 4


@dataclass(frozen=True)
class OdeParams:
    """Right-hand side data of the profile ODE."""

    u_plus: State
    W: float
    mu: Viscosity
    D: tuple[float, float] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "D", coefficients_D(self.u_plus, self.W))

    def field_function(self) -> Callable[[float, np.ndarray], np.ndarray]:
        W, (D1, D2) = self.W, self.D
        m1, m2 = self.mu.mu1, self.mu.mu2

        def f(_xi, u):
            u1, u2 = u[0], u[1]
            return np.array([(u1 * u1 + u2 * u2 - W * u1 - D1) / m1, (2.0 * u1 * u2 - W * u2 - D2) / m2])

        return f

    def equilibria(self) -> list[EquilibriumInfo]:
        return critical_points(self.u_plus, self.W, self.mu)


def ode_rhs(u: State, p: OdeParams) -> State:
    """``-M^{-1} grad Z(u)``."""
    g = grad_Z(u, p.u_plus, p.W)
    return State(-g[0] / p.mu.mu1, -g[1] / p.mu.mu2)


class TerminalKind(str, enum.Enum):
    CONVERGED = "converged"
    ESCAPED = "escaped"
    STEP_LIMIT = "step-limit"
    STOPPED = "stopped"


@dataclass(frozen=True)
class Terminal:
    """How an integration ended; ``state`` is the equilibrium reached, if any."""

    kind: TerminalKind
    state: Optional[State] = None

    def converged_to(self, target: State, tol: float = 1e-9) -> bool:
        return self.kind is TerminalKind.CONVERGED and self.state.distance(target) <= tol


@dataclass
class Trajectory:
    """Samples ``u(xi)`` with ``xi`` increasing.

    ``terminal`` describes where the integration stopped.  For a shot in
    reversed time that is the ``xi -> -inf`` end, flagged by ``reversed``.
    """

    xi: np.ndarray
    u: np.ndarray
    terminal: Terminal
    reversed: bool = False

    @property
    def samples(self) -> list[tuple[float, State]]:
        return [(float(x), State(float(a), float(b))) for x, (a, b) in zip(self.xi, self.u)]

    def energy(self, p: OdeParams) -> np.ndarray:
        (D1, D2), W = p.D, p.W
        u1, u2 = self.u[:, 0], self.u[:, 1]
        return -(u1**3 / 3.0 + u1 * u2**2) + 0.5 * W * (u1**2 + u2**2) + D1 * u1 + D2 * u2

    def max_energy_rise(self, p: OdeParams) -> float:
        """Largest increase of ``Z`` per unit ``xi`` between consecutive samples."""
        z = self.energy(p)
        dxi = np.diff(self.xi)
        if dxi.size == 0:
            return 0.0
        return float(max(0.0, np.max(np.diff(z) / np.maximum(dxi, 1e-300))))


@dataclass
class Profile:
    """A heteroclinic orbit from ``u_minus`` to ``u_plus`` at speed ``W``.

    ``xi = 0`` is placed where the orbit is halfway between the end states
    (projected on the chord).  ``family`` is set for node-to-node orbits,
    which come in a one-parameter family.
    """

    trajectory: Trajectory
    u_minus: State
    u_plus: State
    W: float
    mu: Viscosity
    family: bool = False
    family_hits: int = 1

    @property
    def params(self) -> OdeParams:
        return OdeParams(self.u_plus, self.W, self.mu)

    def at(self, xi) -> np.ndarray:
        """Profile values at ``xi`` (shape ``(..., 2)``), constant beyond the samples."""
        xi = np.asarray(xi, dtype=float)
        tr = self.trajectory
        u1 = np.interp(xi, tr.xi, tr.u[:, 0], left=self.u_minus[0], right=self.u_plus[0])
        u2 = np.interp(xi, tr.xi, tr.u[:, 1], left=self.u_minus[1], right=self.u_plus[1])
        return np.stack([u1, u2], axis=-1)

    def chord_deviation(self) -> float:
        """Max distance of the samples from the straight line through the end states."""
        d = np.subtract(self.u_plus, self.u_minus)
        n = np.array([-d[1], d[0]]) / np.linalg.norm(d)
        return float(np.max(np.abs((self.trajectory.u - np.asarray(self.u_minus)) @ n)))

    def rows(self):
        z = self.trajectory.energy(self.params)
        for x, (a, b), zz in zip(self.trajectory.xi, self.trajectory.u, z):
            yield float(x), float(a), float(b), float(zz)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["xi", "u1", "u2", "Z"])
            for row in self.rows():
                w.writerow([f"{v:.17g}" for v in row])


# --------------------------------------------------------------------------
# integration core


def _geometry(p: OdeParams) -> tuple[np.ndarray, float, float]:
    """Centre, spread and escape radius of the equilibrium cluster."""
    pts = np.array(list(zero_set(p.u_plus, p.W).values()))
    centre = pts.mean(axis=0)
    diam = max(np.linalg.norm(a - b) for a in pts for b in pts)
    scale = diam if diam > 0 else 1.0
    return centre, scale, 10.0 * diam + 10.0


def _distinct(points, exclude: np.ndarray, tol: float) -> list[np.ndarray]:
    out = []
    for q in points:
        q = np.asarray(q, dtype=float)
        if np.linalg.norm(q - exclude) <= tol:
            continue
        if any(np.linalg.norm(q - r) <= tol for r in out):
            continue
        out.append(q)
    return out


def _integrate(
    p: OdeParams,
    u0: np.ndarray,
    sign: float,
    targets: list[np.ndarray],
    numerics: Numerics,
    monitor: Optional[Callable[[np.ndarray], bool]] = None,
) -> Trajectory:
    """Integrate from ``u0`` forward (``sign=+1``) or backward until an event."""
    f = p.field_function()
    centre, _, R = _geometry(p)
    rhs = f if sign > 0 else (lambda xi, u: -f(xi, u))
    solver = DOP853(rhs, 0.0, np.asarray(u0, dtype=float), np.inf, rtol=numerics.rtol, atol=numerics.atol)
    xs, us = [0.0], [np.array(u0, dtype=float)]
    k = numerics.samples_per_step
    terminal = Terminal(TerminalKind.STEP_LIMIT)
    for _ in range(numerics.max_steps):
        t_old = solver.t
        solver.step()
        if solver.status == "failed":
            terminal = Terminal(TerminalKind.ESCAPED)
            break
        if k > 1:
            dense = solver.dense_output()
            ts = np.linspace(t_old, solver.t, k + 1)[1:]
            xs.extend(ts)
            us.extend(dense(ts).T)
        else:
            xs.append(solver.t)
            us.append(solver.y.copy())
        y = solver.y
        hit = next((q for q in targets if math.hypot(y[0] - q[0], y[1] - q[1]) < numerics.delta), None)
        if hit is not None:
            terminal = Terminal(TerminalKind.CONVERGED, State(float(hit[0]), float(hit[1])))
            break
        if math.hypot(y[0] - centre[0], y[1] - centre[1]) > R:
            terminal = Terminal(TerminalKind.ESCAPED)
            break
        if monitor is not None and monitor(y):
            terminal = Terminal(TerminalKind.STOPPED)
            break
    else:
        warnings.warn("profile integration hit the step limit", RuntimeWarning, stacklevel=3)
    xi, u = np.array(xs), np.array(us)
    if sign < 0:
        return Trajectory(-xi[::-1], u[::-1], terminal, reversed=True)
    return Trajectory(xi, u, terminal)


def _eigen_at(u: State, p: OdeParams):
    vals, vecs = np.linalg.eig(ode_jacobian(u, p.W, p.mu))
    return np.real(vals), np.real(vecs) / np.linalg.norm(np.real(vecs), axis=0)


def shoot_separatrix(eq: EquilibriumInfo, direction, p: OdeParams, numerics: Numerics = Numerics()) -> Trajectory:
    """Follow one separatrix branch of the saddle ``eq``.

    ``direction`` must be (close to) an eigenvector of the linearisation.
    An unstable direction is integrated forward, a stable one backward.
    The shot starts at ``eq.location + eps * scale * direction`` and stops
    on entering the ``delta`` ball of another equilibrium, on leaving the
    escape radius, or at the step limit.

    Raises
    ------
    NotASaddle
        If ``eq`` is not a saddle.
    """
    if eq.z_type is not ZType.SADDLE:
        raise NotASaddle(f"{eq.name} at {tuple(eq.location)} is a {eq.z_type.value}")
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    vals, vecs = _eigen_at(eq.location, p)
    k = int(np.argmax(np.abs(vecs.T @ d)))
    sign = 1.0 if vals[k] > 0 else -1.0
    loc = np.asarray(eq.location, dtype=float)
    _, scale, _ = _geometry(p)
    others = _distinct(zero_set(p.u_plus, p.W).values(), loc, 1e-9 * (1.0 + scale))
    return _integrate(p, loc + numerics.eps * scale * d, sign, others, numerics)


def _branches(eq: EquilibriumInfo, p: OdeParams, unstable: bool):
    vals, vecs = _eigen_at(eq.location, p)
    k = int(np.argmax(vals) if unstable else np.argmin(vals))
    v = vecs[:, k]
    return (v, -v)


def _profile(tr: Trajectory, u_minus: State, u_plus: State, p: OdeParams, **kw) -> Profile:
    d = np.subtract(u_plus, u_minus)
    s = (tr.u - np.asarray(u_minus)) @ d / (d @ d)
    k = int(np.argmin(np.abs(s - 0.5)))
    tr = Trajectory(tr.xi - tr.xi[k], tr.u, tr.terminal, tr.reversed)
    return Profile(tr, State(*u_minus), State(*u_plus), p.W, p.mu, **kw)


def _join(back: Trajectory, fwd: Trajectory) -> Trajectory:
    # back ends at the seed (xi = 0), fwd starts there
    xi = np.concatenate([back.xi, fwd.xi[1:]])
    u = np.concatenate([back.u, fwd.u[1:]])
    return Trajectory(xi, u, fwd.terminal)


def _node_candidates(u_minus: State, u_plus: State, saddles: list[State], n_grid: int = 10):
    fr = (0.5, 0.25, 0.75, 0.1, 0.9)
    out = []
    if len(saddles) == 2:
        s0, s1 = np.asarray(saddles[0]), np.asarray(saddles[1])
        out += [s0 + f * (s1 - s0) for f in fr]
    a, b = np.asarray(u_minus), np.asarray(u_plus)
    out += [a + f * (b - a) for f in fr]
    pts = np.array([a, b] + [np.asarray(s) for s in saddles])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    pad = 0.1 * (hi - lo) + 1e-3
    g1 = np.linspace(lo[0] - pad[0], hi[0] + pad[0], n_grid)
    g2 = np.linspace(lo[1] - pad[1], hi[1] + pad[1], n_grid)
    out += [np.array([x, y]) for x in g1 for y in g2]
    return out


def find_heteroclinic(
    u_minus: State,
    u_plus: State,
    W: float,
    mu: Viscosity,
    numerics: Numerics = Numerics(),
) -> Optional[Profile]:
    """Search for an orbit of the profile ODE from ``u_minus`` to ``u_plus``.

    Saddle sources are handled by shooting both unstable separatrix
    branches forward; saddle targets (with a node source) by shooting both
    stable branches of the target backward.  For node-to-node pairs the
    search seeds interior points (on the chord between the two saddles, on
    the chord between the nodes, then on a grid over the equilibria) and
    integrates each seed both ways; an orbit is accepted when the seed
    flows back to ``u_minus`` and forward to ``u_plus``.

    Returns
    -------
    Profile or None
        ``None`` when no connecting orbit was found.

    Raises
    ------
    NotEquilibrium
        If either state is not a zero of the field.
    DegenerateEquilibrium
        If either state has a vanishing eigenvalue.
    """
    p = OdeParams(State(*u_plus), W, mu)
    _, scale, _ = _geometry(p)
    for u in (u_minus, u_plus):
        g = grad_Z(u, p.u_plus, W)
        if math.hypot(*g) > 1e-8 * (1.0 + abs(W) + abs(u[0]) + abs(u[1])) ** 2:
            raise NotEquilibrium(f"{tuple(u)} is not an equilibrium (|grad Z| = {math.hypot(*g):.3g})")
    eqs = p.equilibria()

    def info(u):
        return min(eqs, key=lambda e: e.location.distance(u))

    src, tgt = info(u_minus), info(u_plus)
    if ZType.DEGENERATE in (src.z_type, tgt.z_type):
        raise DegenerateEquilibrium("saddle-node equilibria need a dedicated center-manifold shot")
    if energy_Z(u_minus, p.u_plus, W) <= energy_Z(u_plus, p.u_plus, W):
        return None
    tol = 10.0 * numerics.delta
    if src.z_type is ZType.SADDLE:
        for v in _branches(src, p, unstable=True):
            tr = shoot_separatrix(src, v, p, numerics)
            if tr.terminal.converged_to(u_plus, tol):
                return _profile(tr, u_minus, u_plus, p)
        return None
    if tgt.z_type is ZType.SADDLE:
        for v in _branches(tgt, p, unstable=False):
            tr = shoot_separatrix(tgt, v, p, numerics)
            if tr.terminal.converged_to(u_minus, tol):
                return _profile(tr, u_minus, u_plus, p)
        return None
    saddles = [e.location for e in eqs if e.z_type is ZType.SADDLE]
    others_f = _distinct([e.location for e in eqs], np.full(2, np.nan), 1e-9 * (1.0 + scale))
    for seed in _node_candidates(u_minus, u_plus, saddles):
        fwd = _integrate(p, seed, 1.0, others_f, numerics)
        if not fwd.terminal.converged_to(u_plus, tol):
            continue
        back = _integrate(p, seed, -1.0, others_f, numerics)
        if back.terminal.converged_to(u_minus, tol):
            return _profile(_join(back, fwd), u_minus, u_plus, p, family=True)
    return None


# --------------------------------------------------------------------------
# undercompressive and Jouguet connections


def connects(u_minus: State, u_plus: State, W: float, mu: Viscosity, numerics: Numerics = Numerics()) -> bool:
    """True when :func:`find_heteroclinic` finds an orbit."""
    return find_heteroclinic(u_minus, u_plus, W, mu, numerics) is not None


def _splitting(a: float, b: float, W: float, mu: Viscosity, numerics: Numerics) -> float:
    """Signed miss distance of the unstable separatrix of ``ux`` at ``u+``.

    Positive and negative values lie on opposite sides of the chord from
    ``ux`` to ``u+``; zero means the separatrix hits ``u+``.
    """
    p = OdeParams(State(a, b), W, mu)
    ux = np.array([W - a, -b])
    up = np.array([a, b])
    chord = up - ux
    L = float(np.linalg.norm(chord))
    vals, vecs = _eigen_at(State(*ux), p)
    v = vecs[:, int(np.argmax(vals))]
    if v @ chord < 0:
        v = -v
    best = [np.inf, 0.0]

    def monitor(y):
        r = y - up
        d = float(np.hypot(*r))
        if d < best[0]:
            best[0] = d
            best[1] = chord[0] * r[1] - chord[1] * r[0]
        return d < 1e-13 * L or (best[0] < 0.5 * L and d > 2.0 * best[0] + 0.05 * L)

    _, scale, _ = _geometry(p)
    targets = _distinct(zero_set(p.u_plus, W).values(), ux, 1e-9 * (1.0 + scale))
    targets = [q for q in targets if np.linalg.norm(q - up) > 1e-9]
    fast = Numerics(numerics.rtol, numerics.atol, numerics.eps, numerics.delta, numerics.max_steps, 1)
    _integrate(p, ux + numerics.eps * L * v, 1.0, targets, fast, monitor)
    return math.copysign(best[0], best[1]) if best[0] > 1e-13 * L else 0.0


def verify_connection(u_plus: State, mu: Viscosity, numerics: Numerics = Numerics()) -> float:
    """Measure the speed of the saddle connection ``ux -> u+`` by root finding.

    The signed miss distance of the unstable separatrix of ``ux`` is
    bracketed over the saddle range ``2 u1+ < W < 2 (u1+ + |u2+|)`` and its
    root located with Brent's method.  The closed form of the speed is not
    used.

    Raises
    ------
    NoUndercompressive
        If ``mu1 <= mu2``.
    DegenerateAxis
        If ``u2+ = 0``.
    """
    if not mu.admits_undercompressive:
        raise NoUndercompressive(f"no undercompressive connection for {mu}")
    a, b = u_plus[0], abs(u_plus[1])
    if b <= 1e-9:
        raise DegenerateAxis("no saddle connection on the u1 axis")
    lo, hi = 2.0 * a + 1e-3 * b, 2.0 * (a + b) - 1e-3 * b
    f_lo, f_hi = _splitting(a, b, lo, mu, numerics), _splitting(a, b, hi, mu, numerics)
    if f_lo * f_hi > 0:
        raise RuntimeError("separatrix splitting does not change sign over the saddle range")
    return brentq(
        lambda W: _splitting(a, b, W, mu, numerics),
        lo,
        hi,
        xtol=1e-11 * max(1.0, abs(a) + b),
        rtol=1e-15,
    )


def saddle_connection_found(u_plus: State, W: float, mu: Viscosity, numerics: Numerics = Numerics()) -> bool:
    """Whether an unstable separatrix of ``ux`` reaches ``u+`` at speed ``W``."""
    p = OdeParams(State(*u_plus), W, mu)
    eqs = {e.name: e for e in p.equilibria()}
    ux = eqs["ux"]
    if ux.z_type is not ZType.SADDLE:
        return False
    return any(
        shoot_separatrix(ux, v, p, numerics).terminal.converged_to(p.u_plus, 10 * numerics.delta)
        for v in _branches(ux, p, unstable=True)
    )


def jouguet_connection(u_plus: State, mu: Viscosity, numerics: Numerics = Numerics(), ball: float = 1e-4) -> bool:
    """Whether the Jouguet profile from ``B`` to ``A = u+`` exists.

    At ``W = 2 (u1+ + |u2+|)`` both end states are saddle-nodes.  The
    shot leaves ``B`` along its non-zero (unstable) eigendirection and
    succeeds when it enters the ball of relative radius ``ball`` around
    ``A``; the final approach to ``A`` is along its center direction and
    therefore only algebraically fast.
    """
    a, b = u_plus[0], abs(u_plus[1])
    if b <= 1e-9:
        raise DegenerateAxis("no Jouguet wave on the u1 axis")
    W = 2.0 * (a + b)
    p = OdeParams(State(a, b), W, mu)
    A, B = np.array([a, b]), np.array([a + 2.0 * b, -b])
    L = float(np.linalg.norm(B - A))
    vals, vecs = _eigen_at(State(*B), p)
    v = vecs[:, int(np.argmax(np.abs(vals)))]
    fast = Numerics(numerics.rtol, numerics.atol, numerics.eps, ball * L, numerics.max_steps, 1)
    for s in (v, -v):
        tr = _integrate(p, B + numerics.eps * L * s, 1.0, [A], fast)
        if tr.terminal.kind is TerminalKind.CONVERGED:
            return True
    return False
