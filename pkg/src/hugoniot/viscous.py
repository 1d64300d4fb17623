"""Finite-difference solver for the viscous system.

Conservative central differencing of ``(grad Q(u))_x`` plus a centred
second difference for ``M u_xx``, advanced with Heun's second-order
Runge-Kutta method.  Far-field values are held fixed in one ghost cell at
each end.  An optional frame speed ``s`` evolves the equation in the
co-moving frame ``x - s t`` (flux ``f(u) - s u``).

The same discrete operator, applied componentwise to the Burgers flux
``w^2``, integrates the decoupled variables ``w = (u1 + u2, u1 - u2)``
when ``mu1 = mu2``; see :func:`decoupling_check`.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BlowUp
from .model import State, Viscosity, as_state
from .riemann import sample_array, solve_riemann
from .structure import Profile


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centred grid of ``n`` cells on ``[x_min, x_max]``."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if self.n < 16:
            raise ValueError(f"need at least 16 cells, got {self.n}")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n) + 0.5) * self.dx


@dataclass
class Field:
    """Cell averages ``values[i] = (u1, u2)`` at ``time`` on ``grid``."""

    values: np.ndarray
    time: float
    grid: Grid1D

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n, 2):
            raise ValueError(f"values must have shape ({self.grid.n}, 2), got {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")

    def mass(self) -> np.ndarray:
        return self.values.sum(axis=0) * self.grid.dx

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "u1", "u2"])
            for x, (a, b) in zip(self.grid.centers(), self.values):
                w.writerow([f"{x:.17g}", f"{a:.17g}", f"{b:.17g}"])


@dataclass(frozen=True)
class SchemeSettings:
    """Time-step safety factor, frame speed and blow-up bound."""

    safety: float = 0.4
    frame_speed: float = 0.0
    bound: float = 1e6


@dataclass
class RunLog:
    """Per-step record: time steps and the conservation defect.

    The defect is ``sum(du) dx + dt * (net boundary flux)``, which vanishes
    for exact flux differencing.
    """

    dts: list[float] = field(default_factory=list)
    conservation_defects: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "steps": len(self.dts),
            "dt_min": min(self.dts) if self.dts else None,
            "dt_max": max(self.dts) if self.dts else None,
            "dts": self.dts,
            "max_conservation_defect": max(self.conservation_defects, default=0.0),
        }


# --------------------------------------------------------------------------
# discrete operator


def _system_flux(u: np.ndarray) -> np.ndarray:
    return np.stack([u[:, 0] ** 2 + u[:, 1] ** 2, 2.0 * u[:, 0] * u[:, 1]], axis=1)


def _system_speed(u: np.ndarray, s: float) -> float:
    return float(max(np.max(np.abs(2.0 * (u[:, 0] + u[:, 1]) - s)), np.max(np.abs(2.0 * (u[:, 0] - u[:, 1]) - s))))


def _burgers_flux(w: np.ndarray) -> np.ndarray:
    return w * w


def _burgers_speed(w: np.ndarray, s: float) -> float:
    return float(np.max(np.abs(2.0 * w - s)))


def _run(
    values: np.ndarray,
    t0: float,
    t_end: float,
    dx: float,
    visc: np.ndarray,
    flux: Callable[[np.ndarray], np.ndarray],
    speed: Callable[[np.ndarray, float], float],
    settings: SchemeSettings,
    log: Optional[RunLog],
    stops: Optional[list[float]] = None,
    on_stop: Optional[Callable[[float, np.ndarray], None]] = None,
) -> np.ndarray:
    s = settings.frame_speed
    left, right = values[0].copy(), values[-1].copy()
    nu = visc[None, :] / dx

    def interface_flux(u):
        U = np.concatenate([left[None, :], u, right[None, :]])
        F = flux(U) - s * U
        return 0.5 * (F[:-1] + F[1:]) - nu * (U[1:] - U[:-1])

    u = values.copy()
    t = t0
    pending = sorted(x for x in (stops or []) if x >= t0)
    dt_diff = settings.safety * dx * dx / (2.0 * float(np.max(visc)))
    while True:
        while pending and pending[0] <= t + 1e-12 * max(1.0, abs(t)):
            on_stop(pending.pop(0), u)
        if t >= t_end:
            break
        c = speed(u, s)
        dt = dt_diff if c == 0 else min(settings.safety * dx / (2.0 * c), dt_diff)
        nxt = min([t_end] + pending)
        if t + dt >= nxt:
            dt = nxt - t
        F0 = interface_flux(u)
        u1 = u - dt / dx * (F0[1:] - F0[:-1])
        F1 = interface_flux(u1)
        new = 0.5 * (u + u1 - dt / dx * (F1[1:] - F1[:-1]))
        if not np.all(np.isfinite(new)) or np.max(np.abs(new)) > settings.bound:
            raise BlowUp(f"solution exceeded {settings.bound:g} at t = {t + dt:.6g}")
        if log is not None:
            net = 0.5 * dt * ((F0[-1] - F0[0]) + (F1[-1] - F1[0]))
            log.dts.append(dt)
            log.conservation_defects.append(float(np.max(np.abs((new - u).sum(axis=0) * dx + net))))
        u = new
        t = nxt if dt == nxt - t else t + dt
    return u


def evolve(
    f0: Field,
    mu: Viscosity,
    t_end: float,
    settings: SchemeSettings = SchemeSettings(),
    log: Optional[RunLog] = None,
) -> Field:
    """Advance ``f0`` to ``t_end``.

    The time step is ``safety * min(dx / (2 max|c - s|), dx^2 / (2 max mu))``;
    the boundary cells of ``f0`` fix the far-field values.

    Raises
    ------
    BlowUp
        If any value exceeds ``settings.bound`` in magnitude.
    """
    if t_end < f0.time:
        raise ValueError("t_end precedes the initial time")
    u = _run(
        f0.values, f0.time, t_end, f0.grid.dx, mu.as_array(), _system_flux, _system_speed, settings, log
    )
    return Field(u, t_end, f0.grid)


def riemann_ic(uL, uR, grid: Grid1D, width: float = 0.0) -> Field:
    """Step from ``uL`` to ``uR`` at ``x = 0``, tanh-smoothed over ``width``."""
    if width < 0:
        raise ValueError("smoothing width must be non-negative")
    uL, uR = np.asarray(as_state(uL)), np.asarray(as_state(uR))
    x = grid.centers()
    if width == 0:
        h = np.sign(x)[:, None]
    else:
        h = np.tanh(x / width)[:, None]
    return Field(0.5 * (uL + uR) + 0.5 * (uR - uL) * h, 0.0, grid)


def _check_resolution(grid: Grid1D, mu: Viscosity) -> None:
    limit = math.sqrt(min(mu.mu1, mu.mu2)) / 4.0
    if grid.dx > limit:
        raise ValueError(f"dx = {grid.dx:.4g} exceeds sqrt(mu)/4 = {limit:.4g}")


def compare_to_riemann(
    uL,
    uR,
    mu: Viscosity,
    t: float,
    grid: Grid1D,
    width: float = 0.0,
    settings: SchemeSettings = SchemeSettings(),
) -> float:
    """L1 distance at time ``t`` between the viscous and the inviscid solution.

    The distance sums both components: ``sum_i |u_num - u_exact|_1 dx``.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    _check_resolution(grid, mu)
    sol = solve_riemann(uL, uR, mu)
    if sol.waves:
        lo, hi = sol.waves[0].lo * t, sol.waves[-1].hi * t
        margin = 0.2 * grid.length
        if lo < grid.x_min + margin or hi > grid.x_max - margin:
            warnings.warn("waves come within 20% of the domain boundary", RuntimeWarning, stacklevel=2)
    num = evolve(riemann_ic(uL, uR, grid, width), mu, t, settings)
    exact = sample_array(sol, grid.centers() / t)
    return float(np.sum(np.abs(num.values - exact)) * grid.dx)


def to_decoupled(u: np.ndarray) -> np.ndarray:
    """``(u1, u2) -> (u1 + u2, u1 - u2)``."""
    return np.stack([u[..., 0] + u[..., 1], u[..., 0] - u[..., 1]], axis=-1)


def from_decoupled(w: np.ndarray) -> np.ndarray:
    return np.stack([0.5 * (w[..., 0] + w[..., 1]), 0.5 * (w[..., 0] - w[..., 1])], axis=-1)


def evolve_burgers_pair(
    w0: np.ndarray, grid: Grid1D, mu_scalar: float, t0: float, t_end: float, settings: SchemeSettings = SchemeSettings()
) -> np.ndarray:
    """Two independent viscous Burgers equations ``w_t + (w^2)_x = mu w_xx``."""
    visc = np.array([mu_scalar, mu_scalar])
    return _run(np.asarray(w0, dtype=float), t0, t_end, grid.dx, visc, _burgers_flux, _burgers_speed, settings, None)


def decoupling_check(uL, uR, mu_scalar: float, grid: Grid1D, t: float, width: float = 0.0) -> float:
    """Max-norm gap between the coupled run and the decoupled Burgers pair."""
    f0 = riemann_ic(uL, uR, grid, width)
    coupled = evolve(f0, Viscosity(mu_scalar, mu_scalar), t)
    pair = evolve_burgers_pair(to_decoupled(f0.values), grid, mu_scalar, 0.0, t)
    return float(np.max(np.abs(coupled.values - from_decoupled(pair))))


# --------------------------------------------------------------------------
# stability of travelling waves


@dataclass
class StabilityRecord:
    """Shift-minimised distance to the travelling wave over time.

    ``shifts[k]`` is the optimal shift; for family runs it holds the pair
    of shifts of the two decoupled components.
    """

    times: np.ndarray
    distances: np.ndarray
    shifts: np.ndarray

    def to_dict(self) -> dict:
        return {"times": self.times.tolist(), "distances": self.distances.tolist(), "shifts": self.shifts.tolist()}


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _best_shift(dist: Callable[[float], float], half_range: float, dx: float) -> tuple[float, float]:
    """Golden-section search for the minimising shift after a coarse scan."""
    grid = np.linspace(-half_range, half_range, 401)
    vals = [dist(s) for s in grid]
    k = int(np.argmin(vals))
    h = grid[1] - grid[0]
    s = _golden_min(dist, grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)], 1e-6 * max(dx, h))
    return (s, dist(s)) if dist(s) <= vals[k] else (float(grid[k]), vals[k])


def shift_distance(values: np.ndarray, x: np.ndarray, profile: Profile, half_range: float, family: bool = False):
    """``inf_s max|values - profile(x - s)|``; separate shifts per decoupled component if ``family``."""
    dx = float(x[1] - x[0])
    if not family:

        def dist(s):
            return float(np.max(np.abs(values - profile.at(x - s))))

        s, d = _best_shift(dist, half_range, dx)
        return d, np.array([s])
    w = to_decoupled(values)
    shifts, dists = [], []
    for k in range(2):

        def dist_k(s, k=k):
            return float(np.max(np.abs(w[:, k] - to_decoupled(profile.at(x - s))[:, k])))

        s, d = _best_shift(dist_k, half_range, dx)
        shifts.append(s)
        dists.append(d)
    return max(dists), np.array(shifts)


def stability_experiment(
    profile: Profile,
    perturbation: Field,
    mu: Viscosity,
    t_end: float,
    n_records: int = 50,
    family: bool = False,
    settings: Optional[SchemeSettings] = None,
) -> StabilityRecord:
    """Evolve ``profile + perturbation`` in the co-moving frame and track the distance.

    The grid of ``perturbation`` is read in the co-moving coordinate
    ``x - W t``.  At ``n_records + 1`` equally spaced times the distance
    ``inf_s max|u(x) - profile(x - s)|`` is recorded, with ``s`` searched
    over a quarter of the domain each way.  With ``family=True`` (only
    meaningful for ``mu1 = mu2``) the two decoupled components get their
    own shifts, which parametrise the overcompressive family.

    Raises
    ------
    BlowUp
        Propagated from the time stepper.
    """
    if family and mu.mu1 != mu.mu2:
        raise ValueError("family shifts need mu1 = mu2")
    grid = perturbation.grid
    x = grid.centers()
    settings = settings or SchemeSettings(frame_speed=profile.W)
    u0 = profile.at(x) + perturbation.values
    times = np.linspace(perturbation.time, perturbation.time + t_end, n_records + 1)
    dists, shifts = [], []

    def record(_t, u):
        d, s = shift_distance(u, x, profile, grid.length / 4.0, family)
        dists.append(d)
        shifts.append(s)

    _run(
        u0, times[0], times[-1], grid.dx, mu.as_array(), _system_flux, _system_speed, settings, None,
        stops=list(times), on_stop=record,
    )
    return StabilityRecord(times, np.array(dists), np.array(shifts))


def bump(grid: Grid1D, amplitude, centre: float = 0.0, width: float = 2.0) -> Field:
    """Compactly supported ``cos^2`` bump of total support ``width``."""
    x = grid.centers()
    r = (x - centre) / width
    shape = np.where(np.abs(r) < 0.5, np.cos(np.pi * r) ** 2, 0.0)
    return Field(shape[:, None] * np.asarray(amplitude, dtype=float)[None, :], 0.0, grid)


def write_sidecar(path, grid: Grid1D, mu: Viscosity, settings: SchemeSettings, log: RunLog, **extra) -> None:
    """Run metadata as JSON next to a field CSV."""
    meta = {
        "grid": asdict(grid) | {"dx": grid.dx},
        "mu": [mu.mu1, mu.mu2],
        "scheme": {"space": "central flux, centred viscous term", "time": "Heun RK2", **asdict(settings)},
        "log": log.to_dict(),
        **extra,
    }
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
