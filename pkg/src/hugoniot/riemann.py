"""Exact Riemann solver.

The solution is assembled compositionally.  For a right state ``p`` with
``p2 >= 0`` (other cases are mirrored) five wave-curve families are tried:

========  ===========================================================
group     geometry (left to right)
========  ===========================================================
``diag``  ``uL -(1,-1)-> u -(1,1)-> p``: S1/R1 then S2/R2
``anti``  ``uL -(1,1)-> u -(1,-1)-> p`` with ``u`` beyond ``B``: S1/R1, S2^
``joug``  ``uL -(1,1)-> B_u -Jouguet-> u -(1,1)-> p``: R1, S, R2
``axis``  ``uL -> (.,0) -special-> (p1-p2, 0) -(1,1)-> p``: R1, R, R2
``under`` ``uL -(1,1)-> ux -Z-> u -(1,1)-> p``: S1/R1, Z, S2/R2
========  ===========================================================

Each family fixes the intermediate states by a linear solve; the wave
kinds follow from the signs of the wave strengths.  A candidate is kept
only if it passes :func:`validate_solution` (Rankine-Hugoniot, Lax type,
viscous structure, fan geometry and speed ordering).  Away from region
boundaries exactly one candidate survives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import NoSolution, NotAShock, NotOnLocus
from .model import (
    ANTIDIAGONAL,
    DEGENERACY_TOL,
    DIAGONAL,
    LOCUS_TOL,
    ShockCandidate,
    ShockKind,
    State,
    Viscosity,
    as_state,
    lax_classify,
    rh_residual,
    shock_speed,
    structure_exists,
    undercompressive_speed,
)

#: Wave strengths below this (relative to the state scale) are dropped.
ZERO_STRENGTH = 1e-12
#: Tolerance for speed comparisons, relative to the state scale.
SPEED_TOL = 1e-9


class WaveKind(str, Enum):
    FAST_SHOCK = "fast-shock"
    SLOW_SHOCK = "slow-shock"
    UNDERCOMPRESSIVE = "undercompressive"
    JOUGUET = "jouguet"
    FAST_RAREFACTION = "fast-rarefaction"
    SLOW_RAREFACTION = "slow-rarefaction"
    SPECIAL_RAREFACTION = "special-rarefaction"

    @property
    def is_fan(self) -> bool:
        return self.name.endswith("RAREFACTION")


class Region(str, Enum):
    """Wave pattern labels of the region maps."""

    R1 = "1"  # S2 S1
    R2 = "2"  # S2^ S1
    R3 = "3"  # S2^ R1
    R4 = "4"  # R2 S R1 (Jouguet)
    R5 = "5"  # R2 R R1 (special rarefaction)
    R6 = "6"  # R2 R1
    R7 = "7"  # S2 R1
    R8 = "8"  # R2 S1
    R1P = "1'"  # S2 Z S1
    R2P = "2'"  # S2 Z R1
    R3P = "3'"  # R2 Z S1
    R4P = "4'"  # R2 Z R1
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Wave:
    """One elementary wave; shocks carry ``speed``, fans carry ``fan``."""

    kind: WaveKind
    left: State
    right: State
    speed: Optional[float] = None
    fan: Optional[tuple[float, float]] = None

    @property
    def lo(self) -> float:
        return self.fan[0] if self.kind.is_fan else self.speed

    @property
    def hi(self) -> float:
        return self.fan[1] if self.kind.is_fan else self.speed

    def state_at(self, theta: float) -> State:
        """Closed-form state inside a fan at ``theta = x/t``."""
        if not self.kind.is_fan:
            raise ValueError("state_at is defined for rarefaction fans only")
        if self.kind is WaveKind.SPECIAL_RAREFACTION:
            return State(theta / 2.0, 0.0)
        d1, d2 = self.right[0] - self.left[0], self.right[1] - self.left[1]
        if d1 * d2 > 0:  # along (1, 1): u1 - u2 is constant
            w = self.left[0] - self.left[1]
            return State(theta / 4.0 + w / 2.0, theta / 4.0 - w / 2.0)
        w = self.left[0] + self.left[1]
        return State(theta / 4.0 + w / 2.0, -theta / 4.0 + w / 2.0)

    def mirrored(self) -> "Wave":
        return Wave(self.kind, self.left.mirrored(), self.right.mirrored(), self.speed, self.fan)

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "left": list(self.left), "right": list(self.right)}
        if self.kind.is_fan:
            d["fan"] = list(self.fan)
        else:
            d["speed"] = self.speed
        return d


@dataclass(frozen=True)
class RiemannSolution:
    """Waves ordered left to right; adjacent waves share their states."""

    left_state: State
    right_state: State
    waves: tuple[Wave, ...]
    region: Region
    mu: Viscosity
    boundary: bool = False

    @property
    def intermediate_states(self) -> list[State]:
        return [w.right for w in self.waves[:-1]]

    def sample(self, theta: float) -> State:
        return sample_solution(self, theta)

    def to_dict(self) -> dict:
        return {
            "left_state": list(self.left_state),
            "right_state": list(self.right_state),
            "mu": [self.mu.mu1, self.mu.mu2],
            "region": self.region.value,
            "boundary": self.boundary,
            "waves": [w.to_dict() for w in self.waves],
        }


# --------------------------------------------------------------------------
# elementary waves


def _scale(*states) -> float:
    return 1.0 + max(max(abs(s[0]), abs(s[1])) for s in states)


def _fan_speed(u: State, direction: tuple[float, float]) -> float:
    # eigenvalue belonging to the eigenvector ``direction``
    return 2.0 * (u[0] + u[1]) if direction[1] > 0 else 2.0 * (u[0] - u[1])


def _fan_kind(left: State, right: State, direction: tuple[float, float]) -> WaveKind:
    side = left[1] if abs(left[1]) >= abs(right[1]) else right[1]
    fast = (side > 0) == (direction[1] > 0)
    return WaveKind.FAST_RAREFACTION if fast else WaveKind.SLOW_RAREFACTION


def _fan(left: State, right: State, direction: tuple[float, float]) -> Wave:
    return Wave(
        _fan_kind(left, right, direction),
        left,
        right,
        fan=(_fan_speed(left, direction), _fan_speed(right, direction)),
    )


def _shock(left: State, right: State, role: WaveKind) -> Optional[Wave]:
    """Shock ``left -> right`` labelled by its Lax type (``role`` on the axis)."""
    try:
        W = shock_speed(left, right)
        cls = lax_classify(ShockCandidate(left, right, W))
    except (NotOnLocus, ValueError):
        return None
    kind = {
        ShockKind.FAST: WaveKind.FAST_SHOCK,
        ShockKind.SLOW: WaveKind.SLOW_SHOCK,
        ShockKind.UNDERCOMPRESSIVE: WaveKind.UNDERCOMPRESSIVE,
    }.get(cls.kind, role)
    return Wave(kind, left, right, speed=W)


def _leg(left: State, right: State, strength: float, direction, role: WaveKind) -> Optional[Wave]:
    """Wave along ``direction``: a shock if ``strength > 0``, otherwise a fan."""
    if strength > 0:
        return _shock(left, right, role)
    return _fan(left, right, direction)


def _jouguet_left(u: State) -> State:
    # the point B of u's Hugoniot locus
    return State(u[0] + 2.0 * abs(u[1]), -u[1])


# --------------------------------------------------------------------------
# candidate patterns for p2 >= 0


def _snap(t: float, scale: float) -> float:
    return 0.0 if abs(t) <= ZERO_STRENGTH * scale else t


def _assemble(uL: State, legs: Sequence[tuple[float, Optional[Wave]]]) -> Optional[tuple[Wave, ...]]:
    waves = []
    for strength, w in legs:
        if strength == 0.0:
            continue
        if w is None:
            return None
        waves.append(w)
    return tuple(waves)


def _pattern_diag(uL: State, p: State, mu: Viscosity, sc: float):
    dx, dy = uL[0] - p[0], uL[1] - p[1]
    s, t = _snap(0.5 * (dx + dy), sc), _snap(0.5 * (dx - dy), sc)
    u = p.shifted(s, DIAGONAL) if s else p
    if not t:
        uL = u
    legs = [
        (t, _leg(uL, u, t, ANTIDIAGONAL, WaveKind.SLOW_SHOCK) if t else None),
        (s, _leg(u, p, s, DIAGONAL, WaveKind.FAST_SHOCK) if s else None),
    ]
    region = {(True, True): Region.R1, (True, False): Region.R7, (False, False): Region.R6, (False, True): Region.R8}[
        (s >= 0, t >= 0)
    ]
    return region, _assemble(uL, legs)


def _pattern_anti(uL: State, p: State, mu: Viscosity, sc: float):
    dx, dy = uL[0] - p[0], uL[1] - p[1]
    t, s = _snap(0.5 * (dx + dy), sc), _snap(0.5 * (dx - dy), sc)
    if s <= 0:
        return None
    u = p.shifted(s, ANTIDIAGONAL)
    if not t:
        uL = u
    legs = [
        (t, _leg(uL, u, t, DIAGONAL, WaveKind.SLOW_SHOCK) if t else None),
        (s, _shock(u, p, WaveKind.FAST_SHOCK)),
    ]
    return (Region.R2 if t >= 0 else Region.R3), _assemble(uL, legs)


def _pattern_jouguet(uL: State, p: State, mu: Viscosity, sc: float):
    x, y = uL
    a, b = p
    s = _snap((x - a - 3.0 * b - y) / 4.0, sc)
    t = _snap(y + b + s, sc)
    if s > 0 or t > 0 or b + s <= 0:
        return None
    u = p.shifted(s, DIAGONAL) if s else p
    Bu = _jouguet_left(u)
    if not t:
        uL = Bu
    legs = [
        (t, _fan(uL, Bu, DIAGONAL) if t else None),
        (1.0, Wave(WaveKind.JOUGUET, Bu, u, speed=2.0 * (u[0] + abs(u[1])))),
        (s, _fan(u, p, DIAGONAL) if s else None),
    ]
    return Region.R4, _assemble(uL, legs)


def _pattern_axis(uL: State, p: State, mu: Viscosity, sc: float):
    x, y = uL
    a, b = p
    t = _snap(abs(y), sc)
    uh = State(x + t, 0.0) if t else State(x, 0.0)
    u = State(a - b, 0.0) if b else p
    s = _snap(u[0] - uh[0], sc)
    if not t:
        uL = uh
    if not s:
        uh = u
        if not t:
            uL = u
    legs = [
        (t, _fan(uL, uh, DIAGONAL if y < 0 else ANTIDIAGONAL) if t else None),
        (s, Wave(WaveKind.SPECIAL_RAREFACTION, uh, u, fan=(2.0 * uh[0], 2.0 * u[0])) if s else None),
        (b, _fan(u, p, DIAGONAL) if b else None),
    ]
    return Region.R5, _assemble(uL, legs)


def _pattern_under(uL: State, p: State, mu: Viscosity, sc: float):
    if not mu.admits_undercompressive or p[1] <= 0:
        return None
    m = mu.m
    x, y = uL
    a, b = p
    s = _snap((x - a - 2.0 * m * b - y - b) / (2.0 + 2.0 * m), sc)
    t = _snap(y + b + s, sc)
    if b + s <= 0:
        return None
    u = p.shifted(s, DIAGONAL) if s else p
    ux = State(u[0] + 2.0 * m * u[1], -u[1])
    if not t:
        uL = ux
    z = _shock(ux, u, WaveKind.UNDERCOMPRESSIVE)
    legs = [
        (t, _leg(uL, ux, t, DIAGONAL, WaveKind.SLOW_SHOCK) if t else None),
        (1.0, z),
        (s, _leg(u, p, s, DIAGONAL, WaveKind.FAST_SHOCK) if s else None),
    ]
    region = {(True, True): Region.R1P, (True, False): Region.R2P, (False, True): Region.R3P, (False, False): Region.R4P}[
        (s >= 0, t >= 0)
    ]
    return region, _assemble(uL, legs)


_PATTERNS = (_pattern_diag, _pattern_anti, _pattern_jouguet, _pattern_axis, _pattern_under)


# --------------------------------------------------------------------------
# validation


def _wave_violations(w: Wave, mu: Viscosity, k: int) -> list[str]:
    tag = f"wave {k} ({w.kind.value})"
    sc = _scale(w.left, w.right)
    out = []
    if w.kind.is_fan:
        if w.kind is WaveKind.SPECIAL_RAREFACTION:
            if abs(w.left[1]) > DEGENERACY_TOL or abs(w.right[1]) > DEGENERACY_TOL:
                out.append(f"{tag}: special rarefaction off the u1 axis")
            if not w.left[0] < w.right[0]:
                out.append(f"{tag}: special rarefaction must increase u1")
            expected = (2.0 * w.left[0], 2.0 * w.right[0])
        else:
            d1, d2 = w.right[0] - w.left[0], w.right[1] - w.left[1]
            if not (d1 > 0 and abs(abs(d1) - abs(d2)) <= LOCUS_TOL * sc):
                out.append(f"{tag}: states not joined by a positive multiple of (1, +-1)")
                return out
            direction = DIAGONAL if d2 > 0 else ANTIDIAGONAL
            lo2, hi2 = min(w.left[1], w.right[1]), max(w.left[1], w.right[1])
            if lo2 < -DEGENERACY_TOL and hi2 > DEGENERACY_TOL:
                out.append(f"{tag}: fan crosses the u1 axis")
            if _fan_kind(w.left, w.right, direction) is not w.kind:
                out.append(f"{tag}: family does not match orientation")
            expected = (_fan_speed(w.left, direction), _fan_speed(w.right, direction))
        if max(abs(expected[0] - w.fan[0]), abs(expected[1] - w.fan[1])) > SPEED_TOL * sc:
            out.append(f"{tag}: fan bounds {w.fan} differ from characteristic speeds {expected}")
        if not w.fan[0] < w.fan[1]:
            out.append(f"{tag}: fan speeds not increasing")
        return out

    if w.kind is WaveKind.JOUGUET:
        if mu.admits_undercompressive:
            out.append(f"{tag}: Jouguet waves have no structure for mu1 > mu2")
        if abs(w.right[1]) <= DEGENERACY_TOL:
            out.append(f"{tag}: Jouguet wave on the u1 axis")
        if w.left.distance(_jouguet_left(w.right)) > LOCUS_TOL * sc:
            out.append(f"{tag}: left state is not B of the right state")
        if abs(w.speed - 2.0 * (w.right[0] + abs(w.right[1]))) > SPEED_TOL * sc:
            out.append(f"{tag}: speed differs from the Jouguet speed")
        return out

    c = ShockCandidate(w.left, w.right, w.speed)
    if rh_residual(c) > LOCUS_TOL * sc * sc:
        out.append(f"{tag}: Rankine-Hugoniot residual {rh_residual(c):.3g}")
        return out
    kind = lax_classify(c).kind
    if w.kind is WaveKind.UNDERCOMPRESSIVE:
        if not mu.admits_undercompressive:
            out.append(f"{tag}: undercompressive waves need mu2 < mu1")
            return out
        if kind is not ShockKind.UNDERCOMPRESSIVE:
            out.append(f"{tag}: Lax type is {kind.value}")
        elif abs(w.speed - undercompressive_speed(w.right, mu)) > SPEED_TOL * sc:
            out.append(f"{tag}: speed is not the saddle-connection speed")
        return out
    wanted = ShockKind.FAST if w.kind is WaveKind.FAST_SHOCK else ShockKind.SLOW
    axis = abs(w.right[1]) <= DEGENERACY_TOL
    if not axis and kind is not wanted:
        out.append(f"{tag}: Lax type is {kind.value}")
        return out
    try:
        verdict = structure_exists(c, mu)
    except NotAShock as exc:
        out.append(f"{tag}: {exc}")
        return out
    if not verdict.admissible:
        out.append(f"{tag}: no viscous structure ({verdict.reason})")
    return out


def wave_violations(waves: Sequence[Wave], uL: State, uR: State, mu: Viscosity) -> list[str]:
    """All violated admissibility conditions of a left-to-right wave list."""
    out = []
    if not waves:
        if uL != uR:
            out.append("empty wave list between different states")
        return out
    tol = 10.0 * ZERO_STRENGTH * _scale(uL, uR)
    if waves[0].left.distance(uL) > tol:
        out.append("first wave does not start at the left state")
    if waves[-1].right.distance(uR) > tol:
        out.append("last wave does not end at the right state")
    for k, w in enumerate(waves):
        out += _wave_violations(w, mu, k)
    for k in range(len(waves) - 1):
        wl, wr = waves[k], waves[k + 1]
        if wl.right != wr.left:
            out.append(f"waves {k} and {k + 1} do not share their state")
        if wl.hi > wr.lo + SPEED_TOL * _scale(wl.left, wr.right):
            out.append(f"waves {k} and {k + 1} out of order ({wl.hi:.12g} > {wr.lo:.12g})")
    return out


def validate_solution(sol: RiemannSolution, mu: Optional[Viscosity] = None) -> list[str]:
    """Report every violated invariant of ``sol``; empty for admissible solutions."""
    return wave_violations(sol.waves, sol.left_state, sol.right_state, mu or sol.mu)


# --------------------------------------------------------------------------
# solver


def admissible_patterns(uL, uR, mu: Viscosity) -> list[tuple[Region, tuple[Wave, ...]]]:
    """Every candidate pattern passing validation, in canonical order."""
    uL, uR = as_state(uL), as_state(uR)
    if uR[1] < 0:
        return [
            (r, tuple(w.mirrored() for w in ws))
            for r, ws in admissible_patterns(uL.mirrored(), uR.mirrored(), mu)
        ]
    sc = _scale(uL, uR)
    out = []
    for pattern in _PATTERNS:
        cand = pattern(uL, uR, mu, sc)
        if cand is None or cand[1] is None:
            continue
        region, waves = cand
        if not wave_violations(waves, uL, uR, mu):
            out.append((region, waves))
    return out


def solve_riemann(uL, uR, mu: Viscosity) -> RiemannSolution:
    """Admissible self-similar solution with left state ``uL`` and right state ``uR``.

    Raises
    ------
    NoSolution
        If no candidate pattern is admissible.
    """
    uL, uR = as_state(uL), as_state(uR)
    found = admissible_patterns(uL, uR, mu)
    if not found:
        raise NoSolution(f"no admissible wave pattern for uL={tuple(uL)}, uR={tuple(uR)}, {mu}")
    region, waves = found[0]
    if abs(uR[1]) <= DEGENERACY_TOL:
        region = Region.DEGENERATE
    return RiemannSolution(uL, uR, waves, region, mu, boundary=len(found) > 1)


def classify_region(uL, uR, mu: Viscosity) -> Region:
    """Region of the map of ``uR`` that contains ``uL``."""
    return solve_riemann(uL, uR, mu).region


def sample_solution(sol: RiemannSolution, theta: float) -> State:
    """State at ``theta = x/t``; shocks take their right value at ``theta = W``."""
    for w in sol.waves:
        if theta < w.lo:
            return w.left
        if w.kind.is_fan and theta <= w.hi:
            return w.state_at(theta)
    return sol.right_state


def sample_array(sol: RiemannSolution, theta) -> np.ndarray:
    """Vectorised :func:`sample_solution`; returns an array of shape ``(n, 2)``."""
    theta = np.asarray(theta, dtype=float)
    out = np.empty(theta.shape + (2,))
    out[...] = sol.right_state
    for w in reversed(sol.waves):
        if w.kind.is_fan:
            inside = (theta >= w.lo) & (theta <= w.hi)
            if np.any(inside):
                th = theta[inside]
                if w.kind is WaveKind.SPECIAL_RAREFACTION:
                    out[inside] = np.stack([th / 2.0, np.zeros_like(th)], axis=-1)
                else:
                    a = w.state_at(0.0)
                    slope = np.subtract(w.state_at(4.0), a) / 4.0
                    out[inside] = a + th[:, None] * slope
        out[theta < w.lo] = w.left
    return out


def region_map(uR, mu: Viscosity, box: tuple[float, float, float, float], res: int):
    """Labels of the cell centres of a ``res x res`` grid over ``box``.

    Returns ``(x, y, labels)`` with ``labels[j, i]`` the region of
    ``(x[i], y[j])``.
    """
    x0, x1, y0, y1 = box
    xs = x0 + (np.arange(res) + 0.5) * (x1 - x0) / res
    ys = y0 + (np.arange(res) + 0.5) * (y1 - y0) / res
    labels = np.empty((res, res), dtype=object)
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            labels[j, i] = classify_region((float(x), float(y)), uR, mu)
    return xs, ys, labels
