"""Property suites checking the wave theory against its oracles.

Each suite samples its inputs from a seeded generator, compares the
closed-form layer with an independent computation and returns a
:class:`SuiteResult`.  The same suites back ``hugoniot validate`` and the
acceptance tests, which pin the sizes and tolerances explicitly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .model import (
    ANTIDIAGONAL,
    DIAGONAL,
    ShockCandidate,
    ShockKind,
    State,
    Verdict,
    Viscosity,
    energy_Z,
    hessian_kind,
    hugoniot_branches,
    key_points,
    lax_classify,
    locus_product,
    rh_residual,
    structure_exists,
    undercompressive_energy_gap,
    undercompressive_speed,
    zero_set,
)
from .riemann import Region, admissible_patterns, region_map, solve_riemann, validate_solution
from .structure import Numerics, find_heteroclinic, saddle_connection_found, verify_connection
from .viscous import (
    Grid1D,
    bump,
    compare_to_riemann,
    decoupling_check,
    stability_experiment,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def report(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.1f} s)"
        return "\n".join([head] + ["  " + s for s in self.lines])


def _timed(fn: Callable[..., SuiteResult]):
    def run(*args, **kw):
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _random_uplus(rng: np.random.Generator, axis_fraction: float = 0.0) -> State:
    a = rng.uniform(-5.0, 5.0)
    b = 0.0 if rng.random() < axis_fraction else rng.uniform(-5.0, 5.0)
    return State(a, b)


def _mu_from_m(m: float, mu1: float) -> Viscosity:
    # inverts m^2 = mu2 / (2 mu1 - mu2)
    return Viscosity(mu1, 2.0 * m * m * mu1 / (1.0 + m * m))


# --------------------------------------------------------------------------
# model layer


@_timed
def hugoniot_suite(n_uplus: int = 100, n_points: int = 1000, tol: float = 1e-10, seed: int = 1) -> SuiteResult:
    """Rankine-Hugoniot residual on every branch of random right states."""
    rng = np.random.default_rng(seed)
    worst, worst_prod, min_off = 0.0, 0.0, np.inf
    for k in range(n_uplus):
        up = _random_uplus(rng, axis_fraction=0.1)
        if k % 3 == 0:
            up = State(up[0], -abs(up[1]))
        for br in hugoniot_branches(up):
            u1 = rng.uniform(up[0] - 10.0, up[0] + 10.0, n_points)
            for x in u1:
                um = br.state_at(float(x))
                worst = max(worst, rh_residual(ShockCandidate(um, up, br.speed_at(float(x)))))
                worst_prod = max(worst_prod, abs(locus_product(um, up)))
            # displaced points stay off the locus
            for x in u1[:20]:
                um = br.state_at(float(x))
                off = State(um[0] + 0.1 * rng.choice([-1.0, 1.0]), um[1] + 0.1 * rng.choice([-1.0, 1.0]))
                if min(b.distance(off) for b in hugoniot_branches(up)) >= 0.1 / math.sqrt(2.0) - 1e-12:
                    min_off = min(min_off, abs(locus_product(off, up)))
    passed = worst <= tol and worst_prod <= tol
    lines = [
        f"max RH residual {worst:.3e} (tol {tol:g}) over {3 * n_uplus * n_points} points",
        f"max normalised locus product {worst_prod:.3e}; min off-locus product {min_off:.3e}",
    ]
    return SuiteResult("hugoniot", passed and min_off > 0, lines, {"max_residual": worst})


def expected_kind(branch: str, u1: float, up: State) -> ShockKind:
    """Lax type along the locus of ``up`` (``u2+ > 0``) as read off the locus picture."""
    a, b = up
    if branch == "diagonal":
        return ShockKind.FAST if u1 > a else ShockKind.NON_EVOLUTIONARY
    if branch == "antidiagonal":
        if a < u1 < a + 2 * b:
            return ShockKind.SLOW
        return ShockKind.FAST if u1 > a + 2 * b else ShockKind.NON_EVOLUTIONARY
    if a - 2 * b < u1 < a + 2 * b:
        return ShockKind.UNDERCOMPRESSIVE
    return ShockKind.OVERCOMPRESSIVE if u1 > a + 2 * b else ShockKind.NON_EVOLUTIONARY


@_timed
def classification_suite(n: int = 1000, seed: int = 2, up: State = State(2.0, 3.0)) -> SuiteResult:
    """Lax types along the locus of ``up`` plus the Hessian cross-check."""
    rng = np.random.default_rng(seed)
    a, b = up
    special = [a - 2 * b, a - b, a, a + 2 * b]
    mismatches, marked_bad, hess_bad, total = 0, 0, 0, 0
    for br in hugoniot_branches(up):
        xs = rng.uniform(a - 4 * b, a + 4 * b, n)
        for x in xs:
            if min(abs(x - s) for s in special) < 1e-6:
                continue
            um = br.state_at(float(x))
            c = ShockCandidate(um, up, br.speed_at(float(x)))
            kind = lax_classify(c).kind
            total += 1
            if kind is not expected_kind(br.branch_id.value, float(x), up):
                mismatches += 1
            hk = hessian_kind(c)
            if (hk is ShockKind.FAST) != (kind is ShockKind.FAST) or (hk is ShockKind.SLOW) != (kind is ShockKind.SLOW):
                hess_bad += 1
            marked = kind is ShockKind.UNDERCOMPRESSIVE and energy_Z(um, up, c.W) > energy_Z(up, up, c.W)
            if marked != (br.branch_id.value == "horizontal" and a < x < a + 2 * b):
                marked_bad += 1
    # lambda-consistency on random on-locus candidates of random right states
    for _ in range(n):
        u = _random_uplus(rng)
        br = hugoniot_branches(u)[rng.integers(3)]
        x = float(rng.uniform(u[0] - 10, u[0] + 10))
        c = ShockCandidate(br.state_at(x), u, br.speed_at(x))
        kind = lax_classify(c).kind
        if kind is ShockKind.DEGENERATE:
            continue
        hk = hessian_kind(c)
        if (hk is ShockKind.FAST) != (kind is ShockKind.FAST) or (hk is ShockKind.SLOW) != (kind is ShockKind.SLOW):
            hess_bad += 1
    lines = [
        f"{total} samples on the three branches of u+={tuple(up)}: {mismatches} type mismatches",
        f"undercompressive candidates off the marked sub-segment: {marked_bad}",
        f"Hessian-product criterion disagreements: {hess_bad}",
    ]
    ok = mismatches == 0 and marked_bad == 0 and hess_bad == 0
    return SuiteResult("classification", ok, lines, {"mismatches": mismatches})


@_timed
def energy_suite(n: int = 1000, tol: float = 1e-10, seed: int = 4) -> SuiteResult:
    """Closed-form energy gap at the undercompressive speed vs direct evaluation."""
    rng = np.random.default_rng(seed)
    worst, cond_bad = 0.0, 0
    for _ in range(n):
        up = State(rng.uniform(-3, 3), rng.uniform(0.1, 3) * rng.choice([-1.0, 1.0]))
        mu = _mu_from_m(rng.uniform(0.05, 0.95), rng.uniform(0.2, 5.0))
        W = undercompressive_speed(up, mu)
        ux = zero_set(up, W)["ux"]
        gap = energy_Z(ux, up, W) - energy_Z(up, up, W)
        worst = max(worst, abs(gap - undercompressive_energy_gap(up, mu)))
        if not (up[0] - W / 2) ** 2 < up[1] ** 2:
            cond_bad += 1
    lines = [f"max |Z(ux) - Z(u+) - formula| = {worst:.3e} over {n} cases (tol {tol:g})",
             f"saddle-condition violations: {cond_bad}"]
    return SuiteResult("energy", worst <= tol and cond_bad == 0, lines, {"max_error": worst})


# --------------------------------------------------------------------------
# structure oracle


@_timed
def undercompressive_suite(n: int = 50, rel_tol: float = 1e-6, offset: float = 0.05, seed: int = 3) -> SuiteResult:
    """Measured saddle-connection speed vs the closed form, and no connection at W(1 +- offset)."""
    rng = np.random.default_rng(seed)
    worst, false_hits, done = 0.0, 0, 0
    while done < n:
        up = State(rng.uniform(-3, 3), rng.uniform(0.3, 3) * rng.choice([-1.0, 1.0]))
        mu = _mu_from_m(rng.uniform(0.1, 0.9), rng.uniform(0.5, 2.0))
        W = undercompressive_speed(up, mu)
        a, b = up[0], abs(up[1])
        # keep the perturbed speeds inside the saddle range and away from W = 0
        if abs(W) < 0.5 or any(not (a - b < Wp / 2 < a + b) for Wp in (W * (1 - offset), W * (1 + offset))):
            continue
        Wm = verify_connection(up, mu)
        worst = max(worst, abs(Wm - W) / max(1.0, abs(Wm)))
        for Wp in (W * (1 - offset), W * (1 + offset)):
            if saddle_connection_found(up, Wp, mu):
                false_hits += 1
        done += 1
    lines = [f"max relative |W* - 2(u1+ + m|u2+|)| = {worst:.3e} over {n} cases (tol {rel_tol:g})",
             f"connections found at W(1 +- {offset}): {false_hits}"]
    return SuiteResult("undercompressive", worst <= rel_tol and false_hits == 0, lines, {"max_rel_error": worst})


def _shock_case(up: State, t: float, sign: float):
    """Left state at parameter ``t`` on the antidiagonal of ``up`` (``u2+ > 0``), mirrored if ``sign < 0``."""
    a, b = up
    um = State(a + t, b - t)
    W = 2.0 * (um[0] - b)
    if sign < 0:
        return um.mirrored(), up.mirrored(), W
    return um, up, W


@_timed
def structure_suite(
    n_slow: int = 200, n_fast: int = 200, n_isotropic: int = 40, band: float = 1e-3, seed: int = 5
) -> SuiteResult:
    """Closed-form structure predicate vs the shooting oracle around points D and E."""
    rng = np.random.default_rng(seed)
    numerics = Numerics(samples_per_step=1)
    tally = {"slow": [0, 0, 0], "fast": [0, 0, 0], "isotropic": [0, 0, 0]}

    def check(family, um, up, W, mu, t, threshold):
        c = ShockCandidate(um, up, W)
        verdict = structure_exists(c, mu).verdict
        found = find_heteroclinic(um, up, W, mu, numerics) is not None
        inside_band = threshold is not None and abs(t - threshold) <= band
        tally[family][0] += 1
        tally[family][2] += found
        if not inside_band and found != (verdict is Verdict.YES):
            tally[family][1] += 1

    while tally["slow"][0] < n_slow:
        b = rng.uniform(0.5, 3.0)
        up = State(rng.uniform(-2, 2), b)
        mu = _mu_from_m(rng.uniform(0.15, 0.85), rng.uniform(0.5, 2.0))
        tD = (1 + mu.m) * b
        w = min(0.3 * b, tD - 0.02 * b, 1.98 * b - tD)
        t = tD + rng.uniform(-w, w)
        check("slow", *_shock_case(up, t, rng.choice([-1.0, 1.0])), mu, t, tD)
    while tally["fast"][0] < n_fast:
        b = rng.uniform(0.5, 3.0)
        up = State(rng.uniform(-2, 2), b)
        mu = _mu_from_m(rng.uniform(0.15, 0.85), rng.uniform(0.5, 2.0))
        tE = (1 + 1 / mu.m) * b
        w = min(0.3 * b, tE - 2.02 * b)
        t = tE + rng.uniform(-w, w)
        check("fast", *_shock_case(up, t, rng.choice([-1.0, 1.0])), mu, t, tE)
    while tally["isotropic"][0] < n_isotropic:
        b = rng.uniform(0.5, 3.0)
        up = State(rng.uniform(-2, 2), b)
        mu1 = rng.uniform(0.5, 2.0)
        mu = Viscosity(mu1, mu1 * rng.uniform(1.0, 3.0))
        t = rng.uniform(0.05 * b, 1.95 * b) if tally["isotropic"][0] % 2 == 0 else rng.uniform(2.05 * b, 8.0 * b)
        check("isotropic", *_shock_case(up, t, rng.choice([-1.0, 1.0])), mu, t, None)
    lines = [
        f"{k}: {n} candidates ({hits} with a connection), {bad} disagreements outside the {band:g} band"
        for k, (n, bad, hits) in tally.items()
    ]
    ok = all(bad == 0 for _, bad, _ in tally.values())
    return SuiteResult("structure", ok, lines, {k: v[1] for k, v in tally.items()})


# --------------------------------------------------------------------------
# Riemann solver


def region_boundaries(uR: State, mu: Viscosity) -> list[tuple[State, tuple[float, float] | State]]:
    """Analytic boundary lines of the region map of ``uR``.

    Each entry is ``(P, Q)`` for a segment or ``(P, direction)`` for a ray,
    the direction given as a plain tuple.
    """
    if uR[1] < 0:
        out = []
        for p, q in region_boundaries(uR.mirrored(), mu):
            q2 = q.mirrored() if isinstance(q, State) else (q[0], -q[1])
            out.append((p.mirrored(), q2))
        return out
    kp = key_points(uR, mu)
    A, B, H = kp.A, kp.B, kp.H
    up_right, up_left, down_left, down_right, right = (1, 1), (-1, 1), (-1, -1), (1, -1), (1, 0)
    common = [(A, up_right), (A, up_left), (A, H), (H, up_left), (H, down_left)]
    if not mu.admits_undercompressive:
        return common + [(A, B), (B, right), (B, down_right), (B, down_left), (B, H)]
    D, E, F, G = kp.D, kp.E, kp.F, kp.G
    return common + [
        (A, D), (D, H), (D, F), (G, D), (G, H), (G, E), (E, F),
        (F, right), (E, down_right), (E, down_left), (G, down_left),
    ]


def check_region_map(uR: State, mu: Viscosity, xs, ys, labels, box) -> dict:
    """Compare a computed region map with the analytic boundary lines.

    Every label change between neighbouring cells must lie within one grid
    cell of a boundary line, and every boundary line must separate labels
    along its whole length (away from the key points).
    """
    hx, hy = xs[1] - xs[0], ys[1] - ys[0]
    h = max(hx, hy)
    bounds = region_boundaries(uR, mu)
    lab = np.vectorize(lambda r: r.value)(labels)
    X, Y = np.meshgrid(xs, ys)
    mids = []
    dh = lab[:, 1:] != lab[:, :-1]
    mids.append(np.stack([0.5 * (X[:, 1:] + X[:, :-1])[dh], Y[:, 1:][dh]], axis=-1))
    dv = lab[1:, :] != lab[:-1, :]
    mids.append(np.stack([X[1:, :][dv], 0.5 * (Y[1:, :] + Y[:-1, :])[dv]], axis=-1))
    mids = np.concatenate(mids)
    dist = np.full(len(mids), np.inf)
    for p, q in bounds:
        a = np.asarray(p, dtype=float)
        if isinstance(q, State):
            b = np.asarray(q, dtype=float)
        else:
            d = np.asarray(q, dtype=float)
            b = a + d / np.linalg.norm(d) * 4.0 * (abs(box[1] - box[0]) + abs(box[3] - box[2]))
        ab = b - a
        s = np.clip(((mids - a) @ ab) / (ab @ ab), 0.0, 1.0)
        dist = np.minimum(dist, np.linalg.norm(mids - (a + s[:, None] * ab), axis=1))
    stray = int(np.sum(dist > h))

    # coverage: both sides of every boundary line carry different labels
    keys = [np.asarray(p, dtype=float) for _, p in key_points(uR, mu).items()]

    def label_at(pt):
        i = int(np.clip(np.floor((pt[0] - box[0]) / hx), 0, len(xs) - 1))
        j = int(np.clip(np.floor((pt[1] - box[2]) / hy), 0, len(ys) - 1))
        return lab[j, i]

    uncovered, probes = 0, 0
    for p, q in bounds:
        a = np.asarray(p, dtype=float)
        if isinstance(q, State):
            b = np.asarray(q, dtype=float)
        else:
            d = np.asarray(q, dtype=float)
            b = a + d / np.linalg.norm(d) * 4.0 * (abs(box[1] - box[0]) + abs(box[3] - box[2]))
        ab = b - a
        n = np.array([-ab[1], ab[0]]) / np.linalg.norm(ab)
        for s in np.linspace(0.0, 1.0, 2001):
            pt = a + s * ab
            if not (box[0] + 2 * h < pt[0] < box[1] - 2 * h and box[2] + 2 * h < pt[1] < box[3] - 2 * h):
                continue
            if min(np.linalg.norm(pt - k) for k in keys) < 4 * h:
                continue
            probes += 1
            if label_at(pt + 1.5 * h * n) == label_at(pt - 1.5 * h * n):
                uncovered += 1
    return {"label_changes": len(mids), "stray_changes": stray, "probes": probes, "uncovered_probes": uncovered}


@_timed
def tiling_suite(
    n: int = 10_000,
    res: int = 400,
    seed: int = 6,
    uR: State = State(2.0, 3.0),
    box: tuple[float, float, float, float] = (-10.0, 14.0, -9.0, 9.0),
    regimes: tuple[Viscosity, ...] = (Viscosity(1.0, 2.0), Viscosity(1.0, 0.5)),
) -> SuiteResult:
    """Exactly one admissible pattern per left state; region maps match the analytic lines."""
    rng = np.random.default_rng(seed)
    lines, ok, metrics = [], True, {}
    for mu in regimes:
        not_one, invalid = 0, 0
        seen = set()
        for _ in range(n):
            uL = (rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
            pats = admissible_patterns(uL, uR, mu)
            if len(pats) != 1:
                not_one += 1
                continue
            sol = solve_riemann(uL, uR, mu)
            seen.add(sol.region.value)
            if validate_solution(sol, mu):
                invalid += 1
        under_ok = all(("'" in r) <= mu.admits_undercompressive for r in seen)
        xs, ys, labels = region_map(uR, mu, box, res)
        chk = check_region_map(uR, mu, xs, ys, labels, box)
        good = not_one == 0 and invalid == 0 and under_ok and chk["stray_changes"] == 0 and chk["uncovered_probes"] == 0
        ok &= good
        metrics[f"mu={mu.mu1},{mu.mu2}"] = {"not_one": not_one, "invalid": invalid, **chk}
        lines.append(
            f"mu=({mu.mu1:g},{mu.mu2:g}): {n} samples, {not_one} without exactly one pattern, "
            f"{invalid} failing validation, regions {sorted(seen)}"
        )
        lines.append(
            f"  {res}x{res} map: {chk['label_changes']} label changes, {chk['stray_changes']} farther than one cell "
            f"from a boundary line, {chk['uncovered_probes']}/{chk['probes']} boundary probes without a label change"
        )
    return SuiteResult("tiling", ok, lines, metrics)


# --------------------------------------------------------------------------
# viscous layer

#: Representative left states (for right state (2, 3)) per region and regime.
REPRESENTATIVES = {
    "isotropic": {
        "1": (5.0, 2.0), "2": (11.0, -4.0), "3": (9.0, -6.0), "4": (4.0, -3.0),
        "5": (-3.0, 1.0), "6": (0.5, 2.5), "7": (2.0, 5.0), "8": (2.5, 0.5),
    },
    "anisotropic": {
        "1": (5.0, 2.0), "2": (13.0, -6.0), "3": (11.0, -8.0), "5": (-3.0, 1.0), "6": (0.5, 2.5),
        "7": (2.0, 5.0), "8": (2.5, 0.5), "1'": (7.5414519, -2.5), "2'": (5.5414519, -4.5),
        "3'": (3.7094011, -1.6), "4'": (2.3094011, -3.0),
    },
}


@_timed
def convergence_suite(
    eps_values: tuple[float, ...] = (0.04, 0.02, 0.01),
    amplitude: float = 1.0 / 6.0,
    half_width: float = 6.0,
    cells_per_eps: float = 4.0,
    regions: tuple[str, ...] | None = None,
) -> SuiteResult:
    """Viscous-to-inviscid L1 error decreasing along the viscosity sequence.

    States are the representatives scaled by ``amplitude`` so that the
    cell Peclet number ``|c| dx / mu`` stays near 2 with ``dx = eps / cells_per_eps``.
    """
    uR = (2.0 * amplitude, 3.0 * amplitude)
    lines, ok, metrics = [], True, {}
    for regime, mu0 in (("isotropic", Viscosity(1.0, 2.0)), ("anisotropic", Viscosity(1.0, 0.5))):
        for label, uL in REPRESENTATIVES[regime].items():
            if regions is not None and label not in regions:
                continue
            uLs = (uL[0] * amplitude, uL[1] * amplitude)
            region = solve_riemann(uLs, uR, mu0).region.value
            errs = []
            for eps in eps_values:
                dx = eps / cells_per_eps
                grid = Grid1D(-half_width, half_width, int(round(2 * half_width / dx)))
                errs.append(compare_to_riemann(uLs, uR, mu0.scaled(eps), 1.0, grid))
            dec = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
            good = dec and region == label
            ok &= good
            metrics[f"{regime}:{label}"] = errs
            lines.append(
                f"{'ok ' if good else 'BAD'} mu=({mu0.mu1:g},{mu0.mu2:g}) region {label:>2} (solver: {region:>2}): "
                + ", ".join(f"{e:.4e}" for e in errs)
            )
    return SuiteResult("convergence", ok, lines, metrics)


@_timed
def decoupling_suite(tol: float = 1e-8) -> SuiteResult:
    """Coupled system vs two Burgers equations at mu1 = mu2 = 1."""
    grid = Grid1D(-30.0, 30.0, 1200)
    cases = {
        "smooth": ((1.0, -0.5), (-0.5, 1.0), 2.0),
        "region-1 step": ((5.0, 2.0), (2.0, 3.0), 0.0),
        "region-6 step": ((0.5, 2.5), (2.0, 3.0), 0.0),
    }
    lines, worst = [], 0.0
    for name, (uL, uR, width) in cases.items():
        d = decoupling_check(uL, uR, 1.0, grid, 1.0, width=width)
        worst = max(worst, d)
        lines.append(f"{name}: max deviation {d:.3e}")
    return SuiteResult("decoupling", worst <= tol, lines, {"max_deviation": worst})


@_timed
def stability_suite(tol: float = 1e-3, t_end: float = 50.0) -> SuiteResult:
    """Perturbed travelling waves at mu1 = mu2 settle on shifted waves."""
    mu = Viscosity(1.0, 1.0)
    lines, ok = [], True

    # fast shock (2.5, 3.5) -> (2, 3); the mass 0.2 in u1 + u2 shifts it by 0.2 / 1
    fast = find_heteroclinic(State(2.5, 3.5), State(2.0, 3.0), 11.0, mu)
    grid = Grid1D(-20.0, 20.0, 800)
    rec = stability_experiment(fast, bump(grid, (0.1, 0.1), centre=-3.0), mu, t_end, n_records=25)
    tail = rec.distances[2:]
    mono = bool(np.all(np.diff(tail) <= 1e-6))
    shift = float(rec.shifts[-1, 0])
    good = rec.distances[-1] < tol and mono and abs(shift - 0.2) < 0.01
    ok &= good
    lines.append(
        f"fast shock: distance {rec.distances[0]:.3e} -> {rec.distances[-1]:.3e} (tol {tol:g}), "
        f"monotone after transient: {mono}, final shift {shift:.4f} (mass/jump 0.2)"
    )

    # overcompressive (4, -1) -> (0, 1), W = 4: mass 0.1 in u1 + u2 only moves that component, by 0.1 / 2
    over = find_heteroclinic(State(4.0, -1.0), State(0.0, 1.0), 4.0, mu)
    grid = Grid1D(-25.0, 25.0, 2000)
    rec = stability_experiment(over, bump(grid, (0.05, 0.05), centre=-2.0), mu, t_end, n_records=25, family=True)
    rel = rec.shifts[:, 0] - rec.shifts[:, 1]
    tail = rec.distances[2:]
    mono = bool(np.all(np.diff(tail) <= 1e-6))
    good = (
        over is not None
        and over.family
        and rec.distances[-1] < tol
        and mono
        and abs(rel[-1] - 0.05) < 0.005
    )
    ok &= good
    lines.append(
        f"overcompressive: distance {rec.distances[0]:.3e} -> {rec.distances[-1]:.3e}, monotone after transient: {mono}, "
        f"final relative shift {rel[-1]:.4f} (unperturbed 0, mass/jump 0.05)"
    )
    return SuiteResult("stability", ok, lines)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "hugoniot": hugoniot_suite,
    "classification": classification_suite,
    "undercompressive": undercompressive_suite,
    "energy": energy_suite,
    "structure": structure_suite,
    "tiling": tiling_suite,
    "convergence": convergence_suite,
    "decoupling": decoupling_suite,
    "stability": stability_suite,
}
