"""Direct integration of delayed reaction-diffusion systems on an interval.

Space is discretized by cosine collocation on the Neumann eigenbasis: grid
points x_i = (i + 1/2) * L / N, transforms by the type-II/III discrete cosine
transform, so the boundary conditions are exact and the mode amplitudes used
by the attractor classifier are the natural observables.  Time stepping is
IMEX: diffusion advanced by Crank-Nicolson per mode (diagonal solves, second
order, unconditionally stable), reaction and delay terms by second-order
Adams-Bashforth, with a plain Euler/trapezoid bootstrap for the first step.
Delay history lives in a ring buffer with cubic Hermite interpolation
(centered-difference tangents) for off-grid lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.fft import dct, idct

from .errors import BlowUp, NonFiniteState
from .model import ModelSpec

__all__ = [
    "SimConfig",
    "ReactionDiffusionSystem",
    "Trajectory",
    "AttractorClass",
    "schnakenberg_system",
    "truncated_system",
    "physical_system",
    "default_dt",
    "integrate",
    "classify_attractor",
    "validate_predictions",
]

_BLOWUP_NORM = 1e6
_ACTIVE_ABS = 1e-4
_ACTIVE_REL = 0.05
_PEAK_OVER_FLOOR = 10.0
_STEADY_FLUCTUATION = 1e-7
_SETTLED_REL = 0.02
_SETTLED_GROWTH = 1.05
_CONTRACTION = 0.6
_MIN_CYCLES = 3.0


@dataclass(frozen=True)
class ReactionDiffusionSystem:
    """A concrete system  u_t = D u_xx + f(u(t), u(t - r_1), ...)  on (0, L).

    ``reaction(now, lagged)`` maps arrays of shape (m, N) — ``lagged`` is a
    tuple with one entry per positive lag, ordered like ``lags`` — to the
    pointwise reaction rate of shape (m, N).  ``equilibrium`` is the spatially
    constant state the perturbation protocol starts from.
    """

    dim: int
    length: float
    diffusion: np.ndarray
    lags: tuple
    reaction: object
    equilibrium: np.ndarray
    name: str = "custom"


@dataclass(frozen=True)
class SimConfig:
    """Integration protocol parameters."""

    n_points: int = 128
    dt: float | None = None
    horizon: float = 200.0
    perturbation: float = 1e-3
    noise_amplitude: float = 1e-3
    noise_modes: int = 4
    transient_fraction: float = 0.5
    seed: int = 0
    record_modes: int = 8
    record_stride: int = 10

    def __post_init__(self):
        if self.n_points < 32:
            raise ValueError(f"n_points = {self.n_points} below the minimum 32")
        if not (0.0 <= self.transient_fraction < 1.0):
            raise ValueError("transient_fraction must lie in [0, 1)")


@dataclass
class Trajectory:
    """Recorded observables of one integration run."""

    system: ReactionDiffusionSystem
    config: SimConfig
    dt: float
    times: np.ndarray
    mode_series: np.ndarray  # (samples, dim, record_modes) cosine amplitudes
    final_state: np.ndarray  # (dim, N) grid values
    grid: np.ndarray

    def tail(self) -> tuple:
        """Post-transient slice of (times, mode_series)."""
        cut = int(len(self.times) * self.config.transient_fraction)
        return self.times[cut:], self.mode_series[cut:]

    def mean_series(self) -> np.ndarray:
        """Spatial means per species over time (mode-0 amplitudes)."""
        return self.mode_series[:, :, 0]


@dataclass(frozen=True)
class AttractorClass:
    """Classifier verdict for one trajectory tail."""

    label: str  # homogeneous/inhomogeneous x steady/periodic, or "unresolved"
    dominant_mode: int
    frequency: float  # radians per time unit; 0.0 for steady states
    mode_amplitudes: np.ndarray
    details: dict = field(default_factory=dict)


def schnakenberg_system(
    a: float, b: float, d: float, eps: float, tau: float
) -> ReactionDiffusionSystem:
    """Physical delayed activator-depletion system on (0, 1), unscaled time.

    u_t = eps d u_xx + a - u + u(t-tau)^2 v(t-tau)
    v_t =     d v_xx + b     - u(t-tau)^2 v(t-tau)

    with no-flux boundaries; ``eps`` is the ratio of the two diffusivities.
    """
    ustar = a + b
    vstar = b / ustar**2

    def reaction(now, lagged):
        u, v = now
        ul, vl = lagged[0]
        prod = ul * ul * vl
        return np.stack([a - u + prod, b - prod])

    return ReactionDiffusionSystem(
        dim=2,
        length=1.0,
        diffusion=np.array([eps * d, d], dtype=float),
        lags=(tau,),
        reaction=reaction,
        equilibrium=np.array([ustar, vstar], dtype=float),
        name="schnakenberg",
    )


def truncated_system(spec: ModelSpec, alpha=(0.0, 0.0)) -> ReactionDiffusionSystem:
    """Deviation-form system from a declarative model: linear terms plus the
    declared quadratic/cubic forms, truncated at third order.

    The state is the deviation from the translated equilibrium (which is 0),
    on the interval (0, domain_length * pi), in the spec's own time units.
    """
    matrices = [np.asarray(A, dtype=float) for A in spec.reaction_matrices_at(alpha)]
    lags = tuple(spec.lags)
    positive = [(j, r) for j, r in enumerate(lags) if r > 0]
    m = spec.dim

    def reaction(now, lagged):
        # samples per lag slot: slot j holds the state at t - lags[j]
        slot_states = []
        pos_index = 0
        for j, r in enumerate(lags):
            if r == 0:
                slot_states.append(now)
            else:
                slot_states.append(lagged[pos_index])
                pos_index += 1
        out = np.zeros_like(now)
        for A, state in zip(matrices, slot_states):
            out += A @ state
        npts = now.shape[1]
        cols = np.empty_like(now)
        for i in range(npts):
            samples = [state[:, i] for state in slot_states]
            cols[:, i] = (
                0.5 * np.real(spec.quadratic(samples, samples))
                + np.real(spec.cubic(samples, samples, samples)) / 6.0
            )
        return out + cols

    return ReactionDiffusionSystem(
        dim=m,
        length=spec.domain_length * math.pi,
        diffusion=np.asarray(spec.diffusion_at(alpha), dtype=float),
        lags=tuple(r for _, r in positive),
        reaction=reaction,
        equilibrium=np.zeros(m),
        name=f"truncated:{spec.name}",
    )


def default_dt(system: ReactionDiffusionSystem, n_points: int) -> float:
    """min(0.2 dx^2 / max D, shortest positive lag / 64); lag/64 alone when
    there is no positive lag."""
    dx = system.length / n_points
    bound = 0.2 * dx * dx / float(np.max(system.diffusion))
    lag_bound = min((r / 64.0 for r in system.lags if r > 0), default=np.inf)
    dt = min(bound, lag_bound)
    if not np.isfinite(dt):
        dt = bound
    return dt


class _Ring:
    """Ring buffer of past grid states with cubic Hermite interpolation."""

    def __init__(self, capacity: int, shape):
        self.capacity = capacity
        self.buf = np.zeros((capacity,) + shape)
        self.newest = -1  # step index of the newest stored state

    def push(self, step: int, state: np.ndarray):
        self.buf[step % self.capacity] = state
        self.newest = step

    def at_step(self, step: int) -> np.ndarray:
        return self.buf[step % self.capacity]

    def sample(self, step_float: float) -> np.ndarray:
        """State at a (possibly fractional) step index in the past."""
        k = math.floor(step_float)
        frac = step_float - k
        if frac < 1e-12:
            return self.at_step(k)
        oldest = self.newest - self.capacity + 1
        k0 = max(k - 1, oldest)
        k3 = min(k + 2, self.newest)
        p1, p2 = self.at_step(k), self.at_step(min(k + 1, self.newest))
        p0, p3 = self.at_step(k0), self.at_step(k3)
        # cubic Hermite with centered-difference tangents
        m1 = 0.5 * (p2 - p0)
        m2 = 0.5 * (p3 - p1)
        t = frac
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        return h00 * p1 + h10 * m1 + h01 * p2 + h11 * m2


def _initial_state(system, sim, grid) -> np.ndarray:
    rng = np.random.default_rng(sim.seed)
    n = len(grid)
    state = np.tile(system.equilibrium[:, None], (1, n)).astype(float)
    state += sim.perturbation
    for mode in range(1, sim.noise_modes + 1):
        profile = np.cos(mode * math.pi * grid / system.length)
        for sp in range(system.dim):
            state[sp] += sim.noise_amplitude * rng.uniform(-1, 1) * profile
    return state


def integrate(
    system: ReactionDiffusionSystem,
    sim: SimConfig,
    initial: np.ndarray | None = None,
) -> Trajectory:
    """Run the IMEX integration and record decimated mode amplitudes.

    ``initial`` overrides the default perturbed-equilibrium start (same
    constant history is used on [-max lag, 0]).
    """
    n = sim.n_points
    m = system.dim
    dt = sim.dt if sim.dt is not None else default_dt(system, n)
    grid = (np.arange(n) + 0.5) * system.length / n
    mu = (np.arange(n) * math.pi / system.length) ** 2  # Neumann eigenvalues

    # Crank-Nicolson factors per species and mode
    dcoef = np.asarray(system.diffusion, dtype=float)[:, None] * mu[None, :]
    cn_num = 1.0 - 0.5 * dt * dcoef
    cn_den = 1.0 + 0.5 * dt * dcoef

    state = _initial_state(system, sim, grid) if initial is None else np.array(initial, dtype=float)
    if state.shape != (m, n):
        raise ValueError(f"initial state shape {state.shape} != {(m, n)}")

    lags = [r for r in system.lags if r > 0]
    lag_steps = [r / dt for r in lags]
    capacity = (math.ceil(max(lag_steps)) + 4) if lag_steps else 4
    ring = _Ring(capacity, (m, n))

    steps = max(2, math.ceil(sim.horizon / dt))
    n_rec = steps // sim.record_stride + 1
    k_rec = min(sim.record_modes, n)
    times = np.empty(n_rec)
    mode_series = np.empty((n_rec, m, k_rec))
    rec = 0

    def record(step, st):
        nonlocal rec
        coeffs = dct(st, type=2, axis=1, norm=None) / (2.0 * n)
        # normalize so coefficient k equals the amplitude of cos(k pi x / L)
        amps = coeffs[:, :k_rec].copy()
        amps[:, 1:] *= 2.0
        times[rec] = step * dt
        mode_series[rec] = amps
        rec += 1

    # constant history before t = 0
    for back in range(capacity):
        ring.push(-back, state)
    ring.newest = 0
    ring.push(0, state)

    def lagged_states(step):
        return tuple(ring.sample(step - ls) for ls in lag_steps)

    def check(st, step):
        if not np.all(np.isfinite(st)):
            raise NonFiniteState(f"non-finite state at t = {step * dt:.6g}")
        if np.max(np.abs(st)) > _BLOWUP_NORM:
            raise BlowUp(f"norm exceeded {_BLOWUP_NORM:.1e} at t = {step * dt:.6g}")

    record(0, state)
    f_prev = system.reaction(state, lagged_states(0))

    # bootstrap step: CN diffusion + explicit Euler reaction
    hat = dct(state, type=2, axis=1, norm="ortho")
    fhat = dct(f_prev, type=2, axis=1, norm="ortho")
    hat = (cn_num * hat + dt * fhat) / cn_den
    state = idct(hat, type=2, axis=1, norm="ortho")
    ring.push(1, state)
    check(state, 1)
    if 1 % sim.record_stride == 0:
        record(1, state)

    for step in range(2, steps + 1):
        f_curr = system.reaction(state, lagged_states(step - 1))
        rhs = 1.5 * f_curr - 0.5 * f_prev
        hat = dct(state, type=2, axis=1, norm="ortho")
        fhat = dct(rhs, type=2, axis=1, norm="ortho")
        hat = (cn_num * hat + dt * fhat) / cn_den
        state = idct(hat, type=2, axis=1, norm="ortho")
        ring.push(step, state)
        f_prev = f_curr
        check(state, step)
        if step % sim.record_stride == 0:
            record(step, state)

    return Trajectory(
        system=system,
        config=sim,
        dt=dt,
        times=times[:rec],
        mode_series=mode_series[:rec],
        final_state=state,
        grid=grid,
    )


def _temporal_peak(times: np.ndarray, signal: np.ndarray) -> tuple:
    """(frequency rad/time, peak-to-floor ratio) of the dominant component."""
    sig = signal - np.mean(signal)
    if len(sig) < 16:
        return 0.0, 0.0
    window = np.hanning(len(sig))
    spec = np.abs(np.fft.rfft(sig * window))
    if len(spec) < 4:
        return 0.0, 0.0
    spec[0] = 0.0
    peak_idx = int(np.argmax(spec))
    peak = spec[peak_idx]
    others = np.delete(spec, [0, max(peak_idx - 1, 0), peak_idx, min(peak_idx + 1, len(spec) - 1)])
    floor = np.median(others) if len(others) else 0.0
    ratio = peak / floor if floor > 0 else (np.inf if peak > 0 else 0.0)
    dt_samp = times[1] - times[0]
    freq = 2.0 * math.pi * peak_idx / (len(sig) * dt_samp)
    return freq, float(ratio)


def classify_attractor(traj: Trajectory) -> AttractorClass:
    """Label the trajectory tail per the documented thresholds.

    Spatial: per-mode amplitudes describe the asymptotic state, so they are
    measured over the last quarter of the tail; a nonzero cosine mode is
    active if its amplitude there exceeds 1e-4 and 5% of the largest mode
    amplitude, and its level has not contracted below 0.6x its first-quarter
    level — a remnant in steady exponential decay is a transient, not part
    of the attractor, even while it still clears the magnitude thresholds.
    Temporal: steady wins when
    the last quarter of the tail is quiet — machine-flat, or fluctuating
    below 2% of the attractor amplitude without growing more than 5% across
    the tail (a bounded residual, as opposed to a slow exponential onset),
    or contracted under 0.6x the first quarter's fluctuation (a decaying
    transient; a sustained orbit holds its range near 1.0x); judging
    steadiness on the
    end window keeps an already-died transient from masquerading as an
    oscillation through its early remnant.  Otherwise periodic if the
    dominant spectral peak of the mode-amplitude signals exceeds 10x the
    spectral noise floor and at least 3 full cycles fit in the tail (a
    slow secular drift leaks into the lowest bin and must not count).
    """
    times, series = traj.tail()
    if len(times) < 8:
        return AttractorClass("unresolved", 0, 0.0, np.zeros(1), {"reason": "tail too short"})
    # per-mode characteristic amplitudes of the asymptotic state (deviation
    # from equilibrium over the last quarter of the tail)
    eq_amp = np.zeros(series.shape[1:])
    eq_amp[:, 0] = traj.system.equilibrium
    dev = series - eq_amp[None, :, :]
    quarter = max(len(times) // 4, 4)
    mode_amp = np.max(np.abs(dev[-quarter:]), axis=(0, 1))  # per recorded mode
    mode_amp_start = np.max(np.abs(dev[:quarter]), axis=(0, 1))
    largest = float(np.max(mode_amp)) if mode_amp.size else 0.0
    active = [
        k
        for k in range(1, len(mode_amp))
        if mode_amp[k] > _ACTIVE_ABS
        and mode_amp[k] > _ACTIVE_REL * largest
        and mode_amp[k] >= _CONTRACTION * mode_amp_start[k]
    ]
    homogeneous = not active
    dominant = 0 if homogeneous else int(max(active, key=lambda k: mode_amp[k]))

    # temporal verdict from the most informative signals: spatial mean of each
    # species and the dominant-mode amplitude
    signals = [dev[:, sp, 0] for sp in range(series.shape[1])]
    if dominant > 0:
        signals += [dev[:, sp, dominant] for sp in range(series.shape[1])]
    fluct = max(float(np.ptp(s)) for s in signals)
    fluct_start = max(float(np.ptp(s[:quarter])) for s in signals)
    fluct_end = max(float(np.ptp(s[-quarter:])) for s in signals)
    scale = max(largest, 1e-12)
    best_freq, best_ratio = 0.0, 0.0
    for s in signals:
        freq, ratio = _temporal_peak(times, s)
        if ratio > best_ratio and np.ptp(s) > 0.1 * fluct:
            best_freq, best_ratio = freq, ratio
    details = {
        "active_modes": active,
        "fluctuation": fluct,
        "fluctuation_start": fluct_start,
        "fluctuation_end": fluct_end,
        "peak_ratio": best_ratio,
        "tail_span": float(times[-1] - times[0]),
    }
    flat = fluct_end < max(_STEADY_FLUCTUATION, 1e-6 * scale)
    settling = (
        fluct_end < _SETTLED_REL * scale and fluct_end <= _SETTLED_GROWTH * fluct_start
    ) or fluct_end < _CONTRACTION * fluct_start
    if flat or settling:
        details["settling"] = not flat
        label = "homogeneous steady" if homogeneous else "inhomogeneous steady"
        return AttractorClass(label, dominant, 0.0, mode_amp, details)
    cycles = best_freq * float(times[-1] - times[0]) / (2.0 * math.pi)
    if best_ratio > _PEAK_OVER_FLOOR and cycles >= _MIN_CYCLES:
        label = "homogeneous periodic" if homogeneous else "inhomogeneous periodic"
        return AttractorClass(label, dominant, best_freq, mode_amp, details)
    return AttractorClass("unresolved", dominant, best_freq, mode_amp, details)


_CLASS_OF_PATTERN = {
    "constant steady state": "homogeneous steady",
    "homogeneous steady pair": "homogeneous steady",
    "inhomogeneous steady pair": "inhomogeneous steady",
    "homogeneous periodic orbit": "homogeneous periodic",
    "inhomogeneous periodic orbit": "inhomogeneous periodic",
    "inhomogeneous periodic pair": "inhomogeneous periodic",
}


def _stable_prediction(report):
    """The unique stable pattern class of a region report."""
    stable = [p for p in report.patterns if p.morse_index == 0]
    if len(stable) != 1:
        kinds = [p.kind for p in stable]
        raise ValueError(f"region {report.region}: expected one stable class, got {kinds}")
    return stable[0]


def physical_system(spec: ModelSpec, params) -> ReactionDiffusionSystem:
    """Integrator-ready system of a declarative model at raw parameters.

    A spec carrying a named chemistry is rebuilt as the physical system in
    its own unscaled time; anything else falls back to the deviation-form
    truncation at the offset of ``params`` from the spec's base point.
    """
    chem = (spec.extras or {}).get("chemistry")
    if chem is not None:
        return schnakenberg_system(
            chem["a"], chem["b"], chem["d"], eps=params[1], tau=params[0]
        )
    offset = (params[0] - spec.base_params[0], params[1] - spec.base_params[1])
    return truncated_system(spec, offset)


def _predicted_start(system, grid, k1, point, eig, rng, sim) -> np.ndarray:
    """Constant history placed at the predicted stable object plus noise.

    The planar amplitudes (r, z) map back to a field through the critical
    eigenvectors: the oscillatory coordinate contributes 2 r Re(phi2)/sqrt(L)
    uniformly (the orbit at phase zero), the steady coordinate contributes
    z sqrt(2/L) phi1 cos(k1 pi x / L).  When both vanish the start is the
    configured constant perturbation of the equilibrium.  Seeded low-mode
    noise of the configured amplitude is added on top either way.
    """
    L = system.length
    n = len(grid)
    r, z = point
    state = np.tile(system.equilibrium[:, None], (1, n)).astype(float)
    if r:
        state += (2.0 * r / math.sqrt(L)) * np.real(eig.phi2_0)[:, None]
    if z:
        profile = np.cos(k1 * math.pi * grid / L)
        state += (z * math.sqrt(2.0 / L)) * np.real(eig.phi1_0)[:, None] * profile[None, :]
    if r == 0.0 and z == 0.0:
        state += sim.perturbation
    for mode in range(1, sim.noise_modes + 1):
        profile = np.cos(mode * math.pi * grid / L)
        for sp in range(system.dim):
            state[sp] += sim.noise_amplitude * rng.uniform(-1, 1) * profile
    return state


def validate_predictions(
    spec: ModelSpec,
    cp,
    ampsys,
    samples_per_region: int = 1,
    distance: float = 0.01,
    sim: SimConfig | None = None,
    eig=None,
    on_run=None,
) -> list:
    """Simulate one run per region sample and score it against the predicted
    stable pattern class.

    Samples sit at ``distance`` from the critical point measured in the
    canonical unfolding plane — the plane in which the regions are defined —
    which keeps them physically admissible when the parameter map is strongly
    anisotropic.  The unfolding coordinates are growth rates of the two
    critical modes; when the model declares a ``time_scale`` extra (a
    delay-normalizing rescale), the distance is interpreted as a growth-rate
    offset per unit of the model's physical time, so the plane radius is
    ``distance * time_scale``.  That calibration keeps the samples inside the
    neighborhood where the two retained modes are the only non-hyperbolic
    ones — in rate units of the bookkeeping time the same nominal distance
    can push the quiescent modes across their own thresholds.  Each run
    starts from a constant history at the predicted
    stable object (planar amplitudes mapped back through the critical
    eigenvectors) plus seeded low-mode noise, so a pass certifies local
    stability of the predicted class.  Stable classes that come as symmetric
    pairs are probed once per member; the scoreboard then also records
    whether the two runs settle on distinct members (opposite signs of the
    dominant cosine amplitude).  When ``sim.dt`` is unset each run keys its
    step to the delay alone (shortest lag / 64): the diffusion half of the
    scheme is unconditionally stable, so the stiff-grid bound of the default
    formula is unnecessary here.  For periodic classes the row records the
    relative error of the observed frequency against the critical prediction
    in the simulated time units.

    ``on_run(region, member_tag, trajectory)``, when given, is called once per
    completed run before classification, so callers can persist raw output.
    """
    from .amplitude import region_inventory, region_samples
    from .eigensystem import normalized_quadruple

    if sim is None:
        sim = SimConfig(n_points=128, horizon=400.0)
    if eig is None:
        eig = cp.eigendata or normalized_quadruple(cp.spec_critical, cp)
    rng = np.random.default_rng(sim.seed)
    chem = (spec.extras or {}).get("chemistry")
    predicted_freq = cp.omega0 / cp.alpha_star[0] if chem else cp.omega0
    time_scale = float((spec.extras or {}).get("time_scale", 1.0))

    scoreboard = []
    layout = region_samples(
        ampsys, cp, distance=distance * time_scale, samples_per_region=samples_per_region
    )
    for _, offset in layout:
        report = region_inventory(ampsys, cp, offset)
        pattern = _stable_prediction(report)
        expected = _CLASS_OF_PATTERN[pattern.kind]
        params = tuple(base + da for base, da in zip(cp.alpha_star, offset))
        system = physical_system(spec, params)
        if sim.dt is None:
            lag_bound = min((r / 64.0 for r in system.lags if r > 0), default=None)
            run_sim = replace(sim, dt=lag_bound) if lag_bound else sim
        else:
            run_sim = sim
        grid = (np.arange(run_sim.n_points) + 0.5) * system.length / run_sim.n_points
        eq_by_name = {e.name: e for e in report.equilibria}
        members = [eq_by_name[name] for name in pattern.members]
        if not (pattern.count == 2 and expected.startswith("inhomogeneous")):
            members = members[:1]
        runs = []
        for tag, m in zip("ab", members):
            traj = integrate(
                system, run_sim,
                initial=_predicted_start(system, grid, cp.k1, m.point, eig, rng, run_sim),
            )
            runs.append(traj)
            if on_run is not None:
                on_run(report.region, tag if len(members) > 1 else "", traj)
        verdicts = [classify_attractor(t) for t in runs]
        ok = all(v.label == expected for v in verdicts)
        entry = {
            "region": report.region,
            "alpha": report.alpha,
            "eps": report.eps,
            "distance": float(math.hypot(*report.eps)) / time_scale,
            "predicted": expected,
            "pattern": pattern.kind,
            "observed": verdicts[0].label,
            "passed": bool(ok),
            "dominant_mode": verdicts[0].dominant_mode,
            "frequency": verdicts[0].frequency,
        }
        if len(verdicts) == 2:
            entry["observed_pair"] = [v.label for v in verdicts]
            signs = []
            for t, v in zip(runs, verdicts):
                k = v.dominant_mode
                if k > 0:
                    _, tail_series = t.tail()
                    signs.append(math.copysign(1.0, float(np.mean(tail_series[:, 0, k]))))
            entry["pair_members_distinct"] = len(signs) == 2 and signs[0] != signs[1]
            entry["passed"] = entry["passed"] and entry["pair_members_distinct"]
        if "periodic" in expected and entry["passed"]:
            rel = abs(verdicts[0].frequency - predicted_freq) / predicted_freq
            entry["frequency_rel_err"] = rel
        scoreboard.append(entry)
    return scoreboard
