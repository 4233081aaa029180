"""Problem description for delayed reaction-diffusion systems on an interval.

A model is the data of the linearized system at a spatially uniform
equilibrium, expanded to third order, for a two-parameter family:

    d/dt u(t) = D(alpha) Lap u(t) + L(alpha) u_t + G(u_t, alpha)

on (0, l*pi) with no-flux boundary conditions, where u_t is the history
segment and L acts through finitely many discrete lags 0 = r_0 < ... < r_J.
Histories enter the nonlinear terms only through their lag samples, so the
quadratic and cubic forms take tuples of J+1 vectors (entry j is the sample
at -r_j).

Two parameterizations coexist:
  * every spec carries first-order parameter derivatives of the diffusion
    and interaction matrices (enough for the unfolding computations, which
    are first order in the parameters), and
  * a spec may carry an exact `family` callback rebuilding the model at raw
    parameter values, which the two-parameter search uses to land on the
    exact critical point of the true family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidChemistry, NonPositiveDiffusion, SymmetryViolation

__all__ = [
    "ModelSpec",
    "validate",
    "eigenprofile_samples",
    "schnakenberg_builtin",
    "schnakenberg_equilibrium",
]


@dataclass
class ModelSpec:
    """Data of one delayed reaction-diffusion model near an equilibrium.

    Attributes
    ----------
    num_species : int
        Number of interacting fields m.
    domain_length : float
        Length scale l; the interval is (0, l*pi) and mode k diffuses at
        rate (k/l)^2.
    lags : tuple of float
        Discrete delays, lags[0] == 0.0, strictly increasing.
    diffusion : ndarray, shape (m,)
        Diagonal of the diffusion matrix at the base parameter point.
    diffusion_deriv : pair of ndarray, shape (m,)
        Derivative of the diffusion diagonal in each of the two parameter
        directions.
    reaction_matrices : tuple of ndarray, shape (m, m)
        Interaction matrix for each lag at the base point; the linear part
        applied to a history with lag samples X is sum_j A_j X_j.
    reaction_matrices_deriv : pair of tuples of ndarray
        Parameter derivatives of each interaction matrix.
    quadratic, cubic : callables
        Symmetric bi-/tri-linear forms on lag-sample tuples returning an
        m-vector: the second and third directional derivatives of the
        reaction term at the equilibrium (no 1/2!, 1/3! factors).
    family : callable (p1, p2) -> ModelSpec, optional
        Exact rebuild of the model at raw parameter values.
    base_params : pair of float
        Raw parameter values this spec was built at (meaningful when family
        is present).
    name : str
        Identifier used in reports.
    """

    num_species: int
    domain_length: float
    lags: tuple
    diffusion: np.ndarray
    diffusion_deriv: tuple
    reaction_matrices: tuple
    reaction_matrices_deriv: tuple
    quadratic: Callable
    cubic: Callable
    family: Optional[Callable] = None
    base_params: tuple = (0.0, 0.0)
    name: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lags = tuple(float(r) for r in self.lags)
        self.diffusion = np.asarray(self.diffusion, dtype=float)
        self.diffusion_deriv = tuple(
            np.asarray(dd, dtype=float) for dd in self.diffusion_deriv
        )
        self.reaction_matrices = tuple(
            np.asarray(A, dtype=float) for A in self.reaction_matrices
        )
        self.reaction_matrices_deriv = tuple(
            tuple(np.asarray(A, dtype=float) for A in group)
            for group in self.reaction_matrices_deriv
        )

    # -- linear data at shifted parameters ---------------------------------

    def diffusion_at(self, alpha) -> np.ndarray:
        """Diffusion diagonal at parameter offset alpha (first-order fold)."""
        d = self.diffusion.copy()
        for ai, dd in zip(alpha, self.diffusion_deriv):
            d = d + ai * dd
        return d

    def reaction_matrices_at(self, alpha) -> tuple:
        """Interaction matrices at parameter offset alpha (first-order fold)."""
        out = []
        for j, A in enumerate(self.reaction_matrices):
            Aj = A.copy()
            for ai, group in zip(alpha, self.reaction_matrices_deriv):
                Aj = Aj + ai * group[j]
            out.append(Aj)
        return tuple(out)

    def apply_linear(self, samples) -> np.ndarray:
        """Base linear term: sum_j A_j X_j on a lag-sample tuple."""
        acc = np.zeros(self.num_species, dtype=complex)
        for A, X in zip(self.reaction_matrices, samples):
            acc = acc + A @ X
        return acc

    def apply_linear_deriv(self, direction: int, samples) -> np.ndarray:
        """Parameter derivative of the linear term in one direction."""
        acc = np.zeros(self.num_species, dtype=complex)
        for A, X in zip(self.reaction_matrices_deriv[direction], samples):
            acc = acc + A @ X
        return acc

    @property
    def max_lag(self) -> float:
        return self.lags[-1]


def eigenprofile_samples(lam: complex, v0: np.ndarray, lags) -> tuple:
    """Lag samples of the exponential history theta -> v0 * exp(lam*theta)."""
    v0 = np.asarray(v0, dtype=complex)
    return tuple(v0 * np.exp(-lam * float(r)) for r in lags)


def _probe_vectors(rng: np.random.Generator, m: int, count: int) -> np.ndarray:
    return rng.standard_normal((count, m)) + 1j * rng.standard_normal((count, m))


def validate(spec: ModelSpec, seed: int = 0, rel_tol: float = 1e-12) -> None:
    """Structural and algebraic checks; raises on the first violation.

    Checks: lag ordering, positive diffusion, matrix shapes, symmetry and
    multilinearity of the quadratic and cubic forms on random complex
    probes, and exact linearity of the parameter folds.
    """
    m = spec.num_species
    if spec.lags[0] != 0.0:
        raise SymmetryViolation("first lag must be exactly 0")
    if any(b <= a for a, b in zip(spec.lags, spec.lags[1:])):
        raise SymmetryViolation("lags must be strictly increasing")
    if spec.domain_length <= 0:
        raise SymmetryViolation("domain_length must be positive")
    if spec.diffusion.shape != (m,):
        raise SymmetryViolation("diffusion diagonal has wrong shape")
    if np.any(spec.diffusion <= 0):
        raise NonPositiveDiffusion(
            f"diffusion diagonal must be positive, got {spec.diffusion}"
        )
    if len(spec.diffusion_deriv) != 2 or len(spec.reaction_matrices_deriv) != 2:
        raise SymmetryViolation("exactly two parameter directions are required")
    for A in spec.reaction_matrices:
        if A.shape != (m, m):
            raise SymmetryViolation("interaction matrix has wrong shape")
    for group in spec.reaction_matrices_deriv:
        if len(group) != len(spec.reaction_matrices):
            raise SymmetryViolation("derivative group length differs from lag count")

    rng = np.random.default_rng(seed)
    n_lags = len(spec.lags)

    def tuples(count):
        return [
            tuple(_probe_vectors(rng, m, 1)[0] for _ in range(n_lags))
            for _ in range(count)
        ]

    def close(u, v, what):
        u = np.asarray(u)
        v = np.asarray(v)
        scale = max(np.max(np.abs(u)), np.max(np.abs(v)), 1e-300)
        if np.max(np.abs(u - v)) > rel_tol * max(scale, 1.0):
            raise SymmetryViolation(f"{what}: mismatch {np.max(np.abs(u - v)):.3e}")

    for _ in range(4):
        X, Y, Z, W = tuples(4)
        a, b = complex(rng.standard_normal(), rng.standard_normal()), complex(
            rng.standard_normal(), rng.standard_normal()
        )
        close(spec.quadratic(X, Y), spec.quadratic(Y, X), "quadratic symmetry")
        aXbW = tuple(a * x + b * w for x, w in zip(X, W))
        close(
            spec.quadratic(aXbW, Y),
            a * np.asarray(spec.quadratic(X, Y)) + b * np.asarray(spec.quadratic(W, Y)),
            "quadratic linearity",
        )
        close(spec.cubic(X, Y, Z), spec.cubic(Y, X, Z), "cubic symmetry (12)")
        close(spec.cubic(X, Y, Z), spec.cubic(X, Z, Y), "cubic symmetry (23)")
        close(spec.cubic(X, Y, Z), spec.cubic(Z, Y, X), "cubic symmetry (13)")
        close(
            spec.cubic(aXbW, Y, Z),
            a * np.asarray(spec.cubic(X, Y, Z)) + b * np.asarray(spec.cubic(W, Y, Z)),
            "cubic linearity",
        )


# ---------------------------------------------------------------------------
# built-in chemistry
# ---------------------------------------------------------------------------

def schnakenberg_equilibrium(a: float, b: float) -> tuple:
    """Uniform equilibrium of the activator-depletion chemistry."""
    u_star = a + b
    v_star = b / (a + b) ** 2
    return u_star, v_star


def schnakenberg_builtin(
    a: float,
    b: float,
    d: float,
    tau: float = 0.2,
    eps: float = 0.002,
) -> ModelSpec:
    """Delayed activator-depletion model, time-rescaled to unit lag.

    The unscaled system on (0, 1) is

        u_t = eps*d*u_xx + a - u + u(t-tau)^2 v(t-tau)
        v_t =     d*v_xx + b     - u(t-tau)^2 v(t-tau)

    with no-flux boundaries.  Rescaling time by the delay puts the lag at 1
    and multiplies the right-hand side by tau.  The interval (0, 1) matches
    (0, l*pi) with l = 1/pi.  Raw parameters of the family are (tau, eps);
    parameter direction 0 is the delay, direction 1 the relative diffusion.
    """
    if not (a >= 0 and b > 0 and d > 0):
        raise InvalidChemistry(
            f"need a >= 0, b > 0, d > 0; got a={a}, b={b}, d={d}"
        )
    if tau <= 0 or eps <= 0:
        raise InvalidChemistry(f"need tau > 0 and eps > 0; got {tau}, {eps}")

    u_star, v_star = schnakenberg_equilibrium(a, b)

    # interaction matrices of the scaled linearization
    A0 = tau * np.array([[-1.0, 0.0], [0.0, 0.0]])
    cross = np.array(
        [[2 * u_star * v_star, u_star**2], [-2 * u_star * v_star, -(u_star**2)]]
    )
    A1 = tau * cross

    def quadratic(X, Y):
        x, y = X[1], Y[1]
        s = 2.0 * (v_star * x[0] * y[0] + u_star * (x[0] * y[1] + x[1] * y[0]))
        return tau * s * np.array([1.0, -1.0])

    def cubic(X, Y, Z):
        x, y, z = X[1], Y[1], Z[1]
        s = 2.0 * (x[0] * y[0] * z[1] + x[0] * y[1] * z[0] + x[1] * y[0] * z[0])
        return tau * s * np.array([1.0, -1.0])

    def family(p1, p2):
        return schnakenberg_builtin(a, b, d, tau=p1, eps=p2)

    return ModelSpec(
        num_species=2,
        domain_length=1.0 / np.pi,
        lags=(0.0, 1.0),
        diffusion=tau * d * np.array([eps, 1.0]),
        diffusion_deriv=(
            d * np.array([eps, 1.0]),        # d/d(tau)
            tau * d * np.array([1.0, 0.0]),  # d/d(eps)
        ),
        reaction_matrices=(A0, A1),
        reaction_matrices_deriv=(
            (A0 / tau, A1 / tau),                      # d/d(tau)
            (np.zeros((2, 2)), np.zeros((2, 2))),      # d/d(eps)
        ),
        quadratic=quadratic,
        cubic=cubic,
        family=family,
        base_params=(tau, eps),
        name=f"schnakenberg(a={a},b={b},d={d})",
        extras={
            "chemistry": {"a": a, "b": b, "d": d},
            "equilibrium": (u_star, v_star),
            "time_scale": tau,
        },
    )
